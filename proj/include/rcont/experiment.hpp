#pragma once

#include "rcont/io.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcont {

/// Config rejected before any computation; `field` is the dotted path of
/// the offending entry (e.g. "analysis.window").
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& msg)
      : std::invalid_argument(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> k{"modulus", "lojasiewicz", "plk",
                                          "solve",   "certify",     "full-pipeline"};
  return k;
}

/// Applies `key.subkey=value`. The value is parsed as JSON when it parses,
/// otherwise stored as a string; intermediate objects are created.
void apply_override(Json& config, const std::string& assignment);

/// Fills every default and validates against the catalog and the
/// preconditions of the operations the experiment will call. The result is
/// the config echo stored in the report.
Json resolve_config(const Json& raw);

struct ManifestEntry {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunReport {
  Json config;
  std::vector<ManifestEntry> manifest;
  Json timings_ms;
  Json verdicts;
  /// A certificate named in the config failed.
  bool certificate_failed = false;

  Json to_json() const;
};

/// Writes the experiment's artifacts plus report.json into output_dir.
/// Artifacts are byte-identical across reruns; report.json also carries
/// wall-clock timings and is not listed in its own manifest.
RunReport run_experiment(const Json& raw_config);

std::string sha256_hex(const std::string& data);

}  // namespace rcont
