// rcont: command-line harness over the experiment runner.
//
//   rcont <modulus|loja|plk|solve|certify|pipeline> --config cfg.json [--out dir]
//         [--seed n] [--set key.subkey=value ...]
//   rcont catalog
//
// Exit codes: 0 ok, 2 validation error, 3 runtime error, 4 a requested
// certificate failed.

#include "rcont/errors.hpp"
#include "rcont/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitCertificate = 4;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "experiment config (JSON)")->required();
  sub->add_option("--out", c.out, "output directory (overrides output_dir)");
  sub->add_option("--seed", c.seed, "analysis seed (overrides analysis.seed)");
  sub->add_option("--set", c.sets, "override a config field: key.subkey=value");
}

rcont::Json load_config(const Common& c, const std::string& experiment) {
  std::ifstream in(c.config);
  if (!in) throw rcont::ValidationError("--config", "cannot read '" + c.config + "'");
  rcont::Json cfg = rcont::Json::parse(in, nullptr, false);
  if (cfg.is_discarded()) throw rcont::ValidationError("--config", "not valid JSON");
  if (!cfg.is_object()) throw rcont::ValidationError("config", "must be a JSON object");
  cfg["experiment"] = experiment;
  for (const auto& s : c.sets) rcont::apply_override(cfg, s);
  if (!c.out.empty()) cfg["output_dir"] = c.out;
  if (c.seed) {
    if (!cfg.contains("analysis") || !cfg["analysis"].is_object()) {
      cfg["analysis"] = rcont::Json::object();
    }
    cfg["analysis"]["seed"] = *c.seed;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularity moduli, solver traces and convergence certificates"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> kinds{
      {"modulus", "modulus"}, {"loja", "lojasiewicz"}, {"plk", "plk"},
      {"solve", "solve"},     {"certify", "certify"},  {"pipeline", "full-pipeline"}};
  std::vector<Common> commons(kinds.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    auto* sub = app.add_subcommand(kinds[i].first, "run a " + kinds[i].second + " experiment");
    add_common(sub, commons[i]);
    subs.push_back(sub);
  }
  auto* catalog = app.add_subcommand("catalog", "print the operator catalog as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (catalog->parsed()) {
      std::cout << rcont::catalog_json().dump(2) << "\n";
      return 0;
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      const rcont::Json cfg = load_config(commons[i], kinds[i].second);
      const rcont::RunReport rep = rcont::run_experiment(cfg);
      std::cout << rep.verdicts.dump() << "\n";
      return rep.certificate_failed ? kExitCertificate : 0;
    }
  } catch (const rcont::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
