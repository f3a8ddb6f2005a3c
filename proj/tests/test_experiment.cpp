#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rcont/errors.hpp"
#include "rcont/experiment.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace rcont;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("rcont-exp-" + std::to_string(::getpid()) + "-" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

Json abs_pipeline(const fs::path& out) {
  return Json{{"experiment", "full-pipeline"},
              {"operator", "abs-subdiff"},
              {"output_dir", out.string()},
              {"analysis", {{"window", {{"kind", "interval"}, {"lo", -2.0}, {"hi", 2.0}}}}},
              {"algorithm", {{"name", "ppa"}, {"gamma", 0.3}, {"x0", {1.0}}}},
              {"certificates",
               {{{"hypothesis", "H1"}, {"alpha", 1.0 / 0.6}}, {{"hypothesis", "H2"}, {"beta", 1.0 / 0.3}}}}};
}

std::string field_of(const Json& cfg) {
  try {
    resolve_config(cfg);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("sha256 of known vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("resolve_config fills defaults") {
  const Json c = resolve_config(Json{{"experiment", "modulus"}, {"operator", "square"}});
  CHECK(c["output_dir"] == "rcont-out");
  CHECK(c["stop"]["step_tol"] == 1e-10);
  CHECK(c["stop"]["max_iter"] == 100000);
  CHECK(c["analysis"]["samples_per_radius"] == 64);
  CHECK(c["analysis"]["seed"] == 0);
  CHECK(c["analysis"]["target"] == "forward");
  CHECK(c["analysis"]["radii"].size() == 16);
  CHECK(c["analysis"]["radii"].front().get<double>() == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(c["analysis"]["radii"].back().get<double>() == doctest::Approx(1e-1).epsilon(1e-12));
  CHECK(c["analysis"]["base_point"] == Json::array({0.0}));
  CHECK_FALSE(c["analysis"].contains("window"));

  const Json p = resolve_config(Json{{"experiment", "full-pipeline"}, {"operator", "quad"}});
  CHECK(p["analysis"]["target"] == "inverse");
  CHECK(p["algorithm"]["name"] == "ppa");
  CHECK(p["algorithm"]["x0"] == Json::array({1.0}));
  CHECK(p["analysis"]["closed_graph"]["n_sequences"] == 8);
}

TEST_CASE("resolve_config is idempotent") {
  const Json c = resolve_config(abs_pipeline("out"));
  CHECK(resolve_config(c) == c);
}

TEST_CASE("resolve_config rejects bad fields") {
  CHECK(field_of(Json::array()) == "config");
  CHECK(field_of(Json{{"experiment", "nope"}, {"operator", "square"}}) == "experiment");
  CHECK(field_of(Json{{"experiment", "modulus"}, {"operator", "no-such-map"}}) == "operator");
  CHECK(field_of(Json{{"experiment", "modulus"}, {"operator", "rm1"}}) == "analysis.window");
  CHECK(field_of(Json{{"experiment", "lojasiewicz"}, {"operator", "square"}}) == "analysis.window");
  CHECK(field_of(Json{{"experiment", "modulus"},
                      {"operator", "square"},
                      {"analysis", {{"radii", {0.1, 0.01}}}}}) == "analysis.radii");
  CHECK(field_of(Json{{"experiment", "modulus"},
                      {"operator", "square"},
                      {"analysis", {{"samples_per_radius", 0}}}}) == "analysis.samples_per_radius");
  CHECK(field_of(Json{{"experiment", "solve"},
                      {"operator", "rm1"},
                      {"algorithm", {{"name", "ppa"}}}}) == "algorithm.name");
  CHECK(field_of(Json{{"experiment", "solve"},
                      {"operator", "linear-neg"},
                      {"algorithm", {{"name", "ppa"}, {"gamma", 0.5}}}}) == "algorithm.gamma");
  CHECK(field_of(Json{{"experiment", "solve"},
                      {"operator", "linear-neg"},
                      {"algorithm", {{"name", "shifted-ppa"}, {"kappa", 0.5}, {"gamma", 0.5}}}}) ==
        "algorithm.gamma");
  CHECK(field_of(Json{{"experiment", "solve"},
                      {"operator", "quad"},
                      {"algorithm", {{"name", "ppa"}, {"x0", {1.0, 2.0}}}}}) == "algorithm.x0");
  CHECK(field_of(Json{{"experiment", "certify"}, {"operator", "quad"}}) == "certificates");
  CHECK(field_of(Json{{"experiment", "certify"},
                      {"operator", "quad"},
                      {"algorithm", {{"name", "gdm"}}},
                      {"certificates", {{{"hypothesis", "H2"}}}}}) == "certificates[0].hypothesis");
  CHECK(field_of(Json{{"experiment", "certify"},
                      {"operator", "quad"},
                      {"certificates", {{{"hypothesis", "H9"}}}}}) == "certificates[0].hypothesis");
  CHECK(field_of(Json{{"experiment", "modulus"},
                      {"operator", "rm1"},
                      {"analysis", {{"window", {{"kind", "interval"}, {"lo", 1.0}, {"hi", -1.0}}}}}}) ==
        "analysis.window");
  CHECK(field_of(Json{{"experiment", "plk"},
                      {"operator", "square"},
                      {"analysis", {{"plk", {{"q_exp", 1.0}}}}}}) == "analysis.plk.q_exp");
  CHECK(field_of(Json{{"experiment", "modulus"}, {"operator", "square"}, {"stop", {{"step_tol", -1}}}}) ==
        "stop.step_tol");
}

TEST_CASE("apply_override") {
  Json c = Json::object();
  apply_override(c, "algorithm.gamma=0.25");
  apply_override(c, "operator=quad");
  apply_override(c, "analysis.radii=[0.1,0.2]");
  apply_override(c, "analysis.window.kind=interval");
  CHECK(c["algorithm"]["gamma"] == 0.25);
  CHECK(c["operator"] == "quad");
  CHECK(c["analysis"]["radii"] == Json::array({0.1, 0.2}));
  CHECK(c["analysis"]["window"]["kind"] == "interval");
  apply_override(c, "algorithm.gamma=1");
  CHECK(c["algorithm"]["gamma"] == 1);
  CHECK_THROWS_AS(apply_override(c, "novalue"), ValidationError);
  CHECK_THROWS_AS(apply_override(c, "=3"), ValidationError);
  CHECK_THROWS_AS(apply_override(c, "a..b=3"), ValidationError);
  CHECK_THROWS_AS(apply_override(c, "operator.x=3"), ValidationError);
}

TEST_CASE("full pipeline on abs-subdiff") {
  const fs::path out = scratch("abs");
  const RunReport rep = run_experiment(abs_pipeline(out));
  CHECK_FALSE(rep.certificate_failed);
  CHECK(rep.verdicts["closed_graph"] == "PASS");
  CHECK(rep.verdicts["converged"] == true);
  CHECK(rep.verdicts["termination"] == "tolerance");

  std::set<std::string> names;
  for (const auto& m : rep.manifest) {
    names.insert(m.file);
    const std::string body = slurp(out / m.file);
    CHECK(body.size() == m.bytes);
    CHECK(sha256_hex(body) == m.sha256);
  }
  CHECK(names == std::set<std::string>{"modulus.csv", "fit.json", "closed_graph.json", "trace.csv",
                                       "distance.json", "certificates.json"});

  const auto rows = read_csv(slurp(out / "trace.csv"));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"k", "x", "delta", "f_value", "witness_norm", "xi",
                                            "distance", "fejer_ledger"});
  const std::vector<double> expect{1.0, 0.7, 0.4, 0.1, 0.0, 0.0};
  for (std::size_t k = 0; k < expect.size(); ++k) {
    CHECK(std::abs(std::stod(rows[k + 1][6]) - expect[k]) < 1e-12);
    CHECK(rows[k + 1][7].empty());
  }
  CHECK(rows[1][4].empty());
  CHECK(std::stod(rows[2][4]) == doctest::Approx(1.0));

  const Json report = Json::parse(slurp(out / "report.json"));
  CHECK(report["config"] == rep.config);
  CHECK(report["manifest"].size() == rep.manifest.size());
  CHECK(report["timings_ms"].contains("total"));
  fs::remove_all(out);
}

TEST_CASE("reruns are byte-identical and the config echo reproduces them") {
  const fs::path a = scratch("a");
  const fs::path b = scratch("b");
  const RunReport r1 = run_experiment(abs_pipeline(a));
  const RunReport r2 = run_experiment(abs_pipeline(a));
  REQUIRE(r1.manifest.size() == r2.manifest.size());
  for (std::size_t i = 0; i < r1.manifest.size(); ++i) {
    CHECK(r1.manifest[i].file == r2.manifest[i].file);
    CHECK(r1.manifest[i].sha256 == r2.manifest[i].sha256);
  }

  Json echo = Json::parse(slurp(a / "report.json"))["config"];
  echo["output_dir"] = b.string();
  const RunReport r3 = run_experiment(echo);
  REQUIRE(r3.manifest.size() == r1.manifest.size());
  for (std::size_t i = 0; i < r1.manifest.size(); ++i) {
    CHECK(r3.manifest[i].sha256 == r1.manifest[i].sha256);
    CHECK(slurp(a / r1.manifest[i].file) == slurp(b / r3.manifest[i].file));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("each experiment kind writes only inside output_dir") {
  const fs::path root = scratch("kinds");
  const fs::path out = root / "out";
  const std::vector<Json> configs{
      Json{{"experiment", "modulus"},
           {"operator", "rm1"},
           {"analysis", {{"window", {{"kind", "interval"}, {"lo", -10.0}, {"hi", 10.0}}}}}},
      Json{{"experiment", "lojasiewicz"},
           {"operator", "square"},
           {"analysis", {{"window", {{"kind", "interval"}, {"lo", -1.0}, {"hi", 1.0}}}}}},
      Json{{"experiment", "plk"}, {"operator", "square"}},
      Json{{"experiment", "solve"}, {"operator", "dc-quad"}, {"algorithm", {{"name", "dca"}}}},
      Json{{"experiment", "certify"},
           {"operator", "quad"},
           {"algorithm", {{"name", "gdm"}, {"step", 0.5}}},
           {"certificates", {{{"hypothesis", "H3"}, {"beta", 1.5}}}}}};
  const std::vector<std::string> artifact{"modulus.csv", "loja.json", "plk.json", "trace.csv",
                                          "certificates.json"};
  for (std::size_t i = 0; i < configs.size(); ++i) {
    Json c = configs[i];
    c["output_dir"] = out.string();
    const RunReport rep = run_experiment(c);
    CHECK(fs::exists(out / artifact[i]));
    CHECK(rep.certificate_failed == (i == 4));
    for (const auto& entry : fs::directory_iterator(root)) CHECK(entry.path() == out);
  }
  fs::remove_all(root);
}

TEST_CASE("catalog_json") {
  const Json cat = catalog_json();
  REQUIRE(cat.is_array());
  CHECK(cat.size() >= 8);
  std::map<std::string, Json> by_name;
  for (const auto& e : cat) by_name[e["name"].get<std::string>()] = e;
  for (const char* n : {"rm1", "flat-exp", "square", "double-well", "abs-subdiff", "linear-neg", "quad",
                        "dc-quad"}) {
    CHECK(by_name.count(n) == 1);
  }
  CHECK(by_name["rm1"]["window_required"] == true);
  CHECK(by_name["linear-neg"]["prox"] == true);
  CHECK(by_name["linear-neg"]["monotone"] == false);
  CHECK(by_name["abs-subdiff"]["monotone"] == true);
}
