#include "rcont/experiment.hpp"

#include "rcont/errors.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

namespace rcont {

namespace {

namespace fs = std::filesystem;

const std::set<std::string> kAlgorithms{"ppa", "gdm", "qpower", "dca", "shifted-ppa"};

bool is_solver_kind(const std::string& e) {
  return e == "solve" || e == "certify" || e == "full-pipeline";
}

Json& section(Json& c, const char* key, const std::string& path) {
  if (!c.contains(key)) c[key] = Json::object();
  if (!c[key].is_object()) throw ValidationError(path + key, "must be an object");
  return c[key];
}

double number(Json& obj, const std::string& path, const char* key, double def) {
  if (!obj.contains(key)) obj[key] = def;
  if (!obj[key].is_number()) throw ValidationError(path + key, "must be a number");
  const double v = obj[key].get<double>();
  if (!std::isfinite(v)) throw ValidationError(path + key, "must be finite");
  return v;
}

double positive(Json& obj, const std::string& path, const char* key, double def) {
  const double v = number(obj, path, key, def);
  if (!(v > 0.0)) throw ValidationError(path + key, "must be positive");
  return v;
}

std::size_t count(Json& obj, const std::string& path, const char* key, std::size_t def,
                  std::size_t min) {
  if (!obj.contains(key)) obj[key] = def;
  if (!obj[key].is_number_integer() || obj[key].get<long long>() < static_cast<long long>(min)) {
    throw ValidationError(path + key, "must be an integer >= " + std::to_string(min));
  }
  return obj[key].get<std::size_t>();
}

std::string text(Json& obj, const std::string& path, const char* key, const std::string& def) {
  if (!obj.contains(key)) obj[key] = def;
  if (!obj[key].is_string()) throw ValidationError(path + key, "must be a string");
  return obj[key].get<std::string>();
}

std::vector<double> vector_field(const Json& v, const std::string& path, std::size_t dim) {
  if (!v.is_array() || v.size() != dim) {
    throw ValidationError(path, "must be an array of " + std::to_string(dim) + " numbers");
  }
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number() || !std::isfinite(e.get<double>())) {
      throw ValidationError(path, "entries must be finite numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

Window parse_window(Json& w, const std::string& path, std::size_t dim) {
  if (!w.is_object()) throw ValidationError(path, "must be an object");
  const std::string kind = text(w, path + ".", "kind", "box");
  try {
    if (kind == "interval") {
      if (dim != 1) throw ValidationError(path + ".kind", "interval windows are 1-d");
      const double lo = number(w, path + ".", "lo", -1.0);
      const double hi = number(w, path + ".", "hi", 1.0);
      return Window::interval(lo, hi);
    }
    if (!w.contains("center")) w["center"] = std::vector<double>(dim, 0.0);
    const Point c(vector_field(w["center"], path + ".center", dim));
    if (kind == "box") {
      if (!w.contains("half_widths")) throw ValidationError(path + ".half_widths", "required");
      return Window::box(c, vector_field(w["half_widths"], path + ".half_widths", dim));
    }
    if (kind == "ball") return Window::ball(c, positive(w, path + ".", "radius", 1.0));
  } catch (const PreconditionError& e) {
    throw ValidationError(path, e.what());
  }
  throw ValidationError(path + ".kind", "must be interval, box or ball");
}

std::vector<double> parse_radii(Json& r, const std::string& path) {
  std::vector<double> radii;
  if (r.is_array()) {
    for (const auto& e : r) {
      if (!e.is_number()) throw ValidationError(path, "entries must be numbers");
      radii.push_back(e.get<double>());
    }
  } else if (r.is_object()) {
    const double lo = positive(r, path + ".", "min", 1e-4);
    const double hi = positive(r, path + ".", "max", 1e-1);
    const std::size_t n = count(r, path + ".", "count", 16, 2);
    if (!(hi > lo)) throw ValidationError(path, "max must exceed min");
    radii = log_radii(lo, hi, n);
  } else {
    throw ValidationError(path, "must be an array or {min, max, count}");
  }
  if (radii.empty() || !(radii.front() > 0.0)) throw ValidationError(path, "radii must be positive");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw ValidationError(path, "radii must be strictly increasing");
  }
  return radii;
}

const OperatorEntry& entry_of(const Json& c) { return catalog_lookup(c["operator"].get<std::string>()); }

const SetValuedMap& target_map(const OperatorEntry& e, const std::string& target) {
  return target == "inverse" ? *e.inverse : e.forward;
}

StopRule parse_stop(Json& s) {
  StopRule r;
  r.step_tol = positive(s, "stop.", "step_tol", r.step_tol);
  r.max_iter = count(s, "stop.", "max_iter", r.max_iter, 1);
  r.divergence_guard = positive(s, "stop.", "divergence_guard", r.divergence_guard);
  return r;
}

void validate_algorithm(Json& a, const OperatorEntry& e) {
  const std::string name = text(a, "algorithm.", "name", "ppa");
  if (!kAlgorithms.count(name)) {
    throw ValidationError("algorithm.name", "must be one of ppa, gdm, qpower, dca, shifted-ppa");
  }
  const double gamma = positive(a, "algorithm.", "gamma", 1.0);
  const double q = number(a, "algorithm.", "q", 2.0);
  const double kappa = number(a, "algorithm.", "kappa", 0.5);
  positive(a, "algorithm.", "step", 0.5);
  if (!a.contains("x0")) a["x0"] = std::vector<double>(e.dim(), 1.0);
  vector_field(a["x0"], "algorithm.x0", e.dim());
  const std::string cond = text(a, "algorithm.", "step_condition", "derived");
  if (cond != "derived" && cond != "stated") {
    throw ValidationError("algorithm.step_condition", "must be derived or stated");
  }

  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw ValidationError("algorithm.name", "'" + e.name() + "' has no " + what);
  };
  if (name == "ppa" || name == "shifted-ppa") {
    need(e.prox.has_value(), "prox oracle");
    if (e.prox->single_valued && !e.prox->single_valued(gamma)) {
      throw ValidationError("algorithm.gamma", "resolvent not single-valued (" + e.prox->domain_note + ")");
    }
  }
  if (name == "gdm") need(e.smooth && e.smooth->gradient, "gradient");
  if (name == "qpower") {
    need(e.smooth && e.smooth->value, "scalar function");
    if (!(q > 1.0)) throw ValidationError("algorithm.q", "must exceed 1");
    const bool closed = e.quadratic && q == 2.0;
    if (!closed) {
      if (e.dim() != 1) throw ValidationError("algorithm.name", "q-power subproblem unsupported here");
      need(e.smooth->infimum.has_value(), "known infimum");
    }
  }
  if (name == "dca") {
    need(e.dc.has_value(), "DC decomposition");
    if (e.dc->prox_g.single_valued && !e.dc->prox_g.single_valued(gamma)) {
      throw ValidationError("algorithm.gamma", "prox of g not single-valued");
    }
  }
  if (name == "shifted-ppa") {
    if (!(kappa > 0.0)) throw ValidationError("algorithm.kappa", "must be positive");
    if (cond == "derived" && !(gamma > 2.0 * kappa)) {
      throw ValidationError("algorithm.gamma", "derived step condition needs gamma > 2 kappa");
    }
    if (cond == "stated" && !(gamma < 1.0 / (2.0 * kappa))) {
      throw ValidationError("algorithm.gamma", "stated step condition needs gamma < 1/(2 kappa)");
    }
  }
}

void validate_certificates(Json& certs, const std::string& algorithm, const OperatorEntry& e) {
  if (!certs.is_array()) throw ValidationError("certificates", "must be an array");
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const std::string path = "certificates[" + std::to_string(i) + "].";
    Json& c = certs[i];
    if (!c.is_object()) throw ValidationError(path.substr(0, path.size() - 1), "must be an object");
    const std::string h = text(c, path, "hypothesis", "");
    if (h == "H1") {
      positive(c, path, "alpha", 1.0);
      if (!(e.smooth && e.smooth->value) && algorithm != "dca") {
        throw ValidationError(path + "hypothesis", "H1 needs f-values on the trace");
      }
    } else if (h == "H2" || h == "H3") {
      positive(c, path, "beta", 1.0);
      const bool current = algorithm == "gdm";
      if ((h == "H3") != current) {
        throw ValidationError(path + "hypothesis",
                              h + " does not match the witness convention of " + algorithm);
      }
    } else if (h == "H4") {
      positive(c, path, "cluster_tol", 1e-6);
      positive(c, path, "value_tol", 1e-6);
      if (!(e.smooth && e.smooth->value)) {
        throw ValidationError(path + "hypothesis", "H4 needs a scalar function");
      }
    } else if (h == "RCLASS") {
      positive(c, path, "alpha", 1.0);
      positive(c, path, "beta", 1.0);
      const std::string w = text(c, path, "witnesses", "trace");
      if (w != "trace" && w != "operator") {
        throw ValidationError(path + "witnesses", "must be trace or operator");
      }
    } else {
      throw ValidationError(path + "hypothesis", "must be H1, H2, H3, H4 or RCLASS");
    }
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

IterateTrace run_algorithm(const Json& a, const OperatorEntry& e, const StopRule& stop) {
  const std::string name = a["name"].get<std::string>();
  const Point x0(a["x0"].get<std::vector<double>>());
  const double gamma = a["gamma"].get<double>();
  if (name == "ppa") return run_ppa(e, gamma, x0, stop);
  if (name == "gdm") return run_gdm(e, a["step"].get<double>(), x0, stop);
  if (name == "qpower") return run_qpower_prox(e, gamma, a["q"].get<double>(), x0, stop);
  if (name == "dca") return run_dca(e, gamma, x0, stop);
  const auto cond = a["step_condition"].get<std::string>() == "derived" ? StepCondition::Derived
                                                                         : StepCondition::Stated;
  return run_shifted_ppa(e, a["kappa"].get<double>(), gamma, x0, stop, cond);
}

Certificate run_certificate(const Json& c, const IterateTrace& trace, const OperatorEntry& e) {
  const std::string h = c["hypothesis"].get<std::string>();
  if (h == "H1") return check_h1(trace, c["alpha"].get<double>());
  if (h == "H2") return check_h2(trace, c["beta"].get<double>());
  if (h == "H3") return check_h3(trace, c["beta"].get<double>());
  if (h == "H4") return check_h4(trace, e, c["cluster_tol"].get<double>(), c["value_tol"].get<double>());
  const IterateTrace t =
      c["witnesses"].get<std::string>() == "operator" ? with_operator_witnesses(trace, e) : trace;
  return check_rclass(t, c["alpha"].get<double>(), c["beta"].get<double>());
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

void apply_override(Json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError(assignment, "override must look like key.subkey=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  Json value = Json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  Json* node = &config;
  std::stringstream ss(path);
  std::string key;
  std::vector<std::string> keys;
  while (std::getline(ss, key, '.')) {
    if (key.empty()) throw ValidationError(path, "empty key in override path");
    keys.push_back(key);
  }
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    if (!node->is_object()) throw ValidationError(path, "override traverses a non-object");
    if (!node->contains(keys[i])) (*node)[keys[i]] = Json::object();
    node = &(*node)[keys[i]];
  }
  if (!node->is_object()) throw ValidationError(path, "override traverses a non-object");
  (*node)[keys.back()] = value;
}

Json resolve_config(const Json& raw) {
  if (!raw.is_object()) throw ValidationError("config", "must be a JSON object");
  Json c = raw;
  const std::string kind = text(c, "", "experiment", "");
  if (std::find(experiment_kinds().begin(), experiment_kinds().end(), kind) ==
      experiment_kinds().end()) {
    throw ValidationError("experiment",
                          "must be modulus, lojasiewicz, plk, solve, certify or full-pipeline");
  }
  const std::string op = text(c, "", "operator", "");
  const OperatorEntry* ep = nullptr;
  try {
    ep = &catalog_lookup(op);
  } catch (const UnknownOperator&) {
    throw ValidationError("operator", "unknown operator '" + op + "'");
  }
  const OperatorEntry& e = *ep;
  text(c, "", "output_dir", "rcont-out");
  // ordered_json keeps its members in a vector: create every top-level key
  // before holding references into any of them.
  for (const char* key : {"stop", "distance_tolerance", "algorithm", "certificates", "analysis"}) {
    if (!c.contains(key)) c[key] = nullptr;
  }
  for (const char* key : {"stop", "algorithm", "analysis"}) {
    if (c[key].is_null()) c[key] = Json::object();
  }
  if (c["distance_tolerance"].is_null()) c["distance_tolerance"] = 1e-6;
  if (c["certificates"].is_null()) c["certificates"] = Json::array();

  Json& stop = section(c, "stop", "");
  parse_stop(stop);
  positive(c, "", "distance_tolerance", 1e-6);

  Json& a = section(c, "algorithm", "");
  if (is_solver_kind(kind)) validate_algorithm(a, e);

  if (kind == "certify" && c["certificates"].empty()) {
    throw ValidationError("certificates", "certify needs at least one certificate");
  }
  if (is_solver_kind(kind)) validate_certificates(c["certificates"], a["name"].get<std::string>(), e);

  Json& an = section(c, "analysis", "");
  std::string target = text(an, "analysis.", "target", "auto");
  if (target == "auto") {
    target = kind == "full-pipeline" && e.inverse ? "inverse" : "forward";
  }
  if (target != "forward" && target != "inverse") {
    throw ValidationError("analysis.target", "must be auto, forward or inverse");
  }
  if (target == "inverse" && !e.inverse) {
    throw ValidationError("analysis.target", "'" + op + "' has no closed-form inverse");
  }
  an["target"] = target;
  count(an, "analysis.", "samples_per_radius", 64, 1);
  count(an, "analysis.", "grid_count", 1001, 2);
  count(an, "analysis.", "seed", 0, 0);
  count(an, "analysis.", "threads", 1, 1);
  if (!an.contains("radii")) an["radii"] = Json{{"min", 1e-4}, {"max", 1e-1}, {"count", 16}};
  an["radii"] = parse_radii(an["radii"], "analysis.radii");

  const bool uses_map = kind == "modulus" || kind == "full-pipeline";
  const SetValuedMap& m = target_map(e, target);
  // Base point lives in the input space of the analysed object.
  const std::size_t base_dim = uses_map ? m.info().dim_in : e.dim();
  if (!an.contains("base_point")) {
    const Point b = target == "inverse" && uses_map ? Point::zero(base_dim)
                                                     : e.solution_set.project(Point::zero(e.dim()));
    an["base_point"] = b.to_vector();
  }
  vector_field(an["base_point"], "analysis.base_point", base_dim);

  const std::size_t window_dim = uses_map ? m.info().dim_out : e.dim();
  if (an.contains("window") && !an["window"].is_null()) {
    parse_window(an["window"], "analysis.window", window_dim);
  } else {
    an.erase("window");
    if (uses_map && m.info().window_required) {
      throw ValidationError("analysis.window", "'" + m.name() + "' requires a compact window");
    }
    if (kind == "lojasiewicz") {
      throw ValidationError("analysis.window", "the Lojasiewicz fit needs a window");
    }
  }

  if (kind == "lojasiewicz" && !(e.smooth && e.smooth->value)) {
    throw ValidationError("operator", "'" + op + "' has no scalar function");
  }
  if (kind == "plk") {
    if (!(e.smooth && e.smooth->value)) throw ValidationError("operator", "no scalar function");
    if (!e.subgradient && !(e.smooth && e.smooth->gradient)) {
      throw ValidationError("operator", "no subgradient oracle");
    }
    Json& p = section(an, "plk", "analysis.");
    PlkConfig cfg;
    cfg.M = positive(p, "analysis.plk.", "M", 1.0);
    cfg.q_exp = number(p, "analysis.plk.", "q_exp", 0.5);
    cfg.eta = positive(p, "analysis.plk.", "eta", 1.0);
    cfg.neighborhood_radius = positive(p, "analysis.plk.", "neighborhood_radius", 1.0);
    if (!(cfg.q_exp >= 0.0 && cfg.q_exp < 1.0)) {
      throw ValidationError("analysis.plk.q_exp", "must lie in [0, 1)");
    }
  }
  if (kind == "full-pipeline") {
    Json& g = section(an, "closed_graph", "analysis.");
    count(g, "analysis.closed_graph.", "n_sequences", 8, 1);
    positive(g, "analysis.closed_graph.", "tol", 1e-6);
  }
  return c;
}

Json RunReport::to_json() const {
  Json files = Json::array();
  for (const auto& m : manifest) {
    files.push_back({{"file", m.file}, {"sha256", m.sha256}, {"bytes", m.bytes}});
  }
  return Json{{"config", config},
              {"manifest", files},
              {"timings_ms", timings_ms},
              {"verdicts", verdicts},
              {"certificate_failed", certificate_failed}};
}

RunReport run_experiment(const Json& raw_config) {
  RunReport rep;
  rep.config = resolve_config(raw_config);
  const Json& c = rep.config;
  rep.timings_ms = Json::object();
  rep.verdicts = Json::object();
  const auto t_all = Clock::now();

  const fs::path out = c["output_dir"].get<std::string>();
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) {
    throw std::runtime_error("cannot create output directory '" + out.string() + "'");
  }

  std::vector<std::pair<std::string, std::string>> files;
  const OperatorEntry& e = entry_of(c);
  const std::string kind = c["experiment"].get<std::string>();
  const Json& an = c["analysis"];
  const bool uses_map = kind == "modulus" || kind == "full-pipeline";
  std::optional<Window> window;
  if (an.contains("window")) {
    Json w = an["window"];
    window = parse_window(w, "analysis.window",
                          uses_map ? target_map(e, an["target"].get<std::string>()).info().dim_out
                                   : e.dim());
  }
  const Point base(an["base_point"].get<std::vector<double>>());
  const auto seed = an["seed"].get<std::uint64_t>();

  std::optional<ModulusCurve> curve;
  auto do_modulus = [&] {
    const auto t0 = Clock::now();
    const SetValuedMap& m = target_map(e, an["target"].get<std::string>());
    curve = estimate_modulus(m, base, window, an["radii"].get<std::vector<double>>(),
                             an["samples_per_radius"].get<std::size_t>(), seed,
                             an["threads"].get<unsigned>());
    files.emplace_back("modulus.csv", modulus_csv(*curve));
    Json fit;
    if (curve->divergent) {
      fit = Json{{"L_hat", nullptr}, {"theta_hat", nullptr}, {"residual", nullptr},
                 {"degenerate", false}, {"divergent", true}};
    } else {
      fit = to_json(fit_holder(*curve));
    }
    files.emplace_back("fit.json", dump(fit));
    rep.verdicts["fit"] = fit;
    rep.timings_ms["modulus"] = ms_since(t0);
  };

  if (kind == "modulus") do_modulus();

  if (kind == "lojasiewicz") {
    const auto t0 = Clock::now();
    const LojFit fit = lojasiewicz_fit(e, *window, an["grid_count"].get<std::size_t>());
    files.emplace_back("loja.json", dump(to_json(fit)));
    rep.verdicts["lojasiewicz"] = {{"failed", fit.failed}, {"theta_hat", fit.theta_hat}};
    rep.timings_ms["lojasiewicz"] = ms_since(t0);
  }

  if (kind == "plk") {
    const auto t0 = Clock::now();
    const Json& p = an["plk"];
    PlkConfig cfg{p["M"].get<double>(), p["q_exp"].get<double>(), p["eta"].get<double>(),
                  p["neighborhood_radius"].get<double>()};
    const PlkResult res = check_plk_exponent(e, base, cfg, an["grid_count"].get<std::size_t>());
    files.emplace_back("plk.json", dump(to_json(res)));
    rep.verdicts["plk"] = to_string(res.verdict);
    rep.timings_ms["plk"] = ms_since(t0);
  }

  if (is_solver_kind(kind)) {
    if (kind == "full-pipeline") {
      do_modulus();
      const auto t0 = Clock::now();
      const SetValuedMap& m = target_map(e, an["target"].get<std::string>());
      const Json& g = an["closed_graph"];
      ClosedGraphOptions opts;
      opts.n_sequences = g["n_sequences"].get<std::size_t>();
      opts.tol = g["tol"].get<double>();
      opts.seed = seed;
      const Window k = window ? *window : Window::box(Point::zero(m.info().dim_out),
                                                      std::vector<double>(m.info().dim_out, 10.0));
      const ClosedGraphResult cg = closed_graph_test(m, base, k, opts);
      files.emplace_back("closed_graph.json", dump(to_json(cg)));
      rep.verdicts["closed_graph"] = to_string(cg.verdict);
      rep.timings_ms["closed_graph"] = ms_since(t0);
    }

    const auto t0 = Clock::now();
    const StopRule stop{c["stop"]["step_tol"].get<double>(), c["stop"]["max_iter"].get<std::size_t>(),
                        c["stop"]["divergence_guard"].get<double>()};
    const IterateTrace trace = run_algorithm(c["algorithm"], e, stop);
    rep.timings_ms["solve"] = ms_since(t0);
    const DistanceVerdict dv =
        distance_trace(trace, e.solution_set, c["distance_tolerance"].get<double>(),
                       curve ? &*curve : nullptr);
    files.emplace_back("trace.csv", trace_csv(trace, &dv.distances));
    Json dj = to_json(dv);
    dj["termination"] = to_string(trace.termination);
    files.emplace_back("distance.json", dump(dj));
    rep.verdicts["termination"] = to_string(trace.termination);
    rep.verdicts["converged"] = dv.converged;

    if (!c["certificates"].empty()) {
      const auto t1 = Clock::now();
      Json arr = Json::array();
      Json summary = Json::array();
      for (const auto& spec : c["certificates"]) {
        const Certificate cert = run_certificate(spec, trace, e);
        if (!cert.passed()) rep.certificate_failed = true;
        arr.push_back(to_json(cert));
        summary.push_back({{"hypothesis", to_string(cert.hypothesis)}, {"pass", cert.passed()}});
      }
      files.emplace_back("certificates.json", dump(arr));
      rep.verdicts["certificates"] = summary;
      rep.timings_ms["certify"] = ms_since(t1);
    }
  }

  for (const auto& [name, content] : files) {
    std::ofstream f(out / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + (out / name).string() + "'");
    f << content;
    if (!f) throw std::runtime_error("write failed for '" + (out / name).string() + "'");
    rep.manifest.push_back({name, sha256_hex(content), content.size()});
  }
  rep.timings_ms["total"] = ms_since(t_all);
  std::ofstream r(out / "report.json", std::ios::binary | std::ios::trunc);
  if (!r) throw std::runtime_error("cannot write report.json");
  r << dump(rep.to_json());
  return rep;
}

}  // namespace rcont
