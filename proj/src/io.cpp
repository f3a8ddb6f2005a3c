#include "rcont/io.hpp"

#include "rcont/setmap.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace rcont {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string modulus_csv(const ModulusCurve& curve) {
  std::ostringstream os;
  os << "sigma,rho_hat,samples\n";
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    os << format_double(curve.radii[i]) << ',' << format_double(curve.rho_hat[i]) << ','
       << curve.sample_counts[i] << '\n';
  }
  return os.str();
}

std::string trace_csv(const IterateTrace& trace, const std::vector<double>* distances) {
  const std::size_t dim = trace.iterates.empty() ? 1 : trace.iterates.front().dim();
  std::ostringstream os;
  os << 'k';
  if (dim == 1) {
    os << ",x";
  } else {
    for (std::size_t i = 0; i < dim; ++i) os << ",x" << i;
  }
  os << ",delta,f_value,witness_norm,xi,distance,fejer_ledger\n";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    os << k;
    for (std::size_t i = 0; i < dim; ++i) os << ',' << format_double(trace.iterates[k][i]);
    os << ',';
    if (k < trace.step_norms.size()) os << format_double(trace.step_norms[k]);
    os << ',';
    if (k < trace.f_values.size()) os << format_double(trace.f_values[k]);
    os << ',';
    if (auto it = trace.witnesses.find(k); it != trace.witnesses.end()) {
      os << format_double(it->second.norm());
    }
    os << ',';
    if (auto it = trace.xi.find(k); it != trace.xi.end()) os << format_double(it->second);
    os << ',';
    if (distances && k < distances->size()) os << format_double((*distances)[k]);
    os << ',';
    if (k < trace.fejer_ledger.size()) os << format_double(trace.fejer_ledger[k]);
    os << '\n';
  }
  return os.str();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Json to_json(const Point& p) { return Json(p.to_vector()); }

Json to_json(const HolderFit& fit) {
  return Json{{"L_hat", fit.L_hat},
              {"theta_hat", fit.theta_hat},
              {"residual", fit.residual},
              {"degenerate", fit.degenerate},
              {"divergent", fit.divergent}};
}

Json to_json(const Certificate& cert) {
  Json params = Json::object();
  for (const auto& [k, v] : cert.params) params[k] = v;
  Json j{{"hypothesis", to_string(cert.hypothesis)},
         {"params", params},
         {"pass", cert.passed()},
         {"first_violation", nullptr},
         {"vacuous", cert.vacuous}};
  if (cert.first_violation) j["first_violation"] = *cert.first_violation;
  if (cert.inconclusive) j["inconclusive"] = true;
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

Json to_json(const LojFit& fit) {
  Json worst = Json::array();
  for (const auto& s : fit.worst) {
    worst.push_back(
        {{"x", to_json(s.x)}, {"distance", s.distance}, {"abs_f", s.abs_f}, {"ratio", s.ratio}});
  }
  Json j{{"failed", fit.failed},
         {"theta_hat", fit.theta_hat},
         {"c_hat", fit.c_hat},
         {"slack", fit.slack},
         {"level_thetas", fit.level_thetas},
         {"worst", worst}};
  return j;
}

Json to_json(const PlkResult& res) {
  Json viol = Json::array();
  for (std::size_t i = 0; i < res.violations.size() && i < 20; ++i) {
    viol.push_back(to_json(res.violations[i]));
  }
  return Json{{"verdict", to_string(res.verdict)},
              {"band_points", res.band_points},
              {"min_product", res.min_product},
              {"violation_count", res.violations.size()},
              {"violations", viol}};
}

Json to_json(const ClosedGraphResult& res) {
  Json j{{"verdict", to_string(res.verdict)},
         {"chains_tried", res.chains_tried},
         {"chains_accepted", res.chains_accepted},
         {"worst_gap", res.worst_gap},
         {"witness", nullptr}};
  if (res.witness) j["witness"] = to_json(*res.witness);
  return j;
}

Json to_json(const DistanceVerdict& v) {
  Json j{{"tolerance", v.tolerance},
         {"converged", v.converged},
         {"settle_index", nullptr},
         {"final_distance", v.distances.empty() ? 0.0 : v.distances.back()},
         {"iterates", v.distances.size()}};
  if (v.settle_index) j["settle_index"] = *v.settle_index;
  if (v.modulus_checked) {
    j["modulus_link"] = {{"checked", v.link.size()},
                         {"violations", v.link_violations},
                         {"out_of_range", v.link_out_of_range},
                         {"pass", v.link_ok()}};
  }
  return j;
}

Json to_json(const InverseLipschitzResult& res) {
  const bool full = res.rank == InverseLipschitzResult::Rank::Full;
  return Json{{"rank", full ? "FULL-RANK" : "RANK-DEFICIENT"},
              {"c_hat", res.c_hat},
              {"pass", res.pass},
              {"tested", res.tested},
              {"violations", res.violations},
              {"worst_ratio", res.worst_ratio}};
}

Json catalog_json() {
  Json arr = Json::array();
  for (const auto& name : catalog_names()) {
    const OperatorEntry& e = catalog_lookup(name);
    const MapInfo& info = e.forward.info();
    Json oracles = Json::array();
    if (e.inverse) oracles.push_back("inverse");
    if (e.prox) oracles.push_back("prox");
    if (e.witness) oracles.push_back("witness");
    if (e.subgradient) oracles.push_back("subgradient");
    if (e.smooth && e.smooth->value) oracles.push_back("value");
    if (e.smooth && e.smooth->gradient) oracles.push_back("gradient");
    if (e.smooth && e.smooth->jacobian) oracles.push_back("jacobian");
    if (e.quadratic) oracles.push_back("quadratic");
    if (e.dc) oracles.push_back("dc");
    Json j{{"name", name},
           {"description", info.description},
           {"dim_in", info.dim_in},
           {"dim_out", info.dim_out},
           {"window_required", info.window_required},
           {"inverse_window_required", e.inverse ? e.inverse->info().window_required : false},
           {"monotone", e.monotone},
           {"prox", static_cast<bool>(e.prox)},
           {"oracles", oracles}};
    if (e.prox) j["prox_domain"] = e.prox->domain_note;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace rcont
