#include "rcont/certify.hpp"

#include "rcont/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rcont {

namespace {

constexpr std::size_t kClusterNeighbors = 10;
constexpr std::size_t kMinH4Iterates = 20;
// The cluster search looks at this many trailing iterates.
constexpr std::size_t kClusterScan = 2000;

bool le(double lhs, double rhs) { return lhs <= rhs + kCertTol * (1.0 + std::abs(rhs)); }

void record(Certificate& c, std::size_t index, bool pass, double lhs, double rhs) {
  c.per_step.push_back({index, pass, lhs, rhs});
  if (!pass && !c.first_violation) c.first_violation = index;
}

std::size_t steps(const IterateTrace& t) { return t.step_norms.size(); }

void require_witnesses(const IterateTrace& t, WitnessConvention expected, const char* who) {
  if (t.witnesses.empty()) throw PreconditionError(std::string(who) + ": trace has no witnesses");
  if (t.convention != expected) {
    throw PreconditionError(std::string(who) +
                            ": witnesses are attached under the other index convention");
  }
}

Certificate relative_error(const IterateTrace& t, double beta, Hypothesis h) {
  if (!(beta > 0.0)) throw PreconditionError("relative error check: beta must be positive");
  const bool next = h == Hypothesis::H2;
  require_witnesses(t, next ? WitnessConvention::NextIterate : WitnessConvention::CurrentIterate,
                    next ? "check_h2" : "check_h3");
  Certificate c;
  c.hypothesis = h;
  c.params = {{"beta", beta}};
  for (std::size_t k = 0; k < steps(t); ++k) {
    const auto it = t.witnesses.find(next ? k + 1 : k);
    if (it == t.witnesses.end()) continue;
    const double lhs = it->second.norm();
    const double rhs = beta * t.step_norms[k];
    record(c, k, le(lhs, rhs), lhs, rhs);
  }
  c.vacuous = c.per_step.empty();
  return c;
}

}  // namespace

const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::H1:
      return "H1";
    case Hypothesis::H2:
      return "H2";
    case Hypothesis::H3:
      return "H3";
    case Hypothesis::H4:
      return "H4";
    case Hypothesis::RClass:
      return "RCLASS";
  }
  return "?";
}

Certificate check_h1(const IterateTrace& trace, double alpha) {
  if (!(alpha > 0.0)) throw PreconditionError("check_h1: alpha must be positive");
  if (!trace.has_f_values()) throw PreconditionError("check_h1: trace has no f-values");
  Certificate c;
  c.hypothesis = Hypothesis::H1;
  c.params = {{"alpha", alpha}};
  for (std::size_t k = 0; k < steps(trace); ++k) {
    const double fk = trace.f_values[k];
    const double fn = trace.f_values[k + 1];
    const double lhs = fk - fn;
    const double rhs = alpha * trace.step_norms[k] * trace.step_norms[k];
    const double slack = kCertTol * (1.0 + std::abs(rhs) + std::abs(fk));
    record(c, k, lhs + slack >= rhs, lhs, rhs);
  }
  c.vacuous = c.per_step.empty();
  return c;
}

Certificate check_h2(const IterateTrace& trace, double beta) {
  return relative_error(trace, beta, Hypothesis::H2);
}

Certificate check_h3(const IterateTrace& trace, double beta) {
  return relative_error(trace, beta, Hypothesis::H3);
}

Certificate check_h4(const IterateTrace& trace, const OperatorEntry& entry, double cluster_tol,
                     double value_tol) {
  if (!trace.has_f_values()) throw PreconditionError("check_h4: trace has no f-values");
  if (!entry.smooth || !entry.smooth->value) {
    throw MissingOracle("check_h4: '" + entry.name() + "' has no scalar function");
  }
  Certificate c;
  c.hypothesis = Hypothesis::H4;
  c.params = {{"cluster_tol", cluster_tol}, {"value_tol", value_tol}};
  const std::size_t n = trace.iterates.size();
  if (n < kMinH4Iterates) {
    c.inconclusive = true;
    c.note = "fewer than 20 iterates";
    return c;
  }
  const std::size_t first = n > kClusterScan ? n - kClusterScan : 0;
  std::size_t best = first;
  double best_radius = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_nbrs;
  std::vector<std::pair<double, std::size_t>> d;
  for (std::size_t i = first; i < n; ++i) {
    d.clear();
    for (std::size_t j = first; j < n; ++j) {
      if (j != i) d.emplace_back(distance(trace.iterates[i], trace.iterates[j]), j);
    }
    std::nth_element(d.begin(), d.begin() + (kClusterNeighbors - 1), d.end());
    const double radius = d[kClusterNeighbors - 1].first;
    if (radius < best_radius) {
      best_radius = radius;
      best = i;
      std::sort(d.begin(), d.begin() + kClusterNeighbors);
      best_nbrs.clear();
      for (std::size_t t = 0; t < kClusterNeighbors; ++t) best_nbrs.push_back(d[t].second);
    }
  }
  c.params["cluster_index"] = static_cast<double>(best);
  c.params["cluster_radius"] = best_radius;
  if (!(best_radius <= cluster_tol)) {
    c.note = "no cluster point found";
    record(c, best, false, best_radius, cluster_tol);
    return c;
  }
  const double f_bar = entry.smooth->value(trace.iterates[best]);
  std::sort(best_nbrs.begin(), best_nbrs.end());
  for (const auto j : best_nbrs) {
    const double gap = std::abs(trace.f_values[j] - f_bar);
    record(c, j, le(gap, value_tol), gap, value_tol);
  }
  return c;
}

Certificate check_rclass(const IterateTrace& trace, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw PreconditionError("check_rclass: alpha and beta must be positive");
  }
  if (trace.xi.empty()) throw PreconditionError("check_rclass: trace has no xi values");
  if (trace.witnesses.empty()) throw PreconditionError("check_rclass: trace has no witnesses");
  Certificate c;
  c.hypothesis = Hypothesis::RClass;
  c.params = {{"alpha", alpha}, {"beta", beta}};
  for (const auto& [j, w] : trace.witnesses) {
    const auto it = trace.xi.find(j);
    if (it == trace.xi.end()) continue;
    const double lhs = w.norm();
    const double rhs = alpha * std::pow(it->second, beta);
    record(c, j, le(lhs, rhs), lhs, rhs);
  }
  c.vacuous = c.per_step.empty();

  std::vector<double> xs;
  for (const auto& [j, v] : trace.xi) xs.push_back(v);
  const std::size_t tail = std::min(kConvergenceWindow, xs.size());
  for (std::size_t i = xs.size() - tail + 1; i < xs.size(); ++i) {
    if (!le(xs[i], xs[i - 1])) {
      c.tail_ok = false;
      c.note = "xi increases over the tail";
    }
  }
  if (c.tail_ok && !(xs.back() <= 10.0 * trace.stop.step_tol)) {
    c.tail_ok = false;
    c.note = "xi does not reach 10 step_tol";
  }
  return c;
}

double minimal_relative_error_beta(const IterateTrace& trace) {
  const bool next = trace.convention == WitnessConvention::NextIterate;
  double beta = 0.0;
  for (std::size_t k = 0; k < steps(trace); ++k) {
    const auto it = trace.witnesses.find(next ? k + 1 : k);
    if (it == trace.witnesses.end()) continue;
    const double w = it->second.norm();
    const double dk = trace.step_norms[k];
    if (w == 0.0) continue;
    beta = std::max(beta, dk == 0.0 ? std::numeric_limits<double>::infinity() : w / dk);
  }
  return beta;
}

IterateTrace with_operator_witnesses(const IterateTrace& trace, const OperatorEntry& entry) {
  if (!entry.witness) throw MissingOracle("with_operator_witnesses: no witness selection");
  IterateTrace out = trace;
  out.witnesses.clear();
  out.xi.clear();
  out.convention = WitnessConvention::CurrentIterate;
  out.witness_target = WitnessTarget::Forward;
  for (std::size_t k = 0; k < steps(trace); ++k) {
    out.witnesses.emplace(k, entry.witness(trace.iterates[k]));
    out.xi.emplace(k, trace.step_norms[k]);
  }
  return out;
}

std::optional<std::size_t> witness_membership_violation(const IterateTrace& trace,
                                                        const OperatorEntry& entry, double tol) {
  const SetValuedMap& m = trace.witness_target == WitnessTarget::Subgradient && entry.subgradient
                              ? *entry.subgradient
                              : entry.forward;
  for (const auto& [j, w] : trace.witnesses) {
    if (!m.contains(trace.iterates.at(j), w, tol)) return j;
  }
  return std::nullopt;
}

DistanceVerdict distance_trace(const IterateTrace& trace, const Region& s, double tolerance,
                               const ModulusCurve* modulus) {
  if (s.kind() == Region::Kind::Points && s.point_list().empty()) {
    throw EmptySetError("distance_trace: empty solution set");
  }
  if (!(tolerance > 0.0)) throw PreconditionError("distance_trace: tolerance must be positive");
  DistanceVerdict v;
  v.tolerance = tolerance;
  for (const auto& x : trace.iterates) v.distances.push_back(s.distance(x));

  const std::size_t n = v.distances.size();
  std::size_t settle = n;
  while (settle > 0 && v.distances[settle - 1] < tolerance) --settle;
  if (settle < n) v.settle_index = settle;
  v.converged = v.settle_index && (n - settle >= kConvergenceWindow ||
                                   trace.termination == Termination::ToleranceMet);

  if (modulus) {
    v.modulus_checked = true;
    for (const auto& [j, w] : trace.witnesses) {
      ModulusLinkCheck chk;
      chk.index = j;
      chk.distance = v.distances.at(j);
      chk.witness_norm = w.norm();
      const auto rho = interpolate_modulus(*modulus, chk.witness_norm);
      if (!rho) {
        chk.status = ModulusLinkCheck::Status::OutOfRange;
        ++v.link_out_of_range;
      } else {
        chk.bound = (1.0 + kModulusSlack) * *rho;
        if (chk.distance <= chk.bound + kCertTol) {
          chk.status = ModulusLinkCheck::Status::Ok;
        } else {
          chk.status = ModulusLinkCheck::Status::Violation;
          ++v.link_violations;
        }
      }
      v.link.push_back(chk);
    }
  }
  return v;
}

}  // namespace rcont
