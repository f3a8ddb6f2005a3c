#pragma once

#include "rcont/analysis.hpp"
#include "rcont/solvers.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rcont {

enum class Hypothesis { H1, H2, H3, H4, RClass };

const char* to_string(Hypothesis h);

struct StepCheck {
  std::size_t index = 0;
  bool pass = true;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct Certificate {
  Hypothesis hypothesis = Hypothesis::H1;
  std::map<std::string, double> params;
  std::vector<StepCheck> per_step;
  std::optional<std::size_t> first_violation;
  bool vacuous = false;
  /// H4 on short traces; the tail test of RCLASS failing lands in `note`.
  bool inconclusive = false;
  bool tail_ok = true;
  std::string note;

  bool passed() const { return !vacuous && !inconclusive && tail_ok && !first_violation; }
};

/// Absolute and relative slack used by every inequality check.
inline constexpr double kCertTol = 1e-12;

/// f(x_k) - f(x_{k+1}) >= alpha Delta_k^2.
Certificate check_h1(const IterateTrace& trace, double alpha);
/// ||w_{k+1}|| <= beta Delta_k, from the first witnessed index on.
Certificate check_h2(const IterateTrace& trace, double beta);
/// ||w_k|| <= beta Delta_k.
Certificate check_h3(const IterateTrace& trace, double beta);
/// f-values along the iterates nearest the densest cluster tend to f at
/// the cluster point.
Certificate check_h4(const IterateTrace& trace, const OperatorEntry& entry,
                     double cluster_tol = 1e-6, double value_tol = 1e-6);
/// ||w_k|| <= alpha xi(k)^beta at every witnessed index, plus xi -> 0 over
/// the tail: the last 10 values nonincreasing and the final one at most
/// 10 step_tol.
Certificate check_rclass(const IterateTrace& trace, double alpha, double beta);

/// Smallest beta passing (H2)/(H3) for the trace's own convention.
double minimal_relative_error_beta(const IterateTrace& trace);

/// Witnesses replaced by the entry's selection w_k = witness(x_k) at every
/// stepped index k, with xi(k) = Delta_k; the R-class view of any trace.
IterateTrace with_operator_witnesses(const IterateTrace& trace, const OperatorEntry& entry);

/// First index whose witness is farther than tol from the map it claims to
/// belong to.
std::optional<std::size_t> witness_membership_violation(const IterateTrace& trace,
                                                        const OperatorEntry& entry,
                                                        double tol = kMembershipTol);

struct ModulusLinkCheck {
  enum class Status { Ok, Violation, OutOfRange };
  std::size_t index = 0;
  double distance = 0.0;
  double witness_norm = 0.0;
  double bound = 0.0;
  Status status = Status::Ok;
};

struct DistanceVerdict {
  std::vector<double> distances;
  double tolerance = 0.0;
  bool converged = false;
  std::optional<std::size_t> settle_index;  // first k with every later d below tol
  bool modulus_checked = false;
  std::vector<ModulusLinkCheck> link;
  std::size_t link_violations = 0;
  std::size_t link_out_of_range = 0;

  bool link_ok() const { return link_violations == 0; }
};

inline constexpr std::size_t kConvergenceWindow = 10;
inline constexpr double kModulusSlack = 0.1;

/// Converged when the last 10 distances are below tolerance, or when the
/// run stopped on its step tolerance with a settled tail shorter than that.
DistanceVerdict distance_trace(const IterateTrace& trace, const Region& s, double tolerance,
                               const ModulusCurve* modulus = nullptr);

}  // namespace rcont
