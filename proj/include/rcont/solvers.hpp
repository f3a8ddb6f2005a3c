#pragma once

#include "rcont/geometry.hpp"
#include "rcont/setmap.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rcont {

struct StopRule {
  double step_tol = 1e-10;
  std::size_t max_iter = 100000;
  double divergence_guard = 1e12;  // ceiling on the iterate norm

  void validate() const;
};

enum class Termination { ToleranceMet, MaxIterations, Divergence };

/// Where a witness sits relative to the step it certifies: w_{k+1} for the
/// step x_k -> x_{k+1} (relative-error form) or w_k (modified form).
enum class WitnessConvention { NextIterate, CurrentIterate };

/// Which catalog map the witnesses belong to.
enum class WitnessTarget { Forward, Subgradient };

struct IterateTrace {
  std::string algorithm;
  std::map<std::string, double> parameters;
  StopRule stop;
  std::vector<Point> iterates;
  std::vector<double> step_norms;  // Delta_k = ||x_{k+1} - x_k||
  std::vector<double> f_values;    // f(x_k) when the entry has a value function
  std::map<std::size_t, Point> witnesses;
  WitnessConvention convention = WitnessConvention::NextIterate;
  WitnessTarget witness_target = WitnessTarget::Forward;
  std::map<std::size_t, double> xi;
  std::vector<double> fejer_ledger;  // shifted PPA only, one per step
  std::optional<Point> anchor;       // x_bar used by the ledger
  Termination termination = Termination::MaxIterations;

  bool has_f_values() const { return !f_values.empty(); }
  std::size_t size() const { return iterates.size(); }
};

const char* to_string(Termination t);

/// J_{gamma A}(y); throws PreconditionError outside the oracle's range.
Point resolvent(const ProxOracle& p, double gamma, const Point& y);

/// x_{k+1} = J_{gamma A}(x_k); w_{k+1} = (x_k - x_{k+1})/gamma.
IterateTrace run_ppa(const OperatorEntry& entry, double gamma, const Point& x0,
                     const StopRule& stop = {});

/// x_{k+1} = x_k - step grad f(x_k); w_k = grad f(x_k).
IterateTrace run_gdm(const OperatorEntry& entry, double step, const Point& x0,
                     const StopRule& stop = {});

/// x_{k+1} in argmin f(x) + gamma ||x - x_k||^q;
/// w_{k+1} = -gamma q ||Delta_k||^(q-2) (x_{k+1} - x_k).
IterateTrace run_qpower_prox(const OperatorEntry& entry, double gamma, double q, const Point& x0,
                             const StopRule& stop = {});

/// x_{k+1} = J_{gamma dg}(x_k + gamma grad h(x_k));
/// r_{k+1} = grad h(x_k) - grad h(x_{k+1}) - (x_{k+1} - x_k)/gamma.
IterateTrace run_dca(const OperatorEntry& entry, double gamma, const Point& x0,
                     const StopRule& stop = {});

enum class StepCondition { Stated, Derived };

/// Resolvent iteration for A + kappa I type operators with the ledger
/// ||x_{k+1}-x_bar||^2 - ||x_k-x_bar||^2 + (1 - 2 kappa/gamma) Delta_k^2.
/// Derived mode requires gamma > 2 kappa; Stated requires
/// gamma < 1/(2 kappa). x_bar defaults to the projection of x0 onto S.
IterateTrace run_shifted_ppa(const OperatorEntry& entry, double kappa, double gamma,
                             const Point& x0, const StopRule& stop = {},
                             StepCondition condition = StepCondition::Derived,
                             const std::optional<Point>& anchor = std::nullopt);

}  // namespace rcont
