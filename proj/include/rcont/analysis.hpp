#pragma once

#include "rcont/geometry.hpp"
#include "rcont/setmap.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rcont {

/// Estimated modulus rho_hat over a radius grid, per (base point, window).
struct ModulusCurve {
  Point base_point;
  std::optional<Window> window;
  std::vector<double> radii;
  std::vector<double> rho_hat;
  std::vector<std::size_t> sample_counts;
  std::uint64_t seed = 0;
  bool divergent = false;
};

/// `count` radii log-spaced over [lo, hi], both ends exact.
std::vector<double> log_radii(double lo, double hi, std::size_t count);

/// rho_hat[i] is the running max over j <= i of the largest sampled excess
/// e(A(x) cap K, A(x_bar)) over x in the closed ball of radius radii[j].
///
/// Reference distances use the map's exact oracle when it has one; otherwise
/// A(x_bar) is evaluated unwindowed, or with K scaled by 10 for maps that
/// require a window. In 1-d each ball is a uniform grid (both ends
/// included); in higher dimension it is Halton-sampled from the seed.
/// `threads` > 1 splits the radii across threads; the result is identical.
ModulusCurve estimate_modulus(const SetValuedMap& m, const Point& x_bar,
                              const std::optional<Window>& k, const std::vector<double>& radii,
                              std::size_t samples_per_radius = 64, std::uint64_t seed = 0,
                              unsigned threads = 1);

/// Piecewise-linear rho_hat through (0, 0) and the grid; nullopt past the
/// largest radius.
std::optional<double> interpolate_modulus(const ModulusCurve& curve, double r);

struct HolderFit {
  double L_hat = 0.0;
  double theta_hat = 0.0;
  double residual = 0.0;  // RMS deviation in log-log space
  bool degenerate = false;
  bool divergent = false;
  std::size_t points_used = 0;
};

/// Least-squares line through (log sigma, log rho_hat) over the positive
/// entries. Throws UnboundedExcess on a divergent curve.
HolderFit fit_holder(const ModulusCurve& curve);

enum class Verdict { Pass, Fail, Inconclusive };

struct ClosedGraphResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Point> witness;  // violating limit on Fail
  std::size_t chains_tried = 0;
  std::size_t chains_accepted = 0;
  double worst_gap = 0.0;  // largest d(limit, A(x_bar)) over accepted chains
};

struct ClosedGraphOptions {
  std::size_t n_sequences = 8;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  double initial_radius = 0.5;
  std::size_t length = 60;
  /// Chains whose last quarter spreads more than this are discarded.
  std::optional<double> cauchy_tol;
  std::size_t max_starts = 16;
};

/// Sequences x_j = x_bar + r0 2^-j u toward x_bar; selections y_j in
/// A(x_j) cap K are chained by nearest neighbour from each start value.
ClosedGraphResult closed_graph_test(const SetValuedMap& m, const Point& x_bar, const Window& k,
                                    const ClosedGraphOptions& opts = {});

struct LojSample {
  Point x;
  double distance = 0.0;
  double abs_f = 0.0;
  double ratio = 0.0;  // d^theta / |f|
};

struct LojFit {
  bool failed = false;
  double theta_hat = 0.0;
  double c_hat = 0.0;
  std::optional<Window> window;
  double slack = 0.0;  // min over the grid of c|f| - d^theta
  std::vector<double> level_thetas;
  std::vector<LojSample> worst;
};

inline constexpr double kLojExponentCap = 100.0;

/// theta from the 16 grid points nearest S (slope of log|f| on log d,
/// clamped to >= 1), then c = max d^theta/|f| over the grid. The grid is
/// refined twice; failure is an exponent above the cap that does not
/// decrease under refinement.
LojFit lojasiewicz_fit(const OperatorEntry& entry, const Window& k, std::size_t grid_count = 1001);

struct PlkConfig {
  double M = 1.0;
  double q_exp = 0.5;
  double eta = 1.0;
  double neighborhood_radius = 1.0;

  void validate() const;
};

struct PlkResult {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Point> violations;
  std::size_t band_points = 0;
  double min_product = 0.0;
};

/// M(1-q)(f(x)-f(x_bar))^-q d(0, df(x)) >= 1 on the grid points of the
/// ball around x_bar that fall strictly inside the band (f(x_bar), f(x_bar)+eta).
PlkResult check_plk_exponent(const OperatorEntry& entry, const Point& x_bar, const PlkConfig& cfg,
                             std::size_t grid_count = 2001);

struct InverseLipschitzResult {
  enum class Rank { Full, Deficient };
  Rank rank = Rank::Deficient;
  double c_hat = 0.0;
  bool pass = false;
  std::size_t tested = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  // max d(x,S) c_hat / ||F(x)||
};

struct InverseLipschitzOptions {
  std::size_t s_samples = 64;
  std::size_t test_samples = 256;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  /// Radius of the test balls around sampled solutions; defaults to 5% of
  /// the smallest window extent.
  std::optional<double> test_radius;
};

InverseLipschitzResult certify_inverse_lipschitz(const OperatorEntry& entry, const Window& k,
                                                 const InverseLipschitzOptions& opts = {});

struct CalmnessResult {
  double kappa_hat = 0.0;
  bool vacuous = false;
  std::size_t samples = 0;
};

CalmnessResult calmness_estimate(const SetValuedMap& m, const Point& x_bar, const Point& y_bar,
                                 double u_radius, double v_radius, std::size_t samples = 256,
                                 std::uint64_t seed = 0);

}  // namespace rcont
