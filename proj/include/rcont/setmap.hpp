#pragma once

#include "rcont/geometry.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcont {

struct MapInfo {
  std::string name;
  std::string description;
  std::size_t dim_in = 1;
  std::size_t dim_out = 1;
  /// Unwindowed evaluation may be unbounded; eval() without a window throws.
  bool window_required = false;
  /// Spacing used when a value set contains a continuum (an interval) and is
  /// returned as a discretized PointSet. Absent for exactly finite maps.
  std::optional<double> resolution;
};

/// A set-valued mapping x => A(x) subset of R^m.
///
/// The evaluator returns the value set at x; when a window is supplied it
/// may use it to bound the discretization of continuum pieces. eval() then
/// keeps only the points inside the window, so windowed results are always
/// contained in the window. The optional distance oracle returns the exact
/// d(y, A(x)) and is what membership tests use.
class SetValuedMap {
 public:
  using Evaluator = std::function<PointSet(const Point& x, const Window* window)>;
  using DistanceOracle = std::function<double(const Point& x, const Point& y)>;

  SetValuedMap(MapInfo info, Evaluator evaluator, DistanceOracle distance = nullptr);

  /// Single-valued map x -> {f(x)}.
  static SetValuedMap single_valued(MapInfo info, std::function<Point(const Point&)> f);
  /// Map with finitely many values per point.
  static SetValuedMap finite_valued(MapInfo info,
                                    std::function<std::vector<Point>(const Point&)> values);

  const MapInfo& info() const { return info_; }
  const std::string& name() const { return info_.name; }
  bool has_distance_oracle() const { return static_cast<bool>(distance_); }

  /// A(x), or A(x) intersected with the window.
  PointSet eval(const Point& x, const std::optional<Window>& window = std::nullopt) const;

  /// Exact d(y, A(x)) when an oracle is registered, otherwise the distance
  /// to the (unwindowed) value set; kInfiniteExcess when A(x) is empty.
  double distance_to_values(const Point& x, const Point& y) const;

  bool contains(const Point& x, const Point& y, double tol = kMembershipTol) const;

 private:
  MapInfo info_;
  Evaluator evaluator_;
  DistanceOracle distance_;
};

/// Grid of the interval [lo, hi] (either end may be infinite) intersected
/// with the window's first axis, with spacing at most `resolution` and both
/// ends exact. Unbounded intervals need a window.
std::vector<double> discretize_interval(double lo, double hi, double resolution,
                                        const Window* window);

/// Resolvent oracle J_{gamma A}(y) = (gamma A + I)^{-1}(y).
struct ProxOracle {
  std::function<Point(double gamma, const Point& y)> rule;
  /// Values of gamma for which the resolvent is single-valued.
  std::function<bool(double gamma)> single_valued;
  std::string domain_note;
};

/// Closed-form calculus attached to a catalog entry.
struct SmoothData {
  std::function<double(const Point&)> value;        // scalar objective f
  std::function<Point(const Point&)> gradient;      // grad f
  std::function<Point(const Point&)> residual;      // F with S = F^{-1}(0)
  std::function<Eigen::MatrixXd(const Point&)> jacobian;  // Jacobian of F
  std::optional<double> infimum;                    // inf f, when known
};

/// f(x) = 0.5 x'Qx - b'x with Q symmetric positive definite.
struct QuadraticForm {
  Eigen::MatrixXd Q;
  Eigen::VectorXd b;
};

/// f = g - h with g convex (through its resolvent) and h convex, smooth.
struct DcData {
  ProxOracle prox_g;
  std::function<Point(const Point&)> grad_h;
  std::function<double(const Point&)> g;
  std::function<double(const Point&)> h;
};

struct OperatorEntry {
  SetValuedMap forward;
  std::optional<SetValuedMap> inverse;
  Region solution_set;
  std::optional<ProxOracle> prox{};
  /// Selection x -> w in A(x) (the least-norm element where it matters).
  std::function<Point(const Point&)> witness{};
  std::optional<SmoothData> smooth{};
  /// x => subdifferential of the scalar objective; equals `forward` for
  /// entries whose inclusion is already of subgradient type.
  std::optional<SetValuedMap> subgradient{};
  std::optional<QuadraticForm> quadratic{};
  std::optional<DcData> dc{};
  bool monotone = false;

  const std::string& name() const { return forward.name(); }
  std::size_t dim() const { return forward.info().dim_in; }
};

/// Registered entry by name; throws UnknownOperator.
const OperatorEntry& catalog_lookup(std::string_view name);
std::vector<std::string> catalog_names();

/// The closed-form inverse map; throws MissingOracle when none is registered.
SetValuedMap invert(const OperatorEntry& entry);

/// Factories for entries that take parameters; the catalog registers one
/// instance of each under a fixed name.
OperatorEntry make_quad_entry(std::string name, const Eigen::MatrixXd& Q,
                              const Eigen::VectorXd& b);

}  // namespace rcont
