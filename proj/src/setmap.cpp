#include "rcont/setmap.hpp"

#include "rcont/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rcont {

SetValuedMap::SetValuedMap(MapInfo info, Evaluator evaluator, DistanceOracle distance)
    : info_(std::move(info)), evaluator_(std::move(evaluator)), distance_(std::move(distance)) {
  if (info_.dim_in == 0 || info_.dim_out == 0) {
    throw PreconditionError("SetValuedMap: dimensions must be positive");
  }
  if (!evaluator_) throw PreconditionError("SetValuedMap: evaluator required");
}

SetValuedMap SetValuedMap::single_valued(MapInfo info, std::function<Point(const Point&)> f) {
  const std::size_t m = info.dim_out;
  auto eval = [f, m](const Point& x, const Window*) { return PointSet(m, {f(x)}); };
  auto dist = [f](const Point& x, const Point& y) { return distance(y, f(x)); };
  return SetValuedMap(std::move(info), eval, dist);
}

SetValuedMap SetValuedMap::finite_valued(
    MapInfo info, std::function<std::vector<Point>(const Point&)> values) {
  const std::size_t m = info.dim_out;
  auto eval = [values, m](const Point& x, const Window*) { return PointSet(m, values(x)); };
  auto dist = [values, m](const Point& x, const Point& y) {
    const PointSet s(m, values(x));
    return s.empty() ? kInfiniteExcess : distance_to_set(y, s);
  };
  return SetValuedMap(std::move(info), eval, dist);
}

PointSet SetValuedMap::eval(const Point& x, const std::optional<Window>& window) const {
  if (x.dim() != info_.dim_in) {
    throw DimensionMismatch("eval: map '" + info_.name + "' expects dimension " +
                            std::to_string(info_.dim_in));
  }
  if (window && window->dim() != info_.dim_out) {
    throw DimensionMismatch("eval: window dimension does not match the value space of '" +
                            info_.name + "'");
  }
  if (info_.window_required && !window) {
    throw WindowRequired("eval: map '" + info_.name + "' requires a compact window");
  }
  PointSet raw = evaluator_(x, window ? &*window : nullptr);
  if (raw.dim() != info_.dim_out) {
    throw DimensionMismatch("eval: evaluator of '" + info_.name + "' returned wrong dimension");
  }
  if (!window) return raw;
  PointSet kept(info_.dim_out);
  for (const auto& p : raw) {
    if (window->contains(p)) kept.add(p);
  }
  return kept;
}

double SetValuedMap::distance_to_values(const Point& x, const Point& y) const {
  if (y.dim() != info_.dim_out) throw DimensionMismatch("distance_to_values: dimension");
  if (distance_) return distance_(x, y);
  const PointSet values = eval(x);
  return values.empty() ? kInfiniteExcess : distance_to_set(y, values);
}

bool SetValuedMap::contains(const Point& x, const Point& y, double tol) const {
  return distance_to_values(x, y) <= tol;
}

std::vector<double> discretize_interval(double lo, double hi, double resolution,
                                        const Window* window) {
  if (window) {
    lo = std::max(lo, window->lower(0));
    hi = std::min(hi, window->upper(0));
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw WindowRequired("discretize_interval: unbounded value interval needs a window");
  }
  if (lo > hi) return {};
  if (lo == hi) return {lo};
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / resolution)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = std::clamp(lo + (hi - lo) * t, lo, hi);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

SetValuedMap invert(const OperatorEntry& entry) {
  if (!entry.inverse) {
    throw MissingOracle("invert: no closed-form inverse registered for '" + entry.name() + "'");
  }
  return *entry.inverse;
}

}  // namespace rcont
