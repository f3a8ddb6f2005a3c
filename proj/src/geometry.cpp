#include "rcont/geometry.hpp"

#include "rcont/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace rcont {

namespace {

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

constexpr std::array<std::uint64_t, 16> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19,
                                                    23, 29, 31, 37, 41, 43, 47, 53};

std::uint64_t halton_base(std::size_t axis) {
  if (axis >= kPrimes.size()) {
    throw PreconditionError("low-discrepancy sampling supports at most 16 dimensions");
  }
  return kPrimes[axis];
}

// Evenly spaced coordinates on [lo, hi] with both endpoints stored exactly.
double lattice_coord(double lo, double hi, std::size_t j, std::size_t n) {
  if (n == 1) return 0.5 * (lo + hi);
  if (j == 0) return lo;
  if (j + 1 == n) return hi;
  const double t = static_cast<double>(j) / static_cast<double>(n - 1);
  return std::clamp(lo + (hi - lo) * t, lo, hi);
}

std::size_t per_axis_count(std::size_t count, std::size_t dim) {
  auto n = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(count), 1.0 / static_cast<double>(dim))));
  auto power = [dim](std::size_t base) {
    double p = 1.0;
    for (std::size_t i = 0; i < dim; ++i) p *= static_cast<double>(base);
    return p;
  };
  while (power(n + 1) <= static_cast<double>(count)) ++n;
  while (n > 1 && power(n) > static_cast<double>(count)) --n;
  return std::max<std::size_t>(n, 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Point

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point::Point(const std::vector<double>& coords)
    : Point(Eigen::Map<const Eigen::VectorXd>(coords.data(),
                                              static_cast<Eigen::Index>(coords.size()))) {}

Point::Point(Eigen::VectorXd coords) : v_(std::move(coords)) {
  if (v_.size() == 0) throw PreconditionError("Point: dimension must be >= 1");
  if (!v_.allFinite()) throw PreconditionError("Point: coordinates must be finite");
}

Point Point::zero(std::size_t dim) {
  return Point(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim)));
}

bool Point::representable(const Eigen::VectorXd& v) { return v.size() > 0 && v.allFinite(); }

std::vector<double> Point::to_vector() const { return {v_.data(), v_.data() + v_.size()}; }

Point operator+(const Point& a, const Point& b) {
  require_dim(a.dim(), b.dim(), "Point +");
  return Point(Eigen::VectorXd(a.v_ + b.v_));
}

Point operator-(const Point& a, const Point& b) {
  require_dim(a.dim(), b.dim(), "Point -");
  return Point(Eigen::VectorXd(a.v_ - b.v_));
}

Point operator*(double s, const Point& a) { return Point(Eigen::VectorXd(s * a.v_)); }

bool operator==(const Point& a, const Point& b) {
  return a.dim() == b.dim() && a.v_ == b.v_;
}

double distance(const Point& a, const Point& b) {
  require_dim(a.dim(), b.dim(), "distance");
  return (a.vec() - b.vec()).norm();
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw PreconditionError("PointSet: dimension must be >= 1");
}

PointSet::PointSet(std::size_t dim, std::vector<Point> points) : PointSet(dim) {
  for (const auto& p : points) require_dim(p.dim(), dim_, "PointSet");
  points_ = std::move(points);
}

void PointSet::add(Point p) {
  require_dim(p.dim(), dim_, "PointSet::add");
  points_.push_back(std::move(p));
}

// ---------------------------------------------------------------------------
// Window

Window::Window(Kind kind, Point center, std::vector<double> half_widths, double radius)
    : kind_(kind), center_(std::move(center)), half_widths_(std::move(half_widths)),
      radius_(radius) {
  const std::size_t n = center_.dim();
  lo_.resize(n);
  hi_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = kind_ == Kind::Box ? half_widths_[i] : radius_;
    lo_[i] = center_[i] - h;
    hi_[i] = center_[i] + h;
  }
}

Window Window::box(const Point& center, std::vector<double> half_widths) {
  require_dim(center.dim(), half_widths.size(), "Window::box");
  for (double h : half_widths) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw PreconditionError("Window: extents must be strictly positive and finite");
    }
  }
  return Window(Kind::Box, center, std::move(half_widths), 0.0);
}

Window Window::interval(double lo, double hi) {
  if (!(hi > lo)) throw PreconditionError("Window::interval: need lo < hi");
  Window w = box(Point{0.5 * (lo + hi)}, {0.5 * (hi - lo)});
  w.lo_[0] = lo;
  w.hi_[0] = hi;
  return w;
}

Window Window::ball(const Point& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw PreconditionError("Window: radius must be strictly positive and finite");
  }
  return Window(Kind::Ball, center, {}, radius);
}

bool Window::contains(const Point& x) const {
  require_dim(x.dim(), dim(), "Window::contains");
  if (kind_ == Kind::Box || dim() == 1) {
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
    }
    return true;
  }
  return distance(x, center_) <= radius_;
}

Window Window::scaled(double factor) const {
  if (!(factor > 0.0)) throw PreconditionError("Window::scaled: factor must be positive");
  if (kind_ == Kind::Ball) return ball(center_, radius_ * factor);
  std::vector<double> h = half_widths_;
  for (double& v : h) v *= factor;
  return box(center_, std::move(h));
}

Point Window::clamp(const Point& x) const {
  require_dim(x.dim(), dim(), "Window::clamp");
  if (kind_ == Kind::Box || dim() == 1) {
    Eigen::VectorXd v = x.vec();
    for (std::size_t i = 0; i < dim(); ++i) {
      v[static_cast<Eigen::Index>(i)] = std::clamp(v[static_cast<Eigen::Index>(i)], lo_[i], hi_[i]);
    }
    return Point(std::move(v));
  }
  const double r = distance(x, center_);
  if (r <= radius_) return x;
  Point y = center_ + ((radius_ / r) * (x - center_));
  // Radial scaling can land one ulp outside; shrink until contained.
  double shrink = 1.0;
  while (!contains(y)) {
    shrink *= 1.0 - 1e-15;
    y = center_ + ((shrink * radius_ / r) * (x - center_));
  }
  return y;
}

// ---------------------------------------------------------------------------
// Region

Region::Region(Kind kind, std::size_t dim, PointSet pts, Point anchor, Point upper,
               std::vector<Point> basis, double radius)
    : kind_(kind), dim_(dim), points_(std::move(pts)), anchor_(std::move(anchor)),
      upper_(std::move(upper)), basis_(std::move(basis)), radius_(radius) {}

Region Region::points(PointSet pts) {
  if (pts.empty()) throw EmptySetError("Region::points: empty point list");
  const std::size_t d = pts.dim();
  Point first = pts[0];
  return Region(Kind::Points, d, std::move(pts), first, first, {}, 0.0);
}

Region Region::box(const Point& lower, const Point& upper) {
  require_dim(lower.dim(), upper.dim(), "Region::box");
  for (std::size_t i = 0; i < lower.dim(); ++i) {
    if (lower[i] > upper[i]) throw PreconditionError("Region::box: lower > upper");
  }
  return Region(Kind::Box, lower.dim(), PointSet(lower.dim()), lower, upper, {}, 0.0);
}

Region Region::affine(const Point& anchor, std::vector<Point> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_dim(basis[i].dim(), anchor.dim(), "Region::affine");
    for (std::size_t j = i; j < basis.size(); ++j) {
      const double dot = basis[i].vec().dot(basis[j].vec());
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(dot - want) > 1e-12) {
        throw PreconditionError("Region::affine: basis is not orthonormal");
      }
    }
  }
  return Region(Kind::Affine, anchor.dim(), PointSet(anchor.dim()), anchor, anchor,
                std::move(basis), 0.0);
}

Region Region::ball(const Point& center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw PreconditionError("Region::ball: radius must be finite and nonnegative");
  }
  return Region(Kind::Ball, center.dim(), PointSet(center.dim()), center, center, {}, radius);
}

Point Region::project(const Point& x) const {
  require_dim(x.dim(), dim_, "Region::project");
  switch (kind_) {
    case Kind::Points: {
      std::size_t best = 0;
      double best_d = rcont::distance(x, points_[0]);
      for (std::size_t i = 1; i < points_.size(); ++i) {
        const double d = rcont::distance(x, points_[i]);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      return points_[best];
    }
    case Kind::Box: {
      Eigen::VectorXd v = x.vec();
      for (std::size_t i = 0; i < dim_; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        v[k] = std::clamp(v[k], anchor_[i], upper_[i]);
      }
      return Point(std::move(v));
    }
    case Kind::Affine: {
      const Eigen::VectorXd r = x.vec() - anchor_.vec();
      Eigen::VectorXd p = anchor_.vec();
      for (const auto& b : basis_) p += b.vec().dot(r) * b.vec();
      return Point(std::move(p));
    }
    case Kind::Ball: {
      const double r = rcont::distance(x, anchor_);
      if (r <= radius_) return x;
      return anchor_ + ((radius_ / r) * (x - anchor_));
    }
  }
  return x;
}

double Region::distance(const Point& x) const {
  require_dim(x.dim(), dim_, "Region::distance");
  switch (kind_) {
    case Kind::Points:
      return distance_to_set(x, points_);
    case Kind::Box:
      return rcont::distance(x, project(x));
    case Kind::Affine: {
      const Eigen::VectorXd r = x.vec() - anchor_.vec();
      Eigen::VectorXd perp = r;
      for (const auto& b : basis_) perp -= b.vec().dot(r) * b.vec();
      return perp.norm();
    }
    case Kind::Ball:
      return std::max(0.0, rcont::distance(x, anchor_) - radius_);
  }
  return 0.0;
}

bool Region::contains(const Point& x, double tol) const { return distance(x) <= tol; }

bool Region::intersects(const Window& w) const {
  require_dim(w.dim(), dim_, "Region::intersects");
  if (kind_ == Kind::Points) {
    return std::any_of(points_.begin(), points_.end(),
                       [&](const Point& p) { return w.contains(p); });
  }
  if (w.kind() == Window::Kind::Ball && w.dim() > 1) {
    return distance(w.center()) <= w.radius();
  }
  if (kind_ == Kind::Box) {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (upper_[i] < w.lower(i) || anchor_[i] > w.upper(i)) return false;
    }
    return true;
  }
  // Affine or ball region against a box window: the clamp of the region
  // point nearest to the window center is a member whenever the two meet
  // near the center; fall back to a sampled check otherwise.
  if (w.contains(project(w.center()))) return true;
  const PointSet probe = sample_window(w, SampleScheme::LowDiscrepancy, 4096, 0);
  return std::any_of(probe.begin(), probe.end(), [&](const Point& p) {
    return w.contains(project(p)) && contains(project(p));
  });
}

PointSet Region::sample(std::size_t count, std::uint64_t seed, double extent) const {
  PointSet out(dim_);
  if (count == 0) return out;
  switch (kind_) {
    case Kind::Points:
      for (std::size_t i = 0; i < count; ++i) out.add(points_[(seed + i) % points_.size()]);
      break;
    case Kind::Box:
      for (std::size_t i = 0; i < count; ++i) {
        Eigen::VectorXd v(static_cast<Eigen::Index>(dim_));
        for (std::size_t a = 0; a < dim_; ++a) {
          const double u = radical_inverse(halton_base(a), seed + i + 1);
          v[static_cast<Eigen::Index>(a)] =
              std::clamp(anchor_[a] + (upper_[a] - anchor_[a]) * u, anchor_[a], upper_[a]);
        }
        out.add(Point(std::move(v)));
      }
      break;
    case Kind::Affine:
      for (std::size_t i = 0; i < count; ++i) {
        Eigen::VectorXd v = anchor_.vec();
        for (std::size_t a = 0; a < basis_.size(); ++a) {
          const double u = radical_inverse(halton_base(a), seed + i + 1);
          v += extent * (2.0 * u - 1.0) * basis_[a].vec();
        }
        out.add(Point(std::move(v)));
      }
      break;
    case Kind::Ball:
      if (radius_ == 0.0) {
        for (std::size_t i = 0; i < count; ++i) out.add(anchor_);
      } else {
        const PointSet s =
            sample_window(Window::ball(anchor_, radius_), SampleScheme::LowDiscrepancy, count, seed);
        for (const auto& p : s) out.add(p);
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distances

double distance_to_set(const Point& x, const PointSet& target) {
  require_dim(x.dim(), target.dim(), "distance_to_set");
  if (target.empty()) throw EmptySetError("distance_to_set: empty target set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : target) best = std::min(best, distance(x, p));
  return best;
}

double distance_to_set(const Point& x, const Region& target) { return target.distance(x); }

double excess(const PointSet& a, const PointSet& b) {
  require_dim(a.dim(), b.dim(), "excess");
  if (a.empty()) return 0.0;
  if (b.empty()) return kInfiniteExcess;
  double e = 0.0;
  for (const auto& p : a) e = std::max(e, distance_to_set(p, b));
  return e;
}

double excess(const PointSet& a, const Region& b) {
  require_dim(a.dim(), b.dim(), "excess");
  double e = 0.0;
  for (const auto& p : a) e = std::max(e, b.distance(p));
  return e;
}

// ---------------------------------------------------------------------------
// Sampling

double radical_inverse(std::uint64_t base, std::uint64_t index) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  const double inv = f;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return result;
}

PointSet sample_window(const Window& w, SampleScheme scheme, std::size_t count,
                       std::uint64_t seed) {
  if (count == 0) throw PreconditionError("sample_window: count must be >= 1");
  const std::size_t d = w.dim();
  PointSet out(d);

  if (scheme == SampleScheme::UniformGrid) {
    const std::size_t n = per_axis_count(count, d);
    std::size_t total = 1;
    for (std::size_t a = 0; a < d; ++a) total *= n;
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t rem = t;
      Eigen::VectorXd v(static_cast<Eigen::Index>(d));
      // Last axis varies fastest.
      for (std::size_t a = d; a-- > 0;) {
        idx[a] = rem % n;
        rem /= n;
        v[static_cast<Eigen::Index>(a)] = lattice_coord(w.lower(a), w.upper(a), idx[a], n);
      }
      Point p(std::move(v));
      if (w.contains(p)) out.add(std::move(p));
    }
    return out;
  }

  std::uint64_t index = seed + 1;
  const std::size_t max_draws = count * 1000 + 1000;
  for (std::size_t draws = 0; out.size() < count && draws < max_draws; ++draws, ++index) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a) {
      const double u = radical_inverse(halton_base(a), index);
      v[static_cast<Eigen::Index>(a)] =
          std::clamp(w.lower(a) + (w.upper(a) - w.lower(a)) * u, w.lower(a), w.upper(a));
    }
    Point p(std::move(v));
    if (w.contains(p)) out.add(std::move(p));
  }
  return out;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace rcont
