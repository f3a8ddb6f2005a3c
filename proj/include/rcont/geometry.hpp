#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <vector>

namespace rcont {

inline constexpr double kMembershipTol = 1e-9;

/// Excess of a nonempty set over the empty set.
inline constexpr double kInfiniteExcess = std::numeric_limits<double>::infinity();

/// A finite point of R^n, n >= 1. Construction rejects NaN/Inf coordinates.
class Point {
 public:
  Point(std::initializer_list<double> coords);
  explicit Point(const std::vector<double>& coords);
  explicit Point(Eigen::VectorXd coords);

  static Point zero(std::size_t dim);
  static bool representable(const Eigen::VectorXd& v);

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  double operator[](std::size_t i) const { return v_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd& vec() const { return v_; }
  std::vector<double> to_vector() const;
  double norm() const { return v_.norm(); }

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(double s, const Point& a);
  friend bool operator==(const Point& a, const Point& b);

 private:
  Eigen::VectorXd v_;
};

double distance(const Point& a, const Point& b);

/// Finite list of points of a common dimension; may be empty.
class PointSet {
 public:
  explicit PointSet(std::size_t dim);
  PointSet(std::size_t dim, std::vector<Point> points);

  void add(Point p);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

 private:
  std::size_t dim_;
  std::vector<Point> points_;
};

/// Compact evaluation window: an axis-aligned box or a closed ball.
///
/// Boxes (and 1-d balls) keep their per-axis bounds as stored doubles, and
/// containment is decided against those stored bounds so that samplers can
/// clamp onto the boundary without rounding a point outside.
class Window {
 public:
  enum class Kind { Box, Ball };

  static Window box(const Point& center, std::vector<double> half_widths);
  static Window interval(double lo, double hi);
  static Window ball(const Point& center, double radius);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return center_.dim(); }
  const Point& center() const { return center_; }
  const std::vector<double>& half_widths() const { return half_widths_; }
  double radius() const { return radius_; }
  double lower(std::size_t axis) const { return lo_[axis]; }
  double upper(std::size_t axis) const { return hi_[axis]; }

  bool contains(const Point& x) const;
  /// Same center, every extent multiplied by factor.
  Window scaled(double factor) const;
  /// Clamp onto the window (exact for boxes, radial for balls).
  Point clamp(const Point& x) const;

 private:
  Window(Kind kind, Point center, std::vector<double> half_widths, double radius);

  Kind kind_;
  Point center_;
  std::vector<double> half_widths_;
  double radius_ = 0.0;
  std::vector<double> lo_;
  std::vector<double> hi_;
};

/// Exact solution-set descriptor with a closed-form distance oracle.
class Region {
 public:
  enum class Kind { Points, Box, Affine, Ball };

  static Region points(PointSet pts);
  static Region box(const Point& lower, const Point& upper);
  /// anchor + span(basis); basis must be orthonormal to within 1e-12.
  static Region affine(const Point& anchor, std::vector<Point> basis);
  static Region ball(const Point& center, double radius);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  double distance(const Point& x) const;
  Point project(const Point& x) const;
  bool contains(const Point& x, double tol = kMembershipTol) const;
  bool intersects(const Window& w) const;

  /// Deterministic members of the region. Unbounded kinds are sampled over
  /// coefficients in [-extent, extent].
  PointSet sample(std::size_t count, std::uint64_t seed, double extent = 1.0) const;

  const PointSet& point_list() const { return points_; }
  const std::vector<Point>& basis() const { return basis_; }
  /// Anchor (affine), lower corner (box) or center (ball).
  const Point& anchor() const { return anchor_; }
  const Point& upper() const { return upper_; }
  double radius() const { return radius_; }

 private:
  Region(Kind kind, std::size_t dim, PointSet pts, Point anchor, Point upper,
         std::vector<Point> basis, double radius);

  Kind kind_;
  std::size_t dim_;
  PointSet points_;
  Point anchor_;
  Point upper_;
  std::vector<Point> basis_;
  double radius_ = 0.0;
};

double distance_to_set(const Point& x, const PointSet& target);
double distance_to_set(const Point& x, const Region& target);

/// e(a, b) = sup_{p in a} d(p, b). Zero for empty a, kInfiniteExcess for
/// nonempty a over empty b.
double excess(const PointSet& a, const PointSet& b);
double excess(const PointSet& a, const Region& b);

enum class SampleScheme { UniformGrid, LowDiscrepancy };

/// Deterministic samples inside w.
///
/// UniformGrid places n points per axis with n the largest integer such that
/// n^dim <= count, endpoints included (a single center point when n = 1).
/// For balls of dimension >= 2 the lattice of the bounding box is filtered
/// to the ball, so fewer than count points may come back. LowDiscrepancy is
/// the Halton sequence (prime bases) started at index seed + 1; ball
/// windows reject cube points until count points are accepted.
PointSet sample_window(const Window& w, SampleScheme scheme, std::size_t count,
                       std::uint64_t seed);

/// Van der Corput radical inverse of index in the given base.
double radical_inverse(std::uint64_t base, std::uint64_t index);

/// SplitMix64. Used wherever a seeded stream is needed; unlike the standard
/// distributions its output is identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace rcont
