#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rcont/errors.hpp"
#include "rcont/geometry.hpp"

using namespace rcont;

namespace {

PointSet set1(std::initializer_list<double> vs) {
  PointSet s(1);
  for (double v : vs) s.add(Point{v});
  return s;
}

std::vector<Point> random_points(SplitMix64& rng, std::size_t n, std::size_t dim, double lo,
                                 double hi) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(dim);
    for (auto& v : c) v = rng.uniform(lo, hi);
    out.emplace_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("Point rejects empty and non-finite coordinates") {
  CHECK_THROWS_AS(Point(std::vector<double>{}), PreconditionError);
  CHECK_THROWS_AS(Point({1.0, std::nan("")}), PreconditionError);
  CHECK_THROWS_AS(Point({std::numeric_limits<double>::infinity()}), PreconditionError);
  CHECK(Point({1.0, 2.0}).dim() == 2);
}

TEST_CASE("distance_to_set examples") {
  CHECK(distance_to_set(Point{3.0}, set1({0.0, 1.0})) == 2.0);
  CHECK(distance_to_set(Point{0.5}, set1({0.0, 1.0})) == 0.5);
  const Region box = Region::box(Point{-1.0}, Point{1.0});
  CHECK(distance_to_set(Point{0.25}, box) == 0.0);
  CHECK(distance_to_set(Point{3.0}, box) == 2.0);
}

TEST_CASE("distance_to_set errors") {
  CHECK_THROWS_AS(distance_to_set(Point{1.0}, PointSet(1)), EmptySetError);
  CHECK_THROWS_AS(distance_to_set(Point{1.0, 2.0}, set1({0.0})), DimensionMismatch);
}

TEST_CASE("excess examples") {
  CHECK(excess(set1({1.0, 2.0}), set1({0.0})) == 2.0);
  CHECK(excess(set1({1.0, 2.0}), set1({1.0, 2.0})) == 0.0);
  CHECK(excess(PointSet(1), set1({0.0})) == 0.0);
  CHECK(excess(set1({1.0}), PointSet(1)) == kInfiniteExcess);
}

TEST_CASE("sample_window examples") {
  const Window ball = Window::ball(Point{0.0}, 1.0);
  const PointSet g = sample_window(ball, SampleScheme::UniformGrid, 5, 0);
  REQUIRE(g.size() == 5);
  const double expect[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (std::size_t i = 0; i < 5; ++i) CHECK(g[i][0] == expect[i]);

  const PointSet a = sample_window(ball, SampleScheme::LowDiscrepancy, 32, 7);
  const PointSet b = sample_window(ball, SampleScheme::LowDiscrepancy, 32, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

  const Window box = Window::box(Point{1.0, -1.0}, {2.0, 0.5});
  const PointSet lat = sample_window(box, SampleScheme::UniformGrid, 9, 0);
  REQUIRE(lat.size() == 9);
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : lat) {
    CHECK(box.contains(p));
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  CHECK(xs == std::vector<double>{-1.0, 1.0, 3.0});
  CHECK(ys == std::vector<double>{-1.5, -1.0, -0.5});
}

TEST_CASE("sample_window errors") {
  CHECK_THROWS_AS(sample_window(Window::ball(Point{0.0}, 1.0), SampleScheme::UniformGrid, 0, 0),
                  PreconditionError);
  CHECK_THROWS_AS(Window::ball(Point{0.0}, 0.0), PreconditionError);
  CHECK_THROWS_AS(Window::box(Point{0.0, 0.0}, {1.0, -1.0}), PreconditionError);
  CHECK_THROWS_AS(Window::interval(1.0, 1.0), PreconditionError);
}

TEST_CASE("every sampled point lies in its window") {
  const std::vector<Window> ws{Window::interval(-0.3, 0.7), Window::ball(Point{0.5, -2.0}, 0.25),
                               Window::box(Point{0.0, 0.0, 1.0}, {1.0, 2.0, 0.1}),
                               Window::ball(Point{1.0, 1.0, 1.0}, 3.0)};
  for (const auto& w : ws) {
    for (auto scheme : {SampleScheme::UniformGrid, SampleScheme::LowDiscrepancy}) {
      for (std::size_t n : {1u, 7u, 64u, 500u}) {
        const PointSet s = sample_window(w, scheme, n, 3);
        for (const auto& p : s) CHECK(w.contains(p));
      }
    }
  }
}

TEST_CASE("Region affine basis must be orthonormal") {
  CHECK_THROWS_AS(Region::affine(Point{0.0, 0.0}, {Point{1.0, 1.0}}), PreconditionError);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK_NOTHROW(Region::affine(Point{0.0, 0.0}, {Point{h, h}}));
}

TEST_CASE("excess is zero exactly for members within tolerance") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto b = random_points(rng, 5, 2, -1, 1);
    std::vector<Point> a;
    const int n = 1 + static_cast<int>(rng.next() % 4);
    for (int i = 0; i < n; ++i) a.push_back(b[rng.next() % b.size()]);
    if (trial % 2 == 1) a.push_back(Point{rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const double e = excess(PointSet(2, a), PointSet(2, b));
    bool members = true;
    for (const auto& p : a) members = members && oracles::brute_distance(p, b) <= kMembershipTol;
    CHECK((e <= kMembershipTol) == members);
  }
}

TEST_CASE("excess is monotone in its first argument") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto a2 = random_points(rng, 6, 2, -2, 2);
    auto b = random_points(rng, 4, 2, -2, 2);
    std::vector<Point> a1(a2.begin(), a2.begin() + static_cast<long>(rng.next() % 6));
    CHECK(excess(PointSet(2, a1), PointSet(2, b)) <= excess(PointSet(2, a2), PointSet(2, b)));
  }
}

TEST_CASE("excess triangle bound through a finite intermediate set") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_points(rng, 5, 2, -1, 1);
    auto b = random_points(rng, 4, 2, -1, 1);
    auto c = random_points(rng, 3, 2, -1, 1);
    const double ac = excess(PointSet(2, a), PointSet(2, c));
    const double ab = oracles::brute_excess(a, b);
    const double bc = oracles::brute_excess(b, c);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(excess(PointSet(2, a), PointSet(2, b)) == doctest::Approx(ab).epsilon(1e-15));
  }
}

TEST_CASE("Region distances match a dense-grid minimization") {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<std::pair<Region, std::function<bool(const Point&)>>> regions2{
      {Region::box(Point{-0.5, 0.0}, Point{0.5, 1.0}),
       [](const Point& p) { return p[0] >= -0.5 && p[0] <= 0.5 && p[1] >= 0.0 && p[1] <= 1.0; }},
      {Region::ball(Point{0.2, -0.3}, 0.6),
       [](const Point& p) { return std::hypot(p[0] - 0.2, p[1] + 0.3) <= 0.6; }},
      {Region::affine(Point{0.0, 0.0}, {Point{h, -h}}),
       [](const Point& p) { return std::abs(p[0] + p[1]) <= 1e-12; }},
  };
  SplitMix64 rng(14);
  // Grid of step 4/1000 on [-2, 2]^2; the dense minimum is within one
  // diagonal step of the exact one.
  const std::size_t per_axis = 1001;
  const double step = 4.0 / static_cast<double>(per_axis - 1);
  for (const auto& [region, member] : regions2) {
    for (int i = 0; i < 5; ++i) {
      const Point x{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
      const double exact = region.distance(x);
      const double dense = oracles::grid_distance(x, -2.0, 2.0, per_axis, member);
      CHECK(exact <= dense + 1e-12);
      CHECK(dense - exact <= std::sqrt(2.0) * step);
    }
  }
  // 1-d: grid points land exactly on the box ends, so agreement is 1e-9.
  const Region interval = Region::box(Point{-0.25}, Point{0.75});
  for (int i = 0; i < 20; ++i) {
    const Point x{rng.uniform(-2.0, 2.0)};
    const double dense = oracles::grid_distance(
        x, -2.0, 2.0, 16001, [](const Point& p) { return p[0] >= -0.25 && p[0] <= 0.75; });
    const double exact = interval.distance(x);
    CHECK(exact <= dense + 1e-12);
    CHECK(dense - exact <= 2.5e-4);
  }
  const Region pts = Region::points(PointSet(1, {Point{0.0}, Point{1.0}}));
  for (int i = 0; i < 20; ++i) {
    const Point x{rng.uniform(-2.0, 2.0)};
    CHECK(std::abs(pts.distance(x) - oracles::brute_distance(x, pts.point_list().points())) <= 1e-9);
  }
}

TEST_CASE("Region members are at distance zero and project onto themselves") {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<Region> rs{Region::box(Point{-1.0, 0.0}, Point{1.0, 2.0}),
                               Region::ball(Point{0.0, 0.0}, 1.0),
                               Region::affine(Point{1.0, 0.0}, {Point{h, h}}),
                               Region::points(PointSet(2, {Point{0.0, 0.0}, Point{1.0, 1.0}}))};
  for (const auto& r : rs) {
    for (const auto& z : r.sample(30, 5, 2.0)) {
      CHECK(r.distance(z) <= kMembershipTol);
      CHECK(r.contains(z));
      CHECK(distance(r.project(z), z) <= 1e-12);
    }
  }
}

TEST_CASE("Halton radical inverse base 2 and 3") {
  CHECK(radical_inverse(2, 1) == 0.5);
  CHECK(radical_inverse(2, 3) == 0.75);
  CHECK(radical_inverse(3, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(radical_inverse(3, 5) == doctest::Approx(2.0 / 3.0 + 1.0 / 9.0));
}

TEST_CASE("SplitMix64 is reproducible and uniform lies in [0,1)") {
  SplitMix64 a(42);
  SplitMix64 b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
