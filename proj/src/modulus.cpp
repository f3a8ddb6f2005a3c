#include "rcont/analysis.hpp"
#include "rcont/errors.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace rcont {

namespace {

// Value sets at x_bar used when the map has no exact distance oracle.
std::optional<PointSet> reference_set(const SetValuedMap& m, const Point& x_bar,
                                      const std::optional<Window>& k) {
  if (m.has_distance_oracle()) return std::nullopt;
  if (m.info().window_required) return m.eval(x_bar, k->scaled(10.0));
  return m.eval(x_bar);
}

double sampled_excess(const SetValuedMap& m, const Point& x_bar, const std::optional<Window>& k,
                      const std::optional<PointSet>& ref, const Point& x) {
  const PointSet values = m.eval(x, k);
  double e = 0.0;
  for (const auto& y : values) {
    const double d = ref ? (ref->empty() ? kInfiniteExcess : distance_to_set(y, *ref))
                         : m.distance_to_values(x_bar, y);
    e = std::max(e, d);
  }
  return e;
}

PointSet ball_samples(const Point& center, double radius, std::size_t count, std::uint64_t seed) {
  const Window ball = Window::ball(center, radius);
  const auto scheme = center.dim() == 1 ? SampleScheme::UniformGrid : SampleScheme::LowDiscrepancy;
  return sample_window(ball, scheme, count, seed);
}

}  // namespace

std::vector<double> log_radii(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw PreconditionError("log_radii: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> r(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    r[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  r.front() = lo;
  r.back() = hi;
  return r;
}

ModulusCurve estimate_modulus(const SetValuedMap& m, const Point& x_bar,
                              const std::optional<Window>& k, const std::vector<double>& radii,
                              std::size_t samples_per_radius, std::uint64_t seed,
                              unsigned threads) {
  if (x_bar.dim() != m.info().dim_in) throw DimensionMismatch("estimate_modulus: base point");
  if (m.info().window_required && !k) {
    throw WindowRequired("estimate_modulus: map '" + m.name() + "' requires a compact window");
  }
  if (radii.empty() || !(radii.front() > 0.0)) {
    throw PreconditionError("estimate_modulus: radii must be positive");
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) {
      throw PreconditionError("estimate_modulus: radii must be strictly increasing");
    }
  }
  if (samples_per_radius == 0) throw PreconditionError("estimate_modulus: samples_per_radius = 0");

  const PointSet at_base = m.eval(x_bar, m.info().window_required ? k->scaled(10.0) : k);
  if (at_base.empty()) throw EmptySetError("estimate_modulus: A(x_bar) is empty");
  const std::optional<PointSet> ref = reference_set(m, x_bar, k);

  const std::size_t n = radii.size();
  std::vector<double> raw(n, 0.0);
  std::vector<std::size_t> counts(n, 0);
  auto work = [&](std::size_t i) {
    const PointSet xs = ball_samples(x_bar, radii[i], samples_per_radius, seed);
    double e = 0.0;
    for (const auto& x : xs) e = std::max(e, sampled_excess(m, x_bar, k, ref, x));
    raw[i] = e;
    counts[i] = xs.size();
  };

  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (t == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < t; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += t) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  ModulusCurve curve{x_bar, k, radii, std::vector<double>(n, 0.0), counts, seed, false};
  double running = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isinf(raw[i])) curve.divergent = true;
    running = std::max(running, raw[i]);
    curve.rho_hat[i] = running;
  }
  return curve;
}

std::optional<double> interpolate_modulus(const ModulusCurve& curve, double r) {
  if (curve.radii.empty() || r > curve.radii.back()) return std::nullopt;
  if (r <= 0.0) return 0.0;
  double r0 = 0.0;
  double v0 = 0.0;
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    const double r1 = curve.radii[i];
    const double v1 = curve.rho_hat[i];
    if (r <= r1) {
      if (r == r1) return v1;
      return v0 + (v1 - v0) * (r - r0) / (r1 - r0);
    }
    r0 = r1;
    v0 = v1;
  }
  return curve.rho_hat.back();
}

HolderFit fit_holder(const ModulusCurve& curve) {
  if (curve.divergent) throw UnboundedExcess("fit_holder: unbounded excess on the curve");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    if (curve.rho_hat[i] > 0.0) {
      xs.push_back(std::log(curve.radii[i]));
      ys.push_back(std::log(curve.rho_hat[i]));
    }
  }
  HolderFit fit;
  fit.points_used = xs.size();
  if (xs.size() < 3) {
    fit.degenerate = true;
    return fit;
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss += r * r;
  }
  fit.theta_hat = slope;
  fit.L_hat = std::exp(intercept);
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace rcont
