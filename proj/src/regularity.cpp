#include "rcont/analysis.hpp"
#include "rcont/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rcont {

namespace {

Point direction(std::size_t dim, std::size_t s, std::uint64_t seed) {
  if (dim == 1) return Point{s % 2 == 0 ? 1.0 : -1.0};
  SplitMix64 rng(seed * 0x9E3779B97F4A7C15ULL + s);
  for (;;) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
    for (auto& c : v) c = rng.uniform(-1.0, 1.0);
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) return Point(Eigen::VectorXd(v / n));
  }
}

double min_extent(const Window& k) {
  if (k.kind() == Window::Kind::Ball) return k.radius();
  return *std::min_element(k.half_widths().begin(), k.half_widths().end());
}

double max_extent(const Window& k) {
  if (k.kind() == Window::Kind::Ball) return k.radius();
  return *std::max_element(k.half_widths().begin(), k.half_widths().end());
}

// Members of S inside k.
std::vector<Point> solutions_in(const Region& s, const Window& k, std::size_t count,
                                std::uint64_t seed) {
  std::vector<Point> out;
  if (s.kind() == Region::Kind::Points) {
    for (const auto& p : s.point_list()) {
      if (k.contains(p)) out.push_back(p);
    }
    return out;
  }
  const PointSet pts = s.sample(count, seed, max_extent(k) + distance(s.anchor(), k.center()));
  for (const auto& p : pts) {
    if (k.contains(p)) out.push_back(p);
  }
  return out;
}

struct LevelData {
  std::vector<Point> xs;
  std::vector<double> d;
  std::vector<double> abs_f;
};

LevelData loj_level(const OperatorEntry& entry, const Window& k, std::size_t n) {
  LevelData L;
  const PointSet grid = sample_window(k, SampleScheme::UniformGrid, n, 0);
  for (const auto& x : grid) {
    L.xs.push_back(x);
    L.d.push_back(entry.solution_set.distance(x));
    L.abs_f.push_back(std::abs(entry.smooth->value(x)));
  }
  return L;
}

// Slope of log|f| on log d across the 16 usable points nearest S.
double local_exponent(const LevelData& L) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < L.xs.size(); ++i) {
    if (L.d[i] > 0.0 && L.abs_f[i] >= std::numeric_limits<double>::min()) idx.push_back(i);
  }
  if (idx.empty()) return 1.0;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return L.d[a] < L.d[b]; });
  idx.resize(std::min<std::size_t>(idx.size(), 16));
  double mx = 0.0;
  double my = 0.0;
  for (auto i : idx) {
    mx += std::log(L.d[i]);
    my += std::log(L.abs_f[i]);
  }
  const auto n = static_cast<double>(idx.size());
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (auto i : idx) {
    const double dx = std::log(L.d[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(L.abs_f[i]) - my);
  }
  if (sxx == 0.0) return 1.0;
  return std::max(1.0, sxy / sxx);
}

}  // namespace

ClosedGraphResult closed_graph_test(const SetValuedMap& m, const Point& x_bar, const Window& k,
                                    const ClosedGraphOptions& opts) {
  if (x_bar.dim() != m.info().dim_in) throw DimensionMismatch("closed_graph_test: base point");
  if (opts.length < 4 || opts.n_sequences == 0 || !(opts.tol > 0.0)) {
    throw PreconditionError("closed_graph_test: need length >= 4, n_sequences >= 1, tol > 0");
  }
  const PointSet at_base = m.eval(x_bar, k);
  if (at_base.empty()) throw EmptySetError("closed_graph_test: A(x_bar) cap K is empty");
  const double cauchy = opts.cauchy_tol.value_or(opts.tol);
  const std::size_t tail = std::max<std::size_t>(2, opts.length / 4);

  auto gap_to_base = [&](const Point& y) {
    return m.has_distance_oracle() ? m.distance_to_values(x_bar, y) : distance_to_set(y, at_base);
  };

  ClosedGraphResult res;
  for (std::size_t s = 0; s < opts.n_sequences; ++s) {
    const Point u = direction(x_bar.dim(), s, opts.seed);
    std::vector<PointSet> vals;
    vals.reserve(opts.length);
    for (std::size_t j = 0; j < opts.length; ++j) {
      const double r = opts.initial_radius * std::ldexp(1.0, -static_cast<int>(j));
      vals.push_back(m.eval(x_bar + r * u, k));
    }
    const PointSet& first = vals.front();
    const std::size_t starts = std::min(first.size(), opts.max_starts);
    for (std::size_t st = 0; st < starts; ++st) {
      const std::size_t pick = starts == 1 ? 0 : st * (first.size() - 1) / (starts - 1);
      ++res.chains_tried;
      std::vector<Point> chain{first[pick]};
      bool broken = false;
      for (std::size_t j = 1; j < opts.length; ++j) {
        if (vals[j].empty()) {
          broken = true;
          break;
        }
        const Point& cur = chain.back();
        const auto best = std::min_element(vals[j].begin(), vals[j].end(),
                                           [&](const Point& a, const Point& b) {
                                             return distance(a, cur) < distance(b, cur);
                                           });
        chain.push_back(*best);
      }
      if (broken) continue;
      const Point& limit = chain.back();
      double spread = 0.0;
      for (std::size_t j = chain.size() - tail; j < chain.size(); ++j) {
        spread = std::max(spread, distance(chain[j], limit));
      }
      if (spread > cauchy) continue;
      ++res.chains_accepted;
      const double gap = gap_to_base(limit);
      res.worst_gap = std::max(res.worst_gap, gap);
      if (gap > opts.tol && !res.witness) res.witness = limit;
    }
  }
  if (res.chains_accepted == 0) {
    res.verdict = Verdict::Inconclusive;
  } else {
    res.verdict = res.witness ? Verdict::Fail : Verdict::Pass;
  }
  return res;
}

LojFit lojasiewicz_fit(const OperatorEntry& entry, const Window& k, std::size_t grid_count) {
  if (!entry.smooth || !entry.smooth->value) {
    throw MissingOracle("lojasiewicz_fit: '" + entry.name() + "' has no scalar function");
  }
  if (k.dim() != entry.dim()) throw DimensionMismatch("lojasiewicz_fit: window dimension");
  if (grid_count < 2) throw PreconditionError("lojasiewicz_fit: grid_count must be >= 2");
  if (!entry.solution_set.intersects(k)) {
    throw PreconditionError("lojasiewicz_fit: S does not meet the window");
  }

  LojFit fit;
  fit.window = k;
  std::vector<LevelData> levels;
  for (std::size_t l = 0; l < 3; ++l) {
    levels.push_back(loj_level(entry, k, (grid_count - 1) * (std::size_t{1} << l) + 1));
    fit.level_thetas.push_back(local_exponent(levels.back()));
  }
  const LevelData& base = levels.front();
  if (std::all_of(base.abs_f.begin(), base.abs_f.end(), [](double v) { return v == 0.0; })) {
    throw PreconditionError("lojasiewicz_fit: f vanishes on the whole grid");
  }

  const auto& t = fit.level_thetas;
  const double slack = 1e-9;
  fit.failed = t.back() > kLojExponentCap && t[1] >= t[0] * (1.0 - slack) &&
               t[2] >= t[1] * (1.0 - slack);
  fit.theta_hat = fit.failed ? t.back() : t.front();
  if (fit.failed) return fit;

  std::vector<LojSample> samples;
  double c = 0.0;
  for (std::size_t i = 0; i < base.xs.size(); ++i) {
    if (base.abs_f[i] == 0.0) continue;
    const double ratio =
        base.d[i] == 0.0
            ? 0.0
            : std::exp(fit.theta_hat * std::log(base.d[i]) - std::log(base.abs_f[i]));
    c = std::max(c, ratio);
    samples.push_back({base.xs[i], base.d[i], base.abs_f[i], ratio});
  }
  fit.c_hat = c;
  fit.slack = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    fit.slack = std::min(fit.slack, c * s.abs_f - std::pow(s.distance, fit.theta_hat));
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const LojSample& a, const LojSample& b) { return a.ratio > b.ratio; });
  if (samples.size() > 5) samples.erase(samples.begin() + 5, samples.end());
  fit.worst = std::move(samples);
  return fit;
}

void PlkConfig::validate() const {
  if (!(M > 0.0)) throw PreconditionError("plk: M must be positive");
  if (!(q_exp >= 0.0 && q_exp < 1.0)) throw PreconditionError("plk: q_exp must lie in [0, 1)");
  if (!(eta > 0.0)) throw PreconditionError("plk: eta must be positive");
  if (!(neighborhood_radius > 0.0)) throw PreconditionError("plk: neighborhood_radius must be positive");
}

PlkResult check_plk_exponent(const OperatorEntry& entry, const Point& x_bar, const PlkConfig& cfg,
                             std::size_t grid_count) {
  cfg.validate();
  if (!entry.smooth || !entry.smooth->value) {
    throw MissingOracle("check_plk_exponent: '" + entry.name() + "' has no scalar function");
  }
  if (!entry.subgradient && !entry.smooth->gradient) {
    throw MissingOracle("check_plk_exponent: '" + entry.name() + "' has no subgradient oracle");
  }
  const auto& f = entry.smooth->value;
  const double f_bar = f(x_bar);
  const Point zero = Point::zero(entry.dim());
  const PointSet grid = sample_window(Window::ball(x_bar, cfg.neighborhood_radius),
                                      SampleScheme::UniformGrid, grid_count, 0);
  const double log_scale = std::log(cfg.M) + std::log1p(-cfg.q_exp);

  PlkResult res;
  res.min_product = std::numeric_limits<double>::infinity();
  for (const auto& x : grid) {
    const double gap = f(x) - f_bar;
    if (!(gap > 0.0 && gap < cfg.eta)) continue;
    ++res.band_points;
    const double dist = entry.subgradient ? entry.subgradient->distance_to_values(x, zero)
                                          : entry.smooth->gradient(x).norm();
    const double product =
        dist == 0.0 ? 0.0 : std::exp(log_scale - cfg.q_exp * std::log(gap) + std::log(dist));
    res.min_product = std::min(res.min_product, product);
    if (product < 1.0 - 1e-12) res.violations.push_back(x);
  }
  if (res.band_points == 0) {
    res.verdict = Verdict::Inconclusive;
    res.min_product = 0.0;
  } else {
    res.verdict = res.violations.empty() ? Verdict::Pass : Verdict::Fail;
  }
  return res;
}

InverseLipschitzResult certify_inverse_lipschitz(const OperatorEntry& entry, const Window& k,
                                                 const InverseLipschitzOptions& opts) {
  if (!entry.smooth || !entry.smooth->residual || !entry.smooth->jacobian) {
    throw MissingOracle("certify_inverse_lipschitz: '" + entry.name() + "' has no Jacobian");
  }
  const auto& info = entry.forward.info();
  if (info.dim_out < info.dim_in) {
    throw DimensionMismatch("certify_inverse_lipschitz: needs dim_out >= dim_in");
  }
  const std::vector<Point> sol = solutions_in(entry.solution_set, k, opts.s_samples, opts.seed);
  if (sol.empty()) throw PreconditionError("certify_inverse_lipschitz: S does not meet the window");

  InverseLipschitzResult res;
  res.c_hat = std::numeric_limits<double>::infinity();
  for (const auto& u : sol) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(entry.smooth->jacobian(u));
    res.c_hat = std::min(res.c_hat, svd.singularValues().minCoeff());
  }
  if (!(res.c_hat > opts.tol)) {
    res.rank = InverseLipschitzResult::Rank::Deficient;
    return res;
  }
  res.rank = InverseLipschitzResult::Rank::Full;

  const double radius = opts.test_radius.value_or(0.05 * min_extent(k));
  const std::size_t per = (opts.test_samples + sol.size() - 1) / sol.size();
  for (std::size_t i = 0; i < sol.size(); ++i) {
    const PointSet xs =
        sample_window(Window::ball(sol[i], radius), SampleScheme::LowDiscrepancy, per, opts.seed + i);
    for (const auto& x : xs) {
      ++res.tested;
      const double d = entry.solution_set.distance(x);
      const double fn = entry.smooth->residual(x).norm();
      double ratio = 0.0;
      if (d > 0.0) ratio = fn > 0.0 ? d * res.c_hat / fn : std::numeric_limits<double>::infinity();
      res.worst_ratio = std::max(res.worst_ratio, ratio);
      if (d > (1.0 + opts.tol) * fn / res.c_hat) ++res.violations;
    }
  }
  res.pass = res.violations == 0;
  return res;
}

CalmnessResult calmness_estimate(const SetValuedMap& m, const Point& x_bar, const Point& y_bar,
                                 double u_radius, double v_radius, std::size_t samples,
                                 std::uint64_t seed) {
  if (!(u_radius > 0.0) || !(v_radius > 0.0)) {
    throw PreconditionError("calmness_estimate: radii must be positive");
  }
  if (!m.contains(x_bar, y_bar)) throw PreconditionError("calmness_estimate: y_bar not in A(x_bar)");
  const Window v = Window::ball(y_bar, v_radius);
  const auto scheme = x_bar.dim() == 1 ? SampleScheme::UniformGrid : SampleScheme::LowDiscrepancy;
  const PointSet xs = sample_window(Window::ball(x_bar, u_radius), scheme, samples, seed);

  CalmnessResult res;
  bool any = false;
  for (const auto& x : xs) {
    const double step = distance(x, x_bar);
    if (step == 0.0) continue;
    ++res.samples;
    const PointSet ys = m.eval(x, v);
    if (!ys.empty()) any = true;
    for (const auto& y : ys) {
      res.kappa_hat = std::max(res.kappa_hat, m.distance_to_values(x_bar, y) / step);
    }
  }
  res.vacuous = !any;
  return res;
}

}  // namespace rcont
