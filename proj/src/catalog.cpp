#include "rcont/errors.hpp"
#include "rcont/setmap.hpp"

#include <cmath>
#include <map>

namespace rcont {

namespace {

constexpr double kIntervalResolution = 1e-3;

Point scalar(double v) { return Point{v}; }

MapInfo info_1d(std::string name, std::string description) {
  MapInfo info;
  info.name = std::move(name);
  info.description = std::move(description);
  return info;
}

Eigen::MatrixXd scalar_matrix(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }

ProxOracle scalar_prox(std::function<double(double, double)> rule,
                       std::function<bool(double)> valid, std::string note) {
  return ProxOracle{
      [rule](double gamma, const Point& y) { return scalar(rule(gamma, y[0])); },
      std::move(valid), std::move(note)};
}

bool positive(double gamma) { return gamma > 0.0; }

// Subgradient-type entries use their forward map as the subdifferential.
void mark_subdifferential(OperatorEntry& e) { e.subgradient = e.forward; }

OperatorEntry make_rm1() {
  MapInfo info = info_1d("rm1", "A(0)={0}, A(x)={x,1/x}; unbounded branch 1/x near 0");
  info.window_required = true;
  auto forward = SetValuedMap::finite_valued(info, [](const Point& x) {
    const double v = x[0];
    if (v == 0.0) return std::vector<Point>{scalar(0.0)};
    std::vector<Point> out{scalar(v)};
    const double r = 1.0 / v;
    if (std::isfinite(r)) out.push_back(scalar(r));
    return out;
  });
  OperatorEntry e{.forward = forward,
                  .inverse = std::nullopt,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0)}))};
  e.witness = [](const Point& x) { return x; };
  return e;
}

double flat_exp_value(double x) { return x == 0.0 ? 0.0 : std::exp(-1.0 / (x * x)); }

double flat_exp_derivative(double x) {
  const double f = flat_exp_value(x);
  if (f == 0.0) return 0.0;
  return 2.0 / (x * x * x) * f;
}

OperatorEntry make_flat_exp() {
  auto forward = SetValuedMap::single_valued(
      info_1d("flat-exp", "f(x)=exp(-1/x^2), f(0)=0; C-infinity, not analytic at 0"),
      [](const Point& x) { return scalar(flat_exp_value(x[0])); });
  auto inverse = SetValuedMap::finite_valued(
      info_1d("flat-exp-inverse", "y -> {+-(-1/ln y)^(1/2)} on (0,1), {0} at 0"),
      [](const Point& y) {
        const double v = y[0];
        if (v == 0.0) return std::vector<Point>{scalar(0.0)};
        if (v <= 0.0 || v >= 1.0) return std::vector<Point>{};
        const double r = std::sqrt(-1.0 / std::log(v));
        return std::vector<Point>{scalar(-r), scalar(r)};
      });
  SmoothData smooth;
  smooth.value = [](const Point& x) { return flat_exp_value(x[0]); };
  smooth.gradient = [](const Point& x) { return scalar(flat_exp_derivative(x[0])); };
  smooth.residual = [](const Point& x) { return scalar(flat_exp_value(x[0])); };
  smooth.jacobian = [](const Point& x) { return scalar_matrix(flat_exp_derivative(x[0])); };
  smooth.infimum = 0.0;

  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0)}))};
  e.witness = [](const Point& x) { return scalar(flat_exp_value(x[0])); };
  e.smooth = smooth;
  e.subgradient = SetValuedMap::single_valued(
      info_1d("flat-exp-gradient", "f'(x)"),
      [](const Point& x) { return scalar(flat_exp_derivative(x[0])); });
  return e;
}

OperatorEntry make_square() {
  auto forward = SetValuedMap::single_valued(info_1d("square", "f(x)=x^2"),
                                             [](const Point& x) { return scalar(x[0] * x[0]); });
  auto inverse = SetValuedMap::finite_valued(
      info_1d("square-inverse", "y -> {+-sqrt(y)} for y>=0"), [](const Point& y) {
        const double v = y[0];
        if (v < 0.0) return std::vector<Point>{};
        if (v == 0.0) return std::vector<Point>{scalar(0.0)};
        const double r = std::sqrt(v);
        return std::vector<Point>{scalar(-r), scalar(r)};
      });
  SmoothData smooth;
  smooth.value = [](const Point& x) { return x[0] * x[0]; };
  smooth.gradient = [](const Point& x) { return scalar(2.0 * x[0]); };
  smooth.residual = [](const Point& x) { return scalar(x[0] * x[0]); };
  smooth.jacobian = [](const Point& x) { return scalar_matrix(2.0 * x[0]); };
  smooth.infimum = 0.0;

  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0)}))};
  e.witness = [](const Point& x) { return scalar(x[0] * x[0]); };
  e.smooth = smooth;
  e.subgradient = SetValuedMap::single_valued(info_1d("square-gradient", "2x"),
                                              [](const Point& x) { return scalar(2.0 * x[0]); });
  e.quadratic = QuadraticForm{scalar_matrix(2.0), Eigen::VectorXd::Zero(1)};
  return e;
}

double double_well_value(double x) {
  const double p = x * (x - 1.0);
  return p * p;
}

double double_well_derivative(double x) { return 2.0 * x * (x - 1.0) * (2.0 * x - 1.0); }

OperatorEntry make_double_well() {
  auto forward = SetValuedMap::single_valued(
      info_1d("double-well", "f(x)=x^2(x-1)^2, zeros {0,1}"),
      [](const Point& x) { return scalar(double_well_value(x[0])); });
  // x(x-1) = +-sqrt(y); the small roots use the cancellation-free form.
  auto inverse = SetValuedMap::finite_valued(
      info_1d("double-well-inverse", "roots of x^2(x-1)^2 = y"), [](const Point& y) {
        const double v = y[0];
        if (v < 0.0) return std::vector<Point>{};
        if (v == 0.0) return std::vector<Point>{scalar(0.0), scalar(1.0)};
        const double s = std::sqrt(v);
        const double up = std::sqrt(1.0 + 4.0 * s);
        std::vector<Point> out{scalar(0.5 * (1.0 + up)), scalar(-2.0 * s / (1.0 + up))};
        const double disc = 1.0 - 4.0 * s;
        if (disc == 0.0) {
          out.push_back(scalar(0.5));
        } else if (disc > 0.0) {
          const double dn = std::sqrt(disc);
          out.push_back(scalar(0.5 * (1.0 + dn)));
          out.push_back(scalar(2.0 * s / (1.0 + dn)));
        }
        return out;
      });
  SmoothData smooth;
  smooth.value = [](const Point& x) { return double_well_value(x[0]); };
  smooth.gradient = [](const Point& x) { return scalar(double_well_derivative(x[0])); };
  smooth.residual = [](const Point& x) { return scalar(double_well_value(x[0])); };
  smooth.jacobian = [](const Point& x) { return scalar_matrix(double_well_derivative(x[0])); };
  smooth.infimum = 0.0;

  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0), scalar(1.0)}))};
  e.witness = [](const Point& x) { return scalar(double_well_value(x[0])); };
  e.smooth = smooth;
  e.subgradient = SetValuedMap::single_valued(
      info_1d("double-well-gradient", "2x(x-1)(2x-1)"),
      [](const Point& x) { return scalar(double_well_derivative(x[0])); });
  return e;
}

// Subdifferential of |x|: {sign x} off zero, [-1, 1] at zero.
OperatorEntry make_abs_subdiff() {
  MapInfo fwd_info = info_1d("abs-subdiff", "subdifferential of |x|");
  fwd_info.resolution = kIntervalResolution;
  SetValuedMap forward(
      fwd_info,
      [](const Point& x, const Window* w) {
        const double v = x[0];
        PointSet out(1);
        if (v > 0.0) {
          out.add(scalar(1.0));
        } else if (v < 0.0) {
          out.add(scalar(-1.0));
        } else {
          for (double t : discretize_interval(-1.0, 1.0, kIntervalResolution, w)) out.add(scalar(t));
        }
        return out;
      },
      [](const Point& x, const Point& y) {
        const double v = x[0];
        if (v > 0.0) return std::abs(y[0] - 1.0);
        if (v < 0.0) return std::abs(y[0] + 1.0);
        return std::max(0.0, std::abs(y[0]) - 1.0);
      });

  MapInfo inv_info = info_1d("abs-subdiff-inverse",
                             "w -> {0} on (-1,1), [0,inf) at 1, (-inf,0] at -1");
  inv_info.window_required = true;
  inv_info.resolution = kIntervalResolution;
  const double inf = std::numeric_limits<double>::infinity();
  SetValuedMap inverse(
      inv_info,
      [inf](const Point& w, const Window* win) {
        const double v = w[0];
        PointSet out(1);
        if (std::abs(v) < 1.0) {
          out.add(scalar(0.0));
        } else if (v == 1.0 || v == -1.0) {
          const double lo = v > 0 ? 0.0 : -inf;
          const double hi = v > 0 ? inf : 0.0;
          for (double t : discretize_interval(lo, hi, kIntervalResolution, win)) out.add(scalar(t));
        }
        return out;
      },
      [inf](const Point& w, const Point& x) {
        const double v = w[0];
        if (std::abs(v) < 1.0) return std::abs(x[0]);
        if (v == 1.0) return std::max(0.0, -x[0]);
        if (v == -1.0) return std::max(0.0, x[0]);
        return inf;
      });

  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0)}))};
  e.prox = scalar_prox(
      [](double gamma, double y) {
        const double m = std::abs(y) - gamma;
        return m > 0.0 ? std::copysign(m, y) : 0.0;
      },
      positive, "soft-threshold; single-valued for every gamma > 0");
  e.witness = [](const Point& x) {
    const double v = x[0];
    return scalar(v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0));
  };
  SmoothData smooth;
  smooth.value = [](const Point& x) { return std::abs(x[0]); };
  smooth.infimum = 0.0;
  e.smooth = smooth;
  mark_subdifferential(e);
  e.monotone = true;
  return e;
}

OperatorEntry make_linear_neg() {
  auto forward = SetValuedMap::single_valued(info_1d("linear-neg", "A(x)=-2x, not monotone"),
                                             [](const Point& x) { return scalar(-2.0 * x[0]); });
  auto inverse = SetValuedMap::single_valued(info_1d("linear-neg-inverse", "y -> -y/2"),
                                             [](const Point& y) { return scalar(-0.5 * y[0]); });
  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0)}))};
  e.prox = scalar_prox([](double gamma, double y) { return y / (1.0 - 2.0 * gamma); },
                       [](double gamma) { return gamma > 0.0 && gamma != 0.5; },
                       "(1-2 gamma)^{-1} y; single-valued for gamma != 1/2");
  e.witness = [](const Point& x) { return scalar(-2.0 * x[0]); };
  SmoothData smooth;
  smooth.residual = [](const Point& x) { return scalar(-2.0 * x[0]); };
  smooth.jacobian = [](const Point&) { return scalar_matrix(-2.0); };
  e.smooth = smooth;
  return e;
}

// g = 0.5 x^2, h = 0.25 x^2, so f = g - h = 0.25 x^2 and A = dg - grad h = x/2.
OperatorEntry make_dc_quad() {
  auto forward = SetValuedMap::single_valued(
      info_1d("dc-quad", "dg - grad h for g=x^2/2, h=x^2/4"),
      [](const Point& x) { return scalar(0.5 * x[0]); });
  auto inverse = SetValuedMap::single_valued(info_1d("dc-quad-inverse", "y -> 2y"),
                                             [](const Point& y) { return scalar(2.0 * y[0]); });
  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0)}))};
  e.prox = scalar_prox([](double gamma, double y) { return y / (1.0 + 0.5 * gamma); }, positive,
                       "y/(1+gamma/2)");
  e.witness = [](const Point& x) { return scalar(0.5 * x[0]); };
  SmoothData smooth;
  smooth.value = [](const Point& x) { return 0.25 * x[0] * x[0]; };
  smooth.gradient = [](const Point& x) { return scalar(0.5 * x[0]); };
  smooth.residual = smooth.gradient;
  smooth.jacobian = [](const Point&) { return scalar_matrix(0.5); };
  smooth.infimum = 0.0;
  e.smooth = smooth;
  e.quadratic = QuadraticForm{scalar_matrix(0.5), Eigen::VectorXd::Zero(1)};
  e.dc = DcData{scalar_prox([](double gamma, double y) { return y / (1.0 + gamma); }, positive,
                            "resolvent of dg: y/(1+gamma)"),
                [](const Point& x) { return scalar(0.5 * x[0]); },
                [](const Point& x) { return 0.5 * x[0] * x[0]; },
                [](const Point& x) { return 0.25 * x[0] * x[0]; }};
  mark_subdifferential(e);
  e.monotone = true;
  return e;
}

OperatorEntry make_linear2() {
  auto forward = SetValuedMap::single_valued(info_1d("linear2", "f(x)=2x, the gradient of x^2"),
                                             [](const Point& x) { return scalar(2.0 * x[0]); });
  auto inverse = SetValuedMap::single_valued(info_1d("linear2-inverse", "y -> y/2"),
                                             [](const Point& y) { return scalar(0.5 * y[0]); });
  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0)}))};
  e.prox = scalar_prox([](double gamma, double y) { return y / (1.0 + 2.0 * gamma); }, positive,
                       "y/(1+2 gamma)");
  e.witness = [](const Point& x) { return scalar(2.0 * x[0]); };
  SmoothData smooth;
  smooth.value = [](const Point& x) { return x[0] * x[0]; };
  smooth.gradient = [](const Point& x) { return scalar(2.0 * x[0]); };
  smooth.residual = smooth.gradient;
  smooth.jacobian = [](const Point&) { return scalar_matrix(2.0); };
  smooth.infimum = 0.0;
  e.smooth = smooth;
  e.quadratic = QuadraticForm{scalar_matrix(2.0), Eigen::VectorXd::Zero(1)};
  mark_subdifferential(e);
  e.monotone = true;
  return e;
}

OperatorEntry make_diag_embed() {
  MapInfo info = info_1d("diag-embed", "f(x)=(x,x): R -> R^2");
  info.dim_out = 2;
  auto forward = SetValuedMap::single_valued(info, [](const Point& x) { return Point{x[0], x[0]}; });
  MapInfo inv_info = info_1d("diag-embed-inverse", "y -> {y1} when y1 = y2, empty otherwise");
  inv_info.dim_in = 2;
  auto inverse = SetValuedMap::finite_valued(inv_info, [](const Point& y) {
    if (y[0] != y[1]) return std::vector<Point>{};
    return std::vector<Point>{scalar(y[0])};
  });
  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(1, {scalar(0.0)}))};
  e.witness = [](const Point& x) { return Point{x[0], x[0]}; };
  SmoothData smooth;
  smooth.residual = [](const Point& x) { return Point{x[0], x[0]}; };
  smooth.jacobian = [](const Point&) { return Eigen::MatrixXd::Ones(2, 1); };
  e.smooth = smooth;
  return e;
}

// Subdifferential of max(|x|-1, 0); the solution set is the interval [-1, 1].
OperatorEntry make_deadzone() {
  MapInfo fwd_info = info_1d("deadzone", "subdifferential of max(|x|-1, 0)");
  fwd_info.resolution = kIntervalResolution;
  SetValuedMap forward(
      fwd_info,
      [](const Point& x, const Window* w) {
        const double v = x[0];
        PointSet out(1);
        if (std::abs(v) < 1.0) {
          out.add(scalar(0.0));
        } else if (v > 1.0) {
          out.add(scalar(1.0));
        } else if (v < -1.0) {
          out.add(scalar(-1.0));
        } else {
          const double lo = v > 0 ? 0.0 : -1.0;
          const double hi = v > 0 ? 1.0 : 0.0;
          for (double t : discretize_interval(lo, hi, kIntervalResolution, w)) out.add(scalar(t));
        }
        return out;
      },
      [](const Point& x, const Point& y) {
        const double v = x[0];
        const double t = y[0];
        if (std::abs(v) < 1.0) return std::abs(t);
        if (v > 1.0) return std::abs(t - 1.0);
        if (v < -1.0) return std::abs(t + 1.0);
        const double lo = v > 0 ? 0.0 : -1.0;
        const double hi = v > 0 ? 1.0 : 0.0;
        return t < lo ? lo - t : (t > hi ? t - hi : 0.0);
      });

  MapInfo inv_info = info_1d("deadzone-inverse", "inverse subdifferential of max(|x|-1, 0)");
  inv_info.window_required = true;
  inv_info.resolution = kIntervalResolution;
  const double inf = std::numeric_limits<double>::infinity();
  auto inv_interval = [inf](double v, double& lo, double& hi) {
    if (v == 0.0) {
      lo = -1.0;
      hi = 1.0;
    } else if (v > 0.0 && v < 1.0) {
      lo = hi = 1.0;
    } else if (v < 0.0 && v > -1.0) {
      lo = hi = -1.0;
    } else if (v == 1.0) {
      lo = 1.0;
      hi = inf;
    } else if (v == -1.0) {
      lo = -inf;
      hi = -1.0;
    } else {
      return false;
    }
    return true;
  };
  SetValuedMap inverse(
      inv_info,
      [inv_interval](const Point& w, const Window* win) {
        PointSet out(1);
        double lo = 0.0;
        double hi = 0.0;
        if (!inv_interval(w[0], lo, hi)) return out;
        for (double t : discretize_interval(lo, hi, kIntervalResolution, win)) out.add(scalar(t));
        return out;
      },
      [inv_interval, inf](const Point& w, const Point& x) {
        double lo = 0.0;
        double hi = 0.0;
        if (!inv_interval(w[0], lo, hi)) return inf;
        const double t = x[0];
        return t < lo ? lo - t : (t > hi ? t - hi : 0.0);
      });

  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::box(scalar(-1.0), scalar(1.0))};
  e.prox = scalar_prox(
      [](double gamma, double y) {
        if (std::abs(y) <= 1.0) return y;
        if (std::abs(y) > 1.0 + gamma) return y - std::copysign(gamma, y);
        return std::copysign(1.0, y);
      },
      positive, "shrink toward [-1,1]; single-valued for every gamma > 0");
  e.witness = [](const Point& x) {
    const double v = x[0];
    return scalar(std::abs(v) <= 1.0 ? 0.0 : std::copysign(1.0, v));
  };
  SmoothData smooth;
  smooth.value = [](const Point& x) { return std::max(std::abs(x[0]) - 1.0, 0.0); };
  smooth.infimum = 0.0;
  e.smooth = smooth;
  mark_subdifferential(e);
  e.monotone = true;
  return e;
}

// f(x) = 0.5 (x1 + x2)^2 on R^2; stationary points form the line x1 + x2 = 0.
OperatorEntry make_ridge2() {
  MapInfo info = info_1d("ridge2", "gradient of 0.5(x1+x2)^2; S is the line x1+x2=0");
  info.dim_in = info.dim_out = 2;
  auto grad = [](const Point& x) {
    const double s = x[0] + x[1];
    return Point{s, s};
  };
  auto forward = SetValuedMap::single_valued(info, grad);
  const double h = 1.0 / std::sqrt(2.0);
  OperatorEntry e{.forward = forward,
                  .inverse = std::nullopt,
                  .solution_set = Region::affine(Point{0.0, 0.0}, {Point{h, -h}})};
  e.prox = ProxOracle{[](double gamma, const Point& y) {
                        const double s = y[0] + y[1];
                        const double c = gamma * s / (1.0 + 2.0 * gamma);
                        return Point{y[0] - c, y[1] - c};
                      },
                      positive, "(I + gamma 11')^{-1} y"};
  e.witness = grad;
  SmoothData smooth;
  smooth.value = [](const Point& x) {
    const double s = x[0] + x[1];
    return 0.5 * s * s;
  };
  smooth.gradient = grad;
  smooth.residual = grad;
  smooth.jacobian = [](const Point&) { return Eigen::MatrixXd::Ones(2, 2); };
  smooth.infimum = 0.0;
  e.smooth = smooth;
  mark_subdifferential(e);
  e.monotone = true;
  return e;
}

struct Catalog {
  std::vector<std::string> order;
  std::map<std::string, OperatorEntry, std::less<>> entries;

  void add(OperatorEntry e) {
    order.push_back(e.name());
    entries.emplace(e.name(), std::move(e));
  }
};

const Catalog& catalog() {
  static const Catalog instance = [] {
    Catalog c;
    c.add(make_rm1());
    c.add(make_flat_exp());
    c.add(make_square());
    c.add(make_double_well());
    c.add(make_abs_subdiff());
    c.add(make_quad_entry("quad", scalar_matrix(1.0), Eigen::VectorXd::Zero(1)));
    Eigen::MatrixXd q2(2, 2);
    q2 << 2.0, 0.5, 0.5, 1.0;
    Eigen::VectorXd b2(2);
    b2 << 1.0, -1.0;
    c.add(make_quad_entry("quad2", q2, b2));
    c.add(make_linear_neg());
    c.add(make_dc_quad());
    c.add(make_linear2());
    c.add(make_diag_embed());
    c.add(make_deadzone());
    c.add(make_ridge2());
    return c;
  }();
  return instance;
}

}  // namespace

OperatorEntry make_quad_entry(std::string name, const Eigen::MatrixXd& Q,
                              const Eigen::VectorXd& b) {
  const auto n = Q.rows();
  if (Q.cols() != n || b.size() != n || n == 0) {
    throw DimensionMismatch("make_quad_entry: Q must be square and match b");
  }
  if (!Q.isApprox(Q.transpose())) throw PreconditionError("make_quad_entry: Q must be symmetric");
  const Eigen::LLT<Eigen::MatrixXd> llt(Q);
  if (llt.info() != Eigen::Success) {
    throw PreconditionError("make_quad_entry: Q must be positive definite");
  }
  const Eigen::VectorXd xstar = llt.solve(b);
  const auto dim = static_cast<std::size_t>(n);

  MapInfo info;
  info.name = name;
  info.description = "gradient of 0.5 x'Qx - b'x, Q SPD";
  info.dim_in = info.dim_out = dim;
  auto grad = [Q, b](const Point& x) { return Point(Eigen::VectorXd(Q * x.vec() - b)); };
  auto forward = SetValuedMap::single_valued(info, grad);
  MapInfo inv_info = info;
  inv_info.name = name + "-inverse";
  inv_info.description = "y -> Q^{-1}(y + b)";
  auto inverse = SetValuedMap::single_valued(
      inv_info, [llt, b](const Point& y) { return Point(Eigen::VectorXd(llt.solve(y.vec() + b))); });

  OperatorEntry e{.forward = forward,
                  .inverse = inverse,
                  .solution_set = Region::points(PointSet(dim, {Point(xstar)}))};
  e.prox = ProxOracle{[Q, b](double gamma, const Point& y) {
                        const Eigen::MatrixXd m =
                            Eigen::MatrixXd::Identity(Q.rows(), Q.cols()) + gamma * Q;
                        return Point(Eigen::VectorXd(m.ldlt().solve(y.vec() + gamma * b)));
                      },
                      positive, "(I + gamma Q)^{-1}(y + gamma b)"};
  e.witness = grad;
  SmoothData smooth;
  smooth.value = [Q, b](const Point& x) {
    return 0.5 * x.vec().dot(Q * x.vec()) - b.dot(x.vec());
  };
  smooth.gradient = grad;
  smooth.residual = grad;
  smooth.jacobian = [Q](const Point&) { return Q; };
  smooth.infimum = -0.5 * b.dot(xstar);
  e.smooth = smooth;
  e.quadratic = QuadraticForm{Q, b};
  mark_subdifferential(e);
  e.monotone = true;
  return e;
}

const OperatorEntry& catalog_lookup(std::string_view name) {
  const auto& c = catalog();
  const auto it = c.entries.find(name);
  if (it == c.entries.end()) {
    throw UnknownOperator("catalog: unknown operator '" + std::string(name) + "'");
  }
  return it->second;
}

std::vector<std::string> catalog_names() { return catalog().order; }

}  // namespace rcont
