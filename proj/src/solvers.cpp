#include "rcont/solvers.hpp"

#include "rcont/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <functional>

namespace rcont {

namespace {

using ValueFn = std::function<double(const Point&)>;
using NextFn = std::function<Eigen::VectorXd(const Point&)>;
using AfterFn = std::function<void(IterateTrace&, std::size_t)>;

void drive(IterateTrace& t, const Point& x0, const StopRule& stop, const ValueFn& value,
           const NextFn& next, const AfterFn& after) {
  stop.validate();
  t.stop = stop;
  t.iterates.push_back(x0);
  if (value) t.f_values.push_back(value(x0));
  if (x0.norm() > stop.divergence_guard) {
    t.termination = Termination::Divergence;
    return;
  }
  for (std::size_t k = 0; k < stop.max_iter; ++k) {
    const Eigen::VectorXd v = next(t.iterates[k]);
    if (!Point::representable(v)) {
      t.termination = Termination::Divergence;
      return;
    }
    Point xn(v);
    const double delta = distance(xn, t.iterates[k]);
    t.iterates.push_back(std::move(xn));
    t.step_norms.push_back(delta);
    if (value) t.f_values.push_back(value(t.iterates.back()));
    if (after) after(t, k);
    if (t.iterates.back().norm() > stop.divergence_guard) {
      t.termination = Termination::Divergence;
      return;
    }
    if (delta < stop.step_tol) {
      t.termination = Termination::ToleranceMet;
      return;
    }
  }
  t.termination = Termination::MaxIterations;
}

ValueFn value_of(const OperatorEntry& entry) {
  if (entry.smooth && entry.smooth->value) return entry.smooth->value;
  return nullptr;
}

void require_dim(const OperatorEntry& entry, const Point& x0, const char* who) {
  if (x0.dim() != entry.dim()) throw DimensionMismatch(std::string(who) + ": x0 dimension");
}

// Records w_{k+1} = (x_k - x_{k+1})/gamma and xi(k+1) = Delta_k.
AfterFn resolvent_witness(double gamma) {
  return [gamma](IterateTrace& t, std::size_t k) {
    t.witnesses.emplace(k + 1, (1.0 / gamma) * (t.iterates[k] - t.iterates[k + 1]));
    t.xi.emplace(k + 1, t.step_norms[k]);
  };
}

// Minimizer of f(x) + gamma |x - xk|^q on the line.
double scalar_qpower_step(const OperatorEntry& entry, double gamma, double q, double xk) {
  const auto& sm = *entry.smooth;
  if (!sm.infimum) {
    throw MissingOracle("run_qpower_prox: '" + entry.name() + "' has no known infimum to bracket");
  }
  auto f = [&](double x) { return sm.value(Point{x}); };
  auto phi = [&](double x) { return f(x) + gamma * std::pow(std::abs(x - xk), q); };
  const double gap = std::max(0.0, f(xk) - *sm.infimum);
  const double radius = std::pow(gap / gamma, 1.0 / q);
  if (radius == 0.0) return xk;

  constexpr std::size_t kScan = 4001;
  const double lo = xk - radius;
  const double hi = xk + radius;
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  auto grid = [&](std::size_t i) {
    if (i == (kScan - 1) / 2) return xk;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kScan - 1);
  };
  for (std::size_t i = 0; i < kScan; ++i) {
    const double v = phi(grid(i));
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double a = grid(best == 0 ? 0 : best - 1);
  const double b = grid(best + 1 >= kScan ? kScan - 1 : best + 1);

  double cand = grid(best);
  bool refined = false;
  if (sm.gradient) {
    auto dphi = [&](double x) {
      const double s = x - xk;
      const double pen = s == 0.0 ? 0.0 : gamma * q * std::pow(std::abs(s), q - 1.0) * (s > 0 ? 1 : -1);
      return sm.gradient(Point{x})[0] + pen;
    };
    const double fa = dphi(a);
    const double fb = dphi(b);
    if (fa == 0.0) {
      cand = a;
      refined = true;
    } else if (fb == 0.0) {
      cand = b;
      refined = true;
    } else if ((fa < 0.0) != (fb < 0.0)) {
      const auto r = boost::math::tools::bisect(dphi, a, b, boost::math::tools::eps_tolerance<double>(52));
      cand = 0.5 * (r.first + r.second);
      refined = true;
    }
  }
  if (!refined) {
    cand = boost::math::tools::brent_find_minima(phi, a, b, 52).first;
  }
  return phi(cand) <= best_val ? cand : grid(best);
}

}  // namespace

void StopRule::validate() const {
  if (max_iter < 1) throw PreconditionError("StopRule: max_iter must be >= 1");
  if (!(step_tol > 0.0) || !(divergence_guard > 0.0)) {
    throw PreconditionError("StopRule: thresholds must be positive");
  }
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ToleranceMet:
      return "tolerance";
    case Termination::MaxIterations:
      return "max_iterations";
    case Termination::Divergence:
      return "divergence";
  }
  return "unknown";
}

Point resolvent(const ProxOracle& p, double gamma, const Point& y) {
  if (!(gamma > 0.0)) throw PreconditionError("resolvent: gamma must be positive");
  if (p.single_valued && !p.single_valued(gamma)) {
    throw PreconditionError("resolvent: not single-valued at this gamma (" + p.domain_note + ")");
  }
  return p.rule(gamma, y);
}

IterateTrace run_ppa(const OperatorEntry& entry, double gamma, const Point& x0,
                     const StopRule& stop) {
  if (!entry.prox) throw MissingOracle("run_ppa: '" + entry.name() + "' has no prox oracle");
  if (!(gamma > 0.0)) throw PreconditionError("run_ppa: gamma must be positive");
  require_dim(entry, x0, "run_ppa");
  resolvent(*entry.prox, gamma, x0);

  IterateTrace t;
  t.algorithm = "ppa";
  t.parameters = {{"gamma", gamma}, {"subproblem_alpha", 1.0 / (2.0 * gamma)}};
  t.convention = WitnessConvention::NextIterate;
  t.witness_target = WitnessTarget::Forward;
  const ProxOracle& p = *entry.prox;
  drive(
      t, x0, stop, value_of(entry),
      [&](const Point& x) { return p.rule(gamma, x).vec(); }, resolvent_witness(gamma));
  return t;
}

IterateTrace run_gdm(const OperatorEntry& entry, double step, const Point& x0,
                     const StopRule& stop) {
  if (!entry.smooth || !entry.smooth->gradient) {
    throw MissingOracle("run_gdm: '" + entry.name() + "' has no gradient");
  }
  if (!(step > 0.0)) throw PreconditionError("run_gdm: step must be positive");
  require_dim(entry, x0, "run_gdm");

  IterateTrace t;
  t.algorithm = "gdm";
  t.parameters = {{"step", step}};
  t.convention = WitnessConvention::CurrentIterate;
  t.witness_target = WitnessTarget::Subgradient;
  const auto& grad = entry.smooth->gradient;
  drive(
      t, x0, stop, value_of(entry),
      [&](const Point& x) { return Eigen::VectorXd(x.vec() - step * grad(x).vec()); },
      [&](IterateTrace& tr, std::size_t k) {
        tr.witnesses.emplace(k, grad(tr.iterates[k]));
        tr.xi.emplace(k, tr.step_norms[k]);
      });
  return t;
}

IterateTrace run_qpower_prox(const OperatorEntry& entry, double gamma, double q, const Point& x0,
                             const StopRule& stop) {
  if (!(q > 1.0)) throw PreconditionError("run_qpower_prox: q must exceed 1");
  if (!(gamma > 0.0)) throw PreconditionError("run_qpower_prox: gamma must be positive");
  if (!entry.smooth || !entry.smooth->value) {
    throw MissingOracle("run_qpower_prox: '" + entry.name() + "' has no scalar function");
  }
  require_dim(entry, x0, "run_qpower_prox");
  const bool closed_form = entry.quadratic && q == 2.0;
  if (!closed_form && entry.dim() != 1) {
    throw PreconditionError(
        "run_qpower_prox: multidimensional subproblems are solved only for quadratics with q = 2");
  }

  IterateTrace t;
  t.algorithm = "qpower";
  t.parameters = {{"gamma", gamma}, {"q", q}};
  t.convention = WitnessConvention::NextIterate;
  t.witness_target = WitnessTarget::Subgradient;

  NextFn next;
  if (closed_form) {
    const auto& Q = entry.quadratic->Q;
    const auto& b = entry.quadratic->b;
    const Eigen::MatrixXd m = Q + 2.0 * gamma * Eigen::MatrixXd::Identity(Q.rows(), Q.cols());
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    next = [ldlt, b, gamma](const Point& x) {
      return Eigen::VectorXd(ldlt.solve(b + 2.0 * gamma * x.vec()));
    };
  } else {
    next = [&entry, gamma, q](const Point& x) {
      Eigen::VectorXd v(1);
      v[0] = scalar_qpower_step(entry, gamma, q, x[0]);
      return v;
    };
  }
  drive(t, x0, stop, value_of(entry), next, [gamma, q](IterateTrace& tr, std::size_t k) {
    const double delta = tr.step_norms[k];
    const Point diff = tr.iterates[k + 1] - tr.iterates[k];
    const double c = delta == 0.0 ? 0.0 : gamma * q * std::pow(delta, q - 2.0);
    tr.witnesses.emplace(k + 1, (-c) * diff);
    tr.xi.emplace(k + 1, delta);
  });
  return t;
}

IterateTrace run_dca(const OperatorEntry& entry, double gamma, const Point& x0,
                     const StopRule& stop) {
  if (!entry.dc) throw MissingOracle("run_dca: '" + entry.name() + "' has no DC decomposition");
  if (!entry.dc->prox_g.rule) throw MissingOracle("run_dca: g has no prox oracle");
  if (!entry.dc->grad_h) throw MissingOracle("run_dca: h has no gradient");
  if (!(gamma > 0.0)) throw PreconditionError("run_dca: gamma must be positive");
  require_dim(entry, x0, "run_dca");
  const DcData& dc = *entry.dc;
  resolvent(dc.prox_g, gamma, x0);

  IterateTrace t;
  t.algorithm = "dca";
  t.parameters = {{"gamma", gamma}};
  t.convention = WitnessConvention::NextIterate;
  t.witness_target = WitnessTarget::Forward;
  ValueFn value;
  if (dc.g && dc.h) value = [&dc](const Point& x) { return dc.g(x) - dc.h(x); };
  drive(
      t, x0, stop, value,
      [&](const Point& x) { return dc.prox_g.rule(gamma, x + gamma * dc.grad_h(x)).vec(); },
      [&](IterateTrace& tr, std::size_t k) {
        const Point& xk = tr.iterates[k];
        const Point& xn = tr.iterates[k + 1];
        tr.witnesses.emplace(k + 1, dc.grad_h(xk) - dc.grad_h(xn) - (1.0 / gamma) * (xn - xk));
        tr.xi.emplace(k + 1, tr.step_norms[k]);
      });
  return t;
}

IterateTrace run_shifted_ppa(const OperatorEntry& entry, double kappa, double gamma,
                             const Point& x0, const StopRule& stop, StepCondition condition,
                             const std::optional<Point>& anchor) {
  if (!entry.prox) throw MissingOracle("run_shifted_ppa: '" + entry.name() + "' has no prox oracle");
  if (!(kappa > 0.0)) throw PreconditionError("run_shifted_ppa: kappa must be positive");
  if (!(gamma > 0.0)) throw PreconditionError("run_shifted_ppa: gamma must be positive");
  require_dim(entry, x0, "run_shifted_ppa");
  if (condition == StepCondition::Derived && !(gamma > 2.0 * kappa)) {
    throw PreconditionError("run_shifted_ppa: derived step condition needs gamma > 2 kappa");
  }
  if (condition == StepCondition::Stated && !(gamma < 1.0 / (2.0 * kappa))) {
    throw PreconditionError("run_shifted_ppa: stated step condition needs gamma < 1/(2 kappa)");
  }
  resolvent(*entry.prox, gamma, x0);
  const Point x_bar = anchor ? *anchor : entry.solution_set.project(x0);
  if (x_bar.dim() != entry.dim()) throw DimensionMismatch("run_shifted_ppa: anchor dimension");

  IterateTrace t;
  t.algorithm = "shifted-ppa";
  t.parameters = {{"gamma", gamma},
                  {"kappa", kappa},
                  {"step_condition", condition == StepCondition::Derived ? 1.0 : 0.0}};
  t.convention = WitnessConvention::NextIterate;
  t.witness_target = WitnessTarget::Forward;
  t.anchor = x_bar;
  const ProxOracle& p = *entry.prox;
  const double coef = 1.0 - 2.0 * kappa / gamma;
  const AfterFn base = resolvent_witness(gamma);
  drive(
      t, x0, stop, value_of(entry), [&](const Point& x) { return p.rule(gamma, x).vec(); },
      [&](IterateTrace& tr, std::size_t k) {
        base(tr, k);
        const double dn = distance(tr.iterates[k + 1], x_bar);
        const double dc = distance(tr.iterates[k], x_bar);
        const double delta = tr.step_norms[k];
        tr.fejer_ledger.push_back(dn * dn - dc * dc + coef * delta * delta);
      });
  return t;
}

}  // namespace rcont
