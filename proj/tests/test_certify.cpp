#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rcont/certify.hpp"
#include "rcont/errors.hpp"
#include "suite_runs.hpp"

using namespace rcont;

namespace {

// Trace with the given 1-d iterates; f-values from f when supplied.
IterateTrace synthetic(const std::vector<double>& xs, const std::function<double(double)>& f = {}) {
  IterateTrace t;
  t.algorithm = "synthetic";
  for (double x : xs) {
    t.iterates.push_back(Point{x});
    if (f) t.f_values.push_back(f(x));
  }
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) t.step_norms.push_back(std::abs(xs[k + 1] - xs[k]));
  t.termination = Termination::MaxIterations;
  return t;
}

IterateTrace scaled_witnesses(IterateTrace t, double c) {
  for (auto& [k, w] : t.witnesses) w = c * w;
  return t;
}

const auto sq = [](double x) { return 0.5 * x * x; };

}  // namespace

TEST_CASE("check_h1 examples") {
  const auto gdm = run_gdm(catalog_lookup("quad"), 0.5, Point{1.0});
  const Certificate c = check_h1(gdm, 1.0);
  CHECK(c.passed());
  for (const auto& s : c.per_step) CHECK(s.lhs - s.rhs == doctest::Approx(0.5 * s.rhs).epsilon(1e-12));

  for (double gamma : {0.3, 1.0, 2.5}) {
    const auto ppa = run_ppa(catalog_lookup("abs-subdiff"), gamma, Point{2.0});
    CHECK(check_h1(ppa, ppa.parameters.at("subproblem_alpha")).passed());
  }

  const Certificate up = check_h1(synthetic({1.0, 2.0, 1.0}, sq), 0.1);
  CHECK_FALSE(up.passed());
  REQUIRE(up.first_violation.has_value());
  CHECK(*up.first_violation == 0);
}

TEST_CASE("check_h1 errors") {
  CHECK_THROWS_AS(check_h1(synthetic({1.0, 0.5}), 1.0), PreconditionError);
  CHECK_THROWS_AS(check_h1(synthetic({1.0, 0.5}, sq), 0.0), PreconditionError);
}

TEST_CASE("check_h2 examples") {
  for (double gamma : {0.3, 1.0}) {
    const auto ppa = run_ppa(catalog_lookup("abs-subdiff"), gamma, Point{1.0});
    const double alpha = ppa.parameters.at("subproblem_alpha");
    // Prox form w_{k+1} = -2 alpha (x_{k+1} - x_k): beta = 2 alpha = 1/gamma.
    CHECK(2.0 * alpha == doctest::Approx(1.0 / gamma).epsilon(1e-15));
    const Certificate c = check_h2(ppa, 1.0 / gamma);
    CHECK(c.passed());
    CHECK_FALSE(check_h2(ppa, 0.9 / gamma).passed());
  }
  CHECK_THROWS_AS(check_h2(synthetic({1.0, 0.5}), 1.0), PreconditionError);
  const auto gdm = run_gdm(catalog_lookup("quad"), 0.5, Point{1.0});
  CHECK_THROWS_AS(check_h2(gdm, 2.0), PreconditionError);
}

TEST_CASE("check_h2 starts at the first witnessed index") {
  const auto ppa = run_ppa(catalog_lookup("quad"), 1.0, Point{1.0});
  const Certificate c = check_h2(ppa, 1.0);
  REQUIRE_FALSE(c.per_step.empty());
  CHECK(c.per_step.front().index == 0);
  CHECK(c.per_step.size() == ppa.step_norms.size());
  CHECK(ppa.witnesses.begin()->first == 1);
}

TEST_CASE("check_h3 examples") {
  const auto gdm = run_gdm(catalog_lookup("quad"), 0.5, Point{1.0});
  CHECK(check_h3(gdm, 2.0).passed());
  const Certificate bad = check_h3(gdm, 1.5);
  CHECK_FALSE(bad.passed());
  REQUIRE(bad.first_violation.has_value());
  CHECK(*bad.first_violation == 0);

  const auto still = run_gdm(catalog_lookup("quad"), 0.5, Point{0.0});
  const Certificate c = check_h3(still, 1.0);
  CHECK(c.passed());
  CHECK_FALSE(c.vacuous);
  CHECK(c.per_step.size() == 1);

  const auto ppa = run_ppa(catalog_lookup("quad"), 1.0, Point{1.0});
  CHECK_THROWS_AS(check_h3(ppa, 1.0), PreconditionError);
}

TEST_CASE("check_h4 examples") {
  const auto& square = catalog_lookup("square");
  const auto conv = run_gdm(square, 0.25, Point{1.0});
  REQUIRE(conv.iterates.size() >= 20);
  const Certificate c = check_h4(conv, square);
  CHECK(c.passed());
  CHECK(c.params.at("cluster_index") >= static_cast<double>(conv.iterates.size() - 11));

  std::vector<double> osc;
  for (int k = 0; k < 80; ++k) osc.push_back(k % 2 == 0 ? 1.0 + std::ldexp(1.0, -k) : -1.0 - std::ldexp(1.0, -k));
  const auto f = [&](double x) { return square.smooth->value(Point{x}); };
  const Certificate two = check_h4(synthetic(osc, f), square);
  CHECK(two.passed());

  std::vector<double> away;
  for (int k = 0; k < 30; ++k) away.push_back(std::ldexp(1.0, k));
  const Certificate div = check_h4(synthetic(away, [](double x) { return x * x; }), square);
  CHECK_FALSE(div.passed());
  CHECK(div.first_violation.has_value());

  const Certificate shortc = check_h4(synthetic({1.0, 0.5, 0.25}, sq), square);
  CHECK(shortc.inconclusive);
  CHECK_FALSE(shortc.passed());
}

TEST_CASE("check_h4 flags a discontinuous value sequence") {
  // Iterates converge to 0 but the recorded values stay at 1.
  std::vector<double> xs;
  for (int k = 0; k < 40; ++k) xs.push_back(std::ldexp(1.0, -k));
  IterateTrace t = synthetic(xs);
  t.f_values.assign(xs.size(), 1.0);
  const Certificate c = check_h4(t, catalog_lookup("square"));
  CHECK_FALSE(c.passed());
}

TEST_CASE("check_rclass examples") {
  const auto qp = run_qpower_prox(catalog_lookup("quad"), 1.0, 2.0, Point{1.0});
  CHECK(check_rclass(qp, 2.0, 1.0).passed());
  CHECK_FALSE(check_rclass(qp, 1.9, 1.0).passed());

  // xi(k) = 1/k, ||w_k|| = 1/k^2; the stop rule of the synthetic trace puts
  // the tail threshold at 10 * 1e-3.
  IterateTrace t = synthetic(std::vector<double>(1001, 0.0));
  t.stop.step_tol = 1e-3;
  for (std::size_t k = 1; k <= 1000; ++k) {
    const double kk = static_cast<double>(k);
    t.xi.emplace(k, 1.0 / kk);
    t.witnesses.emplace(k, Point{1.0 / (kk * kk)});
  }
  CHECK(check_rclass(t, 1.0, 2.0).passed());

  IterateTrace flat = synthetic(std::vector<double>(30, 0.0));
  for (std::size_t k = 0; k < 30; ++k) {
    flat.xi.emplace(k, 1.0);
    flat.witnesses.emplace(k, Point{1.0});
  }
  const Certificate f = check_rclass(flat, 1.0, 1.0);
  CHECK_FALSE(f.first_violation.has_value());
  CHECK_FALSE(f.tail_ok);
  CHECK_FALSE(f.passed());

  CHECK_THROWS_AS(check_rclass(synthetic({1.0, 0.5}), 1.0, 1.0), PreconditionError);
}

TEST_CASE("pass holds exactly when no step fails and the check is not vacuous") {
  IterateTrace one = synthetic({1.0}, sq);
  const Certificate h1 = check_h1(one, 1.0);
  CHECK(h1.vacuous);
  CHECK_FALSE(h1.passed());

  IterateTrace w = synthetic({1.0});
  w.convention = WitnessConvention::CurrentIterate;
  w.witnesses.emplace(0, Point{0.0});
  const Certificate h3 = check_h3(w, 1.0);
  CHECK(h3.vacuous);
  CHECK_FALSE(h3.passed());

  for (const auto& r : suite::property_runs()) {
    for (const auto& spec : r.certs) {
      const Certificate c = suite::evaluate(r.trace, spec);
      bool any_fail = false;
      for (const auto& s : c.per_step) any_fail = any_fail || !s.pass;
      CHECK(c.first_violation.has_value() == any_fail);
      if (c.hypothesis != Hypothesis::RClass) CHECK(c.passed() == (!any_fail && !c.vacuous));
    }
  }
}

TEST_CASE("minimal relative-error beta scales with the witnesses") {
  const std::vector<IterateTrace> traces{run_ppa(catalog_lookup("abs-subdiff"), 0.3, Point{1.0}),
                                         run_gdm(catalog_lookup("quad"), 0.5, Point{1.0}),
                                         run_ppa(catalog_lookup("quad2"), 0.7, Point{1.0, 2.0}),
                                         run_dca(catalog_lookup("dc-quad"), 1.0, Point{1.0})};
  for (const auto& t : traces) {
    CAPTURE(t.algorithm);
    const double b = minimal_relative_error_beta(t);
    REQUIRE(b > 0.0);
    for (double c : {0.5, 2.0, 3.0, 10.0}) {
      const IterateTrace s = scaled_witnesses(t, c);
      const double bs = minimal_relative_error_beta(s);
      CHECK(bs == doctest::Approx(c * b).epsilon(1e-15));
      const bool next = t.convention == WitnessConvention::NextIterate;
      const Certificate ok = next ? check_h2(s, bs) : check_h3(s, bs);
      const Certificate tight = next ? check_h2(s, bs * (1.0 - 1e-9)) : check_h3(s, bs * (1.0 - 1e-9));
      CHECK(ok.passed());
      CHECK_FALSE(tight.passed());
    }
  }
}

TEST_CASE("PPA traces pass H1 and H2 together") {
  for (const auto& name : catalog_names()) {
    const auto& e = catalog_lookup(name);
    if (!e.prox || !e.monotone || !e.smooth || !e.smooth->value) continue;
    CAPTURE(name);
    const Point x0(std::vector<double>(e.dim(), 2.5));
    for (double gamma : {0.2, 1.0, 3.0}) {
      const auto t = run_ppa(e, gamma, x0);
      CHECK(check_h1(t, t.parameters.at("subproblem_alpha")).passed());
      CHECK(check_h2(t, 1.0 / gamma).passed());
    }
  }
}

TEST_CASE("operator witnesses and membership") {
  const auto& e = catalog_lookup("square");
  const auto t = run_gdm(e, 0.25, Point{1.0});
  const auto w = with_operator_witnesses(t, e);
  CHECK(w.convention == WitnessConvention::CurrentIterate);
  CHECK(w.witnesses.size() == t.step_norms.size());
  for (const auto& [k, p] : w.witnesses) {
    CHECK(p[0] == t.iterates[k][0] * t.iterates[k][0]);
    CHECK(w.xi.at(k) == t.step_norms[k]);
  }
  CHECK_FALSE(witness_membership_violation(w, e).has_value());
  CHECK_FALSE(witness_membership_violation(t, e).has_value());

  IterateTrace bad = w;
  bad.witnesses.at(3) = Point{5.0};
  REQUIRE(witness_membership_violation(bad, e).has_value());
  CHECK(*witness_membership_violation(bad, e) == 3);
}

TEST_CASE("distance_trace examples") {
  const auto& abs = catalog_lookup("abs-subdiff");
  const auto ppa = run_ppa(abs, 0.3, Point{1.0});
  const DistanceVerdict v = distance_trace(ppa, abs.solution_set, 1e-6);
  const std::vector<double> expect{1.0, 0.7, 0.4, 0.1, 0.0, 0.0};
  REQUIRE(v.distances.size() == expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) CHECK(std::abs(v.distances[k] - expect[k]) < 1e-12);
  CHECK(v.converged);
  CHECK(*v.settle_index == 4);

  const auto& dc = catalog_lookup("dc-quad");
  const auto dca = run_dca(dc, 1.0, Point{1.0});
  const DistanceVerdict d = distance_trace(dca, dc.solution_set, 1e-6);
  CHECK(d.converged);
  // 0.75^48 = 1.0045e-6 is still above the tolerance; the 48th step (k = 0
  // based) produces the first iterate below it.
  std::size_t first_below = 0;
  while (std::pow(0.75, static_cast<double>(first_below)) >= 1e-6) ++first_below;
  CHECK(first_below == 49);
  CHECK(*d.settle_index == first_below);

  IterateTrace held = synthetic(std::vector<double>(50, 1.0));
  held.termination = Termination::ToleranceMet;
  const DistanceVerdict h = distance_trace(held, abs.solution_set, 1e-6);
  CHECK_FALSE(h.converged);
  CHECK_FALSE(h.settle_index.has_value());

  CHECK_THROWS_AS(distance_trace(ppa, Region::points(PointSet(1)), 1e-6), EmptySetError);
}

TEST_CASE("distance_trace window rule") {
  const Region s = Region::points(PointSet(1, {Point{0.0}}));
  std::vector<double> xs{1.0, 0.5};
  for (int i = 0; i < 9; ++i) xs.push_back(0.0);
  IterateTrace t = synthetic(xs);
  CHECK_FALSE(distance_trace(t, s, 1e-6).converged);
  t.termination = Termination::ToleranceMet;
  CHECK(distance_trace(t, s, 1e-6).converged);
  xs.push_back(0.0);
  IterateTrace u = synthetic(xs);
  CHECK(distance_trace(u, s, 1e-6).converged);
  xs.push_back(0.5);
  IterateTrace back = synthetic(xs);
  CHECK_FALSE(distance_trace(back, s, 1e-6).converged);
}

TEST_CASE("modulus link statuses") {
  const Region s = Region::points(PointSet(1, {Point{0.0}}));
  IterateTrace t = synthetic({1.0, 0.5, 0.25, 0.1});
  t.witnesses.emplace(1, Point{0.5});   // bound 1.1 * 0.5: ok
  t.witnesses.emplace(2, Point{0.2});   // bound 1.1 * 0.2 = 0.22 < 0.25: violation
  t.witnesses.emplace(3, Point{-3.0});  // beyond the last radius
  const ModulusCurve curve{Point{0.0}, std::nullopt, {0.5, 1.0, 2.0}, {0.5, 1.0, 2.0}, {1, 1, 1}, 0, false};
  const DistanceVerdict v = distance_trace(t, s, 1e-6, &curve);
  CHECK(v.modulus_checked);
  REQUIRE(v.link.size() == 3);
  CHECK(v.link[0].status == ModulusLinkCheck::Status::Ok);
  CHECK(v.link[0].bound == doctest::Approx(0.55));
  CHECK(v.link[1].status == ModulusLinkCheck::Status::Violation);
  CHECK(v.link[2].status == ModulusLinkCheck::Status::OutOfRange);
  CHECK(v.link_violations == 1);
  CHECK(v.link_out_of_range == 1);
  CHECK_FALSE(v.link_ok());
}

TEST_CASE("closed-graph inverses: every bounded certified trace converges") {
  const Window k = Window::interval(-10.0, 10.0);
  std::size_t checked = 0;
  for (const auto& r : suite::property_runs()) {
    CAPTURE(r.label);
    const auto& e = catalog_lookup(r.entry);
    REQUIRE(e.inverse.has_value());
    const auto cg = closed_graph_test(*e.inverse, Point::zero(e.forward.info().dim_out),
                                      Window::box(Point::zero(e.forward.info().dim_out),
                                                  std::vector<double>(e.forward.info().dim_out, 10.0)));
    REQUIRE(cg.verdict == Verdict::Pass);
    CHECK(suite::certified(r));
    CHECK(r.trace.termination != Termination::Divergence);
    CHECK_FALSE(witness_membership_violation(r.trace, e).has_value());
    CHECK(distance_trace(r.trace, e.solution_set, 1e-6).converged);
    ++checked;
  }
  CHECK(checked >= 10);
  (void)k;

  // The stated-range shifted run is unbounded and fails the R-class tail.
  const auto d = run_shifted_ppa(catalog_lookup("linear-neg"), 0.5, 0.25, Point{1.0}, {},
                                 StepCondition::Stated);
  CHECK(d.termination == Termination::Divergence);
  CHECK_FALSE(check_rclass(d, 0.5, 1.0).passed());
}

TEST_CASE("flat-exp inverse closed-graph test is inconclusive") {
  const auto r = closed_graph_test(invert(catalog_lookup("flat-exp")), Point{0.0},
                                   Window::interval(-10.0, 10.0));
  CHECK(r.verdict == Verdict::Inconclusive);
}
