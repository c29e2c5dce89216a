#include <doctest.h>

#include <cmath>

#include "vext/optimization.hpp"

using namespace vext;

namespace {

Problem reciprocal_problem() {
  Problem p;
  p.f = ScalarFunction::reciprocal();
  p.omega = SetExpr::whole_space(1);
  p.mu0 = 0.0;
  p.feasible_point = 1.0;
  return p;
}

Problem windowed_problem() {
  Problem p;
  p.f = ScalarFunction::piecewise_parabolic();
  p.omega = SetExpr::whole_space(1);
  p.mu0 = 0.0;
  p.feasible_point = 1.0;
  return p;
}

OptBudgets fast_budgets() {
  OptBudgets b;
  b.k_budget = 1000;
  return b;
}

}  // namespace

TEST_CASE("local infimum estimates") {
  OptBudgets b;
  // windowed objective at k = 10, rho = 0.3
  CHECK(local_inf(windowed_problem(), 10.0, 0.3, b) ==
        doctest::Approx(1.0 / 10.3 - 0.09).epsilon(1e-9));
  // reciprocal at center -10, rho = 1: inf approaches 1/(-9)
  CHECK(local_inf(reciprocal_problem(), -10.0, 1.0, b) ==
        doctest::Approx(-1.0 / 9.0).epsilon(1e-8));
  // constant objective
  Problem c;
  c.f = ScalarFunction::polynomial({3.5});
  CHECK(local_inf(c, 0.0, 2.0, b) == doctest::Approx(3.5));
  // infeasible ball
  Problem constrained = reciprocal_problem();
  constrained.omega = SetExpr::ball(Point{100.0}, 1.0);
  CHECK_THROWS_AS(local_inf(constrained, 0.0, 1.0, b), Error);
}

TEST_CASE("local infimum monotonicity and upper bound at the center") {
  OptBudgets b;
  Problem p = windowed_problem();
  double prev = local_inf(p, 10.0, 0.05, b);
  CHECK(prev <= p.f.eval(10.0) + 1e-12);
  for (double rho : {0.1, 0.2, 0.4, 0.8}) {
    double v = local_inf(p, 10.0, rho, b);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("minimizing-sequence checks") {
  OptBudgets b = fast_budgets();
  // the reciprocal objective is unbounded below: x^k = k is not minimizing
  StationarityReport r1 = check_minimizing(reciprocal_problem(), 
                                           SequenceSpec::single_closed_form({"k"}), b);
  CHECK(r1.outcome == Outcome::Falsified);
  CHECK(r1.notes.find("unbounded") != std::string::npos);
  // x^2 with x^k = 1/k reaches the infimum
  Problem sq;
  sq.f = ScalarFunction::polynomial({0.0, 0.0, 1.0});
  StationarityReport r2 = check_minimizing(sq, SequenceSpec::single_closed_form({"1/k"}), b);
  CHECK(r2.outcome == Outcome::Certified);
  // x^k = -1/k dives toward the pole
  StationarityReport r3 = check_minimizing(reciprocal_problem(),
                                           SequenceSpec::single_closed_form({"-1/k"}), b);
  CHECK(r3.outcome == Outcome::Falsified);
}

TEST_CASE("minimizing at a level") {
  OptBudgets b = fast_budgets();
  StationarityReport pos = check_minimizing_at_level(
      reciprocal_problem(), SequenceSpec::single_closed_form({"k"}), 1.0, 1, b);
  CHECK(pos.outcome == Outcome::Certified);
  StationarityReport neg = check_minimizing_at_level(
      reciprocal_problem(), SequenceSpec::single_closed_form({"-k"}), 1.0, 1, b);
  CHECK(neg.outcome == Outcome::Falsified);
  // constant sequence at a strict local minimizer
  Problem sq;
  sq.f = ScalarFunction::polynomial({0.0, 0.0, 1.0});
  StationarityReport c =
      check_minimizing_at_level(sq, SequenceSpec::single_closed_form({"0"}), 0.5, 1, b);
  CHECK(c.outcome == Outcome::Certified);
  // constant sequence away from a local minimizer fails the level bound
  Problem sq2 = sq;
  sq2.mu0 = 1.0;
  StationarityReport d =
      check_minimizing_at_level(sq2, SequenceSpec::single_closed_form({"1"}), 0.5, 1, b);
  CHECK(d.outcome == Outcome::Falsified);
}

TEST_CASE("firm inf-stationarity") {
  OptBudgets b = fast_budgets();
  StationarityReport r1 = check_firm_inf_stationary(
      reciprocal_problem(), SequenceSpec::single_closed_form({"-k"}), 0.0, 1.0, b);
  CHECK(r1.outcome == Outcome::Certified);
  StationarityReport r2 = check_firm_inf_stationary(
      windowed_problem(), SequenceSpec::single_closed_form({"k"}), 0.0, 0.3, b);
  CHECK(r2.outcome == Outcome::Falsified);
  CHECK(*r2.limsup_estimate == doctest::Approx(-0.09).epsilon(5e-2));
  Problem sq;
  sq.f = ScalarFunction::polynomial({0.0, 0.0, 1.0});
  StationarityReport r3 =
      check_firm_inf_stationary(sq, SequenceSpec::single_closed_form({"0"}), 0.0, 0.5, b);
  CHECK(r3.outcome == Outcome::Certified);
}

TEST_CASE("inf-stationarity ratio grids") {
  OptBudgets b = fast_budgets();
  StationarityReport r1 =
      check_inf_stationary(windowed_problem(), SequenceSpec::single_closed_form({"k"}), 0.0, b);
  CHECK(r1.outcome == Outcome::Certified);
  Problem osc;
  osc.f = ScalarFunction::oscillatory_sine();
  StationarityReport r2 =
      check_inf_stationary(osc, SequenceSpec::single_closed_form({"2*k/pi"}), 0.0, b);
  CHECK(r2.outcome == Outcome::Falsified);
  CHECK(*r2.limsup_estimate <= -0.9);
  Problem sq;
  sq.f = ScalarFunction::polynomial({0.0, 0.0, 1.0});
  StationarityReport r3 =
      check_inf_stationary(sq, SequenceSpec::single_closed_form({"0"}), 0.0, b);
  CHECK(r3.outcome == Outcome::Certified);
}

TEST_CASE("approximate inf-stationarity") {
  OptBudgets b = fast_budgets();
  b.u_hint_delta = Expr::parse("1/(2*k*pi - pi/2)");
  b.u_hint_rho = Expr::parse("1/(4*pi*k^2)");
  Problem osc;
  osc.f = ScalarFunction::oscillatory_sine();
  StationarityReport r1 =
      check_approx_inf_stationary(osc, SequenceSpec::single_closed_form({"2*k/pi"}), 0.0, b);
  CHECK(r1.outcome == Outcome::Certified);
  CHECK_FALSE(r1.aux_witnesses.empty());

  // trivial schedule u^k = x^k on an inf-stationary fixture
  StationarityReport r2 = check_approx_inf_stationary(
      windowed_problem(), SequenceSpec::single_closed_form({"k"}), 0.0, fast_budgets());
  CHECK(r2.outcome == Outcome::Certified);

  // uniform downward slope: every auxiliary candidate keeps ratio -1
  Problem lin;
  lin.f = ScalarFunction::polynomial({0.0, -1.0});
  lin.mu0 = 0.0;
  StationarityReport r3 = check_approx_inf_stationary(
      lin, SequenceSpec::single_closed_form({"0"}), 0.0, fast_budgets());
  CHECK(r3.outcome == Outcome::Falsified);
}

TEST_CASE("epigraph embedding shapes") {
  auto [o1, o2] = embed_epigraph(reciprocal_problem());
  CHECK(o1.dim() == 2);
  CHECK(o2.dim() == 2);
  CHECK(contains(o1, Point{2.0, 0.6}, 0.0));
  CHECK_FALSE(contains(o1, Point{2.0, 0.4}, 0.0));
  CHECK(contains(o2, Point{-7.0, -0.1}, 0.0));
  CHECK_FALSE(contains(o2, Point{-7.0, 0.1}, 0.0));
  // constant zero objective: upper vs lower halfplane
  Problem zero;
  zero.f = ScalarFunction::polynomial({0.0});
  auto [u, l] = embed_epigraph(zero);
  CHECK(contains(u, Point{3.0, 0.0}, 0.0));
  CHECK(contains(u, Point{3.0, 5.0}, 0.0));
  CHECK_FALSE(contains(u, Point{3.0, -0.1}, 0.0));
  CHECK(contains(l, Point{3.0, -0.1}, 0.0));
}

TEST_CASE("embedded witnesses re-verify through the grid oracle") {
  CheckParams params;
  params.epsilons = {1e-1, 1e-2};
  OptBudgets b = fast_budgets();
  PropertyVerdict firm = build_stationarity_witness(
      reciprocal_problem(), SequenceSpec::single_closed_form({"k"}), WitnessVariant::Firm, b, params);
  CHECK(firm.outcome == Outcome::Certified);
  for (const EpsilonRecord& r : firm.per_epsilon) {
    CHECK(r.emptiness.empty());
    CHECK(r.emptiness.method == EmptinessMethod::GridOracle);
    // the shifts follow the two-sided vertical pattern
    CHECK(r.shifts[0].coords[1] < 0.0);
    CHECK(r.shifts[1].coords[1] == doctest::Approx(-r.shifts[0].coords[1]));
  }
  PropertyVerdict stat = build_stationarity_witness(
      windowed_problem(), SequenceSpec::single_closed_form({"k"}), WitnessVariant::Stationary, b,
      params);
  CHECK(stat.outcome == Outcome::Certified);
}

TEST_CASE("necessary conditions on catalog problems") {
  OptBudgets b = fast_budgets();
  b.k_budget = 4000;
  NecessaryConditionsReport ok = check_necessary_conditions(
      reciprocal_problem(), SequenceSpec::single_closed_form({"k"}), {1e-1, 1e-2, 1e-3},
      ConeKind::Frechet, b);
  CHECK(ok.all_success);
  for (const NecessaryConditionRow& row : ok.rows) {
    CHECK(row.sum_norm < row.eps);
    double total = std::abs(row.x1_star) + std::abs(row.x2_star) + std::abs(row.nu1);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }

  // pinned origin: the constraint normal absorbs the gradient
  Problem pinned;
  pinned.f = ScalarFunction::polynomial({0.0, 1.0});  // f(x) = x
  pinned.omega = SetExpr::polyhedron(
      {HalfspaceData{{1.0}, 0.0, false}, HalfspaceData{{-1.0}, 0.0, false}});
  pinned.mu0 = 0.0;
  NecessaryConditionsReport pin = check_necessary_conditions(
      pinned, SequenceSpec::single_closed_form({"0"}), {1e-1, 1e-2}, ConeKind::Frechet, b);
  CHECK(pin.all_success);

  // interior non-stationary point of a smooth objective: failure at small eps
  Problem slope;
  slope.f = ScalarFunction::polynomial({0.0, 1.0});
  slope.mu0 = 0.0;
  NecessaryConditionsReport bad = check_necessary_conditions(
      slope, SequenceSpec::single_closed_form({"0"}), {1e-1}, ConeKind::Frechet, b);
  CHECK_FALSE(bad.all_success);
}

TEST_CASE("multiplier rule branches") {
  OptBudgets b = fast_budgets();
  b.k_budget = 4000;
  // normal branch with g = -1/x^2, v = 0 along both unbounded tails
  for (const char* tail : {"k", "-k"}) {
    MultiplierReport rep = multiplier_rule_check(
        reciprocal_problem(), SequenceSpec::single_closed_form({tail}), 2.0, {1e-1, 1e-2, 1e-3}, b);
    CHECK(rep.normal_all);
    for (const MultiplierRow& row : rep.rows) CHECK(std::abs(row.g + row.v) < row.eps);
  }
  // |x| at zero: the normal branch holds with g = 0
  Problem habs;
  habs.f = ScalarFunction::abs_value();
  habs.mu0 = 0.0;
  MultiplierReport habs_rep =
      multiplier_rule_check(habs, SequenceSpec::single_closed_form({"0"}), 2.0, {1e-1, 1e-2}, b);
  CHECK(habs_rep.normal_all);

  // the singular fixture: f = -sqrt|x| pinned at the origin
  Problem sing;
  sing.f = ScalarFunction::sqrt_abs(-1.0);
  sing.omega = SetExpr::polyhedron(
      {HalfspaceData{{1.0}, 0.0, false}, HalfspaceData{{-1.0}, 0.0, false}});
  sing.mu0 = 0.0;
  MultiplierReport sing_rep = multiplier_rule_check(
      sing, SequenceSpec::single_closed_form({"0"}), 2.0, {1e-1, 1e-2}, b);
  CHECK(sing_rep.singular_all);
  CHECK_FALSE(sing_rep.rows.back().branch_normal);  // blows up at small eps
}

TEST_CASE("qualification condition") {
  OptBudgets b = fast_budgets();
  b.k_budget = 4000;
  PropertyVerdict ok = qualification_check(reciprocal_problem(),
                                           SequenceSpec::single_closed_form({"k"}), 1e-2, b);
  CHECK(ok.outcome == Outcome::Certified);

  Problem sing;
  sing.f = ScalarFunction::sqrt_abs(-1.0);
  sing.omega = SetExpr::polyhedron(
      {HalfspaceData{{1.0}, 0.0, false}, HalfspaceData{{-1.0}, 0.0, false}});
  sing.mu0 = 0.0;
  PropertyVerdict bad =
      qualification_check(sing, SequenceSpec::single_closed_form({"0"}), 1e-2, b);
  CHECK(bad.outcome == Outcome::Falsified);
  CHECK(*bad.value < 1e-2);

  // interior sequence with a smooth objective: certified via triviality
  Problem sq;
  sq.f = ScalarFunction::polynomial({0.0, 0.0, 1.0});
  sq.mu0 = 0.0;
  PropertyVerdict interior =
      qualification_check(sq, SequenceSpec::single_closed_form({"0"}), 1e-2, b);
  CHECK(interior.outcome == Outcome::Certified);
}

TEST_CASE("implication ladder on the level-minimizing fixture") {
  OptBudgets b = fast_budgets();
  Problem p = reciprocal_problem();
  SequenceSpec seq = SequenceSpec::single_closed_form({"k"});
  REQUIRE(check_minimizing_at_level(p, seq, 1.0, 1, b).certified());
  CHECK(check_firm_inf_stationary(p, seq, 0.0, 1.0, b).outcome != Outcome::Falsified);
  CHECK(check_inf_stationary(p, seq, 0.0, b).outcome != Outcome::Falsified);
  CHECK(check_approx_inf_stationary(p, seq, 0.0, b).outcome != Outcome::Falsified);
}

TEST_CASE("minimizing matches level-minimizing at the capped infimum") {
  OptBudgets b = fast_budgets();
  Problem sq;
  sq.f = ScalarFunction::polynomial({0.0, 0.0, 1.0});
  SequenceSpec seq = SequenceSpec::single_closed_form({"1/k"});
  StationarityReport glob = check_minimizing(sq, seq, b);
  REQUIRE(glob.certified());
  // level = capped-grid infimum estimate, uncapped rho
  StationarityReport lvl = check_minimizing_at_level(sq, seq, kUnboundedRadius, 1, b);
  CHECK(lvl.certified());
}
