#include <doctest.h>

#include <cmath>

#include "vext/extremality.hpp"
#include "vext/registry.hpp"

using namespace vext;

namespace {

SetExpr e15_branch() {
  return SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::GE, 1.0,
                                    {HalfspaceData{{-1.0, 0.0}, 0.0, true}}, true);
}
SetExpr lower() { return SetExpr::halfspace({0.0, 1.0}, 0.0); }

CheckParams fast_params() {
  CheckParams p;
  p.epsilons = {1.0, 1e-1, 1e-2};
  p.k_budget = 10000;
  return p;
}

ShiftHintSpec down_hint() {
  ShiftHintSpec h;
  h.set_index = 0;
  h.direction = {0.0, -1.0};
  h.clearance = Expr::parse("1/k");
  return h;
}

}  // namespace

TEST_CASE("diameter vanishing trichotomy") {
  NormSpec ns;
  PropertyVerdict v1 = check_diam_vanishes(
      SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}}), 10000, 1e-2, ns);
  CHECK(v1.outcome == Outcome::Certified);
  PropertyVerdict v2 =
      check_diam_vanishes(SequenceSpec::closed_form({{"1", "2"}, {"1", "2"}}), 1000, 1e-2, ns);
  CHECK(v2.outcome == Outcome::Certified);  // constant common point
  PropertyVerdict v3 =
      check_diam_vanishes(SequenceSpec::closed_form({{"k", "1"}, {"k", "0"}}), 1000, 1e-2, ns);
  CHECK(v3.outcome == Outcome::Falsified);
}

TEST_CASE("sequential extremality on the worked pair and its negation") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SequenceSpec seq = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
  CheckParams p = fast_params();
  p.hints = {down_hint()};
  PropertyVerdict v = check_extremal(sets, seq, 1.0, p);
  CHECK(v.outcome == Outcome::Certified);
  for (const EpsilonRecord& r : v.per_epsilon) {
    CHECK(r.success);
    CHECK(r.k > 1.0 / r.eps);
    CHECK(product_norm(p.budget.norm, r.shifts) < r.eps);
  }

  // one set used twice with one shared sequence: shifted copies always meet
  std::vector<SetExpr> twice = {lower(), lower()};
  SequenceSpec shared = SequenceSpec::closed_form({{"k", "0"}, {"k", "0"}});
  PropertyVerdict w = check_extremal(twice, shared, 1.0, fast_params());
  CHECK(w.outcome == Outcome::Falsified);
}

TEST_CASE("extremality of the crossing pair along the vertical direction") {
  std::vector<SetExpr> sets = {SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::GE, 1.0),
                               SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::LE, 0.0)};
  SequenceSpec seq = SequenceSpec::closed_form({{"1/k", "k"}, {"0", "k"}});
  CheckParams p = fast_params();
  ShiftHintSpec h;
  h.set_index = 0;
  h.direction = {-1.0, 0.0};
  h.clearance = Expr::parse("1/k");
  p.hints = {h};
  PropertyVerdict v = check_extremal(sets, seq, 1.0, p);
  CHECK(v.outcome == Outcome::Certified);
}

TEST_CASE("stationarity rows") {
  // certified extremal convex fixture stays certified with the eps*rho bound
  std::vector<SetExpr> exp_pair = {SetExpr::epigraph(ScalarFunction::exp_neg()), lower()};
  SequenceSpec seq = SequenceSpec::closed_form({{"k", "exp(-k)"}, {"k", "0"}});
  CheckParams p = fast_params();
  ShiftHintSpec h = down_hint();
  h.clearance = Expr::parse("exp(-k)");
  p.hints = {h};
  CHECK(check_stationary(exp_pair, seq, p).outcome == Outcome::Certified);

  std::vector<SetExpr> twice = {lower(), lower()};
  SequenceSpec shared = SequenceSpec::closed_form({{"k", "0"}, {"k", "0"}});
  CHECK(check_stationary(twice, shared, fast_params()).outcome == Outcome::Falsified);
}

TEST_CASE("approximate stationarity at a single sequence") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  CheckParams p = fast_params();
  p.hints = {down_hint()};
  SequenceSpec avg = SequenceSpec::single_closed_form({"k", "0.5/k"});
  CHECK(check_approx_stationary(sets, avg, p).outcome == Outcome::Certified);

  // a sequence far from both sets: no auxiliary points at small eps
  std::vector<SetExpr> apart = {lower(), SetExpr::halfspace({0.0, -1.0}, -3.0)};  // y<=0, y>=3
  SequenceSpec mid = SequenceSpec::single_closed_form({"k", "1.5"});
  CheckParams q = fast_params();
  q.epsilons = {1.0, 0.5};
  CHECK(check_approx_stationary(apart, mid, q).outcome == Outcome::Falsified);

  // constant sequence at a common interior point
  std::vector<SetExpr> wide = {lower(), SetExpr::halfspace({1.0, 1.0}, 10.0)};
  SequenceSpec inner = SequenceSpec::single_closed_form({"0", "-5"});
  CHECK(check_approx_stationary(wide, inner, fast_params()).outcome == Outcome::Falsified);
}

TEST_CASE("alpha-stationarity and monotonicity in alpha") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SequenceSpec seq = SequenceSpec::single_closed_form({"k", "0"});
  CheckParams p = fast_params();
  p.hints = {down_hint()};
  PropertyVerdict a1 = check_alpha_stationary(sets, seq, 1.0, p);
  CHECK(a1.outcome == Outcome::Certified);
  PropertyVerdict a05 = check_alpha_stationary(sets, seq, 0.5, p);
  CHECK(a05.outcome == Outcome::Certified);
  // monotonicity: the alpha = 0.5 witnesses satisfy the alpha = 1 bound
  for (const EpsilonRecord& r : a05.per_epsilon)
    CHECK(product_norm(p.budget.norm, r.shifts) < 1.0 * r.rho);

  std::vector<SetExpr> crossing = {SetExpr::halfspace({1.0, 0.0}, 0.0), lower()};
  SequenceSpec origin = SequenceSpec::single_closed_form({"0", "0"});
  CheckParams q = fast_params();
  CHECK(check_alpha_stationary(crossing, origin, 0.3, q).outcome == Outcome::Falsified);
}

TEST_CASE("transversality trichotomy and mutual exclusion") {
  CheckParams p = fast_params();
  std::vector<SetExpr> crossing = {SetExpr::halfspace({1.0, 0.0}, 0.0), lower()};
  SequenceSpec origin = SequenceSpec::single_closed_form({"0", "0"});
  PropertyVerdict t = check_transversal(crossing, origin, 0.5, p);
  CHECK(t.outcome == Outcome::Certified);

  std::vector<SetExpr> worked = {e15_branch(), lower()};
  SequenceSpec tail = SequenceSpec::single_closed_form({"k", "0"});
  CheckParams ph = fast_params();
  ph.hints = {down_hint()};
  PropertyVerdict f = check_transversal(worked, tail, 0.5, ph);
  CHECK(f.outcome == Outcome::Falsified);

  // n = 1 degenerate
  std::vector<SetExpr> single = {lower()};
  PropertyVerdict s = check_transversal(single, tail, 0.5, p);
  CHECK(s.outcome == Outcome::Certified);

  // never both certified with the matching alpha-stationarity check
  for (auto [sets_, seq_] : {std::pair{crossing, origin}, std::pair{worked, tail}}) {
    PropertyVerdict trans = check_transversal(sets_, seq_, 0.5, ph);
    PropertyVerdict stat = check_alpha_stationary(sets_, seq_, 0.5, ph);
    bool both_certified = trans.certified() && stat.certified();
    CHECK_FALSE(both_certified);
  }
}

TEST_CASE("witness transfer along nearby sequences") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SequenceSpec seq = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
  CheckParams p = fast_params();
  p.hints = {down_hint()};
  PropertyVerdict v = check_extremal(sets, seq, 1.0, p);
  REQUIRE(v.outcome == Outcome::Certified);

  // transfer to the same sequence keeps the shifts identical
  PropertyVerdict same = transfer_witness(v, sets, seq, seq, 1.0, p);
  CHECK(same.outcome == Outcome::Certified);
  for (std::size_t i = 0; i < v.per_epsilon.size(); ++i)
    for (std::size_t j = 0; j < v.per_epsilon[i].shifts.size(); ++j)
      CHECK(same.per_epsilon[i].shifts[j].coords == v.per_epsilon[i].shifts[j].coords);

  // perturbed sequence with gap ~ 1/k^2
  SequenceSpec near =
      SequenceSpec::closed_form({{"k + 1/k^2", "1/(k + 1/k^2)"}, {"k + 1/k^2", "0"}});
  PropertyVerdict moved = transfer_witness(v, sets, seq, near, 1.0, p);
  CHECK(moved.outcome == Outcome::Certified);
  for (const EpsilonRecord& r : moved.per_epsilon) {
    CHECK(r.success);
    CHECK(product_norm(p.budget.norm, r.shifts) < r.eps);
  }

  // constant distance-1 sequence cannot absorb the gap
  SequenceSpec far = SequenceSpec::closed_form({{"k + 1", "1/(k+1)"}, {"k + 1", "0"}});
  CHECK_THROWS_AS(transfer_witness(v, sets, seq, far, 1.0, p), Error);
}

TEST_CASE("implication chain on certified fixtures") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SequenceSpec seq = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
  CheckParams p = fast_params();
  p.hints = {down_hint()};
  REQUIRE(check_extremal(sets, seq, 1.0, p).certified());
  CHECK(check_stationary(sets, seq, p).outcome != Outcome::Falsified);
  // component sequences carry approximate stationarity
  for (const char* coords : {"1/k"}) {
    SequenceSpec comp = SequenceSpec::single_closed_form({"k", coords});
    CHECK(check_approx_stationary(sets, comp, p).outcome != Outcome::Falsified);
  }
}

TEST_CASE("subsequence stability of witness lists") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SequenceSpec seq = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
  CheckParams p = fast_params();
  p.hints = {down_hint()};
  PropertyVerdict v = check_extremal(sets, seq, 1.0, p);
  REQUIRE(v.certified());
  // dropping the first m indices leaves every witness valid: each witness
  // re-verifies independently at its own k, which survives any finite drop
  SearchBudget budget = p.budget;
  for (const EpsilonRecord& r : v.per_epsilon) {
    std::vector<Point> totals;
    for (int i = 0; i < 2; ++i) totals.push_back(add(seq.eval(i, r.k), r.shifts[i]));
    budget.eta = std::min(budget.eta, r.eps / 8.0);
    EmptinessVerdict ev =
        intersection_empty(sets, totals, r.rho, EmptinessMethod::GridOracle, budget);
    CHECK(ev.empty());
  }
}

TEST_CASE("convex equivalence suite") {
  CheckParams p = fast_params();
  p.hints = {down_hint()};
  std::vector<SetExpr> worked = {e15_branch(), lower()};
  SequenceSpec seq = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
  ConvexEquivalenceReport rep = convex_equivalence_suite(worked, seq, p);
  CHECK(rep.agreement);
  CHECK(rep.assertion_any_rho);
  CHECK(rep.assertion_stationary);
  CHECK(rep.rescale_checked);

  std::vector<SetExpr> crossing = {SetExpr::halfspace({1.0, 0.0}, 0.0), lower()};
  SequenceSpec origin = SequenceSpec::closed_form({{"0", "0"}, {"0", "0"}});
  ConvexEquivalenceReport rep2 = convex_equivalence_suite(crossing, origin, fast_params());
  CHECK(rep2.agreement);
  CHECK_FALSE(rep2.assertion_any_rho);
  CHECK_FALSE(rep2.assertion_stationary);
  CHECK(rep2.rescale_checked);  // zero shifts give a nonempty witness here

  std::vector<SetExpr> nonconvex = {SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::GE, 1.0),
                                    lower()};
  CHECK_THROWS_AS(convex_equivalence_suite(nonconvex, seq, p), Error);
}
