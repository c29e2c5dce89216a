#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "vext/geometry.hpp"

using namespace vext;

namespace {

SetExpr e15_branch() {
  return SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::GE, 1.0,
                                    {HalfspaceData{{-1.0, 0.0}, 0.0, true}}, true);
}
SetExpr lower() { return SetExpr::halfspace({0.0, 1.0}, 0.0); }

}  // namespace

TEST_CASE("membership with tolerance semantics") {
  SetExpr branch = e15_branch();
  CHECK(contains(branch, Point{10.0, 0.1}, 1e-9));
  CHECK_FALSE(contains(branch, Point{-1.0, -1.0}, 0.0));  // strict side violated
  CHECK(contains(lower(), Point{0.0, 0.0}, 0.0));          // closed boundary
  // strict relations require margin > tol
  CHECK_FALSE(contains(branch, Point{1e-10, 1e11}, 1e-9));
  CHECK_THROWS_AS(contains(branch, Point{1.0}, 0.0), Error);
  CHECK_THROWS_AS(contains(branch, Point{1.0, 1.0}, -0.5), Error);
}

TEST_CASE("exact projections") {
  CHECK(project(SetExpr::halfspace({0.0, 1.0}, 0.0), Point{3.0, 2.0}, 1e-12).coords ==
        std::vector<double>{3.0, 0.0});
  Point q = project(SetExpr::ball(Point{0.0, 0.0}, 1.0), Point{2.0, 0.0}, 1e-12);
  CHECK(q.coords[0] == doctest::Approx(1.0));
  CHECK(q.coords[1] == doctest::Approx(0.0));
  // polyhedron corner
  SetExpr box = SetExpr::polyhedron({HalfspaceData{{1.0, 0.0}, 1.0, false},
                                     HalfspaceData{{0.0, 1.0}, 1.0, false},
                                     HalfspaceData{{-1.0, 0.0}, 0.0, false},
                                     HalfspaceData{{0.0, -1.0}, 0.0, false}});
  Point corner = project(box, Point{3.0, 2.5}, 1e-12);
  CHECK(corner.coords[0] == doctest::Approx(1.0));
  CHECK(corner.coords[1] == doctest::Approx(1.0));
}

TEST_CASE("iterative projection onto the hyperbola branch matches a dense 1-D oracle") {
  SetExpr branch = e15_branch();
  Point p{10.0, 0.0};
  // independent oracle: dense search over the boundary parametrization
  // (s, 1/s), s in (0, 40], refined by local bisection
  double best = std::numeric_limits<double>::infinity();
  double best_s = 1.0;
  for (int i = 1; i <= 400000; ++i) {
    double s = 40.0 * i / 400000.0;
    double d = std::hypot(s - 10.0, 1.0 / s);
    if (d < best) {
      best = d;
      best_s = s;
    }
  }
  for (double w = 40.0 / 400000.0; w > 1e-13; w /= 2) {
    for (double s : {best_s - w, best_s + w}) {
      if (s <= 0) continue;
      double d = std::hypot(s - 10.0, 1.0 / s);
      if (d < best) {
        best = d;
        best_s = s;
      }
    }
  }
  Point q = project(branch, p, 1e-10);
  CHECK(contains(branch, q, 1e-7));
  double got = std::hypot(q.coords[0] - 10.0, q.coords[1]);
  CHECK(got <= best + 1e-7);
  CHECK(q.coords[0] == doctest::Approx(best_s).epsilon(1e-4));
}

TEST_CASE("projection idempotence and membership across the catalog") {
  std::vector<SetExpr> sets = {
      e15_branch(), lower(), SetExpr::ball(Point{1.0, -1.0}, 2.0),
      SetExpr::epigraph(ScalarFunction::reciprocal()),
      SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::LE, 0.0),
      SetExpr::graph(ScalarFunction::sin_reciprocal())};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (const SetExpr& s : sets) {
    for (int trial = 0; trial < 12; ++trial) {
      Point p{u(rng), u(rng)};
      Point q;
      try {
        q = project(s, p, 1e-9);
      } catch (const Error&) {
        continue;
      }
      CHECK(contains(s, q, 1e-6));
      Point q2 = project(s, q, 1e-9);
      CHECK(l2_norm(sub(q2, q).coords) <= 2e-6);
    }
  }
}

TEST_CASE("family gap estimates") {
  SearchBudget budget;
  // identical halfspaces share every point
  CHECK(family_gap({lower(), lower()}, {Point{0.0, 0.0}, 3.0}, budget) <= 1e-7);
  // parallel separated halfspaces keep a constant vertical gap of 1 (linf)
  SetExpr upper1 = SetExpr::halfspace({0.0, -1.0}, -1.0);  // y >= 1
  double g = family_gap({upper1, lower()}, {Point{0.0, 0.0}, 5.0}, budget);
  CHECK(g == doctest::Approx(1.0).epsilon(1e-6));
  // the worked pair: gap <= 1/40 inside the radius-50 region
  double g2 = family_gap({e15_branch(), lower()}, {Point{0.0, 0.0}, 50.0}, budget);
  CHECK(g2 <= 1.0 / 40.0 + 1e-9);
  CHECK(g2 > 0.0);
  // a set that misses the region reports +inf
  SetExpr far = SetExpr::ball(Point{100.0, 100.0}, 1.0);
  CHECK(std::isinf(family_gap({far, lower()}, {Point{0.0, 0.0}, 2.0}, budget)));
}

TEST_CASE("grid oracle on the worked shifted pair") {
  SearchBudget budget;
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  // x1 + a1 = (10, -0.05), x2 = (10, 0): globally empty
  EmptinessVerdict ev = intersection_empty(sets, {Point{10.0, -0.05}, Point{10.0, 0.0}},
                                           kUnboundedRadius, EmptinessMethod::GridOracle, budget);
  CHECK(ev.empty());
  CHECK(ev.radius_capped);
  CHECK(*ev.lower_bound > 0.0);
}

TEST_CASE("grid oracle finds interior witnesses") {
  SearchBudget budget;
  std::vector<SetExpr> sets = {lower(), lower()};
  EmptinessVerdict ev = intersection_empty(sets, {Point{0.0, 0.0}, Point{0.0, 0.0}}, 1.0,
                                           EmptinessMethod::GridOracle, budget);
  REQUIRE(ev.nonempty());
  // witness re-check with margin
  CHECK(members(lower(), *ev.witness, -budget.eta, -budget.eta));
  CHECK(ball_norm(budget.norm, *ev.witness) <= 1.0 - budget.eta);
}

TEST_CASE("embedded construction emptiness at desk scale") {
  // epi(1/x) and R x (-inf, 0] shifted per the constructive argument:
  // k = 10, rho = 0.1, alpha = 0.01, shifts (0, -+alpha*rho)
  SetExpr epi = SetExpr::epigraph(ScalarFunction::reciprocal());
  SetExpr ray = SetExpr::product_with_ray(SetExpr::whole_space(1), 0.0);
  double alpha_rho = 0.01 * 0.1;
  std::vector<Point> totals = {Point{10.0, 0.1 - alpha_rho}, Point{10.0, 0.0 + alpha_rho}};
  SearchBudget budget;
  budget.resolution = 1e-3 * 0.1;  // scale to the small region
  budget.eta = 1e-4 * 0.1;
  EmptinessVerdict ev =
      intersection_empty({epi, ray}, totals, 0.1, EmptinessMethod::GridOracle, budget);
  CHECK(ev.empty());
}

TEST_CASE("translation identity") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  std::vector<SetExpr> sets = {SetExpr::halfspace({1.0, 0.3}, 0.2),
                               SetExpr::ball(Point{0.5, -0.2}, 1.1)};
  SearchBudget budget;
  for (int trial = 0; trial < 6; ++trial) {
    Point c{u(rng), u(rng)};
    std::vector<Point> shifts = {Point{u(rng), u(rng)}, Point{u(rng), u(rng)}};
    std::vector<Point> shifted = {add(shifts[0], c), add(shifts[1], c)};
    std::vector<SetExpr> pre = {SetExpr::translate(sets[0], scale(c, -1.0)),
                                SetExpr::translate(sets[1], scale(c, -1.0))};
    EmptinessVerdict a =
        intersection_empty(sets, shifted, 1.0, EmptinessMethod::GridOracle, budget);
    EmptinessVerdict b = intersection_empty(pre, shifts, 1.0, EmptinessMethod::GridOracle, budget);
    CHECK(a.outcome == b.outcome);
  }
}

TEST_CASE("nested translations canonicalize") {
  SetExpr t = SetExpr::translate(SetExpr::translate(lower(), Point{1.0, 2.0}), Point{0.5, -1.0});
  const auto* node = std::get_if<TranslateData>(&t.node());
  REQUIRE(node != nullptr);
  CHECK(node->shift.coords == std::vector<double>{1.5, 1.0});
  CHECK(std::holds_alternative<HalfspaceData>(node->base->node()));
}

TEST_CASE("alternating projections agree with the grid oracle on convex instances") {
  SearchBudget fine;
  fine.resolution = 5e-5;  // <= eta/2 for the consistency property
  fine.eta = 1e-4;
  SearchBudget ap;
  struct Instance {
    std::vector<SetExpr> sets;
    std::vector<Point> shifts;
    double radius;
  };
  std::vector<Instance> instances = {
      {{SetExpr::halfspace({1.0, 0.0}, -0.02), SetExpr::halfspace({-1.0, 0.0}, -0.02)},
       {Point{0, 0}, Point{0, 0}},
       0.05},  // empty: x <= -0.02 and x >= 0.02
      {{SetExpr::halfspace({1.0, 0.0}, 0.01), SetExpr::halfspace({0.0, 1.0}, 0.01)},
       {Point{0, 0}, Point{0, 0}},
       0.05},  // fat corner
      {{SetExpr::ball(Point{0.0, 0.0}, 0.03), SetExpr::halfspace({0.0, 1.0}, -0.01)},
       {Point{0, 0}, Point{0, 0}},
       0.05},  // lens
  };
  for (const Instance& inst : instances) {
    EmptinessVerdict g = intersection_empty(inst.sets, inst.shifts, inst.radius,
                                            EmptinessMethod::GridOracle, fine);
    EmptinessVerdict a = intersection_empty(inst.sets, inst.shifts, inst.radius,
                                            EmptinessMethod::AlternatingProjections, ap);
    if (a.outcome != EmptinessOutcome::Inconclusive) CHECK(a.outcome == g.outcome);
  }
}

TEST_CASE("grid oracle refuses high dimensions") {
  std::vector<SetExpr> sets = {SetExpr::halfspace({1, 0, 0, 0, 0}, 0.0)};
  CHECK_THROWS_AS(intersection_empty(sets, {Point{0, 0, 0, 0, 0}}, 1.0,
                                     EmptinessMethod::GridOracle, SearchBudget{}),
                  Error);
}

TEST_CASE("graph pair reduction") {
  std::vector<SetExpr> graphs = {SetExpr::graph(ScalarFunction::sin_reciprocal()),
                                 SetExpr::graph(ScalarFunction::reciprocal_plus_sin())};
  SearchBudget budget;
  long k = 5;
  Point x1{double(k), std::sin(1.0 / k)};
  Point x2{double(k), 1.0 / k + std::sin(1.0 / k)};
  // zero shifts: the curves cross inside the ball
  EmptinessVerdict same =
      intersection_empty(graphs, {x1, x2}, 1.0, EmptinessMethod::GridOracle, budget);
  CHECK(same.nonempty());
  // vertical hint shift clears the crossing
  EmptinessVerdict moved = intersection_empty(
      graphs, {add(x1, Point{0.0, 0.5}), x2}, 1.0, EmptinessMethod::GridOracle, budget);
  CHECK(moved.empty());
}
