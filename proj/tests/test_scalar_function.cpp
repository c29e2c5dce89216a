#include <doctest.h>

#include <cmath>
#include <limits>

#include "vext/scalar_function.hpp"

using namespace vext;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("reciprocal catalog entry") {
  ScalarFunction f = ScalarFunction::reciprocal();
  CHECK(f.eval(10.0) == doctest::Approx(0.1));
  CHECK(f.eval(-4.0) == doctest::Approx(-0.25));
  CHECK(std::isinf(f.eval(0.0)));
  CHECK(*f.derivative(10.0) == doctest::Approx(-0.01));
}

TEST_CASE("windowed parabolic objective") {
  ScalarFunction f = ScalarFunction::piecewise_parabolic();
  CHECK(f.eval(10.0) == doctest::Approx(0.1));
  CHECK(f.eval(10.3) == doctest::Approx(1.0 / 10.3 - 0.09));
  CHECK(f.eval(0.2) == doctest::Approx(1.75));
  // continuity across a window boundary
  CHECK(f.eval(10.5) == doctest::Approx(1.0 / 10.5 - 0.25));
  CHECK(f.eval(10.5 - 1e-9) == doctest::Approx(1.0 / 10.5 - 0.25).epsilon(1e-6));
  // negative side windows
  CHECK(f.eval(-10.0) == doctest::Approx(0.1));
  // derivative against central differences at a smooth point
  double h = 1e-6;
  CHECK(*f.derivative(10.2) == doctest::Approx((f.eval(10.2 + h) - f.eval(10.2 - h)) / (2 * h))
                                   .epsilon(1e-5));
  SubdiffInfo sd = f.subdiff(10.5);
  CHECK(sd.kind == SubdiffInfo::Kind::ConvexKink);
  CHECK(sd.hi - sd.lo == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("oscillatory objective") {
  ScalarFunction f = ScalarFunction::oscillatory_sine();
  for (int k : {1, 3, 10}) {
    double c = 2.0 * k / kPi;
    CHECK(f.eval(c) == doctest::Approx(0.0));
    double delta = 1.0 / (2.0 * k * kPi - kPi / 2.0);
    CHECK(f.eval(c + delta) == doctest::Approx(-delta).epsilon(1e-12));
  }
  // window boundaries evaluate to zero from both sides
  double b = 1.0 / kPi;
  CHECK(f.eval(b) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.eval(b + 1e-12) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("abs and sqrt-abs structure") {
  ScalarFunction a = ScalarFunction::abs_value();
  SubdiffInfo sd = a.subdiff(0.0);
  CHECK(sd.kind == SubdiffInfo::Kind::ConvexKink);
  CHECK(sd.lo == doctest::Approx(-1.0));
  CHECK(sd.hi == doctest::Approx(1.0));

  ScalarFunction up = ScalarFunction::sqrt_abs(1.0);
  CHECK(up.subdiff(0.0).kind == SubdiffInfo::Kind::LowerHalfplane);
  ScalarFunction down = ScalarFunction::sqrt_abs(-1.0);
  CHECK(down.subdiff(0.0).kind == SubdiffInfo::Kind::TrivialCone);
  CHECK(down.eval(4.0) == doctest::Approx(-2.0));
  CHECK(*down.derivative(4.0) == doctest::Approx(-0.25));
}

TEST_CASE("tabulated function with out-of-range infinity") {
  ScalarFunction t = ScalarFunction::tabulated({0.0, 1.0, 2.0}, {0.0, 2.0, 1.0});
  CHECK(t.eval(0.5) == doctest::Approx(1.0));
  CHECK(t.eval(1.5) == doctest::Approx(1.5));
  CHECK(std::isinf(t.eval(-0.1)));
  CHECK(std::isinf(t.eval(2.1)));
  CHECK_THROWS_AS(ScalarFunction::tabulated({1.0, 0.0}, {0.0, 1.0}), Error);
}

TEST_CASE("polynomial and graph catalog derivatives") {
  ScalarFunction p = ScalarFunction::polynomial({1.0, -2.0, 3.0});  // 1 - 2x + 3x^2
  CHECK(p.eval(2.0) == doctest::Approx(9.0));
  CHECK(*p.derivative(2.0) == doctest::Approx(10.0));
  CHECK(p.convex());

  ScalarFunction s = ScalarFunction::sin_reciprocal();
  double x = 0.3;
  double h = 1e-7;
  CHECK(*s.derivative(x) ==
        doctest::Approx((s.eval(x + h) - s.eval(x - h)) / (2 * h)).epsilon(1e-4));
  ScalarFunction rs = ScalarFunction::reciprocal_plus_sin();
  CHECK(rs.eval(2.0) == doctest::Approx(0.5 + std::sin(0.5)));
}
