#include <doctest.h>

#include <cmath>

#include "vext/expr.hpp"

using namespace vext;

TEST_CASE("expression parsing and evaluation in k") {
  CHECK(Expr::parse("1/k").eval_k(4) == doctest::Approx(0.25));
  CHECK(Expr::parse("k + 1/k").eval_k(2) == doctest::Approx(2.5));
  CHECK(Expr::parse("exp(-k)").eval_k(1) == doctest::Approx(std::exp(-1.0)));
  CHECK(Expr::parse("sin(1/k)").eval_k(3) == doctest::Approx(std::sin(1.0 / 3.0)));
  CHECK(Expr::parse("2*k/pi").eval_k(5) == doctest::Approx(10.0 / std::acos(-1.0)));
  CHECK(Expr::parse("1/(2*k*pi - pi/2)").eval_k(2) ==
        doctest::Approx(1.0 / (4.0 * std::acos(-1.0) - std::acos(-1.0) / 2.0)));
}

TEST_CASE("alternating sign closed forms") {
  Expr e = Expr::parse("(-1)^k*k");
  CHECK(e.eval_k(3) == doctest::Approx(-3.0));
  CHECK(e.eval_k(4) == doctest::Approx(4.0));
  Expr f = Expr::parse("(-1)^k/k");
  CHECK(f.eval_k(5) == doctest::Approx(-0.2));
}

TEST_CASE("operator precedence and unary minus") {
  CHECK(Expr::parse("-k^2").eval_k(3) == doctest::Approx(-9.0));
  CHECK(Expr::parse("2+3*4").eval_k(1) == doctest::Approx(14.0));
  CHECK(Expr::parse("(2+3)*4").eval_k(1) == doctest::Approx(20.0));
  CHECK(Expr::parse("2^3^2").eval_k(1) == doctest::Approx(512.0));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Expr::parse("1+"), Error);
  CHECK_THROWS_AS(Expr::parse("foo(1"), Error);
  CHECK_THROWS_AS(Expr::parse("2 3"), Error);
  CHECK_THROWS_AS(Expr::parse("unknown_fn(2)").eval_k(1), Error);
  CHECK_THROWS_AS(Expr::parse("x + 1").eval_k(1), Error);
}
