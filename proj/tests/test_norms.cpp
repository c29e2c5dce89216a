#include <doctest.h>

#include <cmath>
#include <random>

#include "vext/norms.hpp"

using namespace vext;

namespace {
NormSpec mirror_spec() {
  NormSpec ns;
  ns.dual = DualConvention::MirrorBase;
  return ns;
}
}  // namespace

TEST_CASE("max product norm") {
  NormSpec ns;  // linf base, max product
  CHECK(product_norm(ns, {Point{1, 2}, Point{3, -1}}) == doctest::Approx(3.0));
  CHECK(product_norm(ns, {Point{0, 0}, Point{0, 0}}) == doctest::Approx(0.0));
  NormSpec l2 = ns;
  l2.base = BaseNorm::L2;
  CHECK(product_norm(l2, {Point{3, 4}, Point{0, 1}}) == doctest::Approx(5.0));
}

TEST_CASE("dual product norm under both conventions") {
  NormSpec canonical;  // linf base -> l1 duals, summed
  std::vector<DualVector> duals = {DualVector{-0.005, -0.5}, DualVector{0.0, 0.5}};
  CHECK(dual_product_norm(canonical, duals) == doctest::Approx(1.005));
  CHECK(dual_product_norm(mirror_spec(), duals) == doctest::Approx(0.5));
  // certificate normalization keeps the sum structure under the mirror convention
  CHECK(sum_dual_norm(mirror_spec(), duals) == doctest::Approx(1.0));
  std::vector<DualVector> zeros = {DualVector{0, 0}, DualVector{0, 0}};
  CHECK(dual_product_norm(canonical, zeros) == doctest::Approx(0.0));
  CHECK(dual_product_norm(mirror_spec(), zeros) == doctest::Approx(0.0));
}

TEST_CASE("compatibility verification: max product is the equality case") {
  NormSpec ns;
  CompatibilityReport rep = verify_compatibility(ns, 2, 2, 500, 7);
  CHECK(rep.pass);
  CHECK(rep.kappa1_est == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.kappa2_est == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("compatibility of the unweighted sum norm on pairs") {
  // independent oracle: extremize |u1|+|u2| over max(|u1|,|u2|) on the four
  // sign patterns of a 2-tuple -> ratio range [1, 2]
  NormSpec ns;
  ns.product = ProductCombo::WeightedP;
  ns.weighted_p = 1.0;
  ns.kappa1 = 1.0;
  ns.kappa2 = 2.0;
  CompatibilityReport rep = verify_compatibility(ns, 2, 2, 2000, 11);
  CHECK(rep.pass);
  CHECK(rep.kappa1_est >= 1.0 - 1e-9);
  CHECK(rep.kappa2_est <= 2.0 + 1e-9);
  CHECK(rep.kappa2_est > 1.8);  // the extremal ratio is approached by sampling

  NormSpec lying = ns;
  lying.kappa2 = 1.5;  // declared below the true constant
  CompatibilityReport bad = verify_compatibility(lying, 2, 2, 2000, 11);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.violating_tuple.empty());
}

TEST_CASE("norm axioms hold on random samples") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (NormSpec ns : {NormSpec{}, mirror_spec()}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Point> a = {Point{u(rng), u(rng)}, Point{u(rng), u(rng)}};
      std::vector<Point> b = {Point{u(rng), u(rng)}, Point{u(rng), u(rng)}};
      double na = product_norm(ns, a), nb = product_norm(ns, b);
      CHECK(na >= 0.0);
      std::vector<Point> sum = {add(a[0], b[0]), add(a[1], b[1])};
      CHECK(product_norm(ns, sum) <= na + nb + 1e-12);
      double t = u(rng);
      std::vector<Point> at = {scale(a[0], t), scale(a[1], t)};
      CHECK(product_norm(ns, at) == doctest::Approx(std::abs(t) * na));
    }
  }
}

TEST_CASE("duality pairing bound for the canonical convention") {
  NormSpec ns;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> prim = {Point{u(rng), u(rng)}, Point{u(rng), u(rng)}};
    std::vector<DualVector> dual = {DualVector{u(rng), u(rng)}, DualVector{u(rng), u(rng)}};
    double pairing = dot(dual[0], prim[0]) + dot(dual[1], prim[1]);
    CHECK(pairing <= dual_product_norm(ns, dual) * product_norm(ns, prim) + 1e-12);
  }
}

TEST_CASE("norm spec validation") {
  NormSpec bad;
  bad.kappa1 = 2.0;
  bad.kappa2 = 1.0;
  CHECK_THROWS_AS(bad.validate(2), Error);
  NormSpec mixed;
  CHECK_THROWS_AS(product_norm(mixed, {Point{1, 2}, Point{1, 2, 3}}), Error);
}
