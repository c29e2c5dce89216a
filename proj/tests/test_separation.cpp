#include <doctest.h>

#include <cmath>

#include "vext/config.hpp"
#include "vext/separation.hpp"

using namespace vext;

namespace {

SetExpr e15_branch() {
  return SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::GE, 1.0,
                                    {HalfspaceData{{-1.0, 0.0}, 0.0, true}}, true);
}
SetExpr lower() { return SetExpr::halfspace({0.0, 1.0}, 0.0); }

NormSpec mirror() {
  NormSpec ns;
  ns.dual = DualConvention::MirrorBase;
  return ns;
}

SeparationCertificate worked_certificate() {
  SeparationCertificate cert;
  cert.k = 10;
  cert.base_points = {Point{10.0, 0.1}, Point{10.0, 0.0}};
  cert.normals = {DualVector{-0.005, -0.5}, DualVector{0.0, 0.5}};
  cert.epsilon = 0.15;
  cert.norm = mirror();
  return cert;
}

SequenceSpec tail_seq() { return SequenceSpec::single_closed_form({"k", "0"}); }

}  // namespace

TEST_CASE("certificate verification on the worked tuple") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  CertificateCheck ok = verify_certificate(worked_certificate(), sets, tail_seq());
  CHECK(ok.valid);

  // doubling the tuple breaks the normalization
  SeparationCertificate scaled = worked_certificate();
  for (DualVector& d : scaled.normals) d = dv_scale(d, 2.0);
  CertificateCheck bad = verify_certificate(scaled, sets, tail_seq());
  CHECK_FALSE(bad.valid);

  // a tangential direction is rejected by the cone model
  SeparationCertificate wrong = worked_certificate();
  wrong.normals[1] = DualVector{0.5, 0.0};
  CertificateCheck bad2 = verify_certificate(wrong, sets, tail_seq());
  CHECK_FALSE(bad2.valid);
  bool cone_violation = false;
  for (const std::string& v : bad2.violations)
    cone_violation = cone_violation || v.find("cone model") != std::string::npos;
  CHECK(cone_violation);
}

TEST_CASE("full-contract certificate with the pairing inequality") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SeparationCertificate cert = worked_certificate();
  cert.aux_points = cert.base_points;
  cert.shifts = std::vector<Point>{Point{0.0, -0.14}, Point{0.0, 0.0}};
  cert.x0 = Point{0.0, -0.01};
  cert.beta = 0.01;
  cert.tau = 0.4;
  CertificateCheck ok = verify_certificate(cert, sets, tail_seq());
  CHECK(ok.valid);

  // tau-monotonicity: valid at tau implies valid at any smaller tau
  SeparationCertificate weaker = cert;
  weaker.tau = 0.2;
  CHECK(verify_certificate(weaker, sets, tail_seq()).valid);
  SeparationCertificate tight = cert;
  tight.tau = 0.48;  // the worked pairing ratio is ~0.467
  CHECK_FALSE(verify_certificate(tight, sets, tail_seq()).valid);
}

TEST_CASE("certificate search reproduces the worked dual values") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SeparationSearchParams sp;
  sp.norm = mirror();
  sp.base_hints = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
  auto cert = search_certificate(sets, tail_seq(), 0.101, ConeKind::Frechet, sp);
  REQUIRE(cert.has_value());
  CHECK(cert->k == 10);
  CHECK(cert->normals[0].coords[0] == doctest::Approx(-0.005).epsilon(1e-12));
  CHECK(cert->normals[0].coords[1] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(cert->normals[1].coords[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cert->normals[1].coords[1] == doctest::Approx(0.5).epsilon(1e-12));
  // round-trip: returned certificates pass verification
  CHECK(verify_certificate(*cert, sets, tail_seq()).valid);
}

TEST_CASE("no certificate exists for the crossing pair") {
  std::vector<SetExpr> crossing = {SetExpr::halfspace({1.0, 0.0}, 0.0), lower()};
  SequenceSpec origin = SequenceSpec::single_closed_form({"0", "0"});
  SeparationSearchParams sp;
  sp.k_budget = 2000;
  auto cert = search_certificate(crossing, origin, 0.5, ConeKind::Frechet, sp);
  CHECK_FALSE(cert.has_value());
}

TEST_CASE("certificate search on the embedded reciprocal pair") {
  std::vector<SetExpr> pair = {SetExpr::epigraph(ScalarFunction::reciprocal()),
                               SetExpr::product_with_ray(SetExpr::whole_space(1), 0.0)};
  SequenceSpec emb = SequenceSpec::single_closed_form({"k", "0"});
  SeparationSearchParams sp;
  auto cert = search_certificate(pair, emb, 0.01, ConeKind::Frechet, sp);
  REQUIRE(cert.has_value());
  CHECK(verify_certificate(*cert, pair, emb).valid);
  // the epigraph normal carries the (-1/k^2, -1) ray direction
  CHECK(cert->normals[0].coords[1] < 0.0);
  CHECK(std::abs(cert->normals[0].coords[0]) < 1e-3);
}

TEST_CASE("constructive stationarity replay from certificates") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SeparationSearchParams sp;
  sp.norm = mirror();
  sp.base_hints = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
  std::vector<SeparationCertificate> certs;
  for (double eps : {1e-1, 1e-2}) {
    auto cert = search_certificate(sets, tail_seq(), eps, ConeKind::Frechet, sp);
    REQUIRE(cert.has_value());
    certs.push_back(*cert);
  }
  CheckParams params;
  params.budget.norm = mirror();
  PropertyVerdict v = stationarity_from_certificates(sets, tail_seq(), certs, 0.01, 0.02, params);
  CHECK(v.outcome == Outcome::Certified);
  for (const EpsilonRecord& r : v.per_epsilon) {
    CHECK(r.emptiness.empty());
    CHECK(product_norm(params.budget.norm, r.shifts) < 0.02 * r.rho);
  }

  // a fabricated certificate with a large sum violates the construction
  SeparationCertificate fake = certs.front();
  fake.normals = {DualVector{0.5, 0.0}, DualVector{0.5, 0.0}};
  CHECK_THROWS_AS(
      stationarity_from_certificates(sets, tail_seq(), {fake}, 0.01, 0.02, params), Error);
}

TEST_CASE("dual transversality characterization") {
  SeparationSearchParams sp;
  std::vector<SetExpr> crossing = {SetExpr::halfspace({1.0, 0.0}, 0.0), lower()};
  SequenceSpec origin = SequenceSpec::single_closed_form({"0", "0"});
  PropertyVerdict c = transversality_dual_check(crossing, origin, 0.5, sp);
  CHECK(c.outcome == Outcome::Certified);
  CHECK(*c.value == doctest::Approx(1.0).epsilon(1e-6));

  SeparationSearchParams spm;
  spm.norm = mirror();
  spm.base_hints = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
  std::vector<SetExpr> worked = {e15_branch(), lower()};
  PropertyVerdict f = transversality_dual_check(worked, tail_seq(), 0.01, spm);
  CHECK(f.outcome == Outcome::Falsified);

  std::vector<SetExpr> single = {lower()};
  PropertyVerdict s = transversality_dual_check(single, tail_seq(), 0.5, sp);
  CHECK(s.outcome == Outcome::Certified);
  CHECK(*s.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("verification is invariant under renormalized positive scalings") {
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  SeparationCertificate cert = worked_certificate();
  for (double lambda : {0.2, 3.0}) {
    SeparationCertificate moved = cert;
    for (DualVector& d : moved.normals) d = dv_scale(d, lambda);
    double n = sum_dual_norm(moved.norm, moved.normals);
    for (DualVector& d : moved.normals) d = dv_scale(d, 1.0 / n);
    CHECK(verify_certificate(moved, sets, tail_seq()).valid);
  }
}

TEST_CASE("certificate files round-trip") {
  SeparationCertificate cert = worked_certificate();
  cert.beta = 0.01;
  Json j = certificate_to_json(cert);
  SeparationCertificate back = certificate_from_json(j);
  CHECK(back.k == cert.k);
  CHECK(back.normals[0].coords == cert.normals[0].coords);
  CHECK(back.epsilon == cert.epsilon);
  CHECK(*back.beta == 0.01);
  CHECK(back.norm.dual == DualConvention::MirrorBase);
  std::vector<SetExpr> sets = {e15_branch(), lower()};
  CHECK(verify_certificate(back, sets, tail_seq()).valid);
}
