#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vext/cones.hpp"
#include "vext/extremality.hpp"
#include "vext/norms.hpp"
#include "vext/sequences.hpp"
#include "vext/verdict.hpp"

namespace vext {

/// Full dual witness of the generalized-separation statements. When beta,
/// tau, aux_points, shifts and x0 are all present the full contract applies
/// (pairing inequality included); otherwise the reduced one (normalized
/// normals with small sum at base points near the sequence).
struct SeparationCertificate {
  int k = 0;
  std::vector<Point> base_points;              // one per set
  std::optional<std::vector<Point>> aux_points;
  std::optional<std::vector<Point>> shifts;
  std::optional<Point> x0;
  std::vector<DualVector> normals;
  double epsilon = 0.0;
  std::optional<double> beta;
  std::optional<double> tau;
  ConeKind cone_kind = ConeKind::Frechet;
  NormSpec norm;
};

struct SeparationSearchParams {
  int base_candidates = 6;       // candidate base points per set near x^k
  double cone_resolution = 1e-3; // weight grid on normal tuples
  enum class Optimizer { GridMin, CoordinateDescent } optimizer = Optimizer::GridMin;
  std::uint64_t seed = 17;
  long k_budget = 10000;
  NormSpec norm;
  std::optional<SequenceSpec> base_hints;  // analytic per-set base points (e.g. paired sequences)
};

struct CertificateCheck {
  bool valid = false;
  std::vector<std::string> violations;
};

/// Replays every contract condition of a certificate against the sets and
/// the sequence: k > 1/eps, ball bounds, cone membership, normalization,
/// small sum, and the pairing inequality when tau is present.
CertificateCheck verify_certificate(const SeparationCertificate& cert,
                                    const std::vector<SetExpr>& sets,
                                    const SequenceSpec& seq_single);

/// Searches base points in Omega_i near x^k (k > 1/eps) and unit normal
/// tuples minimizing ||sum x_i*||; returns the first certificate with
/// ||sum|| < eps (deterministic lexicographic selection), or nullopt.
/// Returned certificates always pass verify_certificate.
std::optional<SeparationCertificate> search_certificate(const std::vector<SetExpr>& sets,
                                                        const SequenceSpec& seq_single, double eps,
                                                        ConeKind cone_kind,
                                                        const SeparationSearchParams& params);

/// Constructive replay of the separation -> stationarity direction: from
/// Frechet certificates with ||sum x_i*|| < beta and alpha > beta, builds a
/// radius rho, shifts a-hat with product norm < alpha*rho and pairing above
/// (beta+xi)*rho, and confirms the emptiness with the grid oracle.
PropertyVerdict stationarity_from_certificates(const std::vector<SetExpr>& sets,
                                               const SequenceSpec& seq_single,
                                               const std::vector<SeparationCertificate>& certs,
                                               double beta, double alpha,
                                               const CheckParams& params);

/// Dual transversality characterization: estimates the infimum of
/// ||sum x_i*|| over unit Frechet normal tuples at base points near the
/// sequence tail. Certified (transversal) when the estimate stays >= eps on
/// the exhaustive catalog-cone parametrization; Falsified when a tuple below
/// eps is found.
PropertyVerdict transversality_dual_check(const std::vector<SetExpr>& sets,
                                          const SequenceSpec& seq_single, double eps,
                                          const SeparationSearchParams& params);

}  // namespace vext
