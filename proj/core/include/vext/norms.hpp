#pragma once

#include <cstdint>
#include <vector>

#include "vext/point.hpp"

namespace vext {

enum class BaseNorm { L1, L2, LInf };
enum class ProductCombo { MaxProduct, WeightedP };

// Example 1.5 of the source theory evaluates dual-vector norms with the max
// norm, while the canonical dual of (LInf base, max product) is the L1 sum.
// Both conventions are supported; every report records which one was used.
enum class DualConvention { CanonicalDual, MirrorBase };

struct NormSpec {
  BaseNorm base = BaseNorm::LInf;
  ProductCombo product = ProductCombo::MaxProduct;
  double weighted_p = 1.0;              // only for WeightedP
  std::vector<double> weights;          // only for WeightedP; empty = all ones
  DualConvention dual = DualConvention::CanonicalDual;
  double kappa1 = 1.0;
  double kappa2 = 1.0;

  void validate(int n_components) const;
};

/// Norm of a single vector of X under the base norm.
double base_norm(const NormSpec& ns, const std::vector<double>& v);

/// Canonical dual of the base norm (L1 <-> LInf, L2 self-dual).
double base_dual_norm(const NormSpec& ns, const std::vector<double>& v);

/// Norm applied to individual dual vectors under the chosen convention:
/// CanonicalDual uses the base-dual norm, MirrorBase reuses the base norm.
double component_dual_norm(const NormSpec& ns, const std::vector<double>& v);

/// Product norm on X^n applied to a tuple (u_1,...,u_n).
double product_norm(const NormSpec& ns, const std::vector<Point>& tuple);

/// Tuple norm on (X*)^n: for MaxProduct/CanonicalDual this is the sum of
/// base-dual norms; for MirrorBase it is the max of base norms.
double dual_product_norm(const NormSpec& ns, const std::vector<DualVector>& duals);

/// Sum-form tuple norm used to normalize separation certificates:
/// sum_i of component_dual_norm(x_i*). Coincides with dual_product_norm for
/// CanonicalDual; under MirrorBase it keeps the sum structure so that the
/// certificate normalization equals 1 on the worked example.
double sum_dual_norm(const NormSpec& ns, const std::vector<DualVector>& duals);

struct CompatibilityReport {
  double kappa1_est = 0.0;
  double kappa2_est = 0.0;
  bool pass = true;
  std::vector<Point> violating_tuple;  // empty when pass
};

/// Samples random tuples and checks the two-sided compatibility between the
/// product norm and max of base norms, plus the dual-side sum estimate.
CompatibilityReport verify_compatibility(const NormSpec& ns, int n_components, int dim,
                                         int samples, std::uint64_t seed);

}  // namespace vext
