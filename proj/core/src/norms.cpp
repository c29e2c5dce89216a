#include "vext/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace vext {

void NormSpec::validate(int n_components) const {
  if (kappa1 <= 0 || kappa2 <= 0 || kappa1 > kappa2)
    fail(ErrorCode::InvalidArgument, "NormSpec: need 0 < kappa1 <= kappa2");
  if (product == ProductCombo::MaxProduct && (kappa1 != 1.0 || kappa2 != 1.0))
    fail(ErrorCode::InvalidArgument, "NormSpec: MaxProduct forces kappa1 = kappa2 = 1");
  if (product == ProductCombo::WeightedP) {
    if (weighted_p < 1.0) fail(ErrorCode::InvalidArgument, "NormSpec: weighted_p must be >= 1");
    if (!weights.empty() && static_cast<int>(weights.size()) != n_components)
      fail(ErrorCode::DimensionMismatch, "NormSpec: weights length != tuple length");
    for (double w : weights)
      if (w <= 0) fail(ErrorCode::InvalidArgument, "NormSpec: weights must be positive");
  }
}

double base_norm(const NormSpec& ns, const std::vector<double>& v) {
  switch (ns.base) {
    case BaseNorm::L1: return l1_norm(v);
    case BaseNorm::L2: return l2_norm(v);
    case BaseNorm::LInf: return linf_norm(v);
  }
  return 0.0;
}

double base_dual_norm(const NormSpec& ns, const std::vector<double>& v) {
  switch (ns.base) {
    case BaseNorm::L1: return linf_norm(v);
    case BaseNorm::L2: return l2_norm(v);
    case BaseNorm::LInf: return l1_norm(v);
  }
  return 0.0;
}

double component_dual_norm(const NormSpec& ns, const std::vector<double>& v) {
  return ns.dual == DualConvention::CanonicalDual ? base_dual_norm(ns, v) : base_norm(ns, v);
}

static void check_tuple(const std::vector<Point>& tuple) {
  if (tuple.empty()) fail(ErrorCode::InvalidArgument, "empty tuple");
  for (const Point& p : tuple)
    if (p.dim() != tuple.front().dim())
      fail(ErrorCode::DimensionMismatch, "tuple components have mixed dimensions");
}

double product_norm(const NormSpec& ns, const std::vector<Point>& tuple) {
  check_tuple(tuple);
  ns.validate(static_cast<int>(tuple.size()));
  if (ns.product == ProductCombo::MaxProduct) {
    double m = 0.0;
    for (const Point& p : tuple) m = std::max(m, base_norm(ns, p.coords));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    double w = ns.weights.empty() ? 1.0 : ns.weights[i];
    s += w * std::pow(base_norm(ns, tuple[i].coords), ns.weighted_p);
  }
  return std::pow(s, 1.0 / ns.weighted_p);
}

double dual_product_norm(const NormSpec& ns, const std::vector<DualVector>& duals) {
  if (duals.empty()) fail(ErrorCode::InvalidArgument, "empty dual tuple");
  for (const DualVector& d : duals)
    if (d.dim() != duals.front().dim())
      fail(ErrorCode::DimensionMismatch, "dual tuple components have mixed dimensions");
  ns.validate(static_cast<int>(duals.size()));

  if (ns.dual == DualConvention::MirrorBase) {
    double m = 0.0;
    for (const DualVector& d : duals) m = std::max(m, base_norm(ns, d.coords));
    return m;
  }
  if (ns.product == ProductCombo::MaxProduct) {
    double s = 0.0;
    for (const DualVector& d : duals) s += base_dual_norm(ns, d.coords);
    return s;
  }
  // Dual of a weighted l_p combination: weighted l_q with conjugate weights.
  double q = ns.weighted_p <= 1.0 ? std::numeric_limits<double>::infinity()
                                  : ns.weighted_p / (ns.weighted_p - 1.0);
  if (!std::isfinite(q)) {
    double m = 0.0;
    for (std::size_t i = 0; i < duals.size(); ++i) {
      double w = ns.weights.empty() ? 1.0 : ns.weights[i];
      m = std::max(m, base_dual_norm(ns, duals[i].coords) / w);
    }
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < duals.size(); ++i) {
    double w = ns.weights.empty() ? 1.0 : ns.weights[i];
    s += std::pow(base_dual_norm(ns, duals[i].coords), q) / std::pow(w, q / ns.weighted_p);
  }
  return std::pow(s, 1.0 / q);
}

double sum_dual_norm(const NormSpec& ns, const std::vector<DualVector>& duals) {
  if (duals.empty()) fail(ErrorCode::InvalidArgument, "empty dual tuple");
  double s = 0.0;
  for (const DualVector& d : duals) s += component_dual_norm(ns, d.coords);
  return s;
}

CompatibilityReport verify_compatibility(const NormSpec& ns, int n_components, int dim,
                                         int samples, std::uint64_t seed) {
  if (samples < 1) fail(ErrorCode::InvalidArgument, "verify_compatibility: samples >= 1");
  ns.validate(n_components);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  CompatibilityReport rep;
  rep.kappa1_est = std::numeric_limits<double>::infinity();
  rep.kappa2_est = 0.0;

  for (int s = 0; s < samples; ++s) {
    std::vector<Point> tuple;
    std::vector<DualVector> duals;
    double maxbase = 0.0;
    for (int i = 0; i < n_components; ++i) {
      std::vector<double> c(static_cast<std::size_t>(dim));
      for (double& x : c) x = u(rng);
      tuple.emplace_back(c);
      duals.emplace_back(c);
      maxbase = std::max(maxbase, base_norm(ns, c));
    }
    if (maxbase < 1e-12) continue;
    double pn = product_norm(ns, tuple);
    double ratio = pn / maxbase;
    rep.kappa1_est = std::min(rep.kappa1_est, ratio);
    rep.kappa2_est = std::max(rep.kappa2_est, ratio);
    bool primal_ok = ns.kappa1 * maxbase <= pn * (1 + 1e-12) && pn <= ns.kappa2 * maxbase * (1 + 1e-12);

    double dsum = 0.0;
    for (const DualVector& d : duals) dsum += base_dual_norm(ns, d.coords);
    double dpn = dual_product_norm(ns, duals);
    bool dual_ok = dsum <= ns.kappa2 * dpn * (1 + 1e-12) ||
                   ns.dual == DualConvention::MirrorBase;  // dual estimate is stated for the canonical pairing
    if (!primal_ok || !dual_ok) {
      rep.pass = false;
      if (rep.violating_tuple.empty()) rep.violating_tuple = tuple;
    }
  }
  if (!std::isfinite(rep.kappa1_est)) rep.kappa1_est = ns.kappa1;
  return rep;
}

}  // namespace vext
