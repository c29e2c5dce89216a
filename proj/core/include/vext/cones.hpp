#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vext/norms.hpp"
#include "vext/point.hpp"
#include "vext/scalar_function.hpp"
#include "vext/set_expr.hpp"
#include "vext/verdict.hpp"

namespace vext {

enum class ConeKind { Frechet, Clarke };

/// Analytic normal-cone model at a base point. Every catalog cone is finitely
/// generated; at regular points of the catalog the Frechet and Clarke cones
/// coincide, and the `kind` field records which one was requested.
struct ConeModel {
  ConeKind kind = ConeKind::Frechet;
  std::vector<DualVector> generators;  // conic hull; empty = trivial cone {0}
  std::string notes;

  bool trivial() const { return generators.empty(); }
};

/// Distance from v to cone(generators) in the Euclidean metric, via
/// nonnegative least squares. The residual doubles as a separating
/// functional, so a positive return value is a certified margin.
double cone_distance(const ConeModel& model, const DualVector& v);

bool cone_contains(const ConeModel& model, const DualVector& v, double tol);

/// Exact analytic cone model for catalog sets. Interior points return the
/// trivial cone. Throws UnsupportedCapability at points the catalog cannot
/// classify (crossing branches, oscillation accumulation), BaseNotInSet when
/// base fails membership.
ConeModel cone_model(const SetExpr& set, const Point& base, ConeKind kind);

struct ConeTestParams {
  std::vector<double> radii = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  int samples = 200;
  double tol = 1e-6;
  std::uint64_t seed = 17;
  NormSpec norm;
};

/// Sampled limsup test of the Frechet normal-cone inequality for `cand` at
/// `base`. Sampling can only falsify; Certified is reserved for candidates
/// confirmed by the analytic catalog model. The candidate is normalized
/// internally, so verdicts are invariant under positive scaling.
PropertyVerdict frechet_normal_test(const SetExpr& set, const Point& base, const DualVector& cand,
                                    const ConeTestParams& params);

/// Sampled test of Clarke tangency of `dir` at `base`: searches feasible
/// z near dir for shrinking steps along sampled base sequences. Falsifies
/// with a witness pair when a certified local gap persists; otherwise
/// reports Inconclusive("consistent").
PropertyVerdict clarke_tangent_test(const SetExpr& set, const Point& base, const Point& dir,
                                    const ConeTestParams& params);

/// Frechet subdifferential membership via the epigraph: delegates to
/// frechet_normal_test on Epigraph(f) at (x, f(x)) with candidate (cand, -1).
PropertyVerdict frechet_subdiff_test(const ScalarFunction& f, double x, double cand,
                                     const ConeTestParams& params);

}  // namespace vext
