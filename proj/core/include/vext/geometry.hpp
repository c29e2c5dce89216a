#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vext/norms.hpp"
#include "vext/point.hpp"
#include "vext/set_expr.hpp"

namespace vext {

enum class EmptinessMethod { GridOracle, AlternatingProjections, Analytic, Auto };

enum class EmptinessOutcome { Empty, Nonempty, Inconclusive };

struct EmptinessVerdict {
  EmptinessOutcome outcome = EmptinessOutcome::Inconclusive;
  std::optional<Point> witness;       // present for Nonempty
  std::optional<double> lower_bound;  // positive certified gap for Empty
  EmptinessMethod method = EmptinessMethod::GridOracle;
  bool radius_capped = false;
  std::string notes;

  bool empty() const { return outcome == EmptinessOutcome::Empty; }
  bool nonempty() const { return outcome == EmptinessOutcome::Nonempty; }
};

struct SearchBudget {
  double resolution = 1e-3;  // grid oracle lattice step
  double eta = 1e-4;         // membership margin / ball shrink
  double r_max = 1e4;        // cap standing in for rho = +inf
  int max_sweeps = 200000;   // cyclic projection sweeps
  int seeds = 8;             // family_gap seeds
  std::uint64_t seed = 17;
  NormSpec norm;             // base/verdict norm
};

constexpr double kUnboundedRadius = -1.0;  // marker for rho = +inf

/// Distance from the origin in the budget's base norm.
double ball_norm(const NormSpec& ns, const Point& p);

/// Euclidean projection onto the base-norm ball of given radius at origin.
Point project_ball_base_norm(const NormSpec& ns, const Point& p, double radius);

/// Decides whether the intersection of (sets[i] - shifts[i]) with the open
/// ball of `radius` at the origin is empty. `radius` may be kUnboundedRadius,
/// which is handled through the r_max cap with an explicit flag.
///
/// GridOracle is the ground-truth desk-scale oracle (exhaustive lattice with
/// membership margin eta). AlternatingProjections certifies Empty only for
/// convex inputs with exact projectors, through the Fejer monotonicity budget
/// bound, and returns Inconclusive otherwise.
EmptinessVerdict intersection_empty(const std::vector<SetExpr>& sets,
                                    const std::vector<Point>& shifts, double radius,
                                    EmptinessMethod method, const SearchBudget& budget);

struct Region {
  Point center;
  double radius = 1.0;  // in the base norm
};

/// Upper estimate of inf over x_i in Omega_i within `region` of the maximum
/// pairwise base-norm distance. Returns +inf when some set misses the region.
/// Monotone non-increasing in budget.seeds.
double family_gap(const std::vector<SetExpr>& sets, const Region& region,
                  const SearchBudget& budget);

}  // namespace vext
