#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vext/expr.hpp"
#include "vext/geometry.hpp"
#include "vext/sequences.hpp"
#include "vext/verdict.hpp"

namespace vext {

/// Analytic shift hint: perturb one set along `direction` with a magnitude
/// above `clearance(k)` and below the active shift bound. The worked
/// constructions are all of this axis-aligned single-set form.
struct ShiftHintSpec {
  int set_index = 0;
  std::vector<double> direction;  // scaled by the chosen magnitude
  Expr clearance;                 // expression in k; empty = no lower threshold
  bool parity_flip = false;       // multiply direction by (-1)^k
};

struct CheckParams {
  std::vector<double> epsilons = {1.0, 1e-1, 1e-2, 1e-3, 1e-4};
  long k_budget = 10000;
  std::vector<double> rho_fractions = {0.5, 0.25};  // rho = frac * eps for the rho<eps properties
  std::vector<ShiftHintSpec> hints;
  std::vector<double> axis_fractions = {0.5, 0.25, 0.125};
  int random_shifts = 4;
  std::uint64_t seed = 17;
  double diam_tol = 1e-2;
  SearchBudget budget;
  EmptinessMethod method = EmptinessMethod::Auto;

  CheckParams with_epsilons(std::vector<double> eps) const {
    CheckParams p = *this;
    p.epsilons = std::move(eps);
    return p;
  }
};

/// diam{x_1^k,...,x_n^k} -> 0 test over k = 1..k_budget.
PropertyVerdict check_diam_vanishes(const SequenceSpec& seq, long k_budget, double tol,
                                    const NormSpec& norm);

/// Sequential extremality with the given rho (kUnboundedRadius = capped +inf):
/// per epsilon, searches k > 1/eps and shifts with product norm < eps making
/// the shifted intersection with the rho-ball empty.
PropertyVerdict check_extremal(const std::vector<SetExpr>& sets, const SequenceSpec& seq,
                               double rho, const CheckParams& params);

/// Stationarity: rho in (0, eps) chosen per eps, shift bound eps*rho.
PropertyVerdict check_stationary(const std::vector<SetExpr>& sets, const SequenceSpec& seq,
                                 const CheckParams& params);

/// Approximate stationarity at a single sequence: auxiliary points in
/// Omega-hat within eps of (x^k,...,x^k) are searched before the shifts.
PropertyVerdict check_approx_stationary(const std::vector<SetExpr>& sets,
                                        const SequenceSpec& seq_single, const CheckParams& params);

/// Approximate alpha-stationarity: shift bound alpha*rho.
PropertyVerdict check_alpha_stationary(const std::vector<SetExpr>& sets,
                                       const SequenceSpec& seq_single, double alpha,
                                       const CheckParams& params);

/// Sequential alpha-transversality: the negation pattern of alpha-stationarity.
/// Falsified when an empty tuple is found; Certified only by the analytic
/// route on catalog fixtures (halfspace-structured convex sets, or n = 1).
PropertyVerdict check_transversal(const std::vector<SetExpr>& sets, const SequenceSpec& seq_single,
                                  double alpha, const CheckParams& params);

/// Rebuilds the per-epsilon witnesses of a Certified verdict for a nearby
/// sequence via a_i' = a_i + x_i^k - x_i'^k; emptiness re-verification uses
/// the unchanged total shifts (the translation identity), at zero tolerance.
/// Throws GapTooLarge when the sequence gap cannot be brought below eps/2
/// within the k budget.
PropertyVerdict transfer_witness(const PropertyVerdict& verdict, const std::vector<SetExpr>& sets,
                                 const SequenceSpec& seq_from, const SequenceSpec& seq_to,
                                 double rho, const CheckParams& params);

struct EquivalenceCell {
  double eps = 0.0;
  double rho = 0.0;
  bool empty_found = false;
};

struct ConvexEquivalenceReport {
  bool assertion_any_rho = false;   // (i): extremal with every tested rho
  bool assertion_some_rho = false;  // (ii)
  bool assertion_stationary = false;
  bool assertion_eps_rho = false;   // (iv): the unconstrained eps/rho grid condition
  bool agreement = false;
  std::vector<EquivalenceCell> cells;
  bool rescale_checked = false;  // the proof's t = rho'/rho map on a nonempty witness
  std::string notes;
};

/// Prop-style equivalence suite for convex inputs: evaluates the four
/// assertions independently on an (eps, rho) grid and exercises the
/// rescaling map on a nonempty witness. Throws NonConvexInput.
ConvexEquivalenceReport convex_equivalence_suite(const std::vector<SetExpr>& sets,
                                                 const SequenceSpec& seq,
                                                 const CheckParams& params);

}  // namespace vext
