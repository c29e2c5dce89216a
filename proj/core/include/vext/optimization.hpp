#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vext/cones.hpp"
#include "vext/expr.hpp"
#include "vext/extremality.hpp"
#include "vext/scalar_function.hpp"
#include "vext/separation.hpp"
#include "vext/sequences.hpp"
#include "vext/set_expr.hpp"
#include "vext/verdict.hpp"

namespace vext {

/// minimize f(x) subject to x in Omega, with the level mu0 of the localized
/// properties. One-dimensional decision variable.
struct Problem {
  ScalarFunction f;
  SetExpr omega = SetExpr::whole_space(1);
  double mu0 = 0.0;
  std::optional<double> feasible_point;  // registered witness that Omega is nonempty
};

enum class StationarityProperty {
  Minimizing,
  MinimizingAtLevel,
  FirmInfStationary,
  InfStationary,
  ApproxInfStationary,
};

struct DiagnosticsRow {
  long k = 0;
  double rho = 0.0;
  double f_xk = 0.0;
  double local_inf = 0.0;
  double ratio = 0.0;
};

struct StationarityReport {
  StationarityProperty property = StationarityProperty::Minimizing;
  Outcome outcome = Outcome::Inconclusive;
  std::vector<DiagnosticsRow> diagnostics;
  std::vector<std::pair<double, double>> aux_witnesses;  // (u^k, rho_k) for the approximate property
  std::optional<double> limsup_estimate;
  std::string notes;

  bool certified() const { return outcome == Outcome::Certified; }
  bool falsified() const { return outcome == Outcome::Falsified; }
};

struct OptBudgets {
  long k_budget = 1000;
  std::vector<double> rho_grid = {1e-1, 1e-2, 1e-3};
  double tol = 1e-3;
  double eta = 1e-4;
  double r_max = 1e4;
  std::uint64_t seed = 17;
  std::optional<Expr> u_hint_delta;  // delta_k: u^k = x^k + delta_k
  std::optional<Expr> u_hint_rho;    // rho_k schedule for the approximate property
};

/// Upper estimate of inf over Omega cap B_rho(center) of f, by dense grid
/// plus local refinement (and the catalog's analytic minimum candidates).
/// Throws InfeasibleBall when the ball misses Omega.
double local_inf(const Problem& prob, double center, double rho, const OptBudgets& budgets);

/// f(x^k) -> inf_Omega f on the capped grid.
StationarityReport check_minimizing(const Problem& prob, const SequenceSpec& seq,
                                    const OptBudgets& budgets);

/// f(x^k) -> mu0 and f >= mu0 on Omega cap B_rho(x^k) for k > k0.
StationarityReport check_minimizing_at_level(const Problem& prob, const SequenceSpec& seq,
                                             double rho, long k0, const OptBudgets& budgets);

StationarityReport check_firm_inf_stationary(const Problem& prob, const SequenceSpec& seq,
                                             double mu0, double rho, const OptBudgets& budgets);

StationarityReport check_inf_stationary(const Problem& prob, const SequenceSpec& seq, double mu0,
                                        const OptBudgets& budgets);

StationarityReport check_approx_inf_stationary(const Problem& prob, const SequenceSpec& seq,
                                               double mu0, const OptBudgets& budgets);

/// The embedding pair (epi f, Omega x (-inf, mu0]) in R^2 under the max
/// product norm.
std::pair<SetExpr, SetExpr> embed_epigraph(const Problem& prob);

enum class WitnessVariant { Firm, Stationary, Approx };

/// Replays the constructive embedding argument: builds the embedded
/// sequences and the (0, -+alpha) / (0, -+alpha*rho) shifts, and re-verifies
/// the emptiness with the grid oracle. Throws ConstructionFailed when no k
/// within budget yields the required local-infimum margin.
PropertyVerdict build_stationarity_witness(const Problem& prob, const SequenceSpec& seq,
                                           WitnessVariant variant, const OptBudgets& budgets,
                                           const CheckParams& params);

struct NecessaryConditionRow {
  double eps = 0.0;
  bool success = false;
  int k = 0;
  double x1 = 0.0, mu1 = 0.0, x2 = 0.0;
  double x1_star = 0.0, nu1 = 0.0, x2_star = 0.0;
  double sum_norm = 0.0;
};

struct NecessaryConditionsReport {
  bool all_success = false;
  std::vector<NecessaryConditionRow> rows;
  std::string notes;
};

/// Separation on the embedded pair, renormalized so that
/// ||x1*|| + ||x2*|| + |nu1| = 1 with ||x1* + x2*|| < eps per grid epsilon.
NecessaryConditionsReport check_necessary_conditions(const Problem& prob, const SequenceSpec& seq,
                                                     const std::vector<double>& eps_grid,
                                                     ConeKind cone_kind, const OptBudgets& budgets);

struct MultiplierRow {
  double eps = 0.0;
  bool branch_normal = false;    // 0 in subdiff f(x1) + N_Omega(x2) cap MB + eps B
  bool branch_singular = false;  // near-horizontal epigraph normals with small sum
  double g = 0.0, v = 0.0;       // witnesses for the normal branch
  double nu1 = 0.0, sum_norm = 0.0;
  std::string note;
};

struct MultiplierReport {
  bool normal_all = false;
  bool singular_all = false;
  std::vector<MultiplierRow> rows;
  double max_abs_nu1 = 0.0;  // diagnostic for the branch classifier
  std::string notes;
};

/// Two-branch multiplier rule check with the bound M on the constraint
/// normal. Reports which branch each grid epsilon exhibits.
MultiplierReport multiplier_rule_check(const Problem& prob, const SequenceSpec& seq, double M,
                                       const std::vector<double>& eps_grid,
                                       const OptBudgets& budgets);

/// Qualification condition: lower bound eps on ||x1* + x2*|| over
/// near-horizontal unit epigraph-normal tuples near the sequence, plus the
/// sufficient transversality route on (epi f, Omega x R).
PropertyVerdict qualification_check(const Problem& prob, const SequenceSpec& seq, double eps,
                                    const OptBudgets& budgets);

}  // namespace vext
