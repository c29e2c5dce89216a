#include "vext/optimization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vext {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kPi = std::acos(-1.0);

bool omega_contains(const Problem& prob, double x) {
  return contains(prob.omega, Point{x}, 1e-12);
}

double f_on_omega(const Problem& prob, double x) {
  if (!omega_contains(prob, x)) return kInf;
  return prob.f.eval(x);
}

// Analytic minimum candidates of the catalog variants inside (lo, hi).
std::vector<double> analytic_candidates(const ScalarFunction& f, double lo, double hi) {
  std::vector<double> out;
  auto push = [&](double x) {
    if (x > lo && x < hi) out.push_back(x);
  };
  switch (f.kind()) {
    case FunctionKind::PiecewiseParabolic: {
      // window boundaries j +- 1/2 where the parabola term peaks
      long jlo = static_cast<long>(std::floor(lo - 1.0)), jhi = static_cast<long>(std::ceil(hi + 1.0));
      if (jhi - jlo <= 4096)
        for (long j = jlo; j <= jhi; ++j) push(static_cast<double>(j) + 0.5);
      break;
    }
    case FunctionKind::OscillatorySine: {
      // sin(1/u) = -1 at u = 1/(2j*pi - pi/2): dips of u*sin(1/u)
      double m_lo = std::floor(lo * kPi / 2.0) - 1.0, m_hi = std::ceil(hi * kPi / 2.0) + 1.0;
      if (m_hi - m_lo <= 2048) {
        for (double m = m_lo; m <= m_hi; ++m) {
          double c = 2.0 * m / kPi;
          for (long j = 1; j <= 64; ++j) {
            double u = 1.0 / (2.0 * static_cast<double>(j) * kPi - kPi / 2.0);
            push(c + u);
            push(c - u);
          }
        }
      }
      break;
    }
    default: break;
  }
  return out;
}

struct InfResult {
  double value = kInf;
  double arg = 0.0;
  bool feasible = false;
};

InfResult grid_refine_inf(const Problem& prob, double lo, double hi, int cells) {
  InfResult res;
  if (!(hi > lo)) return res;
  double tiny = 1e-12 * std::max(1.0, std::abs(lo) + std::abs(hi));
  lo += tiny;
  hi -= tiny;  // open-interval limits
  auto consider = [&](double x) {
    double v = f_on_omega(prob, x);
    if (std::isfinite(v)) {
      res.feasible = true;
      if (v < res.value) {
        res.value = v;
        res.arg = x;
      }
    }
  };
  double h = (hi - lo) / cells;
  std::vector<std::pair<double, double>> best_cells;
  for (int i = 0; i <= cells; ++i) {
    double x = lo + h * i;
    double v = f_on_omega(prob, x);
    if (std::isfinite(v)) {
      res.feasible = true;
      best_cells.emplace_back(v, x);
      if (v < res.value) {
        res.value = v;
        res.arg = x;
      }
    }
  }
  for (double x : analytic_candidates(prob.f, lo, hi)) consider(x);
  std::partial_sort(best_cells.begin(),
                    best_cells.begin() + std::min<std::size_t>(6, best_cells.size()),
                    best_cells.end());
  // three zoom rounds around the best coarse cells
  for (std::size_t c = 0; c < std::min<std::size_t>(6, best_cells.size()); ++c) {
    double a = std::max(lo, best_cells[c].second - h), b = std::min(hi, best_cells[c].second + h);
    for (int round = 0; round < 3; ++round) {
      double step = (b - a) / 200.0;
      double best_x = 0.5 * (a + b), best_v = kInf;
      for (int i = 0; i <= 200; ++i) {
        double x = a + step * i;
        double v = f_on_omega(prob, x);
        if (v < best_v) {
          best_v = v;
          best_x = x;
        }
      }
      if (std::isfinite(best_v) && best_v < res.value) {
        res.value = best_v;
        res.arg = best_x;
      }
      a = std::max(lo, best_x - step);
      b = std::min(hi, best_x + step);
    }
  }
  return res;
}

std::vector<long> k_grid(long k_budget, long k_min = 1) {
  std::vector<long> ks;
  for (long k = std::max<long>(1, k_min); k <= k_budget; k *= 2) ks.push_back(k);
  if (ks.empty() || ks.back() != k_budget) ks.push_back(k_budget);
  return ks;
}

// Finite surrogate for f(x^k) -> mu0: the gap either falls below tol or
// keeps shrinking from the middle of the k grid to its end.
struct LevelTrend {
  double mid = std::numeric_limits<double>::infinity();
  double last = std::numeric_limits<double>::infinity();
  void feed(long k, long k_budget, double gap) {
    if (k >= k_budget / 2 && !std::isfinite(mid)) mid = gap;
    last = gap;  // ks arrive in increasing order
  }
  bool converged(double tol) const {
    if (!std::isfinite(last)) return false;
    return last <= std::max(tol, 0.75 * mid);
  }
  double gap() const { return last; }
};

double seq_x(const SequenceSpec& seq, long k) { return seq.eval_single(k).coords[0]; }

}  // namespace

double local_inf(const Problem& prob, double center, double rho, const OptBudgets& budgets) {
  if (!(rho > 0)) fail(ErrorCode::InvalidArgument, "local_inf: rho > 0 required");
  (void)budgets;
  InfResult r = grid_refine_inf(prob, center - rho, center + rho, 4000);
  if (!r.feasible) fail(ErrorCode::InfeasibleBall, "local_inf: Omega misses the ball");
  return r.value;
}

StationarityReport check_minimizing(const Problem& prob, const SequenceSpec& seq,
                                    const OptBudgets& budgets) {
  StationarityReport rep;
  rep.property = StationarityProperty::Minimizing;

  // capped global infimum estimate
  InfResult global = grid_refine_inf(prob, -budgets.r_max, budgets.r_max, 200000);
  if (!global.feasible) {
    rep.outcome = Outcome::Inconclusive;
    rep.notes = "no feasible point on the capped grid";
    return rep;
  }
  bool unbounded = global.value <= -1e6;

  LevelTrend trend;
  for (long k : k_grid(budgets.k_budget)) {
    double x = seq_x(seq, k);
    double fx = f_on_omega(prob, x);
    DiagnosticsRow row;
    row.k = k;
    row.f_xk = fx;
    row.local_inf = global.value;
    rep.diagnostics.push_back(row);
    if (k >= budgets.k_budget / 2 && !std::isfinite(fx)) {
      rep.outcome = Outcome::Falsified;
      rep.notes = "sequence leaves dom f / Omega in the tail";
      return rep;
    }
    trend.feed(k, budgets.k_budget, std::abs(fx - global.value));
  }
  rep.limsup_estimate = global.value;
  if (unbounded) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "inf unbounded below on grid (capped estimate " + std::to_string(global.value) + ")";
    return rep;
  }
  if (trend.converged(std::max(budgets.tol, 1e-9 * std::abs(global.value)))) {
    rep.outcome = Outcome::Certified;
    rep.notes = "f(x^k) reaches the capped-grid infimum";
  } else if (trend.gap() >= 2.0 * budgets.tol) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "tail values stay " + std::to_string(trend.gap()) + " above the infimum estimate";
  } else {
    rep.outcome = Outcome::Inconclusive;
  }
  return rep;
}

StationarityReport check_minimizing_at_level(const Problem& prob, const SequenceSpec& seq,
                                             double rho, long k0, const OptBudgets& budgets) {
  StationarityReport rep;
  rep.property = StationarityProperty::MinimizingAtLevel;
  double r = rho == kUnboundedRadius ? budgets.r_max : rho;

  LevelTrend trend;
  bool violation = false;
  DiagnosticsRow witness;
  for (long k : k_grid(budgets.k_budget, std::max<long>(1, k0 + 1))) {
    double x = seq_x(seq, k);
    double fx = f_on_omega(prob, x);
    DiagnosticsRow row;
    row.k = k;
    row.rho = r;
    row.f_xk = fx;
    double li;
    try {
      li = local_inf(prob, x, r, budgets);
    } catch (const Error&) {
      continue;
    }
    row.local_inf = li;
    rep.diagnostics.push_back(row);
    if (!std::isfinite(fx)) {
      rep.outcome = Outcome::Falsified;
      rep.notes = "sequence point infeasible in the tail";
      return rep;
    }
    trend.feed(k, budgets.k_budget, std::abs(fx - prob.mu0));
    if (li < prob.mu0 - 2.0 * budgets.eta) {
      violation = true;
      witness = row;
    }
  }
  if (violation) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "f dips below mu0 on Omega cap B_rho(x^k) at k=" + std::to_string(witness.k) +
                " (local inf " + std::to_string(witness.local_inf) + ")";
    return rep;
  }
  if (trend.converged(budgets.tol)) {
    rep.outcome = Outcome::Certified;
    rep.notes = "f(x^k) -> mu0 and the level bound holds at every sampled k";
  } else {
    rep.outcome = Outcome::Falsified;
    rep.notes = "f(x^k) does not approach mu0 (tail gap " + std::to_string(trend.gap()) + ")";
  }
  return rep;
}

StationarityReport check_firm_inf_stationary(const Problem& prob, const SequenceSpec& seq,
                                             double mu0, double rho, const OptBudgets& budgets) {
  StationarityReport rep;
  rep.property = StationarityProperty::FirmInfStationary;
  double r = rho == kUnboundedRadius ? budgets.r_max : rho;

  double limsup = -kInf;
  LevelTrend trend;
  LevelTrend deficit;  // mu0 minus the local infimum, which must vanish
  for (long k : k_grid(budgets.k_budget)) {
    double x = seq_x(seq, k);
    double fx = f_on_omega(prob, x);
    double li;
    try {
      li = local_inf(prob, x, r, budgets);
    } catch (const Error&) {
      continue;
    }
    DiagnosticsRow row;
    row.k = k;
    row.rho = r;
    row.f_xk = fx;
    row.local_inf = li;
    rep.diagnostics.push_back(row);
    if (k >= budgets.k_budget / 2) limsup = std::max(limsup, li);
    deficit.feed(k, budgets.k_budget, std::max(0.0, mu0 - li));
    if (std::isfinite(fx)) trend.feed(k, budgets.k_budget, std::abs(fx - mu0));
  }
  rep.limsup_estimate = limsup;
  if (!std::isfinite(limsup)) {
    rep.outcome = Outcome::Inconclusive;
    rep.notes = "no usable tail rows";
    return rep;
  }
  if (!trend.converged(budgets.tol)) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "f(x^k) does not approach mu0";
    return rep;
  }
  if (deficit.converged(budgets.tol)) {
    rep.outcome = Outcome::Certified;
    rep.notes = "limsup of local infima reaches mu0";
  } else if (deficit.gap() >= 2.0 * budgets.tol) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "limsup of local infima stays below mu0";
  } else {
    rep.outcome = Outcome::Inconclusive;
  }
  return rep;
}

StationarityReport check_inf_stationary(const Problem& prob, const SequenceSpec& seq, double mu0,
                                        const OptBudgets& budgets) {
  StationarityReport rep;
  rep.property = StationarityProperty::InfStationary;

  double rho_min = kInf;
  for (double r : budgets.rho_grid) rho_min = std::min(rho_min, r);
  double tol_eff = std::max(budgets.tol, 3.0 * rho_min);

  std::vector<double> rho_sorted = budgets.rho_grid;
  std::sort(rho_sorted.begin(), rho_sorted.end(), std::greater<double>());
  double limsup = -kInf;
  LevelTrend trend;
  for (long k : k_grid(budgets.k_budget)) {
    double x = seq_x(seq, k);
    double fx = f_on_omega(prob, x);
    if (!std::isfinite(fx)) continue;
    trend.feed(k, budgets.k_budget, std::abs(fx - mu0));
    for (double rho : rho_sorted) {
      double li;
      try {
        li = local_inf(prob, x, rho, budgets);
      } catch (const Error&) {
        continue;
      }
      DiagnosticsRow row;
      row.k = k;
      row.rho = rho;
      row.f_xk = fx;
      row.local_inf = li;
      row.ratio = (li - fx) / rho;
      rep.diagnostics.push_back(row);
      bool in_tail = k >= budgets.k_budget / 2 && rho <= rho_sorted[rho_sorted.size() / 2];
      if (in_tail) limsup = std::max(limsup, row.ratio);
    }
  }
  rep.limsup_estimate = limsup;
  if (!std::isfinite(limsup)) {
    rep.outcome = Outcome::Inconclusive;
    rep.notes = "no usable (k, rho) tail cells";
    return rep;
  }
  if (!trend.converged(budgets.tol)) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "f(x^k) does not approach mu0";
    return rep;
  }
  if (limsup >= -tol_eff) {
    rep.outcome = Outcome::Certified;
    rep.notes = "tail ratio estimates approach zero from below";
  } else if (limsup <= -2.0 * tol_eff) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "tail ratio bounded away from zero";
  } else {
    rep.outcome = Outcome::Inconclusive;
  }
  return rep;
}

StationarityReport check_approx_inf_stationary(const Problem& prob, const SequenceSpec& seq,
                                               double mu0, const OptBudgets& budgets) {
  StationarityReport rep;
  rep.property = StationarityProperty::ApproxInfStationary;

  double rho_min = kInf;
  for (double r : budgets.rho_grid) rho_min = std::min(rho_min, r);

  bool all_k_ok = true;
  double u_drift_tail = 0.0, f_drift_tail = 0.0;
  bool any_definite_failure_everywhere = true;
  for (long k : k_grid(budgets.k_budget, 2)) {
    double x = seq_x(seq, k);
    struct Cand {
      double u, rho;
    };
    std::vector<Cand> cands;
    if (budgets.u_hint_delta && budgets.u_hint_rho) {
      double d = budgets.u_hint_delta->eval_k(static_cast<double>(k));
      double rk = budgets.u_hint_rho->eval_k(static_cast<double>(k));
      if (rk > 0) cands.push_back({x + d, rk});
    }
    for (double rho : budgets.rho_grid) cands.push_back({x, rho});
    // grid-local minimizers near x^k as fallback auxiliary points
    {
      InfResult r = grid_refine_inf(prob, x - 0.1, x + 0.1, 2000);
      if (r.feasible)
        for (double rho : budgets.rho_grid) cands.push_back({r.arg, rho});
    }

    bool k_ok = false;
    for (const Cand& c : cands) {
      if (!omega_contains(prob, c.u)) continue;
      double fu = prob.f.eval(c.u);
      if (!std::isfinite(fu)) continue;
      double li;
      try {
        li = local_inf(prob, c.u, c.rho, budgets);
      } catch (const Error&) {
        continue;
      }
      double ratio = (li - fu) / c.rho;
      double tol_eff = std::max(budgets.tol, 3.0 * c.rho);
      DiagnosticsRow row;
      row.k = k;
      row.rho = c.rho;
      row.f_xk = fu;
      row.local_inf = li;
      row.ratio = ratio;
      rep.diagnostics.push_back(row);
      if (ratio >= -tol_eff) {
        k_ok = true;
        if (k >= budgets.k_budget / 2) {
          rep.aux_witnesses.emplace_back(c.u, c.rho);
          u_drift_tail = std::max(u_drift_tail, std::abs(c.u - x));
          f_drift_tail = std::max(f_drift_tail, std::abs(fu - mu0));
        }
        break;
      }
      if (ratio > -0.5) any_definite_failure_everywhere = false;
    }
    if (!k_ok && k >= budgets.k_budget / 2) all_k_ok = false;
  }

  if (all_k_ok && u_drift_tail <= budgets.tol * 10 && f_drift_tail <= budgets.tol * 10) {
    rep.outcome = Outcome::Certified;
    rep.notes = "auxiliary points with vanishing ratio found along the tail";
  } else if (!all_k_ok && any_definite_failure_everywhere) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "every scanned auxiliary candidate keeps a strongly negative ratio";
  } else if (!all_k_ok) {
    rep.outcome = Outcome::Falsified;
    rep.notes = "no auxiliary schedule with vanishing ratio among scanned candidates";
  } else {
    rep.outcome = Outcome::Inconclusive;
    rep.notes = "ratios vanish but the auxiliary points do not settle";
  }
  return rep;
}

std::pair<SetExpr, SetExpr> embed_epigraph(const Problem& prob) {
  return {SetExpr::epigraph(prob.f), SetExpr::product_with_ray(prob.omega, prob.mu0)};
}

PropertyVerdict build_stationarity_witness(const Problem& prob, const SequenceSpec& seq,
                                           WitnessVariant variant, const OptBudgets& budgets,
                                           const CheckParams& params) {
  auto [omega1, omega2] = embed_epigraph(prob);
  std::vector<SetExpr> sets = {omega1, omega2};
  PropertyVerdict verdict;

  for (double eps : params.epsilons) {
    long k0 = static_cast<long>(std::floor(1.0 / eps)) + 1;
    bool done = false;
    for (long k = k0; k <= params.k_budget && !done; k *= 2) {
      double x = seq_x(seq, k);
      double fx = f_on_omega(prob, x);
      if (!std::isfinite(fx)) continue;

      // pick (aux point, rho, shift magnitude) per variant
      double u = x, rho = 0.0, alpha = eps / 2.0, shift_mag = 0.0;
      bool ok = false;
      if (variant == WitnessVariant::Firm) {
        rho = budgets.rho_grid.front();
        double m = local_inf(prob, x, rho, budgets) - fx;
        if (m > -eps / 2.0) {
          shift_mag = alpha;  // requires m > -2*alpha = -eps
          ok = true;
        }
      } else if (variant == WitnessVariant::Stationary) {
        for (double rr : {eps / 2.0, eps / 4.0, eps / 8.0}) {
          double m = local_inf(prob, x, rr, budgets) - fx;
          if (m > -eps * rr / 2.0) {
            rho = rr;
            shift_mag = alpha * rr;
            ok = true;
            break;
          }
        }
      } else {
        // approx: auxiliary point from the hint schedule or u = x^k
        std::vector<std::pair<double, double>> cands;
        if (budgets.u_hint_delta && budgets.u_hint_rho)
          cands.emplace_back(x + budgets.u_hint_delta->eval_k(static_cast<double>(k)),
                             budgets.u_hint_rho->eval_k(static_cast<double>(k)));
        for (double rr : {eps / 2.0, eps / 4.0}) cands.emplace_back(x, rr);
        for (auto [uu, rr] : cands) {
          if (!(rr > 0) || !omega_contains(prob, uu)) continue;
          double fu = prob.f.eval(uu);
          if (!std::isfinite(fu) || std::abs(uu - x) >= eps || std::abs(fu - prob.mu0) >= eps)
            continue;
          double m = local_inf(prob, uu, rr, budgets) - fu;
          if (m > -eps * rr / 2.0) {
            u = uu;
            rho = rr;
            shift_mag = alpha * rr;
            ok = true;
            break;
          }
        }
      }
      if (!ok) continue;

      double fu = prob.f.eval(u);
      std::vector<Point> bases = {Point{u, fu}, Point{u, prob.mu0}};
      std::vector<Point> shifts = {Point{0.0, -shift_mag}, Point{0.0, shift_mag}};
      std::vector<Point> totals = {add(bases[0], shifts[0]), add(bases[1], shifts[1])};
      SearchBudget budget = params.budget;
      budget.resolution = std::min(budget.resolution, rho / 200.0);
      budget.eta = std::min(budget.eta, shift_mag / 8.0);
      EmptinessVerdict ev = intersection_empty(sets, totals, rho, EmptinessMethod::GridOracle, budget);
      EpsilonRecord rec;
      rec.eps = eps;
      rec.k = static_cast<int>(k);
      rec.rho = rho;
      rec.shifts = shifts;
      rec.aux_points = bases;
      rec.emptiness = ev;
      rec.success = ev.empty();
      if (rec.success) {
        verdict.per_epsilon.push_back(rec);
        done = true;
      }
    }
    if (!done)
      fail(ErrorCode::ConstructionFailed,
           "no k within budget yields the local-infimum margin at eps=" + std::to_string(eps));
  }
  verdict.outcome = Outcome::Certified;
  verdict.notes = "embedded shifts re-verified empty by the grid oracle";
  return verdict;
}

namespace {

SequenceSpec embedded_sequence(const SequenceSpec& seq, double mu0) {
  if (seq.is_closed_form()) {
    std::vector<std::string> coords = seq.closed_form_text().front();
    coords.push_back(std::to_string(mu0));
    return SequenceSpec::single_closed_form(coords);
  }
  std::vector<Point> pts;
  for (const Point& p : seq.tables().front()) pts.push_back(Point{p.coords[0], mu0});
  return SequenceSpec::single_tabulated(pts);
}

std::vector<double> x1_offsets(double eps) {
  std::vector<double> out = {0.0};
  for (double scale : {eps, eps * eps, eps * eps * eps})
    for (double f : {0.5, 0.125})
      for (double s : {1.0, -1.0}) out.push_back(s * f * scale);
  return out;
}

}  // namespace

NecessaryConditionsReport check_necessary_conditions(const Problem& prob, const SequenceSpec& seq,
                                                     const std::vector<double>& eps_grid,
                                                     ConeKind cone_kind, const OptBudgets& budgets) {
  auto [omega1, omega2] = embed_epigraph(prob);
  std::vector<SetExpr> sets = {omega1, omega2};
  SequenceSpec emb = embedded_sequence(seq, prob.mu0);

  NecessaryConditionsReport rep;
  rep.all_success = true;
  for (double eps : eps_grid) {
    NecessaryConditionRow row;
    row.eps = eps;
    SeparationSearchParams sp;
    sp.k_budget = budgets.k_budget;
    sp.seed = budgets.seed;
    std::optional<SeparationCertificate> cert;
    try {
      cert = search_certificate(sets, emb, eps, cone_kind, sp);
    } catch (const Error&) {
      cert = std::nullopt;
    }
    if (cert) {
      // drop nu2 and rescale so |x1*| + |x2*| + |nu1| = 1
      double x1s = cert->normals[0].coords[0], nu1 = cert->normals[0].coords[1];
      double x2s = cert->normals[1].coords[0];
      double s = std::abs(x1s) + std::abs(x2s) + std::abs(nu1);
      if (s > 1e-12) {
        row.k = cert->k;
        row.x1 = cert->base_points[0].coords[0];
        row.mu1 = cert->base_points[0].coords[1];
        row.x2 = cert->base_points[1].coords[0];
        row.x1_star = x1s / s;
        row.nu1 = nu1 / s;
        row.x2_star = x2s / s;
        row.sum_norm = std::abs(row.x1_star + row.x2_star);
        row.success = row.sum_norm < eps;
      }
    }
    rep.all_success = rep.all_success && row.success;
    rep.rows.push_back(row);
  }
  rep.notes = rep.all_success ? "separation certificates renormalized at every grid epsilon"
                              : "some grid epsilon admits no renormalized certificate";
  return rep;
}

MultiplierReport multiplier_rule_check(const Problem& prob, const SequenceSpec& seq, double M,
                                       const std::vector<double>& eps_grid,
                                       const OptBudgets& budgets) {
  MultiplierReport rep;
  rep.normal_all = true;
  rep.singular_all = true;

  for (double eps : eps_grid) {
    MultiplierRow row;
    row.eps = eps;
    long k0 = static_cast<long>(std::floor(1.0 / eps)) + 1;
    for (long k = k0; k <= budgets.k_budget && !(row.branch_normal && row.branch_singular); k *= 4) {
      double xk = seq_x(seq, k);

      // constraint-normal data at x2 near x^k
      double x2 = xk;
      if (!omega_contains(prob, x2)) {
        try {
          x2 = project(prob.omega, Point{xk}, 1e-10).coords[0];
        } catch (const Error&) {
          continue;
        }
      }
      if (std::abs(x2 - xk) >= eps) continue;
      ConeModel omega_cone;
      try {
        omega_cone = cone_model(prob.omega, Point{x2}, ConeKind::Frechet);
      } catch (const Error&) {
        continue;
      }
      auto v_closest = [&](double target) {
        // nearest point of N_Omega(x2) cap [-M, M] to `target` (1-D cone)
        double best = 0.0;
        bool pos = false, neg = false;
        for (const DualVector& g : omega_cone.generators) {
          if (g.coords[0] > 0) pos = true;
          if (g.coords[0] < 0) neg = true;
        }
        double lo = neg ? -M : 0.0, hi = pos ? M : 0.0;
        best = std::clamp(target, lo, hi);
        return best;
      };

      // normal branch: g in subdiff f(x1), v in N_Omega(x2) cap MB, |g+v| < eps
      for (double off : x1_offsets(eps)) {
        double x1 = xk + off;
        double fx1 = prob.f.eval(x1);
        if (!std::isfinite(fx1) || std::abs(fx1 - prob.mu0) >= eps || std::abs(off) >= eps) continue;
        SubdiffInfo sd = prob.f.subdiff(x1);
        std::vector<double> gs;
        if (sd.kind == SubdiffInfo::Kind::Smooth) gs = {sd.lo};
        else if (sd.kind == SubdiffInfo::Kind::ConvexKink) gs = {sd.lo, 0.0, sd.hi};
        else if (sd.kind == SubdiffInfo::Kind::LowerHalfplane) gs = {0.0};  // subdifferential is all of R
        for (double g : gs) {
          if (sd.kind == SubdiffInfo::Kind::ConvexKink && (g < sd.lo || g > sd.hi)) continue;
          double v = v_closest(-g);
          if (std::abs(g + v) < eps) {
            row.branch_normal = true;
            row.g = g;
            row.v = v;
            break;
          }
        }
        if (row.branch_normal) break;
      }

      // singular branch: near-horizontal epigraph normals with small sum
      for (double off : x1_offsets(eps)) {
        double x1 = xk + off;
        double fx1 = prob.f.eval(x1);
        if (!std::isfinite(fx1) || std::abs(off) >= eps) continue;
        if (std::abs(fx1 - prob.mu0) >= eps) continue;
        ConeModel epi_cone;
        try {
          epi_cone = cone_model(SetExpr::epigraph(prob.f), Point{x1, fx1}, ConeKind::Frechet);
        } catch (const Error&) {
          continue;
        }
        for (const DualVector& gen : epi_cone.generators) {
          double gx = gen.coords[0], gy = gen.coords[1];
          double gn = std::abs(gx);
          if (gn < 1e-12) continue;
          // scale so |x1*| = 1 - w, then nu1 = (1-w) * gy / |gx|
          for (int wi = 0; wi <= 100; ++wi) {
            double w = wi / 100.0;
            double x1s = (1.0 - w) * (gx / gn);
            double nu1 = (1.0 - w) * (gy / gn);
            if (!(nu1 <= 0.0 && nu1 > -eps)) continue;
            bool pos = false, neg = false;
            for (const DualVector& g : omega_cone.generators) {
              if (g.coords[0] > 0) pos = true;
              if (g.coords[0] < 0) neg = true;
            }
            double x2s = 0.0;
            if (pos && -x1s >= 0) x2s = w;
            else if (neg && -x1s <= 0) x2s = -w;
            else if (w > 1e-12) continue;
            if (std::abs(std::abs(x1s) + std::abs(x2s) - 1.0) > 1e-9) continue;
            double sum = std::abs(x1s + x2s);
            if (sum < eps) {
              row.branch_singular = true;
              row.nu1 = nu1;
              row.sum_norm = sum;
              rep.max_abs_nu1 = std::max(rep.max_abs_nu1, std::abs(nu1));
              break;
            }
          }
          if (row.branch_singular) break;
        }
        if (row.branch_singular) break;
      }
    }
    rep.normal_all = rep.normal_all && row.branch_normal;
    rep.singular_all = rep.singular_all && row.branch_singular;
    rep.rows.push_back(row);
  }
  rep.notes = rep.normal_all ? "normal multiplier branch holds on the grid"
                             : (rep.singular_all ? "singular branch pattern on the grid"
                                                 : "mixed branch pattern");
  return rep;
}

PropertyVerdict qualification_check(const Problem& prob, const SequenceSpec& seq, double eps,
                                    const OptBudgets& budgets) {
  PropertyVerdict v;
  double inf_est = kInf;
  bool any_tuple = false;

  long k0 = static_cast<long>(std::floor(1.0 / eps)) + 1;
  for (long k = k0; k <= budgets.k_budget; k *= 4) {
    double xk = seq_x(seq, k);
    double x2 = xk;
    if (!omega_contains(prob, x2)) {
      try {
        x2 = project(prob.omega, Point{xk}, 1e-10).coords[0];
      } catch (const Error&) {
        continue;
      }
    }
    if (std::abs(x2 - xk) >= eps) continue;
    ConeModel omega_cone;
    try {
      omega_cone = cone_model(prob.omega, Point{x2}, ConeKind::Frechet);
    } catch (const Error&) {
      continue;
    }
    bool pos = false, neg = false;
    for (const DualVector& g : omega_cone.generators) {
      if (g.coords[0] > 0) pos = true;
      if (g.coords[0] < 0) neg = true;
    }

    for (double off : x1_offsets(eps)) {
      double x1 = xk + off;
      double fx1 = prob.f.eval(x1);
      if (!std::isfinite(fx1) || std::abs(off) >= eps || std::abs(fx1 - prob.mu0) >= eps) continue;
      ConeModel epi_cone;
      try {
        epi_cone = cone_model(SetExpr::epigraph(prob.f), Point{x1, fx1}, ConeKind::Frechet);
      } catch (const Error&) {
        continue;
      }
      for (const DualVector& gen : epi_cone.generators) {
        double gx = gen.coords[0], gy = gen.coords[1];
        double gn = std::abs(gx);
        if (gn < 1e-12) continue;
        for (int wi = 0; wi <= 1000; ++wi) {
          double w = wi / 1000.0;
          double x1s = (1.0 - w) * (gx / gn);
          double nu1 = (1.0 - w) * (gy / gn);
          if (!(nu1 <= 0.0 && nu1 > -eps)) continue;
          double x2s = 0.0;
          if (w > 1e-12) {
            if (pos && neg) x2s = (x1s >= 0 ? -w : w);
            else if (pos) x2s = w;
            else if (neg) x2s = -w;
            else continue;
          }
          any_tuple = true;
          inf_est = std::min(inf_est, std::abs(x1s + x2s));
        }
      }
    }
  }

  // sufficient transversality route on (epi f, Omega x R)
  std::string route2;
  try {
    std::vector<SetExpr> pair = {SetExpr::epigraph(prob.f),
                                 SetExpr::product({prob.omega, SetExpr::whole_space(1)})};
    SeparationSearchParams sp;
    sp.k_budget = budgets.k_budget;
    PropertyVerdict tv = transversality_dual_check(pair, embedded_sequence(seq, prob.mu0), eps, sp);
    route2 = std::string("; transversality route: ") + outcome_name(tv.outcome);
  } catch (const Error& e) {
    route2 = std::string("; transversality route unavailable: ") + e.what();
  }

  if (any_tuple && inf_est < eps) {
    v.outcome = Outcome::Falsified;
    v.value = inf_est;
    v.notes = "near-horizontal unit tuple with ||x1*+x2*|| = " + std::to_string(inf_est) + route2;
    return v;
  }
  v.outcome = Outcome::Certified;
  if (any_tuple) v.value = inf_est;
  v.notes = (any_tuple ? "near-horizontal tuples stay above eps" : "no near-horizontal unit tuples near the tail") + route2;
  return v;
}

}  // namespace vext
