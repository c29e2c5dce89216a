#include "vext/registry.hpp"

#include <chrono>
#include <cmath>
#include <map>

namespace vext {

namespace {

SetExpr hyperbola_branch_positive() {
  // {(x,y) : x > 0, xy >= 1}, a closed convex set
  return SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::GE, 1.0,
                                    {HalfspaceData{{-1.0, 0.0}, 0.0, true}}, true);
}

SetExpr lower_halfplane() { return SetExpr::halfspace({0.0, 1.0}, 0.0); }

SetExpr hyperbola_full() {
  return SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::GE, 1.0);
}

SetExpr cross_region() {  // {xy <= 0}
  return SetExpr::polynomial_region({{1.0, {1, 1}}}, Rel::LE, 0.0);
}

SetExpr shifted_hyperbola() {  // {xy - x^2 >= 1}, i.e. xy >= x^2 + 1
  return SetExpr::polynomial_region({{1.0, {1, 1}}, {-1.0, {2, 0}}}, Rel::GE, 1.0);
}

SetExpr wedge_region() {  // {x(y - x) <= 0}
  return SetExpr::polynomial_region({{1.0, {1, 1}}, {-1.0, {2, 0}}}, Rel::LE, 0.0);
}

ShiftHintSpec hint(int set, std::vector<double> dir, const char* clearance,
                   bool parity_flip = false) {
  ShiftHintSpec h;
  h.set_index = set;
  h.direction = std::move(dir);
  h.clearance = Expr::parse(clearance);
  h.parity_flip = parity_flip;
  return h;
}

RowResult row(const std::string& name, bool match, const std::string& detail = "",
              bool inconclusive = false) {
  return RowResult{name, match, inconclusive, detail};
}

RowResult verdict_row(const std::string& name, const PropertyVerdict& v, Outcome expected) {
  RowResult r;
  r.name = name;
  r.match = v.outcome == expected;
  r.inconclusive = v.outcome == Outcome::Inconclusive;
  r.detail = std::string("got ") + outcome_name(v.outcome) + ", expected " + outcome_name(expected) +
             (v.notes.empty() ? "" : " [" + v.notes + "]");
  return r;
}

RowResult report_row(const std::string& name, const StationarityReport& rep, Outcome expected) {
  RowResult r;
  r.name = name;
  r.match = rep.outcome == expected;
  r.inconclusive = rep.outcome == Outcome::Inconclusive;
  r.detail = std::string("got ") + outcome_name(rep.outcome) + ", expected " + outcome_name(expected) +
             (rep.notes.empty() ? "" : " [" + rep.notes + "]");
  return r;
}

// ---------------------------------------------------------------------------
// runners
// ---------------------------------------------------------------------------

std::vector<RowResult> run_pairs(const ExampleEntry& e, const RunOptions& opts) {
  std::vector<RowResult> rows;
  for (const PairFixture& pair : e.pairs) {
    CheckParams params = fixture_params(e, pair, opts);
    PropertyVerdict v = check_extremal(e.sets, pair.seq, 1.0, params);
    rows.push_back(verdict_row("extremal at " + pair.label, v, pair.expected_extremal));
    if (pair.expected_stationary) {
      PropertyVerdict sv = check_stationary(e.sets, pair.seq, params);
      rows.push_back(verdict_row("stationary at " + pair.label, sv, *pair.expected_stationary));
    }
  }
  return rows;
}

std::vector<RowResult> run_e15(const ExampleEntry& e, const RunOptions& opts) {
  std::vector<RowResult> rows;

  // membership facts
  rows.push_back(row("membership (10, 0.1) in branch set",
                     contains(e.sets[0], Point{10.0, 0.1}, 1e-9), "t = 10 sequence point"));
  rows.push_back(row("membership (0,0) in lower halfplane", contains(e.sets[1], Point{0.0, 0.0}, 0.0),
                     "boundary point of a closed halfspace"));
  rows.push_back(row("non-membership (-1,-1)", !contains(e.sets[0], Point{-1.0, -1.0}, 0.0),
                     "violates the strict side constraint"));

  {
    std::vector<RowResult> pair_rows = run_pairs(e, opts);
    rows.insert(rows.end(), pair_rows.begin(), pair_rows.end());
  }

  // capped-unbounded extremality
  {
    CheckParams params = fixture_params(e, e.pairs.front(), opts);
    PropertyVerdict v = check_extremal(e.sets, e.pairs.front().seq, kUnboundedRadius, params);
    bool capped_flag = true;
    for (const EpsilonRecord& r : v.per_epsilon) capped_flag = capped_flag && r.emptiness.radius_capped;
    rows.push_back(verdict_row("extremal with capped unbounded radius", v, Outcome::Certified));
    rows.push_back(row("capped flag present on unbounded verdicts", capped_flag));
  }

  // dual values at t = 10 under the mirror convention
  {
    SeparationSearchParams sp;
    sp.norm = e.norm;
    sp.k_budget = opts.k_budget;
    sp.base_hints = e.pairs.front().seq;
    auto cert = search_certificate(e.sets, *e.single_seq, 0.101, ConeKind::Frechet, sp);
    bool ok = cert.has_value() && cert->k == 10;
    std::string detail = "no certificate";
    if (cert) {
      double x1a = cert->normals[0].coords[0], x1b = cert->normals[0].coords[1];
      double x2a = cert->normals[1].coords[0], x2b = cert->normals[1].coords[1];
      ok = ok && std::abs(x1a + 0.005) <= 1e-12 && std::abs(x1b + 0.5) <= 1e-12;
      ok = ok && std::abs(x2a) <= 1e-12 && std::abs(x2b - 0.5) <= 1e-12;
      double n1 = component_dual_norm(e.norm, cert->normals[0].coords);
      double n2 = component_dual_norm(e.norm, cert->normals[1].coords);
      ok = ok && std::abs(n1 - 0.5) <= 1e-12 && std::abs(n2 - 0.5) <= 1e-12;
      double sum = std::abs(x1a + x2a) + std::abs(x1b + x2b);
      ok = ok && std::abs(sum - 0.005) <= 1e-12;
      detail = "k=" + std::to_string(cert->k) + " sum=" + std::to_string(sum);
    }
    rows.push_back(row("dual tuple values at t=10 (mirror convention)", ok, detail));
  }

  // the worked emptiness: a1 = (0, -0.15) at t = 10, globally empty
  {
    SearchBudget budget;
    budget.seed = opts.seed;
    budget.r_max = opts.r_max;
    std::vector<Point> totals = {Point{10.0, 0.1 - 0.15}, Point{10.0, 0.0}};
    EmptinessVerdict ev =
        intersection_empty(e.sets, totals, kUnboundedRadius, EmptinessMethod::GridOracle, budget);
    rows.push_back(row("grid oracle certifies the worked shifted emptiness", ev.empty(),
                       ev.notes + (ev.radius_capped ? " (capped)" : "")));
  }

  // approximate stationarity at the averaged sequence
  {
    CheckParams params = fixture_params(e, e.pairs.front(), opts);
    SequenceSpec avg = SequenceSpec::single_closed_form({"k", "0.5/k"});
    PropertyVerdict v = check_approx_stationary(e.sets, avg, params);
    rows.push_back(verdict_row("approximately stationary at the averaged sequence", v,
                               Outcome::Certified));
  }

  // transversality is falsified (the pair is alpha-stationary)
  {
    CheckParams params = fixture_params(e, e.pairs.front(), opts);
    PropertyVerdict v = check_transversal(e.sets, *e.single_seq, 0.5, params);
    rows.push_back(verdict_row("transversality falsified", v, Outcome::Falsified));
    SeparationSearchParams sp;
    sp.norm = e.norm;
    sp.k_budget = opts.k_budget;
    sp.base_hints = e.pairs.front().seq;
    PropertyVerdict dv = transversality_dual_check(e.sets, *e.single_seq, 0.01, sp);
    rows.push_back(verdict_row("dual transversality check falsified", dv, Outcome::Falsified));
  }
  return rows;
}

std::vector<RowResult> run_e42(const ExampleEntry& e, const RunOptions& opts) {
  std::vector<RowResult> rows;
  OptBudgets b = e.opt_budgets;
  b.k_budget = std::min<long>(opts.k_budget, 4000);
  const Problem& prob = *e.problem;
  const SequenceSpec& seq = *e.problem_seq;

  rows.push_back(report_row("not a minimizing sequence", check_minimizing(prob, seq, b),
                            Outcome::Falsified));
  rows.push_back(report_row("minimizing at level 0 (rho=1)",
                            check_minimizing_at_level(prob, seq, 1.0, 1, b), Outcome::Certified));
  rows.push_back(report_row("firmly inf-stationary at level 0",
                            check_firm_inf_stationary(prob, seq, 0.0, 1.0, b), Outcome::Certified));

  auto [o1, o2] = embed_epigraph(prob);
  rows.push_back(row("embedding shapes", contains(o1, Point{2.0, 1.0}, 0.0) &&
                                              !contains(o1, Point{2.0, 0.1}, 0.0) &&
                                              contains(o2, Point{-3.0, -0.5}, 0.0) &&
                                              !contains(o2, Point{0.0, 0.5}, 0.0),
                     "epi(1/x) and R x (-inf, 0]"));

  {
    CheckParams params;
    params.epsilons = {1e-1, 1e-2};
    params.k_budget = opts.k_budget;
    params.budget.seed = opts.seed;
    PropertyVerdict v = build_stationarity_witness(prob, seq, WitnessVariant::Firm, b, params);
    rows.push_back(verdict_row("embedded extremality witness (firm)", v, Outcome::Certified));
  }

  {
    NecessaryConditionsReport rep =
        check_necessary_conditions(prob, seq, {1e-1, 1e-2, 1e-3}, ConeKind::Frechet, b);
    rows.push_back(row("sequential necessary conditions", rep.all_success, rep.notes));
  }
  {
    MultiplierReport rep = multiplier_rule_check(prob, seq, 2.0, {1e-1, 1e-2, 1e-3}, b);
    rows.push_back(row("multiplier rule: normal branch", rep.normal_all, rep.notes));
  }
  {
    PropertyVerdict v = qualification_check(prob, seq, 1e-2, b);
    rows.push_back(verdict_row("qualification condition", v, Outcome::Certified));
  }
  return rows;
}

std::vector<RowResult> run_e43(const ExampleEntry& e, const RunOptions& opts) {
  std::vector<RowResult> rows;
  OptBudgets b = e.opt_budgets;
  b.k_budget = std::min<long>(opts.k_budget, 2000);
  const Problem& prob = *e.problem;
  const SequenceSpec& seq = *e.problem_seq;

  rows.push_back(report_row("not minimizing at level 0",
                            check_minimizing_at_level(prob, seq, 1.0, 1, b), Outcome::Falsified));
  StationarityReport firm = check_firm_inf_stationary(prob, seq, 0.0, 1.0, b);
  rows.push_back(report_row("firmly inf-stationary at level 0 (rho=1)", firm, Outcome::Certified));
  {
    MultiplierReport rep = multiplier_rule_check(prob, seq, 2.0, {1e-1, 1e-2, 1e-3}, b);
    rows.push_back(row("multiplier rule: normal branch", rep.normal_all, rep.notes));
  }
  {
    PropertyVerdict v = qualification_check(prob, seq, 1e-2, b);
    rows.push_back(verdict_row("qualification condition", v, Outcome::Certified));
  }
  return rows;
}

std::vector<RowResult> run_e44(const ExampleEntry& e, const RunOptions& opts) {
  std::vector<RowResult> rows;
  OptBudgets b = e.opt_budgets;
  const Problem& prob = *e.problem;
  const SequenceSpec& seq = *e.problem_seq;

  // closed-form local infima: 1/(k+rho) - rho^2 for rho <= 1/2, and the
  // boundary value 1/(k+1/2) - 1/4 on rho in (1/2, 1]
  bool li_ok = true;
  std::string li_detail;
  for (double k : {10.0, 100.0}) {
    for (double rho : {0.1, 0.3, 1.0}) {
      double expected = rho <= 0.5 ? 1.0 / (k + rho) - rho * rho : 1.0 / (k + 0.5) - 0.25;
      double got = local_inf(prob, k, rho, b);
      if (std::abs(got - expected) > 1e-6) {
        li_ok = false;
        li_detail += "(k=" + std::to_string(k) + ",rho=" + std::to_string(rho) +
                     ": got " + std::to_string(got) + " want " + std::to_string(expected) + ") ";
      }
    }
  }
  rows.push_back(row("closed-form local infima (1e-6)", li_ok, li_detail));

  OptBudgets firm_b = b;
  firm_b.k_budget = 5000;
  for (double rho : {0.1, 0.3, 1.0}) {
    StationarityReport rep = check_firm_inf_stationary(prob, seq, 0.0, rho, firm_b);
    double expect_limsup = -std::min(rho * rho, 0.25);
    bool ok = rep.outcome == Outcome::Falsified && rep.limsup_estimate &&
              std::abs(*rep.limsup_estimate - expect_limsup) <= 1e-3;
    rows.push_back(row("firm inf-stationarity falsified at rho=" + std::to_string(rho), ok,
                       "limsup est " +
                           (rep.limsup_estimate ? std::to_string(*rep.limsup_estimate) : "n/a") +
                           " vs " + std::to_string(expect_limsup)));
  }

  rows.push_back(report_row("inf-stationary at level 0", check_inf_stationary(prob, seq, 0.0, b),
                            Outcome::Certified));
  {
    CheckParams params;
    params.epsilons = {1e-1, 1e-2};
    params.k_budget = opts.k_budget;
    params.budget.seed = opts.seed;
    PropertyVerdict v = build_stationarity_witness(prob, seq, WitnessVariant::Stationary, b, params);
    rows.push_back(verdict_row("embedded stationarity witness", v, Outcome::Certified));
  }
  return rows;
}

std::vector<RowResult> run_e45(const ExampleEntry& e, const RunOptions& opts) {
  std::vector<RowResult> rows;
  OptBudgets b = e.opt_budgets;
  const Problem& prob = *e.problem;
  const SequenceSpec& seq = *e.problem_seq;

  StationarityReport inf_rep = check_inf_stationary(prob, seq, 0.0, b);
  bool inf_ok = inf_rep.outcome == Outcome::Falsified && inf_rep.limsup_estimate &&
                *inf_rep.limsup_estimate <= -0.9;
  rows.push_back(row("inf-stationarity falsified with ratio <= -0.9", inf_ok,
                     "ratio est " +
                         (inf_rep.limsup_estimate ? std::to_string(*inf_rep.limsup_estimate) : "n/a")));

  // the registered auxiliary schedule: u^k = x^k + delta_k is the window
  // minimum of f on (u^k - rho_k, u^k + rho_k)
  bool window_ok = true;
  std::string wdetail;
  for (long k : {256L, 512L, 1000L}) {
    double x = seq.eval_single(k).coords[0];
    double d = b.u_hint_delta->eval_k(static_cast<double>(k));
    double rk = b.u_hint_rho->eval_k(static_cast<double>(k));
    double u = x + d;
    double fu = prob.f.eval(u);
    double li = local_inf(prob, u, rk, b);
    if (!(li >= fu - 1e-9)) {
      window_ok = false;
      wdetail += "(k=" + std::to_string(k) + ": min " + std::to_string(li) + " vs f(u) " +
                 std::to_string(fu) + ") ";
    }
  }
  rows.push_back(row("auxiliary points are window minima (1e-9)", window_ok, wdetail));

  rows.push_back(report_row("approximately inf-stationary via the schedule",
                            check_approx_inf_stationary(prob, seq, 0.0, b), Outcome::Certified));
  {
    CheckParams params;
    params.epsilons = {1e-1, 1e-2};
    params.k_budget = opts.k_budget;
    params.budget.seed = opts.seed;
    PropertyVerdict v = build_stationarity_witness(prob, seq, WitnessVariant::Approx, b, params);
    rows.push_back(verdict_row("embedded approximate-stationarity witness", v, Outcome::Certified));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

std::map<std::string, ExampleEntry> build_catalog() {
  std::map<std::string, ExampleEntry> cat;

  {
    ExampleEntry e;
    e.id = "E1.5";
    e.description = "hyperbola branch {x>0, xy>=1} against the lower halfplane {y<=0}";
    e.sets = {hyperbola_branch_positive(), lower_halfplane()};
    PairFixture p;
    p.label = "{(k,1/k)}, {(k,0)}";
    p.seq = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
    p.hints = {hint(0, {0.0, -1.0}, "1/k")};
    p.expected_stationary = Outcome::Certified;
    e.pairs = {p};
    e.single_seq = SequenceSpec::single_closed_form({"k", "0"});
    e.norm.dual = DualConvention::MirrorBase;
    e.runner = run_e15;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E3.4.1";
    e.description = "the E1.5 pair restated as a sequential extremality fixture";
    e.sets = {hyperbola_branch_positive(), lower_halfplane()};
    PairFixture p;
    p.label = "{(k,1/k)}, {(k,0)}";
    p.seq = SequenceSpec::closed_form({{"k", "1/k"}, {"k", "0"}});
    p.hints = {hint(0, {0.0, -1.0}, "1/k")};
    p.expected_stationary = Outcome::Certified;
    e.pairs = {p};
    e.single_seq = SequenceSpec::single_closed_form({"k", "0"});
    e.runner = run_pairs;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E3.4.2";
    e.description = "exponential epigraph {y>=exp(-x)} against {y<=0}";
    e.sets = {SetExpr::epigraph(ScalarFunction::exp_neg()), lower_halfplane()};
    PairFixture p;
    p.label = "{(k,exp(-k))}, {(k,0)}";
    p.seq = SequenceSpec::closed_form({{"k", "exp(-k)"}, {"k", "0"}});
    p.hints = {hint(0, {0.0, -1.0}, "exp(-k)")};
    p.expected_stationary = Outcome::Certified;
    e.pairs = {p};
    e.single_seq = SequenceSpec::single_closed_form({"k", "0"});
    e.runner = run_pairs;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E3.4.3";
    e.description = "full hyperbola {xy>=1} against the cross {xy<=0}, four directions plus the alternating pair";
    e.sets = {hyperbola_full(), cross_region()};
    auto mk = [&](const char* label, std::vector<std::vector<std::string>> seq,
                  ShiftHintSpec h) {
      PairFixture p;
      p.label = label;
      p.seq = SequenceSpec::closed_form(std::move(seq));
      p.hints = {std::move(h)};
      return p;
    };
    e.pairs = {
        mk("direction +x", {{"k", "1/k"}, {"k", "0"}}, hint(0, {0.0, -1.0}, "1/k")),
        mk("direction +y", {{"1/k", "k"}, {"0", "k"}}, hint(0, {-1.0, 0.0}, "1/k")),
        mk("direction -x", {{"-k", "-1/k"}, {"-k", "0"}}, hint(0, {0.0, 1.0}, "1/k")),
        mk("direction -y", {{"-1/k", "-k"}, {"0", "-k"}}, hint(0, {1.0, 0.0}, "1/k")),
        mk("alternating", {{"(-1)^k*k", "(-1)^k/k"}, {"(-1)^k*k", "0"}},
           hint(0, {0.0, -1.0}, "1/k", true)),
    };
    e.single_seq = SequenceSpec::single_closed_form({"k", "0"});
    e.runner = run_pairs;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E3.4.4";
    e.description = "{xy>=x^2+1} against {x(y-x)<=0}, four directions";
    e.sets = {shifted_hyperbola(), wedge_region()};
    auto mk = [&](const char* label, std::vector<std::vector<std::string>> seq, ShiftHintSpec h) {
      PairFixture p;
      p.label = label;
      p.seq = SequenceSpec::closed_form(std::move(seq));
      p.hints = {std::move(h)};
      return p;
    };
    e.pairs = {
        mk("direction ++", {{"k", "k+1/k"}, {"k", "k"}}, hint(0, {0.0, -1.0}, "1/k")),
        mk("direction +y", {{"1/k", "k+1/k"}, {"0", "k"}}, hint(0, {-1.0, 0.0}, "1/k")),
        mk("direction --", {{"-k", "-k-1/k"}, {"-k", "-k"}}, hint(0, {0.0, 1.0}, "1/k")),
        mk("direction -y", {{"-1/k", "-k-1/k"}, {"0", "-k"}}, hint(0, {1.0, 0.0}, "1/k")),
    };
    e.single_seq = SequenceSpec::single_closed_form({"k", "k"});
    e.runner = run_pairs;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E3.4.5";
    e.description = "oscillating graphs sin(1/x) and 1/x + sin(1/x), both tails";
    e.sets = {SetExpr::graph(ScalarFunction::sin_reciprocal()),
              SetExpr::graph(ScalarFunction::reciprocal_plus_sin())};
    auto mk = [&](const char* label, std::vector<std::vector<std::string>> seq, ShiftHintSpec h) {
      PairFixture p;
      p.label = label;
      p.seq = SequenceSpec::closed_form(std::move(seq));
      p.hints = {std::move(h)};
      return p;
    };
    e.pairs = {
        mk("positive tail", {{"k", "sin(1/k)"}, {"k", "1/k+sin(1/k)"}}, hint(0, {0.0, 1.0}, "1/k")),
        mk("negative tail", {{"-k", "-sin(1/k)"}, {"-k", "-1/k-sin(1/k)"}},
           hint(0, {0.0, -1.0}, "1/k")),
    };
    e.single_seq = SequenceSpec::single_closed_form({"k", "sin(1/k)"});
    e.runner = run_pairs;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E4.2";
    e.description = "minimize 1/x over R: x^k = k is minimizing at level 0 but not minimizing";
    Problem prob;
    prob.f = ScalarFunction::reciprocal();
    prob.omega = SetExpr::whole_space(1);
    prob.mu0 = 0.0;
    prob.feasible_point = 1.0;
    e.problem = prob;
    e.problem_seq = SequenceSpec::single_closed_form({"k"});
    e.runner = run_e42;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E4.3";
    e.description = "minimize 1/x over R: x^k = -k is firmly inf-stationary but not minimizing at level 0";
    Problem prob;
    prob.f = ScalarFunction::reciprocal();
    prob.omega = SetExpr::whole_space(1);
    prob.mu0 = 0.0;
    prob.feasible_point = 1.0;
    e.problem = prob;
    e.problem_seq = SequenceSpec::single_closed_form({"-k"});
    e.runner = run_e43;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E4.4";
    e.description = "windowed 1/|x| - (x-j)^2 objective: inf-stationary but not firmly inf-stationary";
    Problem prob;
    prob.f = ScalarFunction::piecewise_parabolic();
    prob.omega = SetExpr::whole_space(1);
    prob.mu0 = 0.0;
    prob.feasible_point = 1.0;
    e.problem = prob;
    e.problem_seq = SequenceSpec::single_closed_form({"k"});
    e.opt_budgets.k_budget = 1000;
    e.runner = run_e44;
    cat[e.id] = e;
  }
  {
    ExampleEntry e;
    e.id = "E4.5";
    e.description = "damped oscillation u*sin(1/u): approximately inf-stationary only";
    Problem prob;
    prob.f = ScalarFunction::oscillatory_sine();
    prob.omega = SetExpr::whole_space(1);
    prob.mu0 = 0.0;
    prob.feasible_point = 0.0;
    e.problem = prob;
    e.problem_seq = SequenceSpec::single_closed_form({"2*k/pi"});
    e.opt_budgets.k_budget = 1000;
    e.opt_budgets.u_hint_delta = Expr::parse("1/(2*k*pi - pi/2)");
    e.opt_budgets.u_hint_rho = Expr::parse("1/(4*pi*k^2)");
    e.runner = run_e45;
    cat[e.id] = e;
  }
  return cat;
}

const std::map<std::string, ExampleEntry>& catalog() {
  static const std::map<std::string, ExampleEntry> cat = build_catalog();
  return cat;
}

}  // namespace

const ExampleEntry& get_example(const std::string& id) {
  auto it = catalog().find(id);
  if (it == catalog().end()) fail(ErrorCode::UnknownExample, "unknown example id: " + id);
  return it->second;
}

std::vector<std::string> example_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : catalog()) ids.push_back(id);
  return ids;
}

CheckParams fixture_params(const ExampleEntry& entry, const PairFixture& pair,
                           const RunOptions& opts) {
  CheckParams params;
  params.epsilons = opts.epsilons;
  params.k_budget = opts.k_budget;
  params.hints = pair.hints;
  params.seed = opts.seed;
  params.budget.seed = opts.seed;
  params.budget.r_max = opts.r_max;
  params.budget.norm = entry.norm;
  return params;
}

RunReport run_example(const std::string& id, const RunOptions& opts) {
  const ExampleEntry& e = get_example(id);
  RunReport rep;
  rep.id = id;
  auto t0 = std::chrono::steady_clock::now();
  rep.rows = e.runner(e, opts);
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (const RowResult& r : rep.rows) {
    rep.all_match = rep.all_match && r.match;
    rep.any_inconclusive = rep.any_inconclusive || r.inconclusive;
  }
  return rep;
}

}  // namespace vext
