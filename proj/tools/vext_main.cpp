// Command-line front end: run catalog examples, check properties from config
// files, search/verify separation certificates, and emit plots and reports.
//
// Exit codes: 0 certified/all-match, 1 falsified/mismatch, 2 inconclusive,
// 3 usage or execution error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vext/config.hpp"
#include "vext/plot.hpp"
#include "vext/registry.hpp"
#include "vext/report.hpp"

namespace {

using namespace vext;

constexpr int kExitCertified = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitError = 3;

int outcome_exit(Outcome o) {
  switch (o) {
    case Outcome::Certified: return kExitCertified;
    case Outcome::Falsified: return kExitFalsified;
    case Outcome::Inconclusive: return kExitInconclusive;
  }
  return kExitError;
}

struct GlobalFlags {
  bool json = false;
  std::uint64_t seed = 17;
  bool seed_set = false;
  std::string csv_path;
  double r_max_env = 1e4;
  bool r_max_overridden = false;
};

void apply_env(GlobalFlags& g) {
  if (const char* env = std::getenv("VEXT_RMAX")) {
    try {
      g.r_max_env = std::stod(env);
      g.r_max_overridden = true;
    } catch (...) {
      throw Error(ErrorCode::ConfigError, "VEXT_RMAX is not a number");
    }
  }
}

int cmd_list_examples(const GlobalFlags& g) {
  if (g.json) {
    Json arr = Json::array();
    for (const std::string& id : example_ids()) {
      const ExampleEntry& e = get_example(id);
      arr.push_back(Json{{"id", e.id}, {"description", e.description}});
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const std::string& id : example_ids())
      std::cout << id << "  " << get_example(id).description << "\n";
  }
  return kExitCertified;
}

int cmd_run_example(const std::string& id, const GlobalFlags& g) {
  RunOptions opts;
  opts.seed = g.seed;
  if (g.r_max_overridden) opts.r_max = g.r_max_env;
  auto t0 = std::chrono::steady_clock::now();
  RunReport rep = run_example(id, opts);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (!g.csv_path.empty() && get_example(id).problem) {
    // CSV of the (k, rho, local_inf) diagnostics for problem entries
    const ExampleEntry& e = get_example(id);
    OptBudgets b = e.opt_budgets;
    StationarityReport sr = check_inf_stationary(*e.problem, *e.problem_seq, e.problem->mu0, b);
    write_csv(g.csv_path, sr.diagnostics);
  }

  if (g.json) {
    Report r = Report::make("run-example", Json{{"id", id}}, g.seed);
    Json rows = Json::array();
    for (const RowResult& row : rep.rows)
      rows.push_back(Json{{"name", row.name},
                          {"match", row.match},
                          {"inconclusive", row.inconclusive},
                          {"detail", row.detail}});
    r.set_result(Json{{"all_match", rep.all_match},
                      {"any_inconclusive", rep.any_inconclusive},
                      {"rows", rows}});
    r.set_wall_ms(ms);
    std::cout << r.dump() << "\n";
  } else {
    for (const RowResult& row : rep.rows)
      std::cout << (row.match ? "[ok]   " : (row.inconclusive ? "[??]   " : "[FAIL] ")) << row.name
                << (row.detail.empty() ? "" : "  -- " + row.detail) << "\n";
    std::cout << (rep.all_match ? "all rows match" : "MISMATCH") << " (" << ms << " ms)\n";
  }
  if (rep.all_match) return kExitCertified;
  return rep.any_inconclusive ? kExitInconclusive : kExitFalsified;
}

Outcome dispatch_check(const RunConfig& cfg, Json* result) {
  const std::string& p = cfg.property;
  CheckParams params = cfg.params;
  params.budget.r_max = std::max(params.budget.r_max, 1.0);
  OptBudgets budgets = cfg.budgets;

  auto need_sequence = [&]() -> const SequenceSpec& {
    if (!cfg.sequence) fail(ErrorCode::ConfigError, "config missing 'sequence'");
    return *cfg.sequence;
  };
  auto need_sets = [&]() -> const std::vector<SetExpr>& {
    if (cfg.sets.empty()) fail(ErrorCode::ConfigError, "config missing 'sets'");
    return cfg.sets;
  };
  auto need_problem = [&]() -> const Problem& {
    if (!cfg.problem) fail(ErrorCode::ConfigError, "config missing 'problem'");
    return *cfg.problem;
  };

  if (p == "diam_vanishes") {
    PropertyVerdict v = check_diam_vanishes(need_sequence(), params.k_budget, params.diam_tol,
                                            params.budget.norm);
    *result = verdict_to_json(v);
    return v.outcome;
  }
  if (p == "extremal") {
    double rho = cfg.rho_unbounded ? kUnboundedRadius : cfg.rho;
    PropertyVerdict v = check_extremal(need_sets(), need_sequence(), rho, params);
    *result = verdict_to_json(v);
    return v.outcome;
  }
  if (p == "stationary") {
    PropertyVerdict v = check_stationary(need_sets(), need_sequence(), params);
    *result = verdict_to_json(v);
    return v.outcome;
  }
  if (p == "approx_stationary") {
    PropertyVerdict v = check_approx_stationary(need_sets(), need_sequence(), params);
    *result = verdict_to_json(v);
    return v.outcome;
  }
  if (p == "alpha_stationary") {
    PropertyVerdict v = check_alpha_stationary(need_sets(), need_sequence(), cfg.alpha, params);
    *result = verdict_to_json(v);
    return v.outcome;
  }
  if (p == "transversal") {
    PropertyVerdict v = check_transversal(need_sets(), need_sequence(), cfg.alpha, params);
    *result = verdict_to_json(v);
    return v.outcome;
  }

  auto report_json = [](const StationarityReport& r) {
    Json j;
    j["outcome"] = outcome_name(r.outcome);
    if (r.limsup_estimate) j["limsup_estimate"] = *r.limsup_estimate;
    j["notes"] = r.notes;
    Json rows = Json::array();
    for (const DiagnosticsRow& d : r.diagnostics)
      rows.push_back(Json{{"k", d.k}, {"rho", d.rho}, {"f_xk", d.f_xk},
                          {"local_inf", d.local_inf}, {"ratio", d.ratio}});
    j["diagnostics"] = rows;
    if (!r.aux_witnesses.empty()) {
      Json aux = Json::array();
      for (auto [u, rho] : r.aux_witnesses) aux.push_back(Json{{"u", u}, {"rho", rho}});
      j["aux_witnesses"] = aux;
    }
    return j;
  };

  if (p == "minimizing") {
    StationarityReport r = check_minimizing(need_problem(), need_sequence(), budgets);
    *result = report_json(r);
    return r.outcome;
  }
  if (p == "minimizing_at_level") {
    double rho = cfg.rho_unbounded ? kUnboundedRadius : cfg.rho;
    StationarityReport r =
        check_minimizing_at_level(need_problem(), need_sequence(), rho, cfg.k0, budgets);
    *result = report_json(r);
    return r.outcome;
  }
  if (p == "firm_inf_stationary") {
    double rho = cfg.rho_unbounded ? kUnboundedRadius : cfg.rho;
    StationarityReport r = check_firm_inf_stationary(need_problem(), need_sequence(),
                                                     need_problem().mu0, rho, budgets);
    *result = report_json(r);
    return r.outcome;
  }
  if (p == "inf_stationary") {
    StationarityReport r =
        check_inf_stationary(need_problem(), need_sequence(), need_problem().mu0, budgets);
    *result = report_json(r);
    return r.outcome;
  }
  if (p == "approx_inf_stationary") {
    StationarityReport r =
        check_approx_inf_stationary(need_problem(), need_sequence(), need_problem().mu0, budgets);
    *result = report_json(r);
    return r.outcome;
  }
  if (p == "necessary_conditions") {
    ConeKind kind = cfg.cone == "clarke" ? ConeKind::Clarke : ConeKind::Frechet;
    NecessaryConditionsReport r =
        check_necessary_conditions(need_problem(), need_sequence(), cfg.eps_grid, kind, budgets);
    Json rows = Json::array();
    for (const auto& row : r.rows)
      rows.push_back(Json{{"eps", row.eps}, {"success", row.success}, {"k", row.k},
                          {"x1_star", row.x1_star}, {"nu1", row.nu1}, {"x2_star", row.x2_star},
                          {"sum_norm", row.sum_norm}});
    *result = Json{{"all_success", r.all_success}, {"rows", rows}, {"notes", r.notes}};
    return r.all_success ? Outcome::Certified : Outcome::Falsified;
  }
  if (p == "multiplier_rule") {
    MultiplierReport r =
        multiplier_rule_check(need_problem(), need_sequence(), cfg.multiplier_bound, cfg.eps_grid,
                              budgets);
    Json rows = Json::array();
    for (const auto& row : r.rows)
      rows.push_back(Json{{"eps", row.eps}, {"normal", row.branch_normal},
                          {"singular", row.branch_singular}, {"g", row.g}, {"v", row.v},
                          {"nu1", row.nu1}});
    *result = Json{{"normal_all", r.normal_all}, {"singular_all", r.singular_all}, {"rows", rows},
                   {"max_abs_nu1", r.max_abs_nu1}, {"notes", r.notes}};
    return (r.normal_all || r.singular_all) ? Outcome::Certified : Outcome::Falsified;
  }
  if (p == "qualification") {
    PropertyVerdict v = qualification_check(need_problem(), need_sequence(), cfg.eps, budgets);
    *result = verdict_to_json(v);
    return v.outcome;
  }
  fail(ErrorCode::ConfigError, "unknown property '" + p + "'");
}

int cmd_check(const std::string& path, const GlobalFlags& g) {
  RunConfig cfg = load_run_config(path);
  if (g.seed_set) {
    cfg.seed = g.seed;
    cfg.params.seed = g.seed;
    cfg.params.budget.seed = g.seed;
    cfg.budgets.seed = g.seed;
  }
  if (g.r_max_overridden) {
    cfg.params.budget.r_max = g.r_max_env;
    cfg.budgets.r_max = g.r_max_env;
  }
  auto t0 = std::chrono::steady_clock::now();
  Json result;
  Outcome o = dispatch_check(cfg, &result);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  Report r = Report::make("check", cfg.echo, cfg.seed);
  r.set_result(result);
  r.set_wall_ms(ms);
  if (g.json) {
    std::cout << r.dump() << "\n";
  } else {
    std::cout << cfg.property << ": " << result.value("outcome", result.dump()) << " (" << ms
              << " ms)\n";
  }
  if (cfg.output_path) {
    std::ofstream out(*cfg.output_path);
    out << r.dump() << "\n";
  }
  return outcome_exit(o);
}

int cmd_separation(const std::string& path, const std::string& mode, const std::string& cert_path,
                   const GlobalFlags& g) {
  RunConfig cfg = load_run_config(path);
  if (g.seed_set) cfg.seed = g.seed;
  if (cfg.sets.empty() || !cfg.sequence)
    fail(ErrorCode::ConfigError, "separation config needs 'sets' and a single 'sequence'");

  SeparationSearchParams sp;
  sp.norm = cfg.norm;
  sp.seed = cfg.seed;
  sp.k_budget = cfg.params.k_budget;
  ConeKind kind = cfg.cone == "clarke" ? ConeKind::Clarke : ConeKind::Frechet;

  if (mode == "search") {
    auto cert = search_certificate(cfg.sets, *cfg.sequence, cfg.eps, kind, sp);
    if (!cert) {
      std::cout << "no certificate found at eps=" << cfg.eps << "\n";
      return kExitFalsified;
    }
    std::string out = !cert_path.empty() ? cert_path
                      : cfg.output_path ? *cfg.output_path
                                        : "certificate.json";
    save_certificate(*cert, out);
    if (g.json) {
      Report r = Report::make("separation-search", cfg.echo, cfg.seed);
      r.set_result(certificate_to_json(*cert));
      std::cout << r.dump() << "\n";
    } else {
      std::cout << "certificate written to " << out << " (k=" << cert->k << ")\n";
    }
    return kExitCertified;
  }
  if (mode == "verify") {
    if (cert_path.empty()) fail(ErrorCode::ConfigError, "verify mode requires --cert <path>");
    SeparationCertificate cert = load_certificate(cert_path);
    CertificateCheck chk = verify_certificate(cert, cfg.sets, *cfg.sequence);
    if (g.json) {
      Report r = Report::make("separation-verify", cfg.echo, cfg.seed);
      r.set_result(Json{{"valid", chk.valid}, {"violations", chk.violations}});
      std::cout << r.dump() << "\n";
    } else {
      std::cout << (chk.valid ? "certificate valid" : "certificate INVALID") << "\n";
      for (const std::string& v : chk.violations) std::cout << "  violation: " << v << "\n";
    }
    return chk.valid ? kExitCertified : kExitFalsified;
  }
  fail(ErrorCode::ConfigError, "separation mode must be search|verify");
}

int cmd_plot(const std::string& id_or_path, const std::string& out_path, const GlobalFlags& g) {
  (void)g;
  std::vector<SetExpr> sets;
  std::vector<SequenceSpec> sequences;
  std::vector<PlotArrow> arrows;
  PlotOptions opts;

  bool is_id = !example_ids().empty();
  try {
    const ExampleEntry& e = get_example(id_or_path);
    if (e.sets.empty()) fail(ErrorCode::DimensionMismatch, "plot: entry has no 2-D sets");
    sets = e.sets;
    for (const PairFixture& p : e.pairs) sequences.push_back(p.seq);
    // witness shift arrow from the first hint at a mid-range index
    if (!e.pairs.empty() && !e.pairs.front().hints.empty()) {
      const ShiftHintSpec& h = e.pairs.front().hints.front();
      Point base = e.pairs.front().seq.eval(h.set_index, 5);
      Point tip = base;
      for (int d = 0; d < base.dim(); ++d)
        tip.coords[static_cast<std::size_t>(d)] += 0.8 * h.direction[static_cast<std::size_t>(d)];
      arrows.push_back({base, tip});
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::UnknownExample) throw;
    is_id = false;
  }
  if (!is_id || sets.empty()) {
    RunConfig cfg = load_run_config(id_or_path);
    if (!cfg.sets.empty()) {
      sets = cfg.sets;
    } else if (cfg.problem) {
      auto [o1, o2] = embed_epigraph(*cfg.problem);
      sets = {o1, o2};
    }
    if (cfg.sequence) {
      if (cfg.sequence->dim() == 1 && cfg.problem) {
        // embed the 1-D problem sequence for display
        std::vector<Point> pts;
        for (long k = 1; k <= opts.seq_points; ++k)
          pts.push_back(Point{cfg.sequence->eval(0, k).coords[0], cfg.problem->mu0});
        sequences.push_back(SequenceSpec::single_tabulated(pts));
      } else {
        sequences.push_back(*cfg.sequence);
      }
    }
  }
  for (const SetExpr& s : sets)
    if (s.dim() != 2) fail(ErrorCode::DimensionMismatch, "plot supports 2-D fixtures only");
  std::string svg = render_svg(sets, sequences, arrows, opts);
  save_svg(out_path, svg);
  std::cout << "wrote " << out_path << "\n";
  return kExitCertified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential set-extremality toolkit"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_flag("--json", g.json, "machine-readable output");
  auto* seed_opt = app.add_option("--seed", g.seed, "rng seed");
  app.add_option("--csv", g.csv_path, "write a CSV diagnostics table");

  auto* list_cmd = app.add_subcommand("list-examples", "list the built-in example catalog");

  std::string run_id;
  auto* run_cmd = app.add_subcommand("run-example", "run a catalog example against its facts");
  run_cmd->add_option("id", run_id, "example id (see list-examples)")->required();

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "check a property described by a config file");
  check_cmd->add_option("config", check_path, "JSON config path")->required();

  std::string sep_path, sep_mode = "search", sep_cert;
  auto* sep_cmd = app.add_subcommand("separation", "search or verify separation certificates");
  sep_cmd->add_option("config", sep_path, "JSON config path")->required();
  sep_cmd->add_option("--mode", sep_mode, "search|verify")->default_val("search");
  sep_cmd->add_option("--cert", sep_cert, "certificate path");

  std::string plot_src, plot_out = "plot.svg";
  auto* plot_cmd = app.add_subcommand("plot", "render a 2-D fixture to SVG");
  plot_cmd->add_option("id_or_config", plot_src, "example id or config path")->required();
  plot_cmd->add_option("--out", plot_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    apply_env(g);
    g.seed_set = seed_opt->count() > 0;
    if (list_cmd->parsed()) return cmd_list_examples(g);
    if (run_cmd->parsed()) return cmd_run_example(run_id, g);
    if (check_cmd->parsed()) return cmd_check(check_path, g);
    if (sep_cmd->parsed()) return cmd_separation(sep_path, sep_mode, sep_cert, g);
    if (plot_cmd->parsed()) return cmd_plot(plot_src, plot_out, g);
  } catch (const vext::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
