#include "vext/config.hpp"

#include <fstream>

namespace vext {

namespace {

[[noreturn]] void cfg_fail(const std::string& msg) { fail(ErrorCode::ConfigError, msg); }

void require_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& ctx) {
  if (!j.is_object()) cfg_fail(ctx + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed) ok = ok || it.key() == k;
    if (!ok) cfg_fail(ctx + ": unknown field '" + it.key() + "'");
  }
}

double get_num(const Json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_number()) cfg_fail(ctx + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

std::vector<double> get_vec(const Json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_array()) cfg_fail(ctx + ": missing array field '" + key + "'");
  std::vector<double> v;
  for (const auto& x : j[key]) {
    if (!x.is_number()) cfg_fail(ctx + ": non-numeric entry in '" + key + "'");
    v.push_back(x.get<double>());
  }
  return v;
}

HalfspaceData halfspace_from_json(const Json& j, const std::string& ctx) {
  require_keys(j, {"a", "b", "strict"}, ctx);
  HalfspaceData h;
  h.a = get_vec(j, "a", ctx);
  h.b = get_num(j, "b", ctx);
  h.strict = j.value("strict", false);
  return h;
}

Json halfspace_to_json(const HalfspaceData& h) {
  return Json{{"a", h.a}, {"b", h.b}, {"strict", h.strict}};
}

}  // namespace

Json norm_to_json(const NormSpec& ns) {
  Json j;
  j["base"] = ns.base == BaseNorm::L1 ? "l1" : ns.base == BaseNorm::L2 ? "l2" : "linf";
  j["product"] = ns.product == ProductCombo::MaxProduct ? "max" : "weighted_p";
  if (ns.product == ProductCombo::WeightedP) {
    j["p"] = ns.weighted_p;
    j["weights"] = ns.weights;
    j["kappa1"] = ns.kappa1;
    j["kappa2"] = ns.kappa2;
  }
  j["dual"] = ns.dual == DualConvention::CanonicalDual ? "canonical" : "mirror";
  return j;
}

NormSpec norm_from_json(const Json& j) {
  require_keys(j, {"base", "product", "p", "weights", "dual", "kappa1", "kappa2"}, "norm");
  NormSpec ns;
  std::string base = j.value("base", "linf");
  if (base == "l1") ns.base = BaseNorm::L1;
  else if (base == "l2") ns.base = BaseNorm::L2;
  else if (base == "linf") ns.base = BaseNorm::LInf;
  else cfg_fail("norm: unknown base '" + base + "'");
  std::string product = j.value("product", "max");
  if (product == "max") ns.product = ProductCombo::MaxProduct;
  else if (product == "weighted_p") ns.product = ProductCombo::WeightedP;
  else cfg_fail("norm: unknown product '" + product + "'");
  if (ns.product == ProductCombo::WeightedP) {
    ns.weighted_p = j.value("p", 1.0);
    if (j.contains("weights")) ns.weights = get_vec(j, "weights", "norm");
    ns.kappa1 = j.value("kappa1", 1.0);
    ns.kappa2 = j.value("kappa2", 1.0);
  }
  std::string dual = j.value("dual", "canonical");
  if (dual == "canonical") ns.dual = DualConvention::CanonicalDual;
  else if (dual == "mirror") ns.dual = DualConvention::MirrorBase;
  else cfg_fail("norm: unknown dual convention '" + dual + "'");
  return ns;
}

Json function_to_json(const ScalarFunction& f) {
  Json j;
  switch (f.kind()) {
    case FunctionKind::Reciprocal: j["type"] = "reciprocal"; break;
    case FunctionKind::PiecewiseParabolic: j["type"] = "piecewise_parabolic"; break;
    case FunctionKind::OscillatorySine: j["type"] = "oscillatory_sine"; break;
    case FunctionKind::Polynomial:
      j["type"] = "polynomial";
      j["coeffs"] = f.coeffs();
      break;
    case FunctionKind::Tabulated:
      j["type"] = "tabulated";
      j["xs"] = f.xs();
      j["ys"] = f.ys();
      break;
    case FunctionKind::AbsValue: j["type"] = "abs"; break;
    case FunctionKind::SqrtAbs:
      j["type"] = "sqrt_abs";
      j["sign"] = f.sign();
      break;
    case FunctionKind::ExpNeg: j["type"] = "exp_neg"; break;
    case FunctionKind::SinReciprocal: j["type"] = "sin_reciprocal"; break;
    case FunctionKind::ReciprocalPlusSin: j["type"] = "reciprocal_plus_sin"; break;
  }
  return j;
}

ScalarFunction function_from_json(const Json& j) {
  require_keys(j, {"type", "coeffs", "xs", "ys", "sign"}, "function");
  std::string type = j.value("type", "");
  if (type == "reciprocal") return ScalarFunction::reciprocal();
  if (type == "piecewise_parabolic") return ScalarFunction::piecewise_parabolic();
  if (type == "oscillatory_sine") return ScalarFunction::oscillatory_sine();
  if (type == "polynomial") return ScalarFunction::polynomial(get_vec(j, "coeffs", "function"));
  if (type == "tabulated")
    return ScalarFunction::tabulated(get_vec(j, "xs", "function"), get_vec(j, "ys", "function"));
  if (type == "abs") return ScalarFunction::abs_value();
  if (type == "sqrt_abs") return ScalarFunction::sqrt_abs(j.value("sign", 1.0));
  if (type == "exp_neg") return ScalarFunction::exp_neg();
  if (type == "sin_reciprocal") return ScalarFunction::sin_reciprocal();
  if (type == "reciprocal_plus_sin") return ScalarFunction::reciprocal_plus_sin();
  cfg_fail("function: unknown type '" + type + "'");
}

Json set_to_json(const SetExpr& s) {
  struct V {
    Json operator()(const HalfspaceData& h) const {
      Json j = halfspace_to_json(h);
      j["type"] = "halfspace";
      return j;
    }
    Json operator()(const BallData& b) const {
      return Json{{"type", "ball"}, {"center", b.center.coords}, {"radius", b.radius}, {"open", b.open}};
    }
    Json operator()(const PolyhedronData& p) const {
      Json faces = Json::array();
      for (const auto& f : p.faces) faces.push_back(halfspace_to_json(f));
      return Json{{"type", "polyhedron"}, {"faces", faces}};
    }
    Json operator()(const PolynomialRegionData& r) const {
      Json terms = Json::array();
      for (const auto& m : r.terms) terms.push_back(Json{{"c", m.coef}, {"pow", m.pows}});
      Json side = Json::array();
      for (const auto& f : r.side) side.push_back(halfspace_to_json(f));
      const char* rel = r.rel == Rel::LE ? "le" : r.rel == Rel::GE ? "ge" : r.rel == Rel::LT ? "lt" : "gt";
      return Json{{"type", "polynomial_region"}, {"terms", terms},   {"rel", rel},
                  {"value", r.value},            {"side", side},     {"convex", r.convex_hint}};
    }
    Json operator()(const EpigraphData& e) const {
      return Json{{"type", "epigraph"}, {"function", function_to_json(e.f)}};
    }
    Json operator()(const GraphData& g) const {
      return Json{{"type", "graph"}, {"function", function_to_json(g.g)}};
    }
    Json operator()(const WholeSpaceData& w) const {
      return Json{{"type", "whole_space"}, {"dim", w.dim}};
    }
    Json operator()(const ProductWithRayData& pr) const {
      return Json{{"type", "product_with_ray"}, {"base", set_to_json(*pr.base)}, {"level", pr.level}};
    }
    Json operator()(const TranslateData& t) const {
      return Json{{"type", "translate"}, {"base", set_to_json(*t.base)}, {"shift", t.shift.coords}};
    }
    Json operator()(const ProductData& p) const {
      Json parts = Json::array();
      for (const auto& q : p.parts) parts.push_back(set_to_json(q));
      return Json{{"type", "product"}, {"parts", parts}};
    }
  };
  return std::visit(V{}, s.node());
}

SetExpr set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) cfg_fail("set: missing 'type' tag");
  std::string type = j["type"].get<std::string>();
  if (type == "halfspace") {
    require_keys(j, {"type", "a", "b", "strict"}, "halfspace");
    HalfspaceData h = halfspace_from_json(Json{{"a", j["a"]}, {"b", j["b"]}, {"strict", j.value("strict", false)}},
                                          "halfspace");
    return SetExpr::halfspace(h.a, h.b, h.strict);
  }
  if (type == "ball") {
    require_keys(j, {"type", "center", "radius", "open"}, "ball");
    return SetExpr::ball(Point(get_vec(j, "center", "ball")), get_num(j, "radius", "ball"),
                         j.value("open", false));
  }
  if (type == "polyhedron") {
    require_keys(j, {"type", "faces"}, "polyhedron");
    std::vector<HalfspaceData> faces;
    for (const auto& f : j["faces"]) faces.push_back(halfspace_from_json(f, "polyhedron face"));
    return SetExpr::polyhedron(std::move(faces));
  }
  if (type == "polynomial_region") {
    require_keys(j, {"type", "terms", "rel", "value", "side", "convex"}, "polynomial_region");
    std::vector<MonomialData> terms;
    for (const auto& t : j["terms"]) {
      require_keys(t, {"c", "pow"}, "monomial");
      MonomialData m;
      m.coef = get_num(t, "c", "monomial");
      for (const auto& p : t["pow"]) m.pows.push_back(p.get<int>());
      terms.push_back(std::move(m));
    }
    std::string rel = j.value("rel", "le");
    Rel r = rel == "le" ? Rel::LE : rel == "ge" ? Rel::GE : rel == "lt" ? Rel::LT : rel == "gt" ? Rel::GT
                                                                                                : Rel::LE;
    if (rel != "le" && rel != "ge" && rel != "lt" && rel != "gt")
      cfg_fail("polynomial_region: unknown rel '" + rel + "'");
    std::vector<HalfspaceData> side;
    if (j.contains("side"))
      for (const auto& f : j["side"]) side.push_back(halfspace_from_json(f, "side"));
    return SetExpr::polynomial_region(std::move(terms), r, get_num(j, "value", "polynomial_region"),
                                      std::move(side), j.value("convex", false));
  }
  if (type == "epigraph") {
    require_keys(j, {"type", "function"}, "epigraph");
    return SetExpr::epigraph(function_from_json(j["function"]));
  }
  if (type == "graph") {
    require_keys(j, {"type", "function"}, "graph");
    return SetExpr::graph(function_from_json(j["function"]));
  }
  if (type == "whole_space") {
    require_keys(j, {"type", "dim"}, "whole_space");
    return SetExpr::whole_space(j.value("dim", 1));
  }
  if (type == "product_with_ray") {
    require_keys(j, {"type", "base", "level"}, "product_with_ray");
    return SetExpr::product_with_ray(set_from_json(j["base"]), get_num(j, "level", "product_with_ray"));
  }
  if (type == "translate") {
    require_keys(j, {"type", "base", "shift"}, "translate");
    return SetExpr::translate(set_from_json(j["base"]), Point(get_vec(j, "shift", "translate")));
  }
  if (type == "product") {
    require_keys(j, {"type", "parts"}, "product");
    std::vector<SetExpr> parts;
    for (const auto& p : j["parts"]) parts.push_back(set_from_json(p));
    return SetExpr::product(std::move(parts));
  }
  cfg_fail("set: unknown type '" + type + "'");
}

Json sequence_to_json(const SequenceSpec& s) {
  Json j;
  if (s.is_closed_form()) {
    j["type"] = "closed_form";
    j["coords"] = s.closed_form_text();
  } else {
    j["type"] = "tabulated";
    Json tables = Json::array();
    for (const auto& t : s.tables()) {
      Json pts = Json::array();
      for (const Point& p : t) pts.push_back(p.coords);
      tables.push_back(pts);
    }
    j["tables"] = tables;
  }
  j["single"] = s.single();
  return j;
}

SequenceSpec sequence_from_json(const Json& j) {
  require_keys(j, {"type", "coords", "tables", "single"}, "sequence");
  std::string type = j.value("type", "closed_form");
  bool single = j.value("single", false);
  if (type == "closed_form") {
    if (!j.contains("coords")) cfg_fail("sequence: missing 'coords'");
    std::vector<std::vector<std::string>> coords;
    const Json& c = j["coords"];
    if (!c.is_array() || c.empty()) cfg_fail("sequence: 'coords' must be a nonempty array");
    if (c.front().is_string()) {
      std::vector<std::string> one;
      for (const auto& e : c) one.push_back(e.get<std::string>());
      coords.push_back(one);
    } else {
      for (const auto& row : c) {
        std::vector<std::string> one;
        for (const auto& e : row) one.push_back(e.get<std::string>());
        coords.push_back(one);
      }
    }
    if (single) {
      if (coords.size() != 1) cfg_fail("sequence: single=true needs exactly one coordinate row");
      return SequenceSpec::single_closed_form(coords.front());
    }
    return SequenceSpec::closed_form(coords);
  }
  if (type == "tabulated") {
    if (!j.contains("tables")) cfg_fail("sequence: missing 'tables'");
    std::vector<std::vector<Point>> tables;
    for (const auto& t : j["tables"]) {
      std::vector<Point> pts;
      for (const auto& p : t) {
        std::vector<double> c;
        for (const auto& x : p) c.push_back(x.get<double>());
        pts.push_back(Point(std::move(c)));
      }
      tables.push_back(std::move(pts));
    }
    if (single) {
      if (tables.size() != 1) cfg_fail("sequence: single=true needs one table");
      return SequenceSpec::single_tabulated(tables.front());
    }
    return SequenceSpec::tabulated(std::move(tables));
  }
  cfg_fail("sequence: unknown type '" + type + "'");
}

namespace {

CheckParams params_from_json(const Json& j, std::uint64_t seed) {
  CheckParams p;
  p.seed = seed;
  if (j.is_null()) return p;
  require_keys(j,
               {"epsilons", "k_budget", "rho_fractions", "hints", "axis_fractions", "random_shifts",
                "diam_tol", "resolution", "eta", "r_max"},
               "params");
  if (j.contains("epsilons")) p.epsilons = get_vec(j, "epsilons", "params");
  if (j.contains("k_budget")) p.k_budget = j["k_budget"].get<long>();
  if (j.contains("rho_fractions")) p.rho_fractions = get_vec(j, "rho_fractions", "params");
  if (j.contains("axis_fractions")) p.axis_fractions = get_vec(j, "axis_fractions", "params");
  if (j.contains("random_shifts")) p.random_shifts = j["random_shifts"].get<int>();
  if (j.contains("diam_tol")) p.diam_tol = j["diam_tol"].get<double>();
  if (j.contains("resolution")) p.budget.resolution = j["resolution"].get<double>();
  if (j.contains("eta")) p.budget.eta = j["eta"].get<double>();
  if (j.contains("r_max")) p.budget.r_max = j["r_max"].get<double>();
  if (j.contains("hints")) {
    for (const auto& h : j["hints"]) {
      require_keys(h, {"set", "direction", "clearance", "parity_flip"}, "hint");
      ShiftHintSpec hs;
      hs.set_index = h.value("set", 0);
      hs.direction = get_vec(h, "direction", "hint");
      if (h.contains("clearance")) hs.clearance = Expr::parse(h["clearance"].get<std::string>());
      hs.parity_flip = h.value("parity_flip", false);
      p.hints.push_back(std::move(hs));
    }
  }
  p.budget.seed = seed;
  return p;
}

OptBudgets budgets_from_json(const Json& j, std::uint64_t seed) {
  OptBudgets b;
  b.seed = seed;
  if (j.is_null()) return b;
  require_keys(j, {"k_budget", "rho_grid", "tol", "eta", "r_max", "u_hint_delta", "u_hint_rho"},
               "budgets");
  if (j.contains("k_budget")) b.k_budget = j["k_budget"].get<long>();
  if (j.contains("rho_grid")) b.rho_grid = get_vec(j, "rho_grid", "budgets");
  if (j.contains("tol")) b.tol = j["tol"].get<double>();
  if (j.contains("eta")) b.eta = j["eta"].get<double>();
  if (j.contains("r_max")) b.r_max = j["r_max"].get<double>();
  if (j.contains("u_hint_delta")) b.u_hint_delta = Expr::parse(j["u_hint_delta"].get<std::string>());
  if (j.contains("u_hint_rho")) b.u_hint_rho = Expr::parse(j["u_hint_rho"].get<std::string>());
  return b;
}

}  // namespace

RunConfig parse_run_config(const Json& doc) {
  require_keys(doc,
               {"schema_version", "property", "sets", "problem", "sequence", "sequences", "norm",
                "params", "budgets", "rho", "alpha", "k0", "eps", "eps_grid", "M", "cone", "seed",
                "output"},
               "config");
  RunConfig c;
  c.echo = doc;
  if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1)
    cfg_fail("config: schema_version must be 1");
  if (!doc.contains("property") || !doc["property"].is_string())
    cfg_fail("config: missing 'property'");
  c.property = doc["property"].get<std::string>();
  if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("sets"))
    for (const auto& s : doc["sets"]) c.sets.push_back(set_from_json(s));
  if (doc.contains("problem")) {
    const Json& p = doc["problem"];
    require_keys(p, {"f", "omega", "mu0", "feasible_point"}, "problem");
    Problem prob;
    if (!p.contains("f")) cfg_fail("problem: missing 'f'");
    prob.f = function_from_json(p["f"]);
    if (p.contains("omega")) prob.omega = set_from_json(p["omega"]);
    prob.mu0 = p.value("mu0", 0.0);
    if (p.contains("feasible_point")) prob.feasible_point = p["feasible_point"].get<double>();
    c.problem = prob;
  }
  if (doc.contains("sequence") && doc.contains("sequences"))
    cfg_fail("config: give either 'sequence' or 'sequences', not both");
  if (doc.contains("sequence")) c.sequence = sequence_from_json(doc["sequence"]);
  if (doc.contains("sequences")) c.sequence = sequence_from_json(doc["sequences"]);
  if (doc.contains("norm")) c.norm = norm_from_json(doc["norm"]);
  c.params = params_from_json(doc.contains("params") ? doc["params"] : Json(), c.seed);
  c.params.budget.norm = c.norm;
  c.budgets = budgets_from_json(doc.contains("budgets") ? doc["budgets"] : Json(), c.seed);
  if (doc.contains("rho")) {
    if (doc["rho"].is_string() && doc["rho"].get<std::string>() == "unbounded") {
      c.rho_unbounded = true;
    } else {
      c.rho = doc["rho"].get<double>();
    }
  }
  if (doc.contains("alpha")) c.alpha = doc["alpha"].get<double>();
  if (doc.contains("k0")) c.k0 = doc["k0"].get<long>();
  if (doc.contains("eps")) c.eps = doc["eps"].get<double>();
  if (doc.contains("eps_grid")) c.eps_grid = get_vec(doc, "eps_grid", "config");
  if (doc.contains("M")) c.multiplier_bound = doc["M"].get<double>();
  if (doc.contains("cone")) {
    c.cone = doc["cone"].get<std::string>();
    if (c.cone != "frechet" && c.cone != "clarke") cfg_fail("config: cone must be frechet|clarke");
  }
  if (doc.contains("output")) c.output_path = doc["output"].get<std::string>();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) cfg_fail("cannot open config file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const std::exception& e) {
    cfg_fail(std::string("config parse error: ") + e.what());
  }
  return parse_run_config(doc);
}

Json emptiness_to_json(const EmptinessVerdict& v) {
  Json j;
  j["outcome"] = v.outcome == EmptinessOutcome::Empty ? "Empty"
                 : v.outcome == EmptinessOutcome::Nonempty ? "Nonempty"
                                                           : "Inconclusive";
  if (v.witness) j["witness"] = v.witness->coords;
  if (v.lower_bound) j["lower_bound"] = *v.lower_bound;
  j["method"] = v.method == EmptinessMethod::GridOracle ? "grid_oracle"
                : v.method == EmptinessMethod::AlternatingProjections ? "alternating_projections"
                                                                      : "analytic";
  j["radius_capped"] = v.radius_capped;
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

Json verdict_to_json(const PropertyVerdict& v) {
  Json j;
  j["outcome"] = outcome_name(v.outcome);
  Json rows = Json::array();
  for (const EpsilonRecord& r : v.per_epsilon) {
    Json row;
    row["eps"] = r.eps;
    row["k"] = r.k;
    row["rho"] = r.rho;
    Json shifts = Json::array();
    for (const Point& s : r.shifts) shifts.push_back(s.coords);
    row["shifts"] = shifts;
    if (!r.aux_points.empty()) {
      Json aux = Json::array();
      for (const Point& p : r.aux_points) aux.push_back(p.coords);
      row["aux_points"] = aux;
    }
    row["success"] = r.success;
    row["emptiness"] = emptiness_to_json(r.emptiness);
    rows.push_back(row);
  }
  j["per_epsilon"] = rows;
  if (v.witness_point) j["witness"] = v.witness_point->coords;
  if (v.value) j["value"] = *v.value;
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

Json certificate_to_json(const SeparationCertificate& cert) {
  Json j;
  j["schema_version"] = 1;
  j["k"] = cert.k;
  Json bases = Json::array();
  for (const Point& p : cert.base_points) bases.push_back(p.coords);
  j["base_points"] = bases;
  if (cert.aux_points) {
    Json aux = Json::array();
    for (const Point& p : *cert.aux_points) aux.push_back(p.coords);
    j["aux_points"] = aux;
  }
  if (cert.shifts) {
    Json sh = Json::array();
    for (const Point& p : *cert.shifts) sh.push_back(p.coords);
    j["shifts"] = sh;
  }
  if (cert.x0) j["x0"] = cert.x0->coords;
  Json normals = Json::array();
  for (const DualVector& d : cert.normals) normals.push_back(d.coords);
  j["normals"] = normals;
  j["epsilon"] = cert.epsilon;
  if (cert.beta) j["beta"] = *cert.beta;
  if (cert.tau) j["tau"] = *cert.tau;
  j["cone"] = cert.cone_kind == ConeKind::Frechet ? "frechet" : "clarke";
  j["norm"] = norm_to_json(cert.norm);
  return j;
}

SeparationCertificate certificate_from_json(const Json& j) {
  require_keys(j,
               {"schema_version", "k", "base_points", "aux_points", "shifts", "x0", "normals",
                "epsilon", "beta", "tau", "cone", "norm"},
               "certificate");
  SeparationCertificate c;
  c.k = j.value("k", 0);
  for (const auto& p : j["base_points"]) {
    std::vector<double> v;
    for (const auto& x : p) v.push_back(x.get<double>());
    c.base_points.push_back(Point(std::move(v)));
  }
  auto points_of = [](const Json& arr) {
    std::vector<Point> pts;
    for (const auto& p : arr) {
      std::vector<double> v;
      for (const auto& x : p) v.push_back(x.get<double>());
      pts.push_back(Point(std::move(v)));
    }
    return pts;
  };
  if (j.contains("aux_points")) c.aux_points = points_of(j["aux_points"]);
  if (j.contains("shifts")) c.shifts = points_of(j["shifts"]);
  if (j.contains("x0")) {
    std::vector<double> v;
    for (const auto& x : j["x0"]) v.push_back(x.get<double>());
    c.x0 = Point(std::move(v));
  }
  for (const auto& d : j["normals"]) {
    std::vector<double> v;
    for (const auto& x : d) v.push_back(x.get<double>());
    c.normals.push_back(DualVector(std::move(v)));
  }
  c.epsilon = j.value("epsilon", 0.0);
  if (j.contains("beta")) c.beta = j["beta"].get<double>();
  if (j.contains("tau")) c.tau = j["tau"].get<double>();
  c.cone_kind = j.value("cone", "frechet") == "clarke" ? ConeKind::Clarke : ConeKind::Frechet;
  if (j.contains("norm")) c.norm = norm_from_json(j["norm"]);
  return c;
}

void save_certificate(const SeparationCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) cfg_fail("cannot write certificate file: " + path);
  out << certificate_to_json(cert).dump(2) << "\n";
}

SeparationCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) cfg_fail("cannot open certificate file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const std::exception& e) {
    cfg_fail(std::string("certificate parse error: ") + e.what());
  }
  return certificate_from_json(doc);
}

}  // namespace vext
