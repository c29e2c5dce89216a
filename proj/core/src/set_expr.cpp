#include "vext/set_expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vext {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int halfspace_dim(const HalfspaceData& h) { return static_cast<int>(h.a.size()); }

double hs_value(const HalfspaceData& h, const Point& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.a.size(); ++i) s += h.a[i] * p.coords[i];
  return s;
}

bool hs_members(const HalfspaceData& h, const Point& p, double cs, double ss) {
  double v = hs_value(h, p);
  return h.strict ? v < h.b + ss : v <= h.b + cs;
}

bool rel_members(Rel rel, double g, double v, double cs, double ss) {
  switch (rel) {
    case Rel::LE: return g <= v + cs;
    case Rel::GE: return g >= v - cs;
    case Rel::LT: return g < v + ss;
    case Rel::GT: return g > v - ss;
  }
  return false;
}
}  // namespace

double polynomial_eval(const PolynomialRegionData& r, const Point& p) {
  double total = 0.0;
  for (const MonomialData& m : r.terms) {
    double t = m.coef;
    for (std::size_t i = 0; i < m.pows.size(); ++i) {
      for (int e = 0; e < m.pows[i]; ++e) t *= p.coords[i];
    }
    total += t;
  }
  return total;
}

std::vector<double> polynomial_grad(const PolynomialRegionData& r, const Point& p) {
  std::vector<double> g(p.coords.size(), 0.0);
  for (const MonomialData& m : r.terms) {
    for (std::size_t j = 0; j < m.pows.size(); ++j) {
      if (m.pows[j] == 0) continue;
      double t = m.coef * m.pows[j];
      for (std::size_t i = 0; i < m.pows.size(); ++i) {
        int e = m.pows[i] - (i == j ? 1 : 0);
        for (int q = 0; q < e; ++q) t *= p.coords[i];
      }
      g[j] += t;
    }
  }
  return g;
}

SetExpr::SetExpr() : SetExpr(Node(WholeSpaceData{1})) {}
SetExpr::SetExpr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

SetExpr SetExpr::halfspace(std::vector<double> a, double b, bool strict) {
  if (a.empty()) fail(ErrorCode::InvalidArgument, "halfspace: empty normal");
  return SetExpr(Node(HalfspaceData{std::move(a), b, strict}));
}

SetExpr SetExpr::ball(Point center, double radius, bool open) {
  if (radius < 0) fail(ErrorCode::InvalidArgument, "ball: negative radius");
  return SetExpr(Node(BallData{std::move(center), radius, open}));
}

SetExpr SetExpr::polyhedron(std::vector<HalfspaceData> faces) {
  if (faces.empty()) fail(ErrorCode::InvalidArgument, "polyhedron: no faces");
  for (const auto& f : faces)
    if (halfspace_dim(f) != halfspace_dim(faces.front()))
      fail(ErrorCode::DimensionMismatch, "polyhedron: mixed face dimensions");
  return SetExpr(Node(PolyhedronData{std::move(faces)}));
}

SetExpr SetExpr::polynomial_region(std::vector<MonomialData> terms, Rel rel, double value,
                                   std::vector<HalfspaceData> side, bool convex_hint) {
  if (terms.empty()) fail(ErrorCode::InvalidArgument, "polynomial_region: no terms");
  return SetExpr(Node(PolynomialRegionData{std::move(terms), rel, value, std::move(side), convex_hint}));
}

SetExpr SetExpr::epigraph(ScalarFunction f) { return SetExpr(Node(EpigraphData{std::move(f)})); }
SetExpr SetExpr::graph(ScalarFunction g) { return SetExpr(Node(GraphData{std::move(g)})); }

SetExpr SetExpr::whole_space(int dim) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "whole_space: dim >= 1");
  return SetExpr(Node(WholeSpaceData{dim}));
}

SetExpr SetExpr::product_with_ray(SetExpr base, double level) {
  return SetExpr(Node(ProductWithRayData{std::make_shared<const SetExpr>(std::move(base)), level}));
}

SetExpr SetExpr::translate(SetExpr base, Point shift) {
  if (base.dim() != shift.dim()) fail(ErrorCode::DimensionMismatch, "translate: shift dim");
  if (const auto* t = std::get_if<TranslateData>(&base.node())) {
    Point merged = add(t->shift, shift);
    return SetExpr(Node(TranslateData{t->base, std::move(merged)}));
  }
  return SetExpr(Node(TranslateData{std::make_shared<const SetExpr>(std::move(base)), std::move(shift)}));
}

SetExpr SetExpr::product(std::vector<SetExpr> parts) {
  if (parts.empty()) fail(ErrorCode::InvalidArgument, "product: no parts");
  return SetExpr(Node(ProductData{std::move(parts)}));
}

int SetExpr::dim() const {
  struct V {
    int operator()(const HalfspaceData& h) const { return halfspace_dim(h); }
    int operator()(const BallData& b) const { return b.center.dim(); }
    int operator()(const PolyhedronData& p) const { return halfspace_dim(p.faces.front()); }
    int operator()(const PolynomialRegionData& r) const {
      return static_cast<int>(r.terms.front().pows.size());
    }
    int operator()(const EpigraphData&) const { return 2; }
    int operator()(const GraphData&) const { return 2; }
    int operator()(const WholeSpaceData& w) const { return w.dim; }
    int operator()(const ProductWithRayData& pr) const { return pr.base->dim() + 1; }
    int operator()(const TranslateData& t) const { return t.base->dim(); }
    int operator()(const ProductData& p) const {
      int d = 0;
      for (const auto& s : p.parts) d += s.dim();
      return d;
    }
  };
  return std::visit(V{}, *node_);
}

Capabilities SetExpr::caps() const {
  struct V {
    Capabilities operator()(const HalfspaceData&) const { return {true, true, false, true}; }
    Capabilities operator()(const BallData&) const { return {true, true, false, true}; }
    Capabilities operator()(const PolyhedronData&) const { return {true, true, false, true}; }
    Capabilities operator()(const PolynomialRegionData&) const { return {true, false, true, true}; }
    Capabilities operator()(const EpigraphData&) const { return {true, false, true, true}; }
    Capabilities operator()(const GraphData&) const { return {true, false, true, true}; }
    Capabilities operator()(const WholeSpaceData&) const { return {true, true, false, true}; }
    Capabilities operator()(const ProductWithRayData& pr) const {
      Capabilities c = pr.base->caps();
      return {true, c.exact_projection, c.iterative_projection, c.cone_model};
    }
    Capabilities operator()(const TranslateData& t) const { return t.base->caps(); }
    Capabilities operator()(const ProductData& p) const {
      Capabilities all{true, true, false, true};
      for (const auto& s : p.parts) {
        Capabilities c = s.caps();
        all.exact_projection = all.exact_projection && c.exact_projection;
        all.iterative_projection = all.iterative_projection || c.iterative_projection;
        all.cone_model = all.cone_model && c.cone_model;
      }
      return all;
    }
  };
  return std::visit(V{}, *node_);
}

bool SetExpr::convex_certified() const {
  struct V {
    bool operator()(const HalfspaceData&) const { return true; }
    bool operator()(const BallData&) const { return true; }
    bool operator()(const PolyhedronData&) const { return true; }
    bool operator()(const PolynomialRegionData& r) const { return r.convex_hint; }
    bool operator()(const EpigraphData& e) const { return e.f.convex(); }
    bool operator()(const GraphData&) const { return false; }
    bool operator()(const WholeSpaceData&) const { return true; }
    bool operator()(const ProductWithRayData& pr) const { return pr.base->convex_certified(); }
    bool operator()(const TranslateData& t) const { return t.base->convex_certified(); }
    bool operator()(const ProductData& p) const {
      for (const auto& s : p.parts)
        if (!s.convex_certified()) return false;
      return true;
    }
  };
  return std::visit(V{}, *node_);
}

std::string SetExpr::describe() const {
  struct V {
    std::string operator()(const HalfspaceData& h) const {
      std::string s = "halfspace{";
      for (std::size_t i = 0; i < h.a.size(); ++i) s += (i ? "," : "") + std::to_string(h.a[i]);
      return s + (h.strict ? " | strict <= " : " | <= ") + std::to_string(h.b) + "}";
    }
    std::string operator()(const BallData& b) const {
      return std::string(b.open ? "open-ball(r=" : "ball(r=") + std::to_string(b.radius) + ")";
    }
    std::string operator()(const PolyhedronData& p) const {
      return "polyhedron(" + std::to_string(p.faces.size()) + " faces)";
    }
    std::string operator()(const PolynomialRegionData& r) const {
      const char* rel = r.rel == Rel::LE ? "<=" : r.rel == Rel::GE ? ">=" : r.rel == Rel::LT ? "<" : ">";
      return std::string("poly-region{p ") + rel + " " + std::to_string(r.value) + "}";
    }
    std::string operator()(const EpigraphData& e) const { return "epi(" + e.f.describe() + ")"; }
    std::string operator()(const GraphData& g) const { return "graph(" + g.g.describe() + ")"; }
    std::string operator()(const WholeSpaceData& w) const { return "R^" + std::to_string(w.dim); }
    std::string operator()(const ProductWithRayData& pr) const {
      return pr.base->describe() + " x (-inf," + std::to_string(pr.level) + "]";
    }
    std::string operator()(const TranslateData& t) const { return t.base->describe() + " + shift"; }
    std::string operator()(const ProductData& p) const {
      std::string s = "product(";
      for (std::size_t i = 0; i < p.parts.size(); ++i) s += (i ? " x " : "") + p.parts[i].describe();
      return s + ")";
    }
  };
  return std::visit(V{}, *node_);
}

bool members(const SetExpr& set, const Point& p, double cs, double ss) {
  if (p.dim() != set.dim())
    fail(ErrorCode::DimensionMismatch, "members: point dim " + std::to_string(p.dim()) +
                                           " vs set dim " + std::to_string(set.dim()));
  struct V {
    const Point& p;
    double cs, ss;
    bool operator()(const HalfspaceData& h) const { return hs_members(h, p, cs, ss); }
    bool operator()(const BallData& b) const {
      double d = l2_norm(sub(p, b.center).coords);
      return b.open ? d < b.radius + ss : d <= b.radius + cs;
    }
    bool operator()(const PolyhedronData& poly) const {
      for (const auto& f : poly.faces)
        if (!hs_members(f, p, cs, ss)) return false;
      return true;
    }
    bool operator()(const PolynomialRegionData& r) const {
      if (!rel_members(r.rel, polynomial_eval(r, p), r.value, cs, ss)) return false;
      for (const auto& f : r.side)
        if (!hs_members(f, p, cs, ss)) return false;
      return true;
    }
    bool operator()(const EpigraphData& e) const {
      double fx = e.f.eval(p.coords[0]);
      if (!std::isfinite(fx)) return false;
      return fx - p.coords[1] <= cs;
    }
    bool operator()(const GraphData& g) const {
      double gx = g.g.eval(p.coords[0]);
      if (!std::isfinite(gx)) return false;
      return std::abs(p.coords[1] - gx) <= cs;
    }
    bool operator()(const WholeSpaceData&) const { return true; }
    bool operator()(const ProductWithRayData& pr) const {
      if (p.coords.back() > pr.level + cs) return false;
      Point head(std::vector<double>(p.coords.begin(), p.coords.end() - 1));
      return members(*pr.base, head, cs, ss);
    }
    bool operator()(const TranslateData& t) const { return members(*t.base, sub(p, t.shift), cs, ss); }
    bool operator()(const ProductData& prod) const {
      std::size_t off = 0;
      for (const auto& s : prod.parts) {
        std::size_t d = static_cast<std::size_t>(s.dim());
        Point slice(std::vector<double>(p.coords.begin() + off, p.coords.begin() + off + d));
        if (!members(s, slice, cs, ss)) return false;
        off += d;
      }
      return true;
    }
  };
  return std::visit(V{p, cs, ss}, set.node());
}

bool contains(const SetExpr& set, const Point& p, double tol) {
  if (tol < 0) fail(ErrorCode::InvalidArgument, "contains: tol must be >= 0");
  return members(set, p, tol, -tol);
}

// ---------------------------------------------------------------------------
// Euclidean projection
// ---------------------------------------------------------------------------

namespace {

Point project_halfspace(const HalfspaceData& h, const Point& p) {
  double v = hs_value(h, p);
  if (v <= h.b) return p;
  double aa = 0.0;
  for (double x : h.a) aa += x * x;
  if (aa == 0.0) fail(ErrorCode::UnsupportedCapability, "halfspace with zero normal");
  double t = (v - h.b) / aa;
  Point q = p;
  for (std::size_t i = 0; i < h.a.size(); ++i) q.coords[i] -= t * h.a[i];
  return q;
}

Point project_ball(const BallData& b, const Point& p) {
  Point d = sub(p, b.center);
  double n = l2_norm(d.coords);
  if (n <= b.radius || b.radius == 0.0) return n <= b.radius ? p : b.center;
  return add(b.center, scale(d, b.radius / n));
}

// Solve the tiny SPD system (A A^T) lambda = A p - b by Gaussian elimination.
bool solve_small(std::vector<std::vector<double>>& m, std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < 1e-14) return false;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) rhs[c] /= m[c][c];
  return true;
}

Point project_affine_subset(const std::vector<const HalfspaceData*>& act, const Point& p) {
  const std::size_t k = act.size();
  std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
  std::vector<double> rhs(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t d = 0; d < act[i]->a.size(); ++d) gram[i][j] += act[i]->a[d] * act[j]->a[d];
    rhs[i] = hs_value(*act[i], p) - act[i]->b;
  }
  if (!solve_small(gram, rhs)) fail(ErrorCode::NonConvergence, "degenerate active set");
  Point q = p;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t d = 0; d < act[i]->a.size(); ++d) q.coords[d] -= rhs[i] * act[i]->a[d];
  return q;
}

Point project_polyhedron(const PolyhedronData& poly, const Point& p) {
  bool inside = true;
  for (const auto& f : poly.faces)
    if (hs_value(f, p) > f.b) inside = false;
  if (inside) return p;

  const std::size_t m = poly.faces.size();
  const std::size_t dim = poly.faces.front().a.size();
  if (m > 16) fail(ErrorCode::UnsupportedCapability, "polyhedron with >16 faces");

  double best = kInf;
  Point bestq = p;
  // Enumerate candidate active sets of size <= dim; the Euclidean projection
  // onto a polyhedron is the projection onto the affine hull of its active
  // constraints.
  std::vector<const HalfspaceData*> act;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > dim) continue;
    act.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) act.push_back(&poly.faces[i]);
    Point q = p;
    try {
      q = project_affine_subset(act, p);
    } catch (const Error&) {
      continue;
    }
    bool feasible = true;
    for (const auto& f : poly.faces)
      if (hs_value(f, q) > f.b + 1e-9 * (1.0 + std::abs(f.b))) feasible = false;
    if (!feasible) continue;
    double d = l2_norm(sub(q, p).coords);
    if (d < best) {
      best = d;
      bestq = q;
    }
  }
  if (!std::isfinite(best)) fail(ErrorCode::NonConvergence, "polyhedron projection found no candidate");
  return bestq;
}

// 1-D minimization of a scan objective with golden-section refinement.
struct ScanResult {
  double x = 0.0;
  double value = kInf;
};

template <typename F>
ScanResult scan_minimize(F&& obj, double lo, double hi, int cells, double tol) {
  ScanResult best;
  if (!(hi > lo)) return best;
  double h = (hi - lo) / cells;
  std::vector<std::pair<double, double>> top;  // (value, x)
  for (int i = 0; i <= cells; ++i) {
    double x = lo + h * i;
    double v = obj(x);
    if (std::isfinite(v) && v < best.value) best = {x, v};
    top.emplace_back(v, x);
  }
  std::partial_sort(top.begin(), top.begin() + std::min<std::size_t>(4, top.size()), top.end());
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (std::size_t t = 0; t < std::min<std::size_t>(4, top.size()); ++t) {
    if (!std::isfinite(top[t].first)) continue;
    double a = std::max(lo, top[t].second - h);
    double b = std::min(hi, top[t].second + h);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = obj(c), fd = obj(d);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
      if (fc < fd || !std::isfinite(fd)) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = obj(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = obj(d);
      }
    }
    for (double x : {a, 0.5 * (a + b), b}) {
      double v = obj(x);
      if (std::isfinite(v) && v < best.value) best = {x, v};
    }
  }
  return best;
}

// Expanding-range scan: stop once the best distance rules out farther points.
template <typename DistAt>
ScanResult expanding_scan(DistAt&& dist_at, double center, double tol) {
  ScanResult best;
  for (double range = 1.0; range <= 1048576.0; range *= 2.0) {
    ScanResult r = scan_minimize(dist_at, center - range, center + range, 4000, tol);
    if (r.value < best.value) best = r;
    if (std::isfinite(best.value) && std::sqrt(best.value) <= range * 0.5) return best;
  }
  if (!std::isfinite(best.value))
    fail(ErrorCode::NonConvergence, "projection scan found no feasible point");
  return best;
}

Point project_epigraph(const EpigraphData& e, const Point& p) {
  auto dist2 = [&](double x) {
    double fx = e.f.eval(x);
    if (!std::isfinite(fx)) return kInf;
    double dy = std::max(fx - p.coords[1], 0.0);
    double dx = x - p.coords[0];
    return dx * dx + dy * dy;
  };
  ScanResult r = expanding_scan(dist2, p.coords[0], 1e-12);
  double fx = e.f.eval(r.x);
  return Point{r.x, std::max(fx, p.coords[1])};
}

Point project_graph(const GraphData& g, const Point& p) {
  auto dist2 = [&](double x) {
    double gx = g.g.eval(x);
    if (!std::isfinite(gx)) return kInf;
    double dx = x - p.coords[0], dy = gx - p.coords[1];
    return dx * dx + dy * dy;
  };
  ScanResult r = expanding_scan(dist2, p.coords[0], 1e-12);
  return Point{r.x, g.g.eval(r.x)};
}

// Decompose p(x, y) = A(x) * y + B(x) when the region is linear in the last
// coordinate (true for the whole catalog: xy, xy - x^2, ...).
bool linear_in_last(const PolynomialRegionData& r) {
  for (const auto& m : r.terms)
    if (m.pows.back() > 1) return false;
  return true;
}

Point project_poly_region(const PolynomialRegionData& r, const Point& p, double tol) {
  if (members(SetExpr::polynomial_region(r.terms, r.rel, r.value, r.side, r.convex_hint), p, 0.0, 0.0))
    return p;
  if (p.dim() != 2 || !linear_in_last(r))
    fail(ErrorCode::UnsupportedCapability, "polynomial region projection needs 2-D, linear in y");

  auto split = [&](double x) {
    double A = 0.0, B = 0.0;
    for (const auto& m : r.terms) {
      double t = m.coef;
      for (int e = 0; e < m.pows[0]; ++e) t *= x;
      if (m.pows[1] == 1)
        A += t;
      else
        B += t;
    }
    return std::pair<double, double>(A, B);
  };
  auto x_side_ok = [&](double x) {
    for (const auto& f : r.side) {
      if (f.a.size() >= 2 && f.a[1] != 0.0) continue;  // y-dependent sides checked later
      double v = f.a[0] * x;
      if (f.strict ? !(v < f.b) : !(v <= f.b)) return false;
    }
    return true;
  };
  bool upper = (r.rel == Rel::GE || r.rel == Rel::GT);  // feasible y on the +A side

  auto dist2 = [&](double x) {
    if (!x_side_ok(x)) return kInf;
    auto [A, B] = split(x);
    double y;
    if (std::abs(A) < 1e-12) {
      bool ok = upper ? B >= r.value - 1e-12 : B <= r.value + 1e-12;
      if (!ok) return kInf;
      y = p.coords[1];
    } else {
      double bound = (r.value - B) / A;
      bool y_up = (A > 0) == upper;  // feasible set is y >= bound (else y <= bound)
      y = y_up ? std::max(p.coords[1], bound) : std::min(p.coords[1], bound);
    }
    double dx = x - p.coords[0], dy = y - p.coords[1];
    return dx * dx + dy * dy;
  };
  ScanResult best = expanding_scan(dist2, p.coords[0], std::min(tol, 1e-10));
  double x = best.x;
  auto [A, B] = split(x);
  double y;
  if (std::abs(A) < 1e-12) {
    y = p.coords[1];
  } else {
    double bound = (r.value - B) / A;
    bool y_up = (A > 0) == upper;
    y = y_up ? std::max(p.coords[1], bound) : std::min(p.coords[1], bound);
  }
  return Point{x, y};
}

}  // namespace

Point project(const SetExpr& set, const Point& p, double tol) {
  if (p.dim() != set.dim()) fail(ErrorCode::DimensionMismatch, "project: dimension mismatch");
  Capabilities c = set.caps();
  if (!c.exact_projection && !c.iterative_projection)
    fail(ErrorCode::UnsupportedCapability, "set has no projection routine: " + set.describe());
  struct V {
    const Point& p;
    double tol;
    Point operator()(const HalfspaceData& h) const { return project_halfspace(h, p); }
    Point operator()(const BallData& b) const { return project_ball(b, p); }
    Point operator()(const PolyhedronData& poly) const { return project_polyhedron(poly, p); }
    Point operator()(const PolynomialRegionData& r) const { return project_poly_region(r, p, tol); }
    Point operator()(const EpigraphData& e) const { return project_epigraph(e, p); }
    Point operator()(const GraphData& g) const { return project_graph(g, p); }
    Point operator()(const WholeSpaceData&) const { return p; }
    Point operator()(const ProductWithRayData& pr) const {
      Point head(std::vector<double>(p.coords.begin(), p.coords.end() - 1));
      Point q = project(*pr.base, head, tol);
      q.coords.push_back(std::min(p.coords.back(), pr.level));
      return q;
    }
    Point operator()(const TranslateData& t) const {
      return add(project(*t.base, sub(p, t.shift), tol), t.shift);
    }
    Point operator()(const ProductData& prod) const {
      std::vector<double> out;
      std::size_t off = 0;
      for (const auto& s : prod.parts) {
        std::size_t d = static_cast<std::size_t>(s.dim());
        Point slice(std::vector<double>(p.coords.begin() + off, p.coords.begin() + off + d));
        Point q = project(s, slice, tol);
        out.insert(out.end(), q.coords.begin(), q.coords.end());
        off += d;
      }
      return Point(std::move(out));
    }
  };
  return std::visit(V{p, tol}, set.node());
}

}  // namespace vext
