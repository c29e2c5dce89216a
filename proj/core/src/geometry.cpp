#include "vext/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace vext {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool shifted_members(const SetExpr& set, const Point& shift, const Point& p, double cs, double ss) {
  return members(set, add(p, shift), cs, ss);
}

bool all_shifted_members(const std::vector<SetExpr>& sets, const std::vector<Point>& shifts,
                         const Point& p, double cs, double ss) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (!shifted_members(sets[i], shifts[i], p, cs, ss)) return false;
  return true;
}

bool is_graph_like(const SetExpr& s) {
  if (std::holds_alternative<GraphData>(s.node())) return true;
  if (const auto* t = std::get_if<TranslateData>(&s.node()))
    return std::holds_alternative<GraphData>(t->base->node());
  return false;
}

// y-value of the (possibly translated) graph set, as a function of x, for the
// shifted set S - shift: y = g(x + shift_x - tr_x) + tr_y - shift_y.
double graph_value(const SetExpr& s, const Point& shift, double x, bool& ok) {
  double tx = 0.0, ty = 0.0;
  const GraphData* g = std::get_if<GraphData>(&s.node());
  if (const auto* t = std::get_if<TranslateData>(&s.node())) {
    tx = t->shift.coords[0];
    ty = t->shift.coords[1];
    g = std::get_if<GraphData>(&t->base->node());
  }
  double v = g->g.eval(x + shift.coords[0] - tx);
  ok = std::isfinite(v);
  return v + ty - shift.coords[1];
}

struct LatticeWalker {
  // Odometer over a d-dimensional lattice of [-r, r]^d with step h.
  int d;
  long n_per_axis;
  double r, h;
  std::vector<long> idx;
  bool done_ = false;

  LatticeWalker(int dim, double radius, double step) : d(dim), r(radius), h(step) {
    n_per_axis = static_cast<long>(std::floor(2.0 * r / h)) + 1;
    idx.assign(static_cast<std::size_t>(d), 0);
  }
  bool done() const { return done_; }
  Point point() const {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = -r + h * static_cast<double>(idx[static_cast<std::size_t>(i)]);
    return Point(std::move(c));
  }
  void advance() {
    for (int i = 0; i < d; ++i) {
      if (++idx[static_cast<std::size_t>(i)] < n_per_axis) return;
      idx[static_cast<std::size_t>(i)] = 0;
    }
    done_ = true;
  }
};

EmptinessVerdict grid_scan_once(const std::vector<SetExpr>& sets, const std::vector<Point>& shifts,
                                double radius, const SearchBudget& b, double step) {
  EmptinessVerdict v;
  v.method = EmptinessMethod::GridOracle;
  const int d = sets.front().dim();
  bool saw_relaxed_candidate = false;

  for (LatticeWalker w(d, radius, step); !w.done(); w.advance()) {
    Point p = w.point();
    double pn = ball_norm(b.norm, p);
    if (pn > radius) continue;
    if (!all_shifted_members(sets, shifts, p, b.eta, b.eta)) continue;
    saw_relaxed_candidate = true;
    if (pn <= radius - b.eta && all_shifted_members(sets, shifts, p, -b.eta, -b.eta)) {
      v.outcome = EmptinessOutcome::Nonempty;
      v.witness = p;
      return v;
    }
  }
  if (!saw_relaxed_candidate) {
    v.outcome = EmptinessOutcome::Empty;
    v.lower_bound = b.eta / 2.0;
    v.notes = "grid-relative at resolution " + std::to_string(step);
  } else {
    v.outcome = EmptinessOutcome::Inconclusive;
    v.notes = "relaxed candidates exist but none with interior margin";
  }
  return v;
}

// All sets are graphs over x: the joint membership pins y, so emptiness
// reduces to a 1-D sweep of the spread between the shifted graph values.
EmptinessVerdict graph_reduction(const std::vector<SetExpr>& sets, const std::vector<Point>& shifts,
                                 double radius, const SearchBudget& b) {
  EmptinessVerdict v;
  v.method = EmptinessMethod::GridOracle;
  v.notes = "1-D graph reduction";
  const long n = 400000;
  double best_spread = kInf;
  double best_x = 0.0, best_y = 0.0;
  for (long i = 0; i <= n; ++i) {
    double x = -radius + 2.0 * radius * static_cast<double>(i) / static_cast<double>(n);
    double lo = kInf, hi = -kInf;
    bool ok_all = true;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      bool ok = false;
      double y = graph_value(sets[s], shifts[s], x, ok);
      if (!ok) {
        ok_all = false;
        break;
      }
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    if (!ok_all) continue;
    double spread = hi - lo;
    double ymid = 0.5 * (lo + hi);
    Point p{x, ymid};
    if (ball_norm(b.norm, p) > radius - b.eta) continue;
    if (spread < best_spread) {
      best_spread = spread;
      best_x = x;
      best_y = ymid;
    }
  }
  if (!std::isfinite(best_spread)) {
    v.outcome = EmptinessOutcome::Empty;
    v.lower_bound = b.eta / 2.0;
    v.notes += "; no common abscissa in the ball";
    return v;
  }
  if (best_spread <= b.eta) {
    v.outcome = EmptinessOutcome::Nonempty;
    v.witness = Point{best_x, best_y};
    v.notes += "; equality-set witness at tolerance eta";
    return v;
  }
  if (best_spread > 2.0 * b.eta) {
    v.outcome = EmptinessOutcome::Empty;
    v.lower_bound = best_spread / 2.0;
    return v;
  }
  v.outcome = EmptinessOutcome::Inconclusive;
  return v;
}

struct CycleSet {
  const SetExpr* set = nullptr;  // nullptr marks the region ball
  Point shift;
};

EmptinessVerdict alternating_projections(const std::vector<SetExpr>& sets,
                                         const std::vector<Point>& shifts, double radius,
                                         const SearchBudget& b) {
  EmptinessVerdict v;
  v.method = EmptinessMethod::AlternatingProjections;
  for (const SetExpr& s : sets) {
    if (!s.caps().exact_projection && !s.caps().iterative_projection)
      fail(ErrorCode::MethodUnsupported,
           "AlternatingProjections on a set lacking projection capability: " + s.describe());
  }
  bool certifiable = true;
  for (const SetExpr& s : sets)
    certifiable = certifiable && s.convex_certified() && s.caps().exact_projection;

  const double rr = radius - b.eta;  // certify on the closed shrunken ball
  if (rr <= 0) {
    v.notes = "radius below eta";
    return v;
  }

  // Two-set fast path: the projection variational inequalities turn an
  // alternating pair (p, q) into a certified lower bound on the distance
  // between the sets over the region.
  if (certifiable && sets.size() == 2) {
    Point q = sub(project(sets[1], shifts[1], 1e-12), shifts[1]);
    for (int it = 0; it < 2000; ++it) {
      Point p = sub(project(sets[0], add(q, shifts[0]), 1e-12), shifts[0]);
      Point q_next = sub(project(sets[1], add(p, shifts[1]), 1e-12), shifts[1]);
      double gap = l2_norm(sub(q_next, p).coords);
      double drift = l2_norm(sub(q_next, q).coords);
      if (gap > 1e-14) {
        double reach = l2_norm(p.coords) + rr * std::sqrt(static_cast<double>(p.dim()));
        double bound = gap - drift * reach / gap;
        if (bound > std::max(1e-12, b.eta / 4.0)) {
          v.outcome = EmptinessOutcome::Empty;
          v.lower_bound = bound;
          v.notes = "certified pair gap from the projection variational inequalities";
          return v;
        }
      }
      if (drift < 1e-16 && gap < 1e-14) break;
      q = q_next;
    }
  }

  // Fejer budget: if the intersection with the shrunken ball were nonempty,
  // the cumulative squared step length of cyclic projections from the origin
  // could not exceed rr^2.
  const double budget_sq = rr * rr * (1.0 + 1e-9) + 1e-12;
  Point z = zero_point(sets.front().dim());
  double cum_sq = 0.0;
  double last_sweep = kInf;
  for (int sweep = 0; sweep < b.max_sweeps; ++sweep) {
    double sweep_sq = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      Point q = sub(project(sets[i], add(z, shifts[i]), 1e-12), shifts[i]);
      sweep_sq += std::pow(l2_norm(sub(q, z).coords), 2.0);
      z = q;
    }
    {
      Point q = project_ball_base_norm(b.norm, z, rr);
      sweep_sq += std::pow(l2_norm(sub(q, z).coords), 2.0);
      z = q;
    }
    cum_sq += sweep_sq;
    if (sweep_sq < 1e-20) {
      // converged: candidate common point, possibly on the boundary
      auto margin_ok = [&](const Point& p) {
        return ball_norm(b.norm, p) <= radius - b.eta &&
               all_shifted_members(sets, shifts, p, -b.eta, -b.eta);
      };
      if (margin_ok(z)) {
        v.outcome = EmptinessOutcome::Nonempty;
        v.witness = z;
        return v;
      }
      // probe nearby interior candidates along axis and diagonal directions
      const int d = z.dim();
      std::vector<Point> dirs;
      for (int i = 0; i < d; ++i)
        for (double s : {1.0, -1.0}) {
          Point e = zero_point(d);
          e.coords[static_cast<std::size_t>(i)] = s;
          dirs.push_back(e);
        }
      if (d == 2)
        for (double sx : {1.0, -1.0})
          for (double sy : {1.0, -1.0}) dirs.push_back(Point{sx, sy});
      for (double step : {2.0 * b.eta, 8.0 * b.eta, 32.0 * b.eta}) {
        for (const Point& dir : dirs) {
          Point cand = add(z, scale(dir, step));
          if (margin_ok(cand)) {
            v.outcome = EmptinessOutcome::Nonempty;
            v.witness = cand;
            v.notes = "interior probe after convergence";
            return v;
          }
        }
      }
      v.outcome = EmptinessOutcome::Inconclusive;
      v.notes = "converged without interior margin";
      return v;
    }
    if (certifiable && cum_sq > budget_sq) {
      double gap = 0.0;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        Point q = sub(project(sets[i], add(z, shifts[i]), 1e-12), shifts[i]);
        gap = std::max(gap, l2_norm(sub(q, z).coords));
      }
      v.outcome = EmptinessOutcome::Empty;
      v.lower_bound = std::max(gap, b.eta / 2.0);
      v.notes = "Fejer budget exceeded on the closed ball of radius rho - eta";
      return v;
    }
    last_sweep = sweep_sq;
  }
  (void)last_sweep;
  v.outcome = EmptinessOutcome::Inconclusive;
  v.notes = certifiable ? "sweep budget exhausted" : "nonconvex or inexact projector: cannot certify";
  return v;
}

}  // namespace

double ball_norm(const NormSpec& ns, const Point& p) { return base_norm(ns, p.coords); }

Point project_ball_base_norm(const NormSpec& ns, const Point& p, double radius) {
  switch (ns.base) {
    case BaseNorm::LInf: {
      Point q = p;
      for (double& c : q.coords) c = std::clamp(c, -radius, radius);
      return q;
    }
    case BaseNorm::L2: {
      double n = l2_norm(p.coords);
      if (n <= radius) return p;
      return scale(p, radius / n);
    }
    case BaseNorm::L1: {
      if (l1_norm(p.coords) <= radius) return p;
      // Euclidean projection onto the l1 ball via soft-thresholding.
      std::vector<double> u;
      for (double c : p.coords) u.push_back(std::abs(c));
      std::sort(u.begin(), u.end(), std::greater<double>());
      double cssv = 0.0, theta = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        cssv += u[i];
        double t = (cssv - radius) / static_cast<double>(i + 1);
        if (t < u[i]) theta = t;
      }
      Point q = p;
      for (double& c : q.coords) {
        double m = std::max(std::abs(c) - theta, 0.0);
        c = c < 0 ? -m : m;
      }
      return q;
    }
  }
  return p;
}

EmptinessVerdict intersection_empty(const std::vector<SetExpr>& sets,
                                    const std::vector<Point>& shifts, double radius,
                                    EmptinessMethod method, const SearchBudget& budget) {
  if (sets.empty()) fail(ErrorCode::InvalidArgument, "intersection_empty: no sets");
  if (sets.size() != shifts.size())
    fail(ErrorCode::DimensionMismatch, "intersection_empty: shifts length != sets length");
  const int d = sets.front().dim();
  for (const SetExpr& s : sets)
    if (s.dim() != d) fail(ErrorCode::DimensionMismatch, "intersection_empty: mixed set dims");
  for (const Point& s : shifts)
    if (s.dim() != d) fail(ErrorCode::DimensionMismatch, "intersection_empty: shift dim");
  if (!(radius > 0) && radius != kUnboundedRadius)
    fail(ErrorCode::InvalidArgument, "intersection_empty: radius must be > 0 or unbounded");

  bool capped = false;
  double r = radius;
  if (radius == kUnboundedRadius) {
    r = budget.r_max;
    capped = true;
  }

  bool auto_mode = method == EmptinessMethod::Auto;
  if (auto_mode) {
    bool convex = true;
    for (const SetExpr& s : sets) convex = convex && s.convex_certified() && s.caps().exact_projection;
    method = convex ? EmptinessMethod::AlternatingProjections : EmptinessMethod::GridOracle;
  }

  EmptinessVerdict v;
  if (method == EmptinessMethod::AlternatingProjections) {
    v = alternating_projections(sets, shifts, r, budget);
    v.radius_capped = capped;
    if (capped) v.notes += (v.notes.empty() ? "" : "; ") + std::string("radius capped at r_max");
    if (v.outcome != EmptinessOutcome::Inconclusive || !auto_mode || d > 4) return v;
    method = EmptinessMethod::GridOracle;  // auto: fall back to the ground-truth oracle
  }
  if (method != EmptinessMethod::GridOracle)
    fail(ErrorCode::MethodUnsupported, "intersection_empty: unsupported method");

  if (d > 4) fail(ErrorCode::GridDimensionTooHigh, "grid oracle refuses dim > 4");

  bool all_graphs = true;
  for (const SetExpr& s : sets) all_graphs = all_graphs && is_graph_like(s);
  if (all_graphs && d == 2) {
    v = graph_reduction(sets, shifts, r, budget);
    v.radius_capped = capped;
    return v;
  }

  if (!capped && r <= 64.0) {
    // at least 200 cells per axis on small regions, and a tractable lattice
    // on large finite balls
    double step = std::min(budget.resolution, 2.0 * r / 200.0);
    double est = std::pow(2.0 * r / step, d);
    if (est > 5e7) step = 2.0 * r / std::pow(5e7, 1.0 / d);
    // coarse pre-pass: fat intersections yield a witness quickly
    EmptinessVerdict pre = grid_scan_once(sets, shifts, r, budget, 2.0 * r / 60.0);
    if (pre.nonempty()) {
      pre.radius_capped = false;
      return pre;
    }
    v = grid_scan_once(sets, shifts, r, budget, step);
    v.radius_capped = false;
    return v;
  }

  // Unbounded (capped) or very large radius: multiscale sweep over decades.
  EmptinessVerdict agg;
  agg.method = EmptinessMethod::GridOracle;
  agg.radius_capped = capped;
  bool any_inconclusive = false;
  std::vector<double> scales;
  for (double s : {1.0, 10.0, 100.0, 1000.0})
    if (s < r) scales.push_back(s);
  scales.push_back(r);
  for (double scale : scales) {
    double rr = std::min(scale, r);
    double step = std::max(budget.resolution, 2.0 * rr / 2000.0);
    EmptinessVerdict sv = grid_scan_once(sets, shifts, rr, budget, step);
    if (sv.nonempty()) {
      sv.radius_capped = capped;
      return sv;
    }
    if (sv.outcome == EmptinessOutcome::Inconclusive) any_inconclusive = true;
  }
  agg.outcome = any_inconclusive ? EmptinessOutcome::Inconclusive : EmptinessOutcome::Empty;
  if (agg.outcome == EmptinessOutcome::Empty) agg.lower_bound = budget.eta / 2.0;
  agg.notes = "multiscale lattice over decades up to the cap";
  return agg;
}

double family_gap(const std::vector<SetExpr>& sets, const Region& region,
                  const SearchBudget& budget) {
  if (sets.size() < 2) fail(ErrorCode::InvalidArgument, "family_gap: need at least 2 sets");
  const int d = sets.front().dim();
  if (region.center.dim() != d) fail(ErrorCode::DimensionMismatch, "family_gap: region dim");

  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  auto clamp_region = [&](const Point& p) {
    Point rel = sub(p, region.center);
    return add(region.center, project_ball_base_norm(budget.norm, rel, region.radius));
  };
  auto diam = [&](const std::vector<Point>& pts) {
    double m = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        m = std::max(m, base_norm(budget.norm, sub(pts[i], pts[j]).coords));
    return m;
  };

  // Every set must reach the region at all.
  for (const SetExpr& s : sets) {
    Point q = project(s, region.center, 1e-9);
    Point qq = clamp_region(q);
    bool reachable = false;
    for (int it = 0; it < 50; ++it) {
      q = project(s, qq, 1e-9);
      if (base_norm(budget.norm, sub(q, region.center).coords) <= region.radius + budget.eta) {
        reachable = true;
        break;
      }
      qq = clamp_region(q);
    }
    if (!reachable) return kInf;  // EmptyCatalogSet: reported as +inf
  }

  double best = kInf;
  int grid_per_axis = d <= 2 ? 9 : 4;
  std::vector<Point> seeds;
  for (LatticeWalker w(d, 1.0, 2.0 / (grid_per_axis - 1)); !w.done(); w.advance())
    seeds.push_back(add(region.center, scale(w.point(), region.radius)));
  for (int i = 0; i < budget.seeds; ++i) {
    std::vector<double> c(static_cast<std::size_t>(d));
    for (double& x : c) x = u(rng) * region.radius;
    seeds.push_back(add(region.center, Point(std::move(c))));
  }

  std::vector<Point> pts(sets.size(), region.center);
  for (const Point& seed : seeds) {
    Point z = seed;
    double local = kInf;
    for (int it = 0; it < 200; ++it) {
      for (std::size_t i = 0; i < sets.size(); ++i) pts[i] = clamp_region(project(sets[i], z, 1e-9));
      // keep the tuple feasible: clamping can leave the set, so re-project
      for (std::size_t i = 0; i < sets.size(); ++i)
        if (!contains(sets[i], pts[i], 1e-6)) pts[i] = project(sets[i], pts[i], 1e-9);
      double dm = diam(pts);
      Point mean = zero_point(d);
      for (const Point& p : pts) mean = add(mean, p);
      mean = scale(mean, 1.0 / static_cast<double>(sets.size()));
      if (dm > local - 1e-12 && it > 3) {
        local = std::min(local, dm);
        break;
      }
      local = std::min(local, dm);
      z = mean;
    }
    best = std::min(best, local);
  }
  return best;
}

}  // namespace vext
