#include "vext/separation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace vext {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<long> k_schedule(double eps, long k_budget) {
  std::vector<long> ks;
  long k0 = static_cast<long>(std::floor(1.0 / eps)) + 1;
  for (long k = k0; k <= k_budget; k *= 8) ks.push_back(k);
  return ks;
}

// Candidate base points of one set near x^k, inside the eps-ball.
std::vector<Point> base_candidates(const SetExpr& set, int set_index, const Point& xk, double eps,
                                   long k, const SeparationSearchParams& params) {
  std::vector<Point> out;
  auto push = [&](const Point& q) {
    if (!contains(set, q, 1e-7) && !members(set, q, 1e-7, 1e-12)) return;
    if (base_norm(params.norm, sub(q, xk).coords) >= eps) return;
    for (const Point& seen : out)
      if (base_norm(params.norm, sub(q, seen).coords) < 1e-12) return;
    if (static_cast<int>(out.size()) < params.base_candidates) out.push_back(q);
  };
  if (params.base_hints && set_index < params.base_hints->n_sets())
    push(params.base_hints->eval(set_index, k));
  try {
    push(project(set, xk, 1e-10));
  } catch (const Error&) {
  }
  // short boundary walk around the projection
  for (double frac : {0.25, 0.5}) {
    for (int d = 0; d < xk.dim(); ++d)
      for (double sign : {-1.0, 1.0}) {
        Point probe = xk;
        probe.coords[static_cast<std::size_t>(d)] += sign * frac * eps;
        try {
          push(project(set, probe, 1e-10));
        } catch (const Error&) {
        }
      }
  }
  return out;
}

struct NormalFamily {
  std::vector<DualVector> dirs;  // normalized generators (component dual norm 1)
  bool trivial = false;
};

std::optional<NormalFamily> normal_family(const SetExpr& set, const Point& base, ConeKind kind,
                                          const NormSpec& norm) {
  ConeModel model;
  try {
    model = cone_model(set, base, kind);
  } catch (const Error&) {
    return std::nullopt;
  }
  NormalFamily fam;
  if (model.trivial()) {
    fam.trivial = true;
    return fam;
  }
  for (const DualVector& g : model.generators) {
    double n = component_dual_norm(norm, g.coords);
    if (n <= 0) continue;
    fam.dirs.push_back(dv_scale(g, 1.0 / n));
  }
  if (fam.dirs.empty()) fam.trivial = true;
  return fam;
}

// Unit directions of one cone: convex weights over the generators,
// renormalized in the component dual norm.
std::vector<DualVector> cone_directions(const NormalFamily& fam, const NormSpec& norm, int steps) {
  std::vector<DualVector> dirs;
  if (fam.trivial) return dirs;
  const std::size_t m = fam.dirs.size();
  if (m == 1) {
    dirs.push_back(fam.dirs[0]);
    return dirs;
  }
  if (m == 2) {
    for (int i = 0; i <= steps; ++i) {
      double t = static_cast<double>(i) / steps;
      DualVector v = dv_add(dv_scale(fam.dirs[0], 1.0 - t), dv_scale(fam.dirs[1], t));
      double n = component_dual_norm(norm, v.coords);
      if (n > 1e-12) dirs.push_back(dv_scale(v, 1.0 / n));
    }
    return dirs;
  }
  // coarse grid over the weight simplex for small generator counts
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; i + j <= steps; ++j) {
      double a = static_cast<double>(i) / steps, b = static_cast<double>(j) / steps;
      double c = 1.0 - a - b;
      DualVector v = dv_scale(fam.dirs[0], a);
      v = dv_add(v, dv_scale(fam.dirs[1], b));
      for (std::size_t g = 2; g < m; ++g) v = dv_add(v, dv_scale(fam.dirs[g], c / (m - 2.0)));
      double n = component_dual_norm(norm, v.coords);
      if (n > 1e-12) dirs.push_back(dv_scale(v, 1.0 / n));
    }
  return dirs;
}

struct TupleSweepResult {
  double best = kInf;
  std::vector<DualVector> normals;
};

// Minimize ||sum_i w_i d_i|| over outer weights on the simplex and cone
// directions. Tuple normalization: sum of component dual norms equals 1.
TupleSweepResult sweep_tuples(const std::vector<std::vector<DualVector>>& dirs_per_set,
                              const std::vector<bool>& trivial, const NormSpec& norm,
                              double weight_res) {
  TupleSweepResult res;
  const std::size_t n = dirs_per_set.size();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i)
    if (!trivial[i] && !dirs_per_set[i].empty()) active.push_back(i);
  if (active.empty()) return res;  // no unit tuples exist

  const int dim = dirs_per_set[active[0]][0].dim();
  // The sum x_1* + ... + x_n* lives in X*, so its size is always measured in
  // the canonical dual of the base norm; only the per-component normalization
  // follows the MirrorBase convention.
  auto eval_tuple = [&](const std::vector<DualVector>& tuple) {
    std::vector<double> s(static_cast<std::size_t>(dim), 0.0);
    for (const DualVector& t : tuple)
      for (int d = 0; d < dim; ++d) s[static_cast<std::size_t>(d)] += t.coords[static_cast<std::size_t>(d)];
    return base_dual_norm(norm, s);
  };

  long wsteps = std::lround(1.0 / weight_res);
  if (active.size() == 1) {
    for (const DualVector& d0 : dirs_per_set[active[0]]) {
      std::vector<DualVector> tuple(n, DualVector(std::vector<double>(static_cast<std::size_t>(dim), 0.0)));
      tuple[active[0]] = d0;
      double v = eval_tuple(tuple);
      if (v < res.best) {
        res.best = v;
        res.normals = tuple;
      }
    }
    return res;
  }
  if (active.size() == 2) {
    double s[4];
    std::size_t best_i = 0, best_j = 0;
    long best_w = -1;
    for (std::size_t i0 = 0; i0 < dirs_per_set[active[0]].size(); ++i0)
      for (std::size_t j0 = 0; j0 < dirs_per_set[active[1]].size(); ++j0) {
        const auto& d0 = dirs_per_set[active[0]][i0].coords;
        const auto& d1 = dirs_per_set[active[1]][j0].coords;
        for (long i = 0; i <= wsteps; ++i) {
          double w = static_cast<double>(i) / static_cast<double>(wsteps);
          for (int d = 0; d < dim; ++d)
            s[d] = w * d0[static_cast<std::size_t>(d)] + (1.0 - w) * d1[static_cast<std::size_t>(d)];
          double v = 0.0;
          switch (norm.base) {  // canonical dual of the base norm
            case BaseNorm::LInf:
              for (int d = 0; d < dim; ++d) v += std::abs(s[d]);
              break;
            case BaseNorm::L2: {
              for (int d = 0; d < dim; ++d) v += s[d] * s[d];
              v = std::sqrt(v);
              break;
            }
            case BaseNorm::L1:
              for (int d = 0; d < dim; ++d) v = std::max(v, std::abs(s[d]));
              break;
          }
          if (v < res.best - 1e-15) {
            res.best = v;
            best_i = i0;
            best_j = j0;
            best_w = i;
          }
        }
      }
    if (best_w >= 0) {
      double w = static_cast<double>(best_w) / static_cast<double>(wsteps);
      std::vector<DualVector> tuple(n, DualVector(std::vector<double>(static_cast<std::size_t>(dim), 0.0)));
      tuple[active[0]] = dv_scale(dirs_per_set[active[0]][best_i], w);
      tuple[active[1]] = dv_scale(dirs_per_set[active[1]][best_j], 1.0 - w);
      res.normals = tuple;
    }
    return res;
  }
  // n >= 3: coarse outer grid with coordinate refinement
  std::vector<double> w(active.size(), 1.0 / static_cast<double>(active.size()));
  std::vector<std::size_t> pick(active.size(), 0);
  auto build = [&](const std::vector<double>& wv, const std::vector<std::size_t>& pv) {
    std::vector<DualVector> tuple(n, DualVector(std::vector<double>(static_cast<std::size_t>(dim), 0.0)));
    for (std::size_t a = 0; a < active.size(); ++a)
      tuple[active[a]] = dv_scale(dirs_per_set[active[a]][pv[a]], wv[a]);
    return tuple;
  };
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t g = 0; g < dirs_per_set[active[a]].size(); ++g) {
      pick[a] = g;
      std::vector<DualVector> tuple = build(w, pick);
      double v = eval_tuple(tuple);
      if (v < res.best) {
        res.best = v;
        res.normals = tuple;
      }
    }
    pick[a] = 0;
  }
  return res;
}

double dual_pair_max(const NormSpec& ns, const DualVector& xstar, std::vector<double>* arg) {
  // max over base-norm unit vectors of <x*, v>, with a maximizer
  arg->assign(xstar.coords.size(), 0.0);
  switch (ns.base) {
    case BaseNorm::LInf: {
      double s = 0.0;
      for (std::size_t i = 0; i < xstar.coords.size(); ++i) {
        (*arg)[i] = xstar.coords[i] > 0 ? 1.0 : (xstar.coords[i] < 0 ? -1.0 : 0.0);
        s += std::abs(xstar.coords[i]);
      }
      return s;
    }
    case BaseNorm::L2: {
      double n = l2_norm(xstar.coords);
      if (n == 0) return 0.0;
      for (std::size_t i = 0; i < xstar.coords.size(); ++i) (*arg)[i] = xstar.coords[i] / n;
      return n;
    }
    case BaseNorm::L1: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < xstar.coords.size(); ++i)
        if (std::abs(xstar.coords[i]) > std::abs(xstar.coords[best])) best = i;
      (*arg)[best] = xstar.coords[best] >= 0 ? 1.0 : -1.0;
      return std::abs(xstar.coords[best]);
    }
  }
  return 0.0;
}

}  // namespace

CertificateCheck verify_certificate(const SeparationCertificate& cert,
                                    const std::vector<SetExpr>& sets,
                                    const SequenceSpec& seq_single) {
  CertificateCheck out;
  const double eta = 1e-7;
  const std::size_t n = sets.size();
  if (cert.base_points.size() != n || cert.normals.size() != n)
    fail(ErrorCode::DimensionMismatch, "verify_certificate: tuple sizes vs sets");
  const int dim = sets.front().dim();
  for (const Point& p : cert.base_points)
    if (p.dim() != dim) fail(ErrorCode::DimensionMismatch, "verify_certificate: base point dim");
  for (const DualVector& d : cert.normals)
    if (d.dim() != dim) fail(ErrorCode::DimensionMismatch, "verify_certificate: normal dim");

  auto violate = [&](const std::string& msg) { out.violations.push_back(msg); };

  if (!(cert.k > 1.0 / cert.epsilon)) violate("k <= 1/eps");

  Point xk = seq_single.eval_single(cert.k);
  std::vector<Point> diffs;
  for (const Point& b : cert.base_points) diffs.push_back(sub(b, xk));
  if (!(product_norm(cert.norm, diffs) < cert.epsilon + eta))
    violate("base points leave the eps-ball around (x^k,...,x^k)");
  if (cert.aux_points) {
    if (cert.aux_points->size() != n)
      fail(ErrorCode::DimensionMismatch, "verify_certificate: aux tuple size");
    std::vector<Point> adiffs;
    for (const Point& b : *cert.aux_points) adiffs.push_back(sub(b, xk));
    if (!(product_norm(cert.norm, adiffs) < cert.epsilon + eta))
      violate("aux points leave the eps-ball");
    for (std::size_t i = 0; i < n; ++i)
      if (!contains(sets[i], (*cert.aux_points)[i], eta)) violate("aux point not in its set");
  }
  if (cert.shifts) {
    if (cert.shifts->size() != n) fail(ErrorCode::DimensionMismatch, "verify_certificate: shifts size");
    if (!(product_norm(cert.norm, *cert.shifts) < cert.epsilon + eta))
      violate("shift tuple leaves the eps-ball");
  }
  if (cert.x0 && !(base_norm(cert.norm, cert.x0->coords) < cert.epsilon + eta))
    violate("x0 leaves the eps-ball");

  for (std::size_t i = 0; i < n; ++i) {
    if (!contains(sets[i], cert.base_points[i], eta) &&
        !members(sets[i], cert.base_points[i], eta, 1e-12))
      violate("base point " + std::to_string(i) + " not in its set");
    try {
      ConeModel model = cone_model(sets[i], cert.base_points[i], cert.cone_kind);
      double nn = l2_norm(cert.normals[i].coords);
      if (nn > eta && !cone_contains(model, cert.normals[i], 1e-6))
        violate("normal " + std::to_string(i) + " not in the cone model");
    } catch (const Error& e) {
      violate(std::string("cone model unavailable: ") + e.what());
    }
  }

  double norm1 = sum_dual_norm(cert.norm, cert.normals);
  if (std::abs(norm1 - 1.0) > 1e-6) violate("normal tuple not normalized to 1");

  std::vector<double> s(static_cast<std::size_t>(dim), 0.0);
  for (const DualVector& d : cert.normals)
    for (int j = 0; j < dim; ++j) s[static_cast<std::size_t>(j)] += d.coords[static_cast<std::size_t>(j)];
  double sum_norm = base_dual_norm(cert.norm, s);
  double sum_bound = cert.beta ? *cert.beta : cert.epsilon;
  if (!(sum_norm < sum_bound + eta)) violate("||sum x_i*|| too large");

  if (cert.tau) {
    if (!cert.x0 || !cert.shifts || !cert.aux_points) {
      violate("tau present but x0/shifts/aux missing");
    } else {
      double pairing = 0.0;
      std::vector<Point> m;
      for (std::size_t i = 0; i < n; ++i) {
        Point mi = add(add(*cert.x0, (*cert.shifts)[i]), sub((*cert.aux_points)[i], cert.base_points[i]));
        pairing += dot(cert.normals[i], mi);
        m.push_back(mi);
      }
      double mn = product_norm(cert.norm, m);
      if (!(pairing > *cert.tau * mn)) violate("pairing inequality fails at the declared tau");
    }
  }

  out.valid = out.violations.empty();
  return out;
}

std::optional<SeparationCertificate> search_certificate(const std::vector<SetExpr>& sets,
                                                        const SequenceSpec& seq_single, double eps,
                                                        ConeKind cone_kind,
                                                        const SeparationSearchParams& params) {
  if (!seq_single.single())
    fail(ErrorCode::InvalidArgument, "search_certificate: single-sequence spec required");
  const std::size_t n = sets.size();
  bool any_cone = false;

  for (long k : k_schedule(eps, params.k_budget)) {
    Point xk = seq_single.eval_single(k);
    std::vector<std::vector<Point>> cands(n);
    bool all_have = true;
    for (std::size_t i = 0; i < n; ++i) {
      cands[i] = base_candidates(sets[i], static_cast<int>(i), xk, eps, k, params);
      all_have = all_have && !cands[i].empty();
    }
    if (!all_have) continue;

    // lexicographic combination walk, capped
    std::vector<std::size_t> idx(n, 0);
    int combos = 0;
    while (combos < 256) {
      ++combos;
      std::vector<std::vector<DualVector>> dirs(n);
      std::vector<bool> trivial(n, false);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        auto fam = normal_family(sets[i], cands[i][idx[i]], cone_kind, params.norm);
        if (!fam) {
          ok = false;
          break;
        }
        trivial[i] = fam->trivial;
        dirs[i] = cone_directions(*fam, params.norm, 40);
      }
      if (ok) {
        any_cone = true;
        TupleSweepResult sweep = sweep_tuples(dirs, trivial, params.norm, params.cone_resolution);
        if (params.optimizer == SeparationSearchParams::Optimizer::CoordinateDescent &&
            std::isfinite(sweep.best)) {
          // refine with a finer weight grid around the best tuple
          TupleSweepResult fine = sweep_tuples(dirs, trivial, params.norm, params.cone_resolution / 4.0);
          if (fine.best < sweep.best) sweep = fine;
        }
        if (sweep.best < eps) {
          SeparationCertificate cert;
          cert.k = static_cast<int>(k);
          for (std::size_t i = 0; i < n; ++i) cert.base_points.push_back(cands[i][idx[i]]);
          cert.normals = sweep.normals;
          cert.epsilon = eps;
          cert.cone_kind = cone_kind;
          cert.norm = params.norm;
          CertificateCheck chk = verify_certificate(cert, sets, seq_single);
          if (chk.valid) return cert;
        }
      }
      // advance odometer
      std::size_t pos = 0;
      while (pos < n) {
        if (++idx[pos] < cands[pos].size()) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
  }
  if (!any_cone)
    fail(ErrorCode::UnsupportedCapability, "search_certificate: no cone models near the tail");
  return std::nullopt;
}

PropertyVerdict stationarity_from_certificates(const std::vector<SetExpr>& sets,
                                               const SequenceSpec& seq_single,
                                               const std::vector<SeparationCertificate>& certs,
                                               double beta, double alpha,
                                               const CheckParams& params) {
  if (!(alpha > beta && beta > 0))
    fail(ErrorCode::InvalidArgument, "stationarity_from_certificates: need alpha > beta > 0");
  PropertyVerdict verdict;
  const std::size_t n = sets.size();
  const NormSpec& norm = params.budget.norm;
  const double xi = 0.5 * (alpha - beta);

  for (const SeparationCertificate& cert : certs) {
    const int dim = sets.front().dim();
    std::vector<double> s(static_cast<std::size_t>(dim), 0.0);
    for (const DualVector& d : cert.normals)
      for (int j = 0; j < dim; ++j) s[static_cast<std::size_t>(j)] += d.coords[static_cast<std::size_t>(j)];
    if (!(base_dual_norm(norm, s) < beta))
      fail(ErrorCode::ConstructionFailed,
           "certificate violates ||sum x_i*|| < beta; the required pairing bound is unattainable");

    bool all_convex = true;
    for (const SetExpr& set : sets) all_convex = all_convex && set.convex_certified();

    double kappa2 = norm.kappa2;
    double chosen_rho = -1.0;
    for (double rho : {cert.epsilon / 2.0, cert.epsilon / 4.0, cert.epsilon / 8.0,
                       cert.epsilon / 16.0}) {
      if (all_convex) {
        chosen_rho = rho;  // the normal-cone inequality is global for convex sets
        break;
      }
      // sampled Frechet inequality on Omega-hat near x-hat
      bool pass = true;
      std::mt19937_64 rng(params.seed ^ 0xabcdefull);
      for (std::size_t i = 0; i < n && pass; ++i) {
        for (int trial = 0; trial < 200 && pass; ++trial) {
          std::uniform_real_distribution<double> u(-1.0, 1.0);
          Point probe = cert.base_points[i];
          for (int d = 0; d < dim; ++d)
            probe.coords[static_cast<std::size_t>(d)] += (kappa2 + alpha) * rho * u(rng);
          Point w;
          try {
            w = project(sets[i], probe, 1e-10);
          } catch (const Error&) {
            continue;
          }
          Point diff = sub(w, cert.base_points[i]);
          double dn = base_norm(norm, diff.coords);
          if (dn <= 1e-14 || dn >= (kappa2 + alpha) * rho) continue;
          double pairing = dot(cert.normals[i], diff);
          if (pairing > (xi / (kappa2 + alpha)) * dn + 1e-12) pass = false;
        }
      }
      if (pass) {
        chosen_rho = rho;
        break;
      }
    }
    if (chosen_rho <= 0)
      fail(ErrorCode::ConstructionFailed,
           "no rho admits the Frechet inequality at the declared resolution");
    double rho = chosen_rho;

    // shifts along the dual-maximizing directions
    double pair_coeff = 0.0;
    std::vector<std::vector<double>> dirs(n);
    for (std::size_t i = 0; i < n; ++i)
      pair_coeff += dual_pair_max(norm, cert.normals[i], &dirs[i]);
    if (pair_coeff <= 0) fail(ErrorCode::ConstructionFailed, "degenerate normal tuple");
    double s_lo = (beta + xi) * rho / pair_coeff;
    double s_mag = std::min(0.95 * alpha * rho, 1.05 * s_lo);
    if (!(s_mag * pair_coeff > (beta + xi) * rho) || !(s_mag < alpha * rho))
      fail(ErrorCode::ConstructionFailed, "pairing bound unattainable under the alpha*rho budget");

    EpsilonRecord rec;
    rec.eps = cert.epsilon;
    rec.k = cert.k;
    rec.rho = rho;
    std::vector<Point> totals;
    for (std::size_t i = 0; i < n; ++i) {
      Point a(std::vector<double>(dirs[i].begin(), dirs[i].end()));
      a = scale(a, s_mag);
      rec.shifts.push_back(a);
      totals.push_back(add(cert.base_points[i], a));
    }
    SearchBudget budget = params.budget;
    budget.resolution = std::min(budget.resolution, rho / 200.0);
    budget.eta = std::min(budget.eta, (alpha - beta) * rho / 16.0);
    rec.emptiness = intersection_empty(sets, totals, rho, EmptinessMethod::GridOracle, budget);
    rec.success = rec.emptiness.empty();
    verdict.per_epsilon.push_back(rec);
    if (!rec.success) {
      verdict.outcome = Outcome::Inconclusive;
      verdict.notes = "grid oracle did not confirm the constructed emptiness";
      return verdict;
    }
  }
  verdict.outcome = Outcome::Certified;
  verdict.notes = "all constructed shifts confirmed empty by the grid oracle";
  return verdict;
}

PropertyVerdict transversality_dual_check(const std::vector<SetExpr>& sets,
                                          const SequenceSpec& seq_single, double eps,
                                          const SeparationSearchParams& params) {
  if (!seq_single.single())
    fail(ErrorCode::InvalidArgument, "transversality_dual_check: single-sequence spec required");
  const std::size_t n = sets.size();
  double global_min = kInf;
  bool any_tuple = false;
  bool any_cone = false;

  for (long k : k_schedule(eps, params.k_budget)) {
    Point xk = seq_single.eval_single(k);
    std::vector<std::vector<Point>> cands(n);
    bool all_have = true;
    for (std::size_t i = 0; i < n; ++i) {
      cands[i] = base_candidates(sets[i], static_cast<int>(i), xk, eps, k, params);
      all_have = all_have && !cands[i].empty();
    }
    if (!all_have) continue;

    std::vector<std::size_t> idx(n, 0);
    int combos = 0;
    while (combos < 256) {
      ++combos;
      std::vector<std::vector<DualVector>> dirs(n);
      std::vector<bool> trivial(n, false);
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) {
        auto fam = normal_family(sets[i], cands[i][idx[i]], ConeKind::Frechet, params.norm);
        if (!fam) {
          ok = false;
          break;
        }
        trivial[i] = fam->trivial;
        dirs[i] = cone_directions(*fam, params.norm, 40);
      }
      if (ok) {
        any_cone = true;
        TupleSweepResult sweep = sweep_tuples(dirs, trivial, params.norm, params.cone_resolution);
        if (std::isfinite(sweep.best)) {
          any_tuple = true;
          global_min = std::min(global_min, sweep.best);
        }
      }
      std::size_t pos = 0;
      while (pos < n) {
        if (++idx[pos] < cands[pos].size()) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
  }

  if (!any_cone)
    fail(ErrorCode::UnsupportedCapability, "transversality_dual_check: no cone models available");

  PropertyVerdict v;
  if (!any_tuple) {
    v.outcome = Outcome::Certified;
    v.notes = "no unit normal tuples exist near the tail (trivial cones): vacuously transversal";
    return v;
  }
  v.value = global_min;
  if (global_min < eps) {
    v.outcome = Outcome::Falsified;
    v.notes = "unit normal tuple with ||sum|| = " + std::to_string(global_min) + " < eps";
  } else {
    v.outcome = Outcome::Certified;
    v.notes = "estimated infimum of ||sum x_i*|| over unit tuples stays >= eps";
  }
  return v;
}

}  // namespace vext
