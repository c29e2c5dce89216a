#include "vext/point.hpp"

#include <algorithm>

namespace vext {

static void require_same_dim(int a, int b, const char* op) {
  if (a != b) fail(ErrorCode::DimensionMismatch, std::string(op) + ": dimensions " +
                                                     std::to_string(a) + " vs " + std::to_string(b));
}

Point add(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim(), "add");
  Point r = a;
  for (int i = 0; i < a.dim(); ++i) r.coords[i] += b.coords[i];
  return r;
}

Point sub(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim(), "sub");
  Point r = a;
  for (int i = 0; i < a.dim(); ++i) r.coords[i] -= b.coords[i];
  return r;
}

Point scale(const Point& a, double t) {
  Point r = a;
  for (double& v : r.coords) v *= t;
  return r;
}

Point zero_point(int dim) { return Point(std::vector<double>(static_cast<std::size_t>(dim), 0.0)); }

double dot(const DualVector& f, const Point& p) {
  require_same_dim(f.dim(), p.dim(), "dot");
  double s = 0.0;
  for (int i = 0; i < f.dim(); ++i) s += f.coords[i] * p.coords[i];
  return s;
}

DualVector dv_add(const DualVector& a, const DualVector& b) {
  require_same_dim(a.dim(), b.dim(), "dv_add");
  DualVector r = a;
  for (int i = 0; i < a.dim(); ++i) r.coords[i] += b.coords[i];
  return r;
}

DualVector dv_scale(const DualVector& a, double t) {
  DualVector r = a;
  for (double& v : r.coords) v *= t;
  return r;
}

double l1_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double linf_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace vext
