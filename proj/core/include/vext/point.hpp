#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace vext {

enum class ErrorCode {
  DimensionMismatch,
  UnsupportedCapability,
  NonConvergence,
  EmptyCatalogSet,
  MethodUnsupported,
  BaseNotInSet,
  InfiniteValueAtBase,
  UnknownExample,
  GapTooLarge,
  NonConvexInput,
  ConstructionFailed,
  InfeasibleBall,
  GridDimensionTooHigh,
  ConfigError,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

/// Point of R^d. Coordinates are always finite; unbounded quantities live in
/// parameters, never in stored coordinates.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) { check_finite(); }
  Point(std::initializer_list<double> c) : coords(c) { check_finite(); }

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }

  void check_finite() const {
    for (double v : coords)
      if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite coordinate in Point");
  }
};

/// Element of the dual space (a linear functional, stored by coordinates).
struct DualVector {
  std::vector<double> coords;

  DualVector() = default;
  explicit DualVector(std::vector<double> c) : coords(std::move(c)) { check_finite(); }
  DualVector(std::initializer_list<double> c) : coords(c) { check_finite(); }

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }

  void check_finite() const {
    for (double v : coords)
      if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite coordinate in DualVector");
  }
};

Point add(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point scale(const Point& a, double t);
Point zero_point(int dim);
double dot(const DualVector& f, const Point& p);
DualVector dv_add(const DualVector& a, const DualVector& b);
DualVector dv_scale(const DualVector& a, double t);

double l1_norm(const std::vector<double>& v);
double l2_norm(const std::vector<double>& v);
double linf_norm(const std::vector<double>& v);

inline bool same_dim(const Point& a, const Point& b) { return a.dim() == b.dim(); }

}  // namespace vext
