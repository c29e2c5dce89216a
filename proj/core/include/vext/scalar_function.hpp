#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vext/point.hpp"

namespace vext {

/// Catalog of extended-real-valued functions on R used by the problem layer
/// and by epigraph/graph sets. Every variant is lower semicontinuous; +inf
/// encodes points outside the domain.
enum class FunctionKind {
  Reciprocal,          // 1/x, +inf at 0
  PiecewiseParabolic,  // 1/|x| - (x-j)^2 on [j-1/2, j+1/2), 7/4 on (-1/2,1/2)
  OscillatorySine,     // u*sin(1/u) around each center 2j/pi, 0 at centers
  Polynomial,          // coeffs[0] + coeffs[1]*x + ...
  Tabulated,           // piecewise-linear on [xs.front(), xs.back()], +inf outside
  AbsValue,            // |x|
  SqrtAbs,             // sign * sqrt(|x|)
  ExpNeg,              // exp(-x)
  SinReciprocal,       // sin(1/x), +inf at 0 (graph catalog)
  ReciprocalPlusSin,   // 1/x + sin(1/x), +inf at 0 (graph catalog)
};

struct SubdiffInfo {
  enum class Kind {
    Smooth,           // derivative exists: [lo,lo]
    ConvexKink,       // one-sided slopes jump up: [lo,hi]
    LowerHalfplane,   // epigraph normal cone is the closed lower halfplane
    TrivialCone,      // epigraph normal cone reduces to {0}; subdifferential empty
    Unsupported,
  } kind = Kind::Unsupported;
  double lo = 0.0;
  double hi = 0.0;
};

class ScalarFunction {
 public:
  ScalarFunction() = default;

  static ScalarFunction reciprocal();
  static ScalarFunction piecewise_parabolic();
  static ScalarFunction oscillatory_sine();
  static ScalarFunction polynomial(std::vector<double> coeffs);
  static ScalarFunction tabulated(std::vector<double> xs, std::vector<double> ys);
  static ScalarFunction abs_value();
  static ScalarFunction sqrt_abs(double sign = 1.0);
  static ScalarFunction exp_neg();
  static ScalarFunction sin_reciprocal();
  static ScalarFunction reciprocal_plus_sin();

  /// Extended-real evaluation; +inf outside the domain.
  double eval(double x) const;
  bool finite_at(double x) const;

  /// Derivative where the variant is differentiable; nullopt otherwise.
  std::optional<double> derivative(double x) const;

  /// Local subdifferential structure at x (for epigraph cone models).
  SubdiffInfo subdiff(double x) const;

  /// True when the variant is convex on its domain.
  bool convex() const;

  FunctionKind kind() const { return kind_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double sign() const { return sign_; }

  std::string describe() const;

 private:
  FunctionKind kind_ = FunctionKind::Polynomial;
  std::vector<double> coeffs_{0.0};
  std::vector<double> xs_, ys_;  // Tabulated
  double sign_ = 1.0;            // SqrtAbs
};

}  // namespace vext
