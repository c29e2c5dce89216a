#include "vext/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vext {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kPi = std::acos(-1.0);

// Window index for the piecewise-parabolic catalog entry: x in [j-1/2, j+1/2).
long window_index(double x) { return static_cast<long>(std::floor(x + 0.5)); }
}  // namespace

ScalarFunction ScalarFunction::reciprocal() {
  ScalarFunction f;
  f.kind_ = FunctionKind::Reciprocal;
  return f;
}

ScalarFunction ScalarFunction::piecewise_parabolic() {
  ScalarFunction f;
  f.kind_ = FunctionKind::PiecewiseParabolic;
  return f;
}

ScalarFunction ScalarFunction::oscillatory_sine() {
  ScalarFunction f;
  f.kind_ = FunctionKind::OscillatorySine;
  return f;
}

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
  ScalarFunction f;
  f.kind_ = FunctionKind::Polynomial;
  if (coeffs.empty()) coeffs.push_back(0.0);
  f.coeffs_ = std::move(coeffs);
  return f;
}

ScalarFunction ScalarFunction::tabulated(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    fail(ErrorCode::InvalidArgument, "tabulated: need >= 2 sorted samples");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] <= xs[i - 1]) fail(ErrorCode::InvalidArgument, "tabulated: xs must be increasing");
  ScalarFunction f;
  f.kind_ = FunctionKind::Tabulated;
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  return f;
}

ScalarFunction ScalarFunction::abs_value() {
  ScalarFunction f;
  f.kind_ = FunctionKind::AbsValue;
  return f;
}

ScalarFunction ScalarFunction::sqrt_abs(double sign) {
  if (sign != 1.0 && sign != -1.0) fail(ErrorCode::InvalidArgument, "sqrt_abs: sign must be +-1");
  ScalarFunction f;
  f.kind_ = FunctionKind::SqrtAbs;
  f.sign_ = sign;
  return f;
}

ScalarFunction ScalarFunction::exp_neg() {
  ScalarFunction f;
  f.kind_ = FunctionKind::ExpNeg;
  return f;
}

ScalarFunction ScalarFunction::sin_reciprocal() {
  ScalarFunction f;
  f.kind_ = FunctionKind::SinReciprocal;
  return f;
}

ScalarFunction ScalarFunction::reciprocal_plus_sin() {
  ScalarFunction f;
  f.kind_ = FunctionKind::ReciprocalPlusSin;
  return f;
}

double ScalarFunction::eval(double x) const {
  switch (kind_) {
    case FunctionKind::Reciprocal: return x == 0.0 ? kInf : 1.0 / x;
    case FunctionKind::PiecewiseParabolic: {
      long j = window_index(x);
      if (j == 0) return 7.0 / 4.0;
      double d = x - static_cast<double>(j);
      return 1.0 / std::abs(x) - d * d;
    }
    case FunctionKind::OscillatorySine: {
      double m = std::floor(x * kPi / 2.0 + 0.5);
      double u = x - 2.0 * m / kPi;
      if (u == 0.0) return 0.0;
      return u * std::sin(1.0 / u);
    }
    case FunctionKind::Polynomial: {
      double v = 0.0;
      for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * x + coeffs_[i];
      return v;
    }
    case FunctionKind::Tabulated: {
      if (x < xs_.front() || x > xs_.back()) return kInf;
      auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      std::size_t hi = std::min<std::size_t>(xs_.size() - 1,
                                             static_cast<std::size_t>(it - xs_.begin()));
      if (hi == 0) hi = 1;
      std::size_t lo = hi - 1;
      double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
      return ys_[lo] + t * (ys_[hi] - ys_[lo]);
    }
    case FunctionKind::AbsValue: return std::abs(x);
    case FunctionKind::SqrtAbs: return sign_ * std::sqrt(std::abs(x));
    case FunctionKind::ExpNeg: return std::exp(-x);
    case FunctionKind::SinReciprocal: return x == 0.0 ? kInf : std::sin(1.0 / x);
    case FunctionKind::ReciprocalPlusSin:
      return x == 0.0 ? kInf : 1.0 / x + std::sin(1.0 / x);
  }
  return kInf;
}

bool ScalarFunction::finite_at(double x) const { return std::isfinite(eval(x)); }

std::optional<double> ScalarFunction::derivative(double x) const {
  switch (kind_) {
    case FunctionKind::Reciprocal:
      if (x == 0.0) return std::nullopt;
      return -1.0 / (x * x);
    case FunctionKind::PiecewiseParabolic: {
      long j = window_index(x);
      if (j == 0) return 0.0;
      // kinks at half-integer window boundaries
      double b = static_cast<double>(j) - 0.5;
      if (x == b || x == b + 1.0) return std::nullopt;
      double s = x > 0 ? 1.0 : -1.0;
      return -s / (x * x) - 2.0 * (x - static_cast<double>(j));
    }
    case FunctionKind::OscillatorySine: {
      double m = std::floor(x * kPi / 2.0 + 0.5);
      double u = x - 2.0 * m / kPi;
      if (u == 0.0 || std::abs(std::abs(u) - 1.0 / kPi) < 1e-15) return std::nullopt;
      return std::sin(1.0 / u) - std::cos(1.0 / u) / u;
    }
    case FunctionKind::Polynomial: {
      double v = 0.0;
      for (std::size_t i = coeffs_.size(); i-- > 1;)
        v = v * x + coeffs_[i] * static_cast<double>(i);
      return v;
    }
    case FunctionKind::Tabulated: return std::nullopt;
    case FunctionKind::AbsValue:
      if (x == 0.0) return std::nullopt;
      return x > 0 ? 1.0 : -1.0;
    case FunctionKind::SqrtAbs:
      if (x == 0.0) return std::nullopt;
      return sign_ * (x > 0 ? 1.0 : -1.0) / (2.0 * std::sqrt(std::abs(x)));
    case FunctionKind::ExpNeg: return -std::exp(-x);
    case FunctionKind::SinReciprocal:
      if (x == 0.0) return std::nullopt;
      return -std::cos(1.0 / x) / (x * x);
    case FunctionKind::ReciprocalPlusSin:
      if (x == 0.0) return std::nullopt;
      return -1.0 / (x * x) - std::cos(1.0 / x) / (x * x);
  }
  return std::nullopt;
}

SubdiffInfo ScalarFunction::subdiff(double x) const {
  SubdiffInfo info;
  if (auto d = derivative(x)) {
    info.kind = SubdiffInfo::Kind::Smooth;
    info.lo = info.hi = *d;
    return info;
  }
  switch (kind_) {
    case FunctionKind::AbsValue:
      info.kind = SubdiffInfo::Kind::ConvexKink;
      info.lo = -1.0;
      info.hi = 1.0;
      return info;
    case FunctionKind::PiecewiseParabolic: {
      // One-sided slopes at a window boundary b = j + 1/2: the slope jumps up
      // by 2, a convex corner of the graph.
      double s = x > 0 ? 1.0 : -1.0;
      long jl = window_index(x - 1e-9);
      long jr = window_index(x + 1e-9);
      if (jl == 0 || jr == 0) {
        // boundary of the flat center piece: the slope jumps down, a concave
        // corner, so the Frechet normal cone of the epigraph is {0}
        info.kind = SubdiffInfo::Kind::TrivialCone;
        return info;
      }
      double left = -s / (x * x) - 2.0 * (x - static_cast<double>(jl));
      double right = -s / (x * x) - 2.0 * (x - static_cast<double>(jr));
      info.kind = SubdiffInfo::Kind::ConvexKink;
      info.lo = std::min(left, right);
      info.hi = std::max(left, right);
      return info;
    }
    case FunctionKind::SqrtAbs:
      // x == 0: the upward cusp has the whole lower halfplane as epigraph
      // normal cone; the downward cusp pinches it to {0}.
      info.kind = sign_ > 0 ? SubdiffInfo::Kind::LowerHalfplane : SubdiffInfo::Kind::TrivialCone;
      return info;
    case FunctionKind::OscillatorySine:
      // centers and window boundaries: oscillation kills Frechet normals
      info.kind = SubdiffInfo::Kind::TrivialCone;
      return info;
    default:
      info.kind = SubdiffInfo::Kind::Unsupported;
      return info;
  }
}

bool ScalarFunction::convex() const {
  switch (kind_) {
    case FunctionKind::AbsValue:
    case FunctionKind::ExpNeg: return true;
    case FunctionKind::Polynomial:
      if (coeffs_.size() <= 2) return true;  // affine
      if (coeffs_.size() == 3) return coeffs_[2] >= 0.0;
      return false;
    default: return false;
  }
}

std::string ScalarFunction::describe() const {
  switch (kind_) {
    case FunctionKind::Reciprocal: return "1/x";
    case FunctionKind::PiecewiseParabolic: return "1/|x| - (x-j)^2 on windows [j-1/2, j+1/2)";
    case FunctionKind::OscillatorySine: return "u*sin(1/u) around centers 2j/pi";
    case FunctionKind::Polynomial: {
      std::string s = "poly[";
      for (std::size_t i = 0; i < coeffs_.size(); ++i)
        s += (i ? "," : "") + std::to_string(coeffs_[i]);
      return s + "]";
    }
    case FunctionKind::Tabulated: return "tabulated(" + std::to_string(xs_.size()) + " pts)";
    case FunctionKind::AbsValue: return "|x|";
    case FunctionKind::SqrtAbs: return sign_ > 0 ? "sqrt|x|" : "-sqrt|x|";
    case FunctionKind::ExpNeg: return "exp(-x)";
    case FunctionKind::SinReciprocal: return "sin(1/x)";
    case FunctionKind::ReciprocalPlusSin: return "1/x + sin(1/x)";
  }
  return "?";
}

}  // namespace vext
