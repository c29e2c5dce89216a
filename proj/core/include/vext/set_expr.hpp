#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "vext/point.hpp"
#include "vext/scalar_function.hpp"

namespace vext {

enum class Rel { LE, GE, LT, GT };

/// <a, x> <= b (strict: < b). A strict halfspace is an open set.
struct HalfspaceData {
  std::vector<double> a;
  double b = 0.0;
  bool strict = false;
};

/// Euclidean ball.
struct BallData {
  Point center;
  double radius = 1.0;
  bool open = false;
};

struct PolyhedronData {
  std::vector<HalfspaceData> faces;
};

struct MonomialData {
  double coef = 0.0;
  std::vector<int> pows;  // one exponent per coordinate
};

/// {x : p(x) rel value} intersected with side halfspaces. `convex_hint`
/// certifies convexity for instances where it is known analytically.
struct PolynomialRegionData {
  std::vector<MonomialData> terms;
  Rel rel = Rel::LE;
  double value = 0.0;
  std::vector<HalfspaceData> side;
  bool convex_hint = false;
};

/// {(x, alpha) : alpha >= f(x)} in R^2.
struct EpigraphData {
  ScalarFunction f;
};

/// {(x, f(x)) : x in dom f} in R^2.
struct GraphData {
  ScalarFunction g;
};

struct WholeSpaceData {
  int dim = 1;
};

class SetExpr;

/// base x (-inf, level].
struct ProductWithRayData {
  std::shared_ptr<const SetExpr> base;
  double level = 0.0;
};

struct TranslateData {
  std::shared_ptr<const SetExpr> base;
  Point shift;
};

struct ProductData {
  std::vector<SetExpr> parts;
};

struct Capabilities {
  bool membership = true;
  bool exact_projection = false;
  bool iterative_projection = false;
  bool cone_model = false;
};

/// Symbolic description of a structured subset of R^n. Immutable after
/// construction and freely shareable.
class SetExpr {
 public:
  using Node = std::variant<HalfspaceData, BallData, PolyhedronData, PolynomialRegionData,
                            EpigraphData, GraphData, WholeSpaceData, ProductWithRayData,
                            TranslateData, ProductData>;

  SetExpr();  // whole line R
  static SetExpr halfspace(std::vector<double> a, double b, bool strict = false);
  static SetExpr ball(Point center, double radius, bool open = false);
  static SetExpr polyhedron(std::vector<HalfspaceData> faces);
  static SetExpr polynomial_region(std::vector<MonomialData> terms, Rel rel, double value,
                                   std::vector<HalfspaceData> side = {}, bool convex_hint = false);
  static SetExpr epigraph(ScalarFunction f);
  static SetExpr graph(ScalarFunction g);
  static SetExpr whole_space(int dim);
  static SetExpr product_with_ray(SetExpr base, double level);
  /// Translate(Translate(S,u),v) canonicalizes to Translate(S,u+v).
  static SetExpr translate(SetExpr base, Point shift);
  static SetExpr product(std::vector<SetExpr> parts);

  int dim() const;
  Capabilities caps() const;
  bool convex_certified() const;
  const Node& node() const { return *node_; }
  std::string describe() const;

 private:
  explicit SetExpr(Node n);
  std::shared_ptr<const Node> node_;
};

/// Constraint satisfaction with signed slack: closed relations are tested as
/// g <= v + closed_slack, strict ones as g < v + strict_slack. Negative slack
/// demands an interior margin.
bool members(const SetExpr& set, const Point& p, double closed_slack, double strict_slack);

/// Membership within tol; strict relations require margin > tol.
bool contains(const SetExpr& set, const Point& p, double tol);

/// Euclidean projection (onto the closure for strict/open variants).
/// Exact for Halfspace/Ball/Polyhedron/box-like variants, iterative 1-D
/// search otherwise. Throws UnsupportedCapability when no routine applies,
/// NonConvergence when the iterative budget is exhausted.
Point project(const SetExpr& set, const Point& p, double tol);

double polynomial_eval(const PolynomialRegionData& r, const Point& p);
std::vector<double> polynomial_grad(const PolynomialRegionData& r, const Point& p);

}  // namespace vext
