#pragma once

#include <string>
#include <vector>

#include "vext/expr.hpp"
#include "vext/point.hpp"

namespace vext {

/// Family k |-> (x_1^k, ..., x_n^k) of points, one per set, or a single
/// sequence for the one-sequence properties. Closed forms are expressions in
/// k (total for every k >= 1); tabulated specs are finite.
class SequenceSpec {
 public:
  SequenceSpec() = default;

  /// coords[i][j] = expression for coordinate j of the i-th sequence.
  static SequenceSpec closed_form(std::vector<std::vector<std::string>> coords);
  static SequenceSpec single_closed_form(std::vector<std::string> coords);
  static SequenceSpec tabulated(std::vector<std::vector<Point>> tables);
  static SequenceSpec single_tabulated(std::vector<Point> table);

  bool single() const { return single_; }
  int n_sets() const { return static_cast<int>(closed_.size() ? closed_.size() : tables_.size()); }
  int dim() const;
  long max_k() const;  // +inf (LONG_MAX) for closed forms

  Point eval(int sequence_index, long k) const;
  Point eval_single(long k) const;
  std::vector<Point> eval_all(long k) const;

  bool is_closed_form() const { return !closed_.empty(); }
  const std::vector<std::vector<std::string>>& closed_form_text() const { return texts_; }
  const std::vector<std::vector<Point>>& tables() const { return tables_; }

 private:
  bool single_ = false;
  std::vector<std::vector<Expr>> closed_;
  std::vector<std::vector<std::string>> texts_;
  std::vector<std::vector<Point>> tables_;
};

}  // namespace vext
