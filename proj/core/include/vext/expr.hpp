#pragma once

#include <map>
#include <memory>
#include <string>

#include "vext/point.hpp"

namespace vext {

/// A tiny arithmetic expression over named variables, used for closed-form
/// sequence coordinates and analytic hint magnitudes in config files.
/// Grammar: + - * / ^, unary minus, parentheses, the functions
/// sin cos exp log sqrt abs sign, and the constants pi, e.
class Expr {
 public:
  Expr() = default;

  /// Parses `text`; throws Error(ConfigError) on malformed input.
  static Expr parse(const std::string& text);

  double eval(const std::map<std::string, double>& vars) const;
  double eval_k(double k) const { return eval({{"k", k}}); }

  const std::string& text() const { return text_; }
  bool empty() const { return root_ == nullptr; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace vext
