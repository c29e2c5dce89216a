#include "vext/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <vector>

namespace vext {

struct Expr::Node {
  enum class Kind { Const, Var, Unary, Binary, Call } kind;
  double value = 0.0;
  std::string name;
  char op = 0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrorCode::ConfigError, "expr '" + s + "' at " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  NodePtr make_const(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Const;
    n->value = v;
    return n;
  }

  NodePtr make_bin(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Node::Kind::Binary;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr parse_expr() {
    NodePtr n = parse_term();
    for (;;) {
      if (eat('+'))
        n = make_bin('+', n, parse_term());
      else if (eat('-'))
        n = make_bin('-', n, parse_term());
      else
        return n;
    }
  }

  NodePtr parse_term() {
    NodePtr n = parse_unary();
    for (;;) {
      if (eat('*'))
        n = make_bin('*', n, parse_unary());
      else if (eat('/'))
        n = make_bin('/', n, parse_unary());
      else
        return n;
    }
  }

  // unary minus binds looser than ^, so -k^2 = -(k^2)
  NodePtr parse_unary() {
    if (eat('-')) {
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::Kind::Unary;
      n->op = '-';
      n->lhs = parse_unary();
      return n;
    }
    (void)eat('+');
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (eat('^')) return make_bin('^', base, parse_unary());  // right associative
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos >= s.size()) err("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr n = parse_expr();
      if (!eat(')')) err("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos;
      while (end < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.' || s[end] == 'e' ||
              s[end] == 'E' || ((s[end] == '+' || s[end] == '-') && (s[end - 1] == 'e' || s[end - 1] == 'E'))))
        ++end;
      double v = 0.0;
      try {
        v = std::stod(s.substr(pos, end - pos));
      } catch (...) {
        err("bad number literal");
      }
      pos = end;
      return make_const(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos;
      while (end < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
        ++end;
      std::string name = s.substr(pos, end - pos);
      pos = end;
      if (name == "pi") return make_const(std::acos(-1.0));
      if (name == "e") return make_const(std::exp(1.0));
      skip_ws();
      if (pos < s.size() && s[pos] == '(') {
        ++pos;
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::Call;
        n->name = name;
        n->lhs = parse_expr();
        if (!eat(')')) err("expected ')' after call argument");
        return n;
      }
      auto n = std::make_shared<Expr::Node>();
      n->kind = Expr::Node::Kind::Var;
      n->name = name;
      return n;
    }
    err(std::string("unexpected character '") + c + "'");
  }
};

double eval_node(const Expr::Node& n, const std::map<std::string, double>& vars) {
  using Kind = Expr::Node::Kind;
  switch (n.kind) {
    case Kind::Const: return n.value;
    case Kind::Var: {
      auto it = vars.find(n.name);
      if (it == vars.end()) fail(ErrorCode::ConfigError, "expr: unbound variable '" + n.name + "'");
      return it->second;
    }
    case Kind::Unary: return -eval_node(*n.lhs, vars);
    case Kind::Binary: {
      double a = eval_node(*n.lhs, vars);
      double b = eval_node(*n.rhs, vars);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
      }
      return 0.0;
    }
    case Kind::Call: {
      double a = eval_node(*n.lhs, vars);
      if (n.name == "sin") return std::sin(a);
      if (n.name == "cos") return std::cos(a);
      if (n.name == "exp") return std::exp(a);
      if (n.name == "log") return std::log(a);
      if (n.name == "sqrt") return std::sqrt(a);
      if (n.name == "abs") return std::abs(a);
      if (n.name == "sign") return a > 0 ? 1.0 : (a < 0 ? -1.0 : 0.0);
      fail(ErrorCode::ConfigError, "expr: unknown function '" + n.name + "'");
    }
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Parser p(text);
  Expr e;
  e.root_ = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing input");
  e.text_ = text;
  return e;
}

double Expr::eval(const std::map<std::string, double>& vars) const {
  if (!root_) fail(ErrorCode::ConfigError, "empty expression");
  return eval_node(*root_, vars);
}

}  // namespace vext
