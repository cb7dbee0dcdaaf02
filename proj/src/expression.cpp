#include "twistpde/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "twistpde/errors.hpp"

namespace twistpde {

enum class NodeOp { Const, X, Y, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

struct Expression::Node {
  NodeOp op;
  double c = 0.0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(NodeOp op, NodePtr a = nullptr, NodePtr b = nullptr,
             double c = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  n->c = c;
  return n;
}

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("expression error at position " + std::to_string(pos_) +
                      " in '" + s_ + "': " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = make(NodeOp::Add, lhs, term());
      else if (eat('-'))
        lhs = make(NodeOp::Sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (eat('*'))
        lhs = make(NodeOp::Mul, lhs, factor());
      else if (eat('/'))
        lhs = make(NodeOp::Div, lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    // Unary minus binds looser than '^': -x^2 is -(x^2).
    if (eat('-')) return make(NodeOp::Neg, factor());
    NodePtr base = primary();
    if (eat('^')) return make(NodeOp::Pow, base, factor());
    return base;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() &&
           std::isalpha(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  NodePtr primary() {
    char c = peek();
    if (c == '(') {
      eat('(');
      NodePtr e = expr();
      if (!eat(')')) fail("missing closing parenthesis");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      skip_ws();
      char* end = nullptr;
      double v = std::strtod(s_.c_str() + pos_, &end);
      if (end == s_.c_str() + pos_) fail("bad number");
      pos_ = end - s_.c_str();
      return make(NodeOp::Const, nullptr, nullptr, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name = ident();
      if (name == "x") return make(NodeOp::X);
      if (name == "y") return make(NodeOp::Y);
      if (name == "pi")
        return make(NodeOp::Const, nullptr, nullptr, M_PI);
      NodeOp op;
      if (name == "sin")
        op = NodeOp::Sin;
      else if (name == "cos")
        op = NodeOp::Cos;
      else if (name == "exp")
        op = NodeOp::Exp;
      else
        fail("unknown identifier '" + name + "'");
      if (!eat('(')) fail("expected '(' after function name");
      NodePtr arg = expr();
      if (!eat(')')) fail("missing closing parenthesis");
      return make(op, arg);
    }
    fail("expected a value");
  }

  const std::string& s_;
  size_t pos_ = 0;
};

double eval_node(const Expression::Node& n, double x, double y) {
  switch (n.op) {
    case NodeOp::Const: return n.c;
    case NodeOp::X: return x;
    case NodeOp::Y: return y;
    case NodeOp::Add: return eval_node(*n.a, x, y) + eval_node(*n.b, x, y);
    case NodeOp::Sub: return eval_node(*n.a, x, y) - eval_node(*n.b, x, y);
    case NodeOp::Mul: return eval_node(*n.a, x, y) * eval_node(*n.b, x, y);
    case NodeOp::Div: return eval_node(*n.a, x, y) / eval_node(*n.b, x, y);
    case NodeOp::Pow:
      return std::pow(eval_node(*n.a, x, y), eval_node(*n.b, x, y));
    case NodeOp::Neg: return -eval_node(*n.a, x, y);
    case NodeOp::Sin: return std::sin(eval_node(*n.a, x, y));
    case NodeOp::Cos: return std::cos(eval_node(*n.a, x, y));
    case NodeOp::Exp: return std::exp(eval_node(*n.a, x, y));
  }
  throw InternalError("expression: unknown node");
}

}  // namespace

Expression Expression::parse(const std::string& source) {
  Expression e;
  e.source_ = source;
  e.root_ = Parser(source).parse();
  return e;
}

double Expression::eval(double x, double y) const {
  return eval_node(*root_, x, y);
}

ScalarFn Expression::fn() const {
  auto root = root_;
  return [root](double x, double y) { return eval_node(*root, x, y); };
}

}  // namespace twistpde
