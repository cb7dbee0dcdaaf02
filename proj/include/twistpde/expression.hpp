#pragma once

#include <memory>
#include <string>

#include "twistpde/grid.hpp"

namespace twistpde {

// Arithmetic expressions over x and y: +, -, *, /, ^, sin, cos, exp,
// numeric literals and pi. The grammar is spelled out in
// docs/expression_grammar.md. Parse errors throw ConfigError with the
// offending position.
class Expression {
public:
  static Expression parse(const std::string& source);

  double eval(double x, double y) const;
  const std::string& source() const { return source_; }
  ScalarFn fn() const;  // shares the parsed tree

  struct Node;

private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace twistpde
