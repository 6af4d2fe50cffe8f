#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gflat/taylor.hpp"

namespace gflat {

enum class FuncKind { sqrt, exp, log, abs };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Immutable expression tree.  The node set is exactly the grammar's:
// numbers, variables x1..xn, + - * /, integer powers and the four
// built-in functions, so every derivative the Taylor arithmetic
// produces is exact to rounding.
struct Expr {
  enum class Kind { constant, variable, add, sub, mul, div, pow, call };

  Kind kind;
  double constant = 0.0;
  int var_index = -1;  // 0-based
  int exponent = 0;
  FuncKind func = FuncKind::sqrt;
  ExprPtr lhs;
  ExprPtr rhs;

  static ExprPtr number(double v);
  static ExprPtr variable(int index_zero_based);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr sub(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  static ExprPtr div(ExprPtr a, ExprPtr b);
  static ExprPtr pow(ExprPtr a, int exponent);
  static ExprPtr call(FuncKind f, ExprPtr a);
};

// Parses the expression grammar
//   expr   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' integer)?
//   atom   := number | 'x'index | '(' expr ')' | func '(' expr ')'
// with func in {sqrt, exp, log, abs} and variables among x1..xdim.
// Throws ParseError (position + token) on syntax errors, unknown
// identifiers, or variable indices exceeding dim.  Partial-function
// domains are not checked here; they surface at evaluation.
ExprPtr parse_expression(std::string_view source, int dim);

// Plain value; throws DomainError (carrying x) off partial-function
// domains.
double eval(const Expr& e, const Eigen::VectorXd& x);

// Degree-4 truncated Taylor expansion of t -> e(x0 + t v) at t = 0.
Taylor eval_taylor(const Expr& e, const Eigen::VectorXd& x0, const Eigen::VectorXd& v);

// Largest variable index used (1-based); 0 for constant expressions.
int max_variable(const Expr& e);

// Replaces variable i by replacements[i] everywhere.  Used to compose
// a field with a linear change of coordinates while staying inside the
// grammar's node set.
ExprPtr substitute(const ExprPtr& e, const std::vector<ExprPtr>& replacements);

// Parseable round trip, mostly for diagnostics and field names.
std::string to_string(const Expr& e);

}  // namespace gflat
