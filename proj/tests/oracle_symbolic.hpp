#pragma once

// Test-only symbolic differentiation over the expression node set: an
// oracle for the Taylor-jet derivative path that shares nothing with
// it beyond plain value evaluation.

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "gflat/expr.hpp"

namespace gflat::testing {

inline ExprPtr derivative(const ExprPtr& e, int var) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::constant:
      return Expr::number(0.0);
    case K::variable:
      return Expr::number(e->var_index == var ? 1.0 : 0.0);
    case K::add:
      return Expr::add(derivative(e->lhs, var), derivative(e->rhs, var));
    case K::sub:
      return Expr::sub(derivative(e->lhs, var), derivative(e->rhs, var));
    case K::mul:
      return Expr::add(Expr::mul(derivative(e->lhs, var), e->rhs),
                       Expr::mul(e->lhs, derivative(e->rhs, var)));
    case K::div:
      return Expr::div(Expr::sub(Expr::mul(derivative(e->lhs, var), e->rhs),
                                 Expr::mul(e->lhs, derivative(e->rhs, var))),
                       Expr::pow(e->rhs, 2));
    case K::pow:
      if (e->exponent == 0) return Expr::number(0.0);
      return Expr::mul(
          Expr::mul(Expr::number(e->exponent), Expr::pow(e->lhs, e->exponent - 1)),
          derivative(e->lhs, var));
    case K::call: {
      ExprPtr inner = derivative(e->lhs, var);
      switch (e->func) {
        case FuncKind::sqrt:
          return Expr::div(inner,
                           Expr::mul(Expr::number(2.0), Expr::call(FuncKind::sqrt, e->lhs)));
        case FuncKind::exp:
          return Expr::mul(inner, Expr::call(FuncKind::exp, e->lhs));
        case FuncKind::log:
          return Expr::div(inner, e->lhs);
        case FuncKind::abs:
          // sign(f) = f / |f|, valid off the zero set.
          return Expr::mul(Expr::div(e->lhs, Expr::call(FuncKind::abs, e->lhs)), inner);
      }
    }
  }
  throw std::logic_error("unreachable");
}

inline double partial(const ExprPtr& e, const std::vector<int>& vars,
                      const Eigen::VectorXd& x) {
  ExprPtr d = e;
  for (int v : vars) d = derivative(d, v);
  return eval(*d, x);
}

// Full tensor contraction sum over all coordinate multi-indices of
// dirs[0]_{i1} ... dirs[k-1]_{ik} * u_{i1...ik}(x).
inline double contract(const ExprPtr& e, const std::vector<Eigen::VectorXd>& dirs,
                       const Eigen::VectorXd& x) {
  const int k = static_cast<int>(dirs.size());
  const int n = static_cast<int>(x.size());
  std::vector<int> index(static_cast<std::size_t>(k), 0);
  double sum = 0.0;
  while (true) {
    double weight = 1.0;
    for (int s = 0; s < k; ++s)
      weight *= dirs[static_cast<std::size_t>(s)][index[static_cast<std::size_t>(s)]];
    if (weight != 0.0) sum += weight * partial(e, index, x);
    int axis = k - 1;
    while (axis >= 0 && ++index[static_cast<std::size_t>(axis)] == n) {
      index[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return sum;
}

// The weight-cleared Minkowski mean curvature as an expression tree:
// (1 - |Du|^2) lap(u) + sum_ij u_i u_j u_ij.
inline ExprPtr htilde_expr(const ExprPtr& u, int dim) {
  std::vector<ExprPtr> grad;
  for (int i = 0; i < dim; ++i) grad.push_back(derivative(u, i));

  ExprPtr grad_sq = Expr::pow(grad[0], 2);
  for (int i = 1; i < dim; ++i)
    grad_sq = Expr::add(std::move(grad_sq), Expr::pow(grad[static_cast<std::size_t>(i)], 2));

  ExprPtr lap = derivative(grad[0], 0);
  for (int i = 1; i < dim; ++i)
    lap = Expr::add(std::move(lap), derivative(grad[static_cast<std::size_t>(i)], i));

  ExprPtr weighted = Expr::mul(Expr::sub(Expr::number(1.0), std::move(grad_sq)), std::move(lap));

  ExprPtr contraction;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      ExprPtr term = Expr::mul(Expr::mul(grad[static_cast<std::size_t>(i)],
                                         grad[static_cast<std::size_t>(j)]),
                               derivative(grad[static_cast<std::size_t>(i)], j));
      contraction = contraction ? Expr::add(std::move(contraction), std::move(term))
                                : std::move(term);
    }
  }
  return Expr::add(std::move(weighted), std::move(contraction));
}

}  // namespace gflat::testing
