#include "gflat/corpus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gflat/sampling.hpp"

namespace gflat::corpus {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string fmt(const Eigen::VectorXd& v) {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "]";
  return out.str();
}

// x1^2 + ... + xk^2 as an expression tree.
ExprPtr sum_of_squares(int k) {
  ExprPtr sum = Expr::pow(Expr::variable(0), 2);
  for (int i = 1; i < k; ++i)
    sum = Expr::add(std::move(sum), Expr::pow(Expr::variable(i), 2));
  return sum;
}

// c0 + sum_i coeff[i] * x_i.
ExprPtr linear_form(const Eigen::VectorXd& coeff, double c0) {
  ExprPtr e = Expr::number(c0);
  for (int i = 0; i < coeff.size(); ++i) {
    if (coeff[i] == 0.0) continue;
    e = Expr::add(std::move(e), Expr::mul(Expr::number(coeff[i]), Expr::variable(i)));
  }
  return e;
}

}  // namespace

ScalarField example11(double a, double c, int dim, double half_width) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("example11 needs 0 < a < 1");
  if (!(c > 0.0)) throw std::invalid_argument("example11 needs c > 0");
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  ExprPtr e = Expr::mul(Expr::number(a),
                        Expr::call(FuncKind::sqrt,
                                   Expr::add(Expr::pow(Expr::variable(0), 2), Expr::number(c))));
  return ScalarField::analytic(std::move(e), dim, Box::cube(dim, half_width))
      .with_name("example-1.1(a=" + fmt(a) + ",c=" + fmt(c) + ")");
}

ScalarField cone(double a, int dim, double half_width) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("cone needs 0 < a < 1");
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  ExprPtr e = Expr::mul(Expr::number(a), Expr::call(FuncKind::sqrt, sum_of_squares(dim)));
  ExcludedSet excluded({AffineSubspace::single_point(Eigen::VectorXd::Zero(dim))});
  return ScalarField::analytic(std::move(e), dim, Box::cube(dim, half_width),
                               std::move(excluded))
      .with_name("cone(a=" + fmt(a) + ")");
}

ScalarField vk(double a, int k, int dim, double half_width) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("vk needs 0 < a < 1");
  if (k < 1 || k >= dim) throw std::invalid_argument("vk needs 1 <= k < dim");
  ExprPtr e = Expr::mul(Expr::number(a), Expr::call(FuncKind::sqrt, sum_of_squares(k)));
  // Singular on the subspace x1 = ... = xk = 0.
  Eigen::MatrixXd directions = Eigen::MatrixXd::Zero(dim, dim - k);
  for (int j = k; j < dim; ++j) directions(j, j - k) = 1.0;
  ExcludedSet excluded({AffineSubspace::span(Eigen::VectorXd::Zero(dim), directions)});
  return ScalarField::analytic(std::move(e), dim, Box::cube(dim, half_width),
                               std::move(excluded))
      .with_name("vk(a=" + fmt(a) + ",k=" + fmt(k) + ")");
}

ScalarField affine(const Eigen::VectorXd& slope, double offset, double half_width) {
  const int dim = static_cast<int>(slope.size());
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  return ScalarField::analytic(linear_form(slope, offset), dim, Box::cube(dim, half_width))
      .with_name("affine(b=" + fmt(slope) + ",beta=" + fmt(offset) + ")");
}

ScalarField half_sq_norm(int dim, double half_width) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  ExprPtr e = Expr::mul(Expr::number(0.5), sum_of_squares(dim));
  return ScalarField::analytic(std::move(e), dim, Box::cube(dim, half_width))
      .with_name("quadratic(|x|^2/2)");
}

ScalarField softplus_cylinder(double beta, const Eigen::VectorXd& axis, double shift,
                              const Eigen::VectorXd& slope, double offset,
                              double half_width) {
  const int dim = static_cast<int>(axis.size());
  if (dim < 2) throw std::invalid_argument("softplus cylinder needs dim >= 2");
  if (!(beta > 0.0)) throw std::invalid_argument("softplus cylinder needs beta > 0");
  if (slope.size() != dim) throw std::invalid_argument("slope dimension mismatch");
  ExprPtr s = linear_form(axis, shift);
  ExprPtr softplus = Expr::call(
      FuncKind::log, Expr::add(Expr::number(1.0), Expr::call(FuncKind::exp, std::move(s))));
  ExprPtr e = Expr::mul(Expr::number(beta), std::move(softplus));
  if (!slope.isZero(0.0) || offset != 0.0)
    e = Expr::add(std::move(e), linear_form(slope, offset));
  return ScalarField::analytic(std::move(e), dim, Box::cube(dim, half_width))
      .with_name("softplus-cylinder(beta=" + fmt(beta) + ",axis=" + fmt(axis) +
                 ",shift=" + fmt(shift) + ")");
}

ScalarField exp_cylinder(int dim, double half_width) {
  if (dim < 2) throw std::invalid_argument("exp cylinder needs dim >= 2");
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(dim);
  ExprPtr e = Expr::div(Expr::call(FuncKind::exp, linear_form(ones, 0.0)), Expr::number(10.0));
  return ScalarField::analytic(std::move(e), dim, Box::cube(dim, half_width))
      .with_name("exp-cylinder(n=" + fmt(dim) + ")");
}

std::vector<Entry> default_entries() {
  std::vector<Entry> entries;

  entries.push_back({"", example11(0.5, 1.0), true, true, false, true});
  entries.push_back({"", example11(0.3, 2.0), true, true, false, true});
  entries.push_back({"", cone(0.5, 2), true, true, false, true});
  entries.push_back({"", cone(0.7, 3), true, true, false, true});
  entries.push_back({"", vk(0.5, 2, 3), true, true, false, true});

  Eigen::VectorXd b2(2);
  b2 << 0.3, -0.2;
  entries.push_back({"", affine(b2, 0.7), true, true, true, true});
  Eigen::VectorXd b3(3);
  b3 << 0.1, 0.2, -0.3;
  entries.push_back({"", affine(b3, -1.0), true, true, true, true});

  entries.push_back({"", half_sq_norm(2), true, false, false, false});

  Eigen::VectorXd axis(2);
  axis << 0.8, 0.6;
  entries.push_back({"", softplus_cylinder(0.6, axis, 0.5, Eigen::VectorXd::Zero(2), 0.0),
                     true, true, false, true});

  entries.push_back({"", exp_cylinder(2), true, true, false, false});

  // Non-convex control case.
  ExprPtr saddle = Expr::mul(Expr::pow(Expr::variable(0), 2), Expr::variable(1));
  entries.push_back({"",
                     ScalarField::analytic(saddle, 2, Box::cube(2, 5.0))
                         .with_name("saddle(x1^2*x2)"),
                     false, false, false, false});

  for (auto& entry : entries) entry.name = entry.field.name();
  return entries;
}

Entry random_cylinder(std::uint64_t seed, int dim) {
  if (dim < 2) throw std::invalid_argument("random cylinder needs dim >= 2");
  auto uniform = [&](std::uint64_t salt, double lo, double hi) {
    const double u =
        static_cast<double>(splitmix64(seed ^ splitmix64(salt)) >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };

  const double beta = uniform(1, 0.2, 0.85);
  Eigen::VectorXd axis(dim);
  for (int i = 0; i < dim; ++i) axis[i] = uniform(10 + static_cast<std::uint64_t>(i), -1.0, 1.0);
  if (axis.norm() < 1e-3) axis[0] = 1.0;
  axis.normalize();
  const double shift = uniform(2, -3.0, 3.0);

  Eigen::VectorXd slope = Eigen::VectorXd::Zero(dim);
  const bool with_slope = uniform(3, 0.0, 1.0) > 0.5;
  if (with_slope) {
    for (int i = 0; i < dim; ++i)
      slope[i] = uniform(20 + static_cast<std::uint64_t>(i), -1.0, 1.0);
    const double budget = 0.95 - beta;
    if (slope.norm() > 0.0) slope *= budget / std::max(slope.norm(), 1.0) * uniform(4, 0.2, 1.0);
  }
  const double offset = uniform(5, -2.0, 2.0);

  const std::string name = "random-cylinder(seed=" + std::to_string(seed) + ")";
  ScalarField field =
      softplus_cylinder(beta, axis, shift, slope, offset).with_name(name);
  return Entry{name, std::move(field), /*convex=*/true, /*developable=*/true,
               /*affine=*/false, /*spacelike=*/true};
}

}  // namespace gflat::corpus
