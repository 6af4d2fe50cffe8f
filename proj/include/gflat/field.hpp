#pragma once

#include <Eigen/Core>
#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "gflat/expr.hpp"
#include "gflat/geom.hpp"

namespace gflat {

// Uniform rectilinear sample grid, row-major with the last axis
// fastest.  Nine samples per axis is the minimum for the interior
// stencils of fourth derivatives.
struct GridSpec {
  Eigen::VectorXd origin;
  Eigen::VectorXd spacing;
  std::vector<int> counts;
  std::vector<double> values;

  int dim() const { return static_cast<int>(counts.size()); }
  std::size_t sample_count() const;
};

// CSV exchange format (see README): a literal header line
// "origin,spacing,counts", one metadata line with the n origin
// components, n spacings and n counts, then the samples in row-major
// order (line wrapping insignificant).
GridSpec read_grid_csv(std::istream& in);
GridSpec read_grid_csv_file(const std::string& path);
void write_grid_csv(std::ostream& out, const GridSpec& spec);

// A scalar field u: R^n -> R with either an analytic (expression tree,
// exact derivatives) or grid (finite differences) backend.  Immutable
// after construction; evaluations are pure, so concurrent use is safe.
class ScalarField {
 public:
  // Guard radius around declared excluded sets: evaluations refuse
  // points closer than this.
  static constexpr double kAnalyticGuard = 1e-6;

  static ScalarField analytic(ExprPtr expr, int dim);
  static ScalarField analytic(ExprPtr expr, int dim, Box domain, ExcludedSet excluded = {});
  static ScalarField from_grid(GridSpec spec);

  int dim() const;
  bool is_analytic() const;
  const Box& domain() const;
  const ExcludedSet& excluded() const;
  double excluded_guard() const;

  const std::string& name() const;
  ScalarField with_name(std::string name) const;
  ScalarField with_domain(Box domain) const;

  const ExprPtr& expr() const;    // analytic backend only
  const GridSpec& grid() const;   // grid backend only

  bool admissible(const Eigen::VectorXd& x) const;
  void require_admissible(const Eigen::VectorXd& x) const;

  double value(const Eigen::VectorXd& x) const;

 private:
  struct Impl;
  ScalarField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Derivatives of t -> u(x0 + t v) at t = 0 up to `degree` <= 4.  The
// direction need not be unit; derivs[k] scales with |v|^k.
struct Jet {
  Eigen::VectorXd base;
  Eigen::VectorXd direction;
  int degree = 0;
  std::array<double, kJetDegree + 1> derivs{};
};

// Value, gradient and (symmetric) Hessian at a point.
struct PointJet2 {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

// Analytic backend: exact to rounding, off-diagonal Hessian entries by
// polarization of directional jets.  Grid backend: second-order
// central stencils on multilinearly resampled values.
PointJet2 jet2_at(const ScalarField& field, const Eigen::VectorXd& x);

Jet directional_jet(const ScalarField& field, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& v, int degree);

// D^3 u[eta, gamma, gamma] by polarization of pure third derivatives.
double third_mixed(const ScalarField& field, const Eigen::VectorXd& x0,
                   const Eigen::VectorXd& eta, const Eigen::VectorXd& gamma);

// D^4 u[eta, eta, gamma, gamma] by polarization of pure fourth
// derivatives.
double fourth_mixed(const ScalarField& field, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& eta, const Eigen::VectorXd& gamma);

// Max over a fixed direction set of the discrepancy between analytic
// order-th directional derivatives and Richardson-extrapolated central
// differences of plain values, relative with absolute fallback
// (denominator max(|a|, |b|, 1)).  Analytic backend only.
double fd_crosscheck(const ScalarField& field, const Eigen::VectorXd& x0, int order);

}  // namespace gflat
