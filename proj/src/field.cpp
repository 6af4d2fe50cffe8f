#include "gflat/field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gflat/error.hpp"

namespace gflat {

namespace field_detail {
double interpolate(const GridSpec& g, const Eigen::VectorXd& x);
}

std::size_t GridSpec::sample_count() const {
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

struct ScalarField::Impl {
  int dim = 0;
  Box domain;
  ExcludedSet excluded;
  std::string name;

  ExprPtr expr;               // analytic backend
  std::shared_ptr<const GridSpec> grid;  // grid backend

  double guard = ScalarField::kAnalyticGuard;
};

ScalarField ScalarField::analytic(ExprPtr expr, int dim) {
  return analytic(std::move(expr), dim, Box::cube(dim, 1e6));
}

ScalarField ScalarField::analytic(ExprPtr expr, int dim, Box domain, ExcludedSet excluded) {
  if (dim < 1) throw std::invalid_argument("field dimension must be >= 1");
  if (!expr) throw std::invalid_argument("null expression");
  if (max_variable(*expr) > dim)
    throw std::invalid_argument("expression uses a variable beyond the field dimension");
  if (domain.dim() != dim) throw std::invalid_argument("domain dimension mismatch");
  auto impl = std::make_shared<Impl>();
  impl->dim = dim;
  impl->domain = std::move(domain);
  impl->excluded = std::move(excluded);
  impl->expr = std::move(expr);
  impl->guard = kAnalyticGuard;
  return ScalarField(std::move(impl));
}

ScalarField ScalarField::from_grid(GridSpec spec) {
  const int dim = spec.dim();
  if (dim < 1) throw std::invalid_argument("grid needs at least one axis");
  if (spec.origin.size() != dim || spec.spacing.size() != dim)
    throw std::invalid_argument("grid origin/spacing dimension mismatch");
  for (int i = 0; i < dim; ++i) {
    if (!(spec.spacing[i] > 0.0) || !std::isfinite(spec.spacing[i]))
      throw std::invalid_argument("non-uniform or non-positive grid spacing rejected");
    if (spec.counts[static_cast<std::size_t>(i)] < 9)
      throw std::invalid_argument("insufficient samples: need >= 9 per axis");
  }
  if (spec.values.size() != spec.sample_count())
    throw std::invalid_argument("grid sample count does not match axis counts");
  for (double v : spec.values)
    if (!std::isfinite(v)) throw std::invalid_argument("grid samples must be finite");

  auto impl = std::make_shared<Impl>();
  impl->dim = dim;
  Eigen::VectorXd hi = spec.origin;
  for (int i = 0; i < dim; ++i)
    hi[i] += spec.spacing[i] * (spec.counts[static_cast<std::size_t>(i)] - 1);
  impl->domain = Box::from_bounds(spec.origin, hi);
  impl->guard = 10.0 * spec.spacing.maxCoeff();
  impl->grid = std::make_shared<const GridSpec>(std::move(spec));
  return ScalarField(std::move(impl));
}

int ScalarField::dim() const { return impl_->dim; }
bool ScalarField::is_analytic() const { return impl_->expr != nullptr; }
const Box& ScalarField::domain() const { return impl_->domain; }
const ExcludedSet& ScalarField::excluded() const { return impl_->excluded; }
double ScalarField::excluded_guard() const { return impl_->guard; }
const std::string& ScalarField::name() const { return impl_->name; }

ScalarField ScalarField::with_name(std::string name) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->name = std::move(name);
  return ScalarField(std::move(impl));
}

ScalarField ScalarField::with_domain(Box domain) const {
  if (domain.dim() != impl_->dim) throw std::invalid_argument("domain dimension mismatch");
  if (impl_->grid && (!impl_->domain.contains(domain.lo) || !impl_->domain.contains(domain.hi)))
    throw std::invalid_argument("grid domain cannot grow beyond the sampled box");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->domain = std::move(domain);
  return ScalarField(std::move(impl));
}

const ExprPtr& ScalarField::expr() const {
  if (!impl_->expr) throw std::logic_error("not an analytic field");
  return impl_->expr;
}

const GridSpec& ScalarField::grid() const {
  if (!impl_->grid) throw std::logic_error("not a grid field");
  return *impl_->grid;
}

bool ScalarField::admissible(const Eigen::VectorXd& x) const {
  if (x.size() != impl_->dim) return false;
  if (!impl_->domain.contains(x)) return false;
  if (!impl_->excluded.empty() && impl_->excluded.distance(x) < impl_->guard) return false;
  return true;
}

void ScalarField::require_admissible(const Eigen::VectorXd& x) const {
  if (x.size() != impl_->dim)
    throw DomainError("point dimension does not match the field", x);
  if (!impl_->domain.contains(x)) throw DomainError("point outside the field domain", x);
  if (!impl_->excluded.empty() && impl_->excluded.distance(x) < impl_->guard)
    throw DomainError("point within the excluded-set guard band", x);
}

double ScalarField::value(const Eigen::VectorXd& x) const {
  require_admissible(x);
  double v;
  if (impl_->expr) {
    v = eval(*impl_->expr, x);
  } else {
    v = field_detail::interpolate(*impl_->grid, x);
  }
  if (!std::isfinite(v)) throw DomainError("evaluation is not finite", x);
  return v;
}

namespace {

Jet analytic_jet(const ScalarField& field, const Eigen::VectorXd& x0,
                 const Eigen::VectorXd& v, int degree) {
  Taylor t = eval_taylor(*field.expr(), x0, v);
  Jet jet;
  jet.base = x0;
  jet.direction = v;
  jet.degree = degree;
  for (int k = 0; k <= degree; ++k) {
    jet.derivs[static_cast<std::size_t>(k)] = t.derivative(k);
    if (!std::isfinite(jet.derivs[static_cast<std::size_t>(k)]))
      throw DomainError("derivative is not finite", x0);
  }
  return jet;
}

// Grid sampling helper: interpolated value with stencil-support check.
double grid_value_checked(const ScalarField& field, const Eigen::VectorXd& x) {
  if (!field.domain().contains(x, 1e-12 * (1.0 + x.cwiseAbs().maxCoeff())))
    throw DomainError("insufficient stencil support near the grid boundary", x);
  return field_detail::interpolate(field.grid(), x);
}

Jet grid_jet(const ScalarField& field, const Eigen::VectorXd& x0,
             const Eigen::VectorXd& v, int degree) {
  const GridSpec& g = field.grid();
  const double vnorm = v.norm();
  if (vnorm == 0.0) throw std::invalid_argument("zero direction");
  const double h = g.spacing.maxCoeff();
  const double dt = h / vnorm;  // spatial step along v equals the native h

  auto sample = [&](int k) { return grid_value_checked(field, x0 + (k * dt) * v); };

  Jet jet;
  jet.base = x0;
  jet.direction = v;
  jet.degree = degree;
  const double g0 = sample(0);
  jet.derivs[0] = g0;
  if (degree >= 1) {
    const double gp = sample(1), gm = sample(-1);
    jet.derivs[1] = (gp - gm) / (2.0 * dt);
    if (degree >= 2) jet.derivs[2] = (gp - 2.0 * g0 + gm) / (dt * dt);
    if (degree >= 3) {
      const double gpp = sample(2), gmm = sample(-2);
      jet.derivs[3] = (gpp - 2.0 * gp + 2.0 * gm - gmm) / (2.0 * dt * dt * dt);
      if (degree >= 4)
        jet.derivs[4] = (gpp - 4.0 * gp + 6.0 * g0 - 4.0 * gm + gmm) / (dt * dt * dt * dt);
    }
  }
  return jet;
}

PointJet2 grid_jet2(const ScalarField& field, const Eigen::VectorXd& x) {
  const GridSpec& g = field.grid();
  const int n = field.dim();
  PointJet2 out;
  out.gradient.resize(n);
  out.hessian.resize(n, n);
  out.value = grid_value_checked(field, x);
  for (int i = 0; i < n; ++i) {
    const double hi = g.spacing[i];
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += hi;
    xm[i] -= hi;
    const double up = grid_value_checked(field, xp);
    const double um = grid_value_checked(field, xm);
    out.gradient[i] = (up - um) / (2.0 * hi);
    out.hessian(i, i) = (up - 2.0 * out.value + um) / (hi * hi);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double hi = g.spacing[i], hj = g.spacing[j];
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += hi; xpp[j] += hj;
      xpm[i] += hi; xpm[j] -= hj;
      xmp[i] -= hi; xmp[j] += hj;
      xmm[i] -= hi; xmm[j] -= hj;
      const double mixed = (grid_value_checked(field, xpp) - grid_value_checked(field, xpm) -
                            grid_value_checked(field, xmp) + grid_value_checked(field, xmm)) /
                           (4.0 * hi * hj);
      out.hessian(i, j) = mixed;
      out.hessian(j, i) = mixed;
    }
  }
  return out;
}

}  // namespace

Jet directional_jet(const ScalarField& field, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& v, int degree) {
  if (degree < 0 || degree > kJetDegree)
    throw std::invalid_argument("jet degree must be between 0 and 4");
  if (v.size() != field.dim()) throw std::invalid_argument("direction dimension mismatch");
  field.require_admissible(x0);
  if (field.is_analytic()) return analytic_jet(field, x0, v, degree);
  return grid_jet(field, x0, v, degree);
}

PointJet2 jet2_at(const ScalarField& field, const Eigen::VectorXd& x) {
  field.require_admissible(x);
  if (!field.is_analytic()) return grid_jet2(field, x);

  const int n = field.dim();
  PointJet2 out;
  out.gradient.resize(n);
  out.hessian.resize(n, n);
  Eigen::VectorXd dir = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    dir.setZero();
    dir[i] = 1.0;
    Jet j = analytic_jet(field, x, dir, 2);
    if (i == 0) out.value = j.derivs[0];
    out.gradient[i] = j.derivs[1];
    out.hessian(i, i) = j.derivs[2];
  }
  // Polarization for the off-diagonal entries:
  //   u_ij = (d2[e_i + e_j] - d2[e_i - e_j]) / 4.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      dir.setZero();
      dir[i] = 1.0;
      dir[j] = 1.0;
      const double plus = analytic_jet(field, x, dir, 2).derivs[2];
      dir[j] = -1.0;
      const double minus = analytic_jet(field, x, dir, 2).derivs[2];
      const double mixed = (plus - minus) / 4.0;
      out.hessian(i, j) = mixed;
      out.hessian(j, i) = mixed;
    }
  }
  return out;
}

double third_mixed(const ScalarField& field, const Eigen::VectorXd& x0,
                   const Eigen::VectorXd& eta, const Eigen::VectorXd& gamma) {
  // D^3 u[eta,g,g] = (C(g+eta) - C(g-eta) - 2 C(eta)) / 6 with C(v) the
  // pure third derivative along v.
  auto pure3 = [&](const Eigen::VectorXd& v) {
    return directional_jet(field, x0, v, 3).derivs[3];
  };
  return (pure3(gamma + eta) - pure3(gamma - eta) - 2.0 * pure3(eta)) / 6.0;
}

double fourth_mixed(const ScalarField& field, const Eigen::VectorXd& x0,
                    const Eigen::VectorXd& eta, const Eigen::VectorXd& gamma) {
  // D^4 u[eta,eta,g,g] = (Q(g+eta) + Q(g-eta) - 2 Q(g) - 2 Q(eta)) / 12
  // with Q(v) the pure fourth derivative along v.
  auto pure4 = [&](const Eigen::VectorXd& v) {
    return directional_jet(field, x0, v, 4).derivs[4];
  };
  return (pure4(gamma + eta) + pure4(gamma - eta) - 2.0 * pure4(gamma) - 2.0 * pure4(eta)) /
         12.0;
}

namespace {

double fd_derivative(const ScalarField& field, const Eigen::VectorXd& x0,
                     const Eigen::VectorXd& v, int order, double h) {
  auto f = [&](double t) { return field.value(x0 + t * v); };
  switch (order) {
    case 1:
      return (f(h) - f(-h)) / (2.0 * h);
    case 2:
      return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
    case 3:
      return (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
    case 4:
      return (f(2.0 * h) - 4.0 * f(h) + 6.0 * f(0.0) - 4.0 * f(-h) + f(-2.0 * h)) /
             (h * h * h * h);
    default:
      throw std::invalid_argument("order must be between 1 and 4");
  }
}

}  // namespace

double fd_crosscheck(const ScalarField& field, const Eigen::VectorXd& x0, int order) {
  if (!field.is_analytic())
    throw std::invalid_argument("fd_crosscheck requires the analytic backend");
  if (order < 1 || order > 4) throw std::invalid_argument("order must be between 1 and 4");
  const int n = field.dim();

  std::vector<Eigen::VectorXd> directions;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    directions.push_back(e);
  }
  if (n > 1) {
    directions.push_back(Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n))));
    Eigen::VectorXd alt(n);
    for (int i = 0; i < n; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    directions.push_back(alt / alt.norm());
  }

  static constexpr std::array<double, 5> kBaseStep{0.0, 1e-2, 1e-2, 2e-2, 3e-2};
  const double h = kBaseStep[static_cast<std::size_t>(order)];

  double worst = 0.0;
  for (const auto& v : directions) {
    const double analytic = directional_jet(field, x0, v, order)
                                .derivs[static_cast<std::size_t>(order)];
    // Richardson extrapolation: central stencils are O(h^2), so
    // (4 D(h/2) - D(h)) / 3 is O(h^4).
    const double coarse = fd_derivative(field, x0, v, order, h);
    const double fine = fd_derivative(field, x0, v, order, h / 2.0);
    const double fd = (4.0 * fine - coarse) / 3.0;
    const double denom = std::max({std::abs(analytic), std::abs(fd), 1.0});
    worst = std::max(worst, std::abs(analytic - fd) / denom);
  }
  return worst;
}

namespace field_detail {

double interpolate(const GridSpec& g, const Eigen::VectorXd& x) {
  const int n = g.dim();
  std::vector<std::size_t> base(static_cast<std::size_t>(n));
  std::vector<double> frac(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double s = (x[i] - g.origin[i]) / g.spacing[i];
    const int count = g.counts[static_cast<std::size_t>(i)];
    int cell = static_cast<int>(std::floor(s));
    cell = std::max(0, std::min(cell, count - 2));
    base[static_cast<std::size_t>(i)] = static_cast<std::size_t>(cell);
    frac[static_cast<std::size_t>(i)] = s - cell;
  }
  std::vector<std::size_t> stride(static_cast<std::size_t>(n));
  stride[static_cast<std::size_t>(n - 1)] = 1;
  for (int i = n - 2; i >= 0; --i)
    stride[static_cast<std::size_t>(i)] =
        stride[static_cast<std::size_t>(i + 1)] *
        static_cast<std::size_t>(g.counts[static_cast<std::size_t>(i + 1)]);

  double acc = 0.0;
  const unsigned corners = 1u << n;
  for (unsigned c = 0; c < corners; ++c) {
    double weight = 1.0;
    std::size_t index = 0;
    for (int i = 0; i < n; ++i) {
      const bool high = (c >> i) & 1u;
      weight *= high ? frac[static_cast<std::size_t>(i)] : 1.0 - frac[static_cast<std::size_t>(i)];
      index += (base[static_cast<std::size_t>(i)] + (high ? 1 : 0)) *
               stride[static_cast<std::size_t>(i)];
    }
    acc += weight * g.values[index];
  }
  return acc;
}

}  // namespace field_detail

}  // namespace gflat
