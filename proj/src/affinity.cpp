#include "gflat/affinity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gflat/error.hpp"

namespace gflat {

namespace {

Eigen::VectorXd unit(const Eigen::VectorXd& v) {
  const double n = v.norm();
  if (n == 0.0) throw std::invalid_argument("zero direction");
  return v / n;
}

void fix_sign(Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

// gamma^T D^2u gamma normalized by 1 + max |eigenvalue|; the quantity
// the kernel threshold applies to.
double kernel_quotient(const ScalarField& field, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& gamma_unit) {
  PointJet2 j = jet2_at(field, x);
  Eigen::MatrixXd sym = 0.5 * (j.hessian + j.hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const double max_abs =
      std::max(std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[sym.rows() - 1]));
  return std::abs(gamma_unit.dot(sym * gamma_unit)) / (1.0 + max_abs);
}

}  // namespace

std::vector<Eigen::VectorXd> hessian_kernel(const ScalarField& field, const Eigen::VectorXd& x,
                                            double tau_ker) {
  PointJet2 j = jet2_at(field, x);
  Eigen::MatrixXd sym = 0.5 * (j.hessian + j.hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const auto& lambda = es.eigenvalues();
  const double max_abs = std::max(std::abs(lambda[0]), std::abs(lambda[sym.rows() - 1]));
  const double threshold = tau_ker * (1.0 + max_abs);

  std::vector<Eigen::VectorXd> kernel;
  for (int i = 0; i < sym.rows(); ++i) {
    if (std::abs(lambda[i]) <= threshold) {
      Eigen::VectorXd v = es.eigenvectors().col(i);
      fix_sign(v);
      kernel.push_back(std::move(v));
    }
  }
  return kernel;
}

double affinity_check(const ScalarField& field, const Eigen::VectorXd& a,
                      const Eigen::VectorXd& b, int samples) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const double ua = field.value(a);
  const double ub = field.value(b);
  double worst = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double t = static_cast<double>(k) / (samples + 1);
    const Eigen::VectorXd p = t * a + (1.0 - t) * b;
    worst = std::max(worst, std::abs(field.value(p) - (t * ua + (1.0 - t) * ub)));
  }
  return worst;
}

namespace {

struct TraceScratch {
  const ScalarField& field;
  Eigen::VectorXd x0;
  Eigen::VectorXd gamma;  // unit
  double u0;
  double tau_ker;
  double tau_aff_abs;  // tau_aff * (1 + |u0|)
  double step;
  double max_kernel_quotient = 0.0;

  Eigen::VectorXd at(double t) const { return x0 + t * gamma; }

  bool kernel_ok(double t) {
    const double q = kernel_quotient(field, at(t), gamma);
    max_kernel_quotient = std::max(max_kernel_quotient, q);
    return q <= tau_ker;
  }

  // Affinity of the whole candidate segment [tm, tp] against its chord.
  bool affinity_ok(double tm, double tp) const {
    const double span = tp - tm;
    if (span <= 0.0) return true;
    int m = static_cast<int>(std::ceil(2.0 * span / step));
    m = std::clamp(m, 8, 4096);
    const double ua = field.value(at(tm));
    const double ub = field.value(at(tp));
    for (int k = 1; k < m; ++k) {
      const double s = static_cast<double>(k) / m;
      const double expected = ua + s * (ub - ua);
      if (std::abs(field.value(at(tm + s * span)) - expected) > tau_aff_abs) return false;
    }
    return true;
  }
};

// Largest extent in [0, limit] along sign*gamma passing both trace
// conditions, with bisection localization of the stopping point.
double grow(TraceScratch& scratch, double sign, double limit, double other_extent,
            double endpoint_tol) {
  auto ok = [&](double extent) {
    const double t = sign * extent;
    try {
      return scratch.kernel_ok(t) &&
             scratch.affinity_ok(std::min(t, -sign * other_extent),
                                 std::max(t, -sign * other_extent));
    } catch (const DomainError&) {
      return false;  // undeclared domain edge: stop like any failed condition
    }
  };

  double good = 0.0;
  while (good < limit) {
    const double candidate = std::min(good + scratch.step, limit);
    if (ok(candidate)) {
      good = candidate;
      continue;
    }
    double bad = candidate;
    while (bad - good > endpoint_tol) {
      const double mid = 0.5 * (good + bad);
      if (ok(mid)) good = mid;
      else bad = mid;
    }
    break;
  }
  return good;
}

RulingSegment trace_impl(const ScalarField& field, const Eigen::VectorXd& x0,
                         const Eigen::VectorXd& gamma, double step, const Tolerances& tol,
                         double max_extent) {
  if (!(step > 0.0)) throw std::invalid_argument("trace step must be positive");
  field.require_admissible(x0);
  const Eigen::VectorXd g = unit(gamma);

  TraceScratch scratch{field, x0, g, field.value(x0), tol.tau_ker, 0.0, step};
  scratch.tau_aff_abs = tol.tau_aff * (1.0 + std::abs(scratch.u0));

  const double q0 = kernel_quotient(field, x0, g);
  if (q0 > tol.tau_ker)
    throw PreconditionError("direction is not in the Hessian kernel at the base point", q0);
  scratch.max_kernel_quotient = q0;

  auto ray = field.domain().clip_ray(x0, g);
  if (!ray) throw DomainError("base point outside the field domain", x0);
  double tlo = ray->first, thi = ray->second;
  // Keep the excluded-set guard band out of the reachable t-range.
  for (const auto& [a, b] : field.excluded().forbidden_intervals(x0, g, field.excluded_guard())) {
    if (a <= 0.0 && b >= 0.0)
      throw DomainError("base point within the excluded-set guard band", x0);
    if (b < 0.0) tlo = std::max(tlo, b);
    if (a > 0.0) thi = std::min(thi, a);
  }
  const double endpoint_tol =
      std::max(tol.endpoint_fraction * field.domain().diameter(), 1e-12);

  double plus = grow(scratch, +1.0, std::min(thi, max_extent), 0.0, endpoint_tol);
  double minus = grow(scratch, -1.0, std::min(-tlo, max_extent), plus, endpoint_tol);

  if (plus <= 0.0 || minus <= 0.0)
    throw PreconditionError("no two-sided ruling extent at the base point",
                            scratch.max_kernel_quotient);

  RulingSegment segment;
  segment.base = x0;
  segment.direction = g;
  segment.t_plus = plus;
  segment.t_minus = -minus;
  segment.kernel_residual = scratch.max_kernel_quotient;

  // Certification at ten times the tracing sample density.
  int cert = static_cast<int>(std::ceil(20.0 * segment.length() / step));
  cert = std::clamp(cert, 50, 50000);
  for (int attempt = 0;; ++attempt) {
    const double residual = affinity_check(field, segment.point_at(segment.t_minus),
                                           segment.point_at(segment.t_plus), cert);
    if (residual <= scratch.tau_aff_abs) {
      segment.affinity_residual = residual;
      segment.certificate_samples = cert;
      return segment;
    }
    if (attempt >= 3)
      throw PreconditionError("traced segment failed affinity certification", residual);
    segment.t_plus = std::max(segment.t_plus - 2.0 * endpoint_tol, 0.5 * segment.t_plus);
    segment.t_minus = std::min(segment.t_minus + 2.0 * endpoint_tol, 0.5 * segment.t_minus);
  }
}

}  // namespace

RulingSegment trace_ruling(const ScalarField& field, const Eigen::VectorXd& x0,
                           const Eigen::VectorXd& gamma, double step, const Tolerances& tol) {
  return trace_impl(field, x0, gamma, step, tol, std::numeric_limits<double>::infinity());
}

RulingSegment certify_local_ruling(const ScalarField& field, const Eigen::VectorXd& x0,
                                   const Eigen::VectorXd& gamma, const Tolerances& tol) {
  const double step = 1e-3 * field.domain().diameter();
  return trace_impl(field, x0, gamma, step, tol, 2.0 * step);
}

RulingSegment rebase(const RulingSegment& segment, double t) {
  if (!(t > segment.t_minus && t < segment.t_plus))
    throw std::invalid_argument("rebase parameter must be interior to the segment");
  RulingSegment out = segment;
  out.base = segment.point_at(t);
  out.t_minus = segment.t_minus - t;
  out.t_plus = segment.t_plus - t;
  return out;
}

FlatnessResiduals flatness_residuals(const ScalarField& field, const RulingSegment& segment,
                                     const Eigen::VectorXd& eta, int profile_samples) {
  if (profile_samples < 3) throw std::invalid_argument("profile needs at least 3 samples");
  const Eigen::VectorXd e = unit(eta);
  const Eigen::VectorXd& g = segment.direction;

  FlatnessResiduals out;
  out.r1 = std::abs(third_mixed(field, segment.base, e, g));
  out.r2 = fourth_mixed(field, segment.base, e, g);

  // Second differences of t -> u_ee(base + t g) across the segment.
  const double span = segment.length();
  const double dt = span / profile_samples;
  std::vector<double> uee(static_cast<std::size_t>(profile_samples));
  for (int i = 0; i < profile_samples; ++i) {
    const double t = segment.t_minus + (i + 0.5) * dt;
    uee[static_cast<std::size_t>(i)] =
        directional_jet(field, segment.point_at(t), e, 2).derivs[2];
  }
  out.convexity_profile.reserve(static_cast<std::size_t>(profile_samples - 2));
  for (int i = 1; i + 1 < profile_samples; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    out.convexity_profile.push_back((uee[k + 1] - 2.0 * uee[k] + uee[k - 1]) / (dt * dt));
  }
  return out;
}

std::pair<double, double> gradient_sq_residuals(const ScalarField& field,
                                                const RulingSegment& segment) {
  PointJet2 j = jet2_at(field, segment.base);
  const Eigen::VectorXd& g = segment.direction;
  const Eigen::VectorXd hg = j.hessian * g;
  const double first = 2.0 * j.gradient.dot(hg);
  // (|Du|^2)_gg = 2 |D2u g|^2 + 2 D^3u[Du, g, g].
  const double second =
      2.0 * (hg.squaredNorm() + third_mixed(field, segment.base, j.gradient, g));
  return {std::abs(first), std::abs(second)};
}

HtildeSecondTerms htilde_second_derivative_terms(const ScalarField& field,
                                                 const Eigen::VectorXd& x0,
                                                 const Eigen::VectorXd& gamma) {
  const Eigen::VectorXd g = unit(gamma);
  PointJet2 j = jet2_at(field, x0);
  const int n = field.dim();
  const double w = 1.0 - j.gradient.squaredNorm();
  const double lap = j.hessian.trace();

  double lap_gg = 0.0;  // (lap u)_gg
  double lap_g = 0.0;   // (lap u)_g
  Eigen::VectorXd axis = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    axis.setZero();
    axis[k] = 1.0;
    lap_gg += fourth_mixed(field, x0, axis, g);
    lap_g += third_mixed(field, x0, g, axis);  // D^3u[e_k, e_k, g] by symmetry
  }

  const Eigen::VectorXd hg = j.hessian * g;
  const double grad_sq_g = 2.0 * j.gradient.dot(hg);
  const double grad_sq_gg =
      2.0 * (hg.squaredNorm() + third_mixed(field, x0, j.gradient, g));

  HtildeSecondTerms terms;
  terms.weighted_laplacian = w * lap_gg;
  terms.gradient_cross = 2.0 * (-grad_sq_g) * lap_g;
  terms.weight_curvature = lap * (-grad_sq_gg);
  terms.gradient_contraction = fourth_mixed(field, x0, j.gradient, g);
  terms.total = terms.weighted_laplacian + terms.gradient_cross + terms.weight_curvature +
                terms.gradient_contraction;
  return terms;
}

double htilde_second_derivative(const ScalarField& field, const RulingSegment& segment) {
  return htilde_second_derivative_terms(field, segment.base, segment.direction).total;
}

double euclidean_combination_identity(const ScalarField& field, const Eigen::VectorXd& x0,
                                      const Eigen::VectorXd& gamma) {
  const Eigen::VectorXd g = unit(gamma);
  PointJet2 j = jet2_at(field, x0);
  const int n = field.dim();
  const Eigen::VectorXd& grad = j.gradient;

  double lap_gg = 0.0;
  Eigen::VectorXd axis = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    axis.setZero();
    axis[k] = 1.0;
    lap_gg += fourth_mixed(field, x0, axis, g);
  }
  const double grad_term = fourth_mixed(field, x0, grad, g);
  const double w = 1.0 + grad.squaredNorm();
  const double lhs = w * lap_gg - grad_term;

  double rotated_sum = 0.0;
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      eta.setZero();
      eta[i] = grad[k];
      eta[k] = -grad[i];
      rotated_sum += fourth_mixed(field, x0, eta, g);
    }
  }
  const double rhs = lap_gg + rotated_sum;

  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

LemmaResidualReport lemma_residuals(const ScalarField& field, const RulingSegment& segment,
                                    const Eigen::VectorXd& eta, int profile_samples) {
  LemmaResidualReport report;
  report.x0 = segment.base;
  report.gamma = segment.direction;
  report.eta = unit(eta);
  report.certificate = segment;

  FlatnessResiduals flat = flatness_residuals(field, segment, report.eta, profile_samples);
  report.r1 = flat.r1;
  report.r2 = flat.r2;
  report.convexity_profile = std::move(flat.convexity_profile);

  auto [r3, r4] = gradient_sq_residuals(field, segment);
  report.r3 = r3;
  report.r4 = r4;
  report.r5 = htilde_second_derivative(field, segment);
  report.r6 = euclidean_combination_identity(field, segment.base, segment.direction);
  return report;
}

}  // namespace gflat
