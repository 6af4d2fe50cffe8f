#include "gflat/curvature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gflat/error.hpp"

namespace gflat {

double ma_residual(const ScalarField& field, const Eigen::VectorXd& x) {
  PointJet2 j = jet2_at(field, x);
  Eigen::MatrixXd sym = 0.5 * (j.hessian + j.hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  double det = 1.0;
  for (int i = 0; i < sym.rows(); ++i) det *= es.eigenvalues()[i];
  return det;
}

double laplacian(const ScalarField& field, const Eigen::VectorXd& x) {
  return jet2_at(field, x).hessian.trace();
}

namespace {

CausalType classify(const Eigen::VectorXd& gradient, double tau_light) {
  const double margin = gradient.norm() - 1.0;
  CausalKind kind;
  if (margin < -tau_light) kind = CausalKind::spacelike;
  else if (margin > tau_light) kind = CausalKind::timelike;
  else kind = CausalKind::lightlike;
  return CausalType{kind, margin};
}

double determinant_by_eigenvalues(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  double det = 1.0;
  for (int i = 0; i < sym.rows(); ++i) det *= es.eigenvalues()[i];
  return det;
}

}  // namespace

CausalType causal_type(const ScalarField& field, const Eigen::VectorXd& x, double tau_light) {
  return classify(jet2_at(field, x).gradient, tau_light);
}

CurvatureReport curvature_report(const ScalarField& field, const Eigen::VectorXd& x,
                                 Signature signature, double tau_light) {
  PointJet2 j = jet2_at(field, x);
  const int n = field.dim();
  const Eigen::VectorXd& g = j.gradient;
  const double s = g.squaredNorm();
  Eigen::MatrixXd hess = 0.5 * (j.hessian + j.hessian.transpose());

  CurvatureReport r;
  r.point = x;
  r.signature = signature;
  r.value = j.value;
  r.gradient = g;
  r.hessian = hess;
  r.causal = classify(g, tau_light);
  r.ktilde = determinant_by_eigenvalues(hess);

  const double sign = signature == Signature::euclidean ? 1.0 : -1.0;
  r.w = 1.0 + sign * s;
  r.metric = Eigen::MatrixXd::Identity(n, n) + sign * (g * g.transpose());
  if (signature == Signature::minkowski)
    r.htilde = r.w * hess.trace() + g.dot(hess * g);

  const bool full = signature == Signature::euclidean ||
                    (r.causal.kind == CausalKind::spacelike && r.w >= kMinSpacelikeWeight);
  if (!full) {
    r.tilde_only = true;
    r.second_fundamental = hess / std::sqrt(std::abs(r.w));
    return r;
  }

  const double sqrt_w = std::sqrt(r.w);
  r.second_fundamental = hess / sqrt_w;

  // Shape operator S = metric^{-1} h.  The inverse metric has the
  // closed form I -+ g g^T / w.
  Eigen::MatrixXd metric_inv =
      Eigen::MatrixXd::Identity(n, n) - sign * (g * g.transpose()) / r.w;
  r.shape_operator = metric_inv * r.second_fundamental;

  // Principal curvatures through the symmetric similarity transform
  // M^{-1/2} h M^{-1/2}, which shares the spectrum of S but is
  // symmetric, so the eigenvalues come out real and sorted.
  Eigen::MatrixXd half_inv = Eigen::MatrixXd::Identity(n, n);
  if (s > 0.0) {
    const Eigen::VectorXd ghat = g / std::sqrt(s);
    half_inv += (1.0 / sqrt_w - 1.0) * (ghat * ghat.transpose());
  }
  Eigen::MatrixXd similar = half_inv * r.second_fundamental * half_inv;
  similar = 0.5 * (similar + similar.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(similar, Eigen::EigenvaluesOnly);
  r.principal_curvatures = es.eigenvalues();  // ascending

  double sum = 0.0, prod = 1.0;
  for (int i = 0; i < n; ++i) {
    sum += r.principal_curvatures[i];
    prod *= r.principal_curvatures[i];
  }
  r.mean_curvature = sum;
  r.gauss_curvature = prod;
  return r;
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::laplacian: return "laplacian";
    case Quantity::mean_euclidean: return "mean-euclidean";
    case Quantity::mean_minkowski_tilde: return "mean-minkowski-tilde";
    case Quantity::mean_minkowski: return "mean-minkowski";
  }
  return "?";
}

std::optional<Quantity> quantity_from_name(std::string_view name) {
  if (name == "laplacian") return Quantity::laplacian;
  if (name == "mean-euclidean") return Quantity::mean_euclidean;
  if (name == "mean-minkowski-tilde") return Quantity::mean_minkowski_tilde;
  if (name == "mean-minkowski") return Quantity::mean_minkowski;
  return std::nullopt;
}

std::optional<double> quantity_value(const ScalarField& field, const Eigen::VectorXd& x,
                                     Quantity q, double tau_light) {
  PointJet2 j = jet2_at(field, x);
  const Eigen::VectorXd& g = j.gradient;
  const double trace = j.hessian.trace();
  switch (q) {
    case Quantity::laplacian:
      return trace;
    case Quantity::mean_euclidean: {
      const double w = 1.0 + g.squaredNorm();
      return (w * trace - g.dot(j.hessian * g)) / (w * std::sqrt(w));
    }
    case Quantity::mean_minkowski_tilde: {
      const double w = 1.0 - g.squaredNorm();
      return w * trace + g.dot(j.hessian * g);
    }
    case Quantity::mean_minkowski: {
      const double w = 1.0 - g.squaredNorm();
      if (classify(g, tau_light).kind != CausalKind::spacelike || w < kMinSpacelikeWeight)
        return std::nullopt;
      return (w * trace + g.dot(j.hessian * g)) / (w * std::sqrt(w));
    }
  }
  return std::nullopt;
}

HessianSummary hessian_summary(const ScalarField& field, const Eigen::VectorXd& x) {
  PointJet2 j = jet2_at(field, x);
  Eigen::MatrixXd sym = 0.5 * (j.hessian + j.hessian.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  HessianSummary out;
  out.det = 1.0;
  for (int i = 0; i < sym.rows(); ++i) out.det *= es.eigenvalues()[i];
  out.min_eigenvalue = es.eigenvalues()[0];
  out.max_eigenvalue = es.eigenvalues()[sym.rows() - 1];
  out.max_abs_eigenvalue = std::max(std::abs(out.min_eigenvalue), std::abs(out.max_eigenvalue));
  return out;
}

}  // namespace gflat
