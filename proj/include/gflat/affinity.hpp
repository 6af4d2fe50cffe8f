#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "gflat/field.hpp"
#include "gflat/tolerances.hpp"

namespace gflat {

// A maximal line segment through `base` along which the field is
// certified affine.  The direction is unit; t_minus < 0 < t_plus.
struct RulingSegment {
  Eigen::VectorXd base;
  Eigen::VectorXd direction;
  double t_minus = 0.0;
  double t_plus = 0.0;
  double affinity_residual = 0.0;  // certification: max |u - chord|
  double kernel_residual = 0.0;    // max normalized gamma^T D2u gamma seen
  int certificate_samples = 0;

  Eigen::VectorXd point_at(double t) const { return base + t * direction; }
  double length() const { return t_plus - t_minus; }
};

// Orthonormal directions spanning the numerical kernel of the
// symmetrized Hessian: eigenvectors with |eigenvalue| below
// tau_ker * (1 + max |eigenvalue|).  Ordered by eigenvalue; signs fixed
// so the first non-negligible component is positive.  Empty at
// non-degenerate points.
std::vector<Eigen::VectorXd> hessian_kernel(const ScalarField& field, const Eigen::VectorXd& x,
                                            double tau_ker);

// Grows a ruling from x0 along gamma in +-step increments while the
// kernel condition and the segment affinity residual hold, clipping at
// the domain box and the excluded-set guard, with bisection refinement
// of the stopping endpoint.  Throws PreconditionError when gamma is
// not a kernel direction at x0.
RulingSegment trace_ruling(const ScalarField& field, const Eigen::VectorXd& x0,
                           const Eigen::VectorXd& gamma, double step, const Tolerances& tol);

// Short two-sided certificate around x0 (a few millidiameters); the
// cheap hypothesis check the lemma operations rely on.
RulingSegment certify_local_ruling(const ScalarField& field, const Eigen::VectorXd& x0,
                                   const Eigen::VectorXd& gamma, const Tolerances& tol);

// View of the same certified segment re-anchored at interior parameter
// t, so lemma checks can run at any point on a traced ruling.
RulingSegment rebase(const RulingSegment& segment, double t);

// Max over `samples` interior points of |u - chord| along [a, b].
double affinity_check(const ScalarField& field, const Eigen::VectorXd& a,
                      const Eigen::VectorXd& b, int samples);

// Third/fourth-order flatness at the segment base: r1 = |D^3 u[eta,g,g]|,
// r2 = D^4 u[eta,eta,g,g] (sign-checked), plus the second differences of
// t -> u_eta_eta along the segment (each expected >= -tau_lem).
struct FlatnessResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  std::vector<double> convexity_profile;
};
FlatnessResiduals flatness_residuals(const ScalarField& field, const RulingSegment& segment,
                                     const Eigen::VectorXd& eta, int profile_samples = 17);

// First and second derivatives of t -> |Du(x0 + t gamma)|^2 at 0,
// assembled from jets of the gradient components.
std::pair<double, double> gradient_sq_residuals(const ScalarField& field,
                                                const RulingSegment& segment);

// (Htilde)_gamma_gamma assembled term by term: the weighted Laplacian
// term and the gradient contraction are the sign-carrying pieces; the
// two cross terms vanish on a ruling.
struct HtildeSecondTerms {
  double weighted_laplacian = 0.0;    // w * (lap u)_gg
  double gradient_cross = 0.0;        // 2 (w)_g (lap u)_g
  double weight_curvature = 0.0;      // lap u * (w)_gg
  double gradient_contraction = 0.0;  // D^4 u[Du, Du, g, g]
  double total = 0.0;
};
HtildeSecondTerms htilde_second_derivative_terms(const ScalarField& field,
                                                 const Eigen::VectorXd& x0,
                                                 const Eigen::VectorXd& gamma);
double htilde_second_derivative(const ScalarField& field, const RulingSegment& segment);

// Residual of the algebraic rearrangement
//   w (lap u)_gg - D^4 u[Du,Du,g,g] = (lap u)_gg + sum_{i<j} D^4 u[eta_ij,eta_ij,g,g]
// with eta_ij = u_j e_i - u_i e_j; relative with absolute fallback.
// Holds for any C^4 field, no ruling required.
double euclidean_combination_identity(const ScalarField& field, const Eigen::VectorXd& x0,
                                      const Eigen::VectorXd& gamma);

// All lemma-level residuals at the segment base for one probe
// direction, together with the certificate they depend on.
struct LemmaResidualReport {
  Eigen::VectorXd x0;
  Eigen::VectorXd gamma;
  Eigen::VectorXd eta;
  double r1 = 0.0;  // |D^3 u[eta,g,g]|
  double r2 = 0.0;  // D^4 u[eta,eta,g,g], sign-checked
  double r3 = 0.0;  // |(|Du|^2)_g|
  double r4 = 0.0;  // |(|Du|^2)_gg|
  double r5 = 0.0;  // (Htilde)_gg, sign-checked
  double r6 = 0.0;  // Euclidean combination identity residual
  std::vector<double> convexity_profile;
  RulingSegment certificate;
};
LemmaResidualReport lemma_residuals(const ScalarField& field, const RulingSegment& segment,
                                    const Eigen::VectorXd& eta, int profile_samples = 17);

}  // namespace gflat
