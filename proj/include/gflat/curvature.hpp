#pragma once

#include <Eigen/Core>
#include <optional>

#include "gflat/field.hpp"

namespace gflat {

enum class Signature { euclidean, minkowski };

enum class CausalKind { spacelike, lightlike, timelike };

// Default half-width of the numerical lightlike band around |Du| = 1.
inline constexpr double kDefaultTauLight = 1e-9;

// Below this weight w = 1 - |Du|^2 the full Minkowski quantities are
// suppressed: the (w)^{-3/2} factor would amplify noise without bound.
inline constexpr double kMinSpacelikeWeight = 1e-9;

struct CausalType {
  CausalKind kind;
  double margin;  // |Du| - 1
};

// Per-point extrinsic geometry of the graph of u.  For Minkowski
// signatures at non-spacelike (or nearly lightlike) points only the
// tilde quantities are populated and tilde_only is set.
struct CurvatureReport {
  Eigen::VectorXd point;
  Signature signature = Signature::euclidean;
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  double w = 0.0;  // 1 + |Du|^2 (Euclidean) or 1 - |Du|^2 (Minkowski)
  Eigen::MatrixXd metric;
  Eigen::MatrixXd second_fundamental;  // u_ij / sqrt(|w|)
  bool tilde_only = false;
  Eigen::MatrixXd shape_operator;           // empty when tilde_only
  Eigen::VectorXd principal_curvatures;     // ascending; empty when tilde_only
  double mean_curvature = 0.0;              // sum of principal curvatures
  double gauss_curvature = 0.0;             // product of principal curvatures
  std::optional<double> htilde;             // Minkowski only
  double ktilde = 0.0;                      // det D^2 u (either signature)
  CausalType causal{CausalKind::spacelike, 0.0};
};

// det D^2 u via the eigenvalue product of the symmetrized Hessian.
double ma_residual(const ScalarField& field, const Eigen::VectorXd& x);

// Trace of the Hessian.
double laplacian(const ScalarField& field, const Eigen::VectorXd& x);

CausalType causal_type(const ScalarField& field, const Eigen::VectorXd& x,
                       double tau_light = kDefaultTauLight);

CurvatureReport curvature_report(const ScalarField& field, const Eigen::VectorXd& x,
                                 Signature signature, double tau_light = kDefaultTauLight);

// Curvature quantities the decay machinery samples.  mean_minkowski is
// the spacelike-only H^M convenience mode; the others are defined at
// every admissible point.
enum class Quantity { laplacian, mean_euclidean, mean_minkowski_tilde, mean_minkowski };

const char* quantity_name(Quantity q);
std::optional<Quantity> quantity_from_name(std::string_view name);

// Lean evaluation used by the sampling scans (no eigen decompositions).
// Returns nullopt where the quantity is undefined (H^M off spacelike
// points).
std::optional<double> quantity_value(const ScalarField& field, const Eigen::VectorXd& x,
                                     Quantity q, double tau_light = kDefaultTauLight);

// det D^2 u and the extreme Hessian eigenvalues in one evaluation;
// shared by the scans.
struct HessianSummary {
  double det = 0.0;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double max_abs_eigenvalue = 0.0;
};
HessianSummary hessian_summary(const ScalarField& field, const Eigen::VectorXd& x);

}  // namespace gflat
