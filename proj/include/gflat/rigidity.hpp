#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gflat/curvature.hpp"
#include "gflat/field.hpp"
#include "gflat/parallel.hpp"
#include "gflat/tolerances.hpp"

namespace gflat {

// Supremum estimate of a curvature quantity over a sphere sample set.
// The estimate is a maximum over the declared samples, hence a lower
// bound of the true supremum.
struct SphereSup {
  double sup = 0.0;
  Eigen::VectorXd argmax;
  std::int64_t samples = 0;    // requested
  std::int64_t evaluated = 0;  // valid samples
  std::int64_t skipped = 0;    // excluded-guard or undefined quantity
};

// When `substitute_tilde` is set, samples where mean-minkowski is
// undefined contribute the tilde quantity instead of being skipped.
SphereSup sphere_sup(const ScalarField& field, Quantity quantity,
                     const Eigen::VectorXd& center, double radius, std::int64_t samples,
                     std::uint64_t seed, const Tolerances& tol = {},
                     Exec exec = Exec::parallel, bool substitute_tilde = false);

struct DecayProfile {
  Quantity quantity = Quantity::laplacian;
  Eigen::VectorXd center;
  std::vector<double> radii;
  std::vector<double> sups;
  std::vector<Eigen::VectorXd> argmax;
  std::vector<std::int64_t> evaluated;
  std::vector<std::int64_t> skipped;
  std::int64_t samples_per_sphere = 0;
  std::uint64_t seed = 0;
  bool monotone_nonincreasing = false;
  bool decay_accepted = false;  // final supremum <= eps_decay
  double eps_decay = 0.0;
};

DecayProfile decay_profile(const ScalarField& field, Quantity quantity,
                           const Eigen::VectorXd& center, const std::vector<double>& radii,
                           std::int64_t samples, std::uint64_t seed,
                           const Tolerances& tol = {}, Exec exec = Exec::parallel);

struct TimelikeScan {
  bool timelike_found = false;
  double worst_margin = 0.0;
  Eigen::VectorXd witness;
  std::int64_t samples = 0;
  std::int64_t evaluated = 0;
  std::int64_t skipped = 0;
};

TimelikeScan timelike_scan(const ScalarField& field, const Box& region, std::int64_t samples,
                           std::uint64_t seed, const Tolerances& tol = {},
                           Exec exec = Exec::parallel);

struct DevelopabilityScan {
  double max_abs_det = 0.0;
  Eigen::VectorXd det_witness;
  double min_eigenvalue = 0.0;
  Eigen::VectorXd eigenvalue_witness;
  std::int64_t samples = 0;
  std::int64_t evaluated = 0;
  std::int64_t skipped = 0;
};

DevelopabilityScan developability_scan(const ScalarField& field, const Box& region,
                                       std::int64_t samples, std::uint64_t seed,
                                       const Tolerances& tol = {},
                                       Exec exec = Exec::parallel);

enum class Outcome {
  hyperplane_consistent,
  decay_fails,
  not_developable,
  not_convex,
  timelike_points_present,
  conclusion_violated,
};

const char* outcome_name(Outcome outcome);

// Every non-consistent verdict carries a witness that re-evaluates to
// its reported value.
struct Witness {
  Eigen::VectorXd point;
  std::optional<Eigen::VectorXd> direction;
  double value = 0.0;
  std::string quantity;
};

struct Verdict {
  Outcome outcome = Outcome::hyperplane_consistent;
  std::optional<Witness> witness;
  // Scope: everything the claim is conditioned on.
  Quantity quantity = Quantity::laplacian;
  Eigen::VectorXd center;
  std::vector<double> radii;
  Box region;
  Box domain;  // the field's truncation box
  std::int64_t sphere_samples = 0;
  std::int64_t region_samples = 0;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  // Audit trail.
  std::optional<DevelopabilityScan> developability;
  std::optional<TimelikeScan> causal;
  std::optional<DecayProfile> profile;
  std::optional<double> conclusion_max;
};

// Hypothesis pipeline: convexity/developability scan, causal scan
// (Minkowski quantities only), decay profile, then a direct check of
// the conclusion (principal curvatures, or the Laplacian for the
// analysis variant, vanish on the sampled region).  Hypothesis
// failures are outcomes, not errors.
Verdict rigidity_verdict(const ScalarField& field, Quantity quantity,
                         const Eigen::VectorXd& center, const std::vector<double>& radii,
                         const Box& region, std::int64_t sphere_samples,
                         std::int64_t region_samples, std::uint64_t seed,
                         const Tolerances& tol = {}, Exec exec = Exec::parallel);

}  // namespace gflat
