#include "gflat/rigidity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gflat/error.hpp"
#include "gflat/sampling.hpp"

namespace gflat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::int64_t kNoIndex = std::numeric_limits<std::int64_t>::max();

// Monoid state for max scans: larger value wins, ties go to the
// smaller sample index, so any chunking yields the same result.
struct MaxState {
  double value = kNegInf;
  std::int64_t index = kNoIndex;
  std::int64_t evaluated = 0;
  std::int64_t skipped = 0;
};

MaxState combine_max(MaxState a, MaxState b) {
  MaxState out;
  const bool pick_b = b.value > a.value || (b.value == a.value && b.index < a.index);
  out.value = pick_b ? b.value : a.value;
  out.index = pick_b ? b.index : a.index;
  out.evaluated = a.evaluated + b.evaluated;
  out.skipped = a.skipped + b.skipped;
  return out;
}

MaxState max_sample(double value, std::int64_t index) {
  MaxState s;
  s.value = value;
  s.index = index;
  s.evaluated = 1;
  return s;
}

MaxState skipped_sample() {
  MaxState s;
  s.skipped = 1;
  return s;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}

}  // namespace

SphereSup sphere_sup(const ScalarField& field, Quantity quantity,
                     const Eigen::VectorXd& center, double radius, std::int64_t samples,
                     std::uint64_t seed, const Tolerances& tol, Exec exec,
                     bool substitute_tilde) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (samples < 1) throw std::invalid_argument("need at least one sphere sample");
  const int dim = field.dim();
  if (center.size() != dim) throw std::invalid_argument("center dimension mismatch");
  for (int i = 0; i < dim; ++i) {
    if (center[i] - radius < field.domain().lo[i] || center[i] + radius > field.domain().hi[i])
      throw DomainError("sphere exits the field domain", center);
  }

  auto point_at = [&](std::int64_t k) {
    return (center + radius * sphere_direction(dim, static_cast<std::uint64_t>(k), seed)).eval();
  };

  auto eval = [&](std::int64_t k) -> MaxState {
    const Eigen::VectorXd x = point_at(k);
    if (!field.admissible(x)) return skipped_sample();
    std::optional<double> q = quantity_value(field, x, quantity, tol.tau_light);
    if (!q && substitute_tilde && quantity == Quantity::mean_minkowski)
      q = quantity_value(field, x, Quantity::mean_minkowski_tilde, tol.tau_light);
    if (!q) return skipped_sample();
    return max_sample(*q, k);
  };

  MaxState best = scan_fold(samples, MaxState{}, eval, combine_max, exec);
  if (best.evaluated == 0)
    throw DomainError("no valid samples on the sphere", center);

  SphereSup out;
  out.sup = best.value;
  out.argmax = point_at(best.index);
  out.samples = samples;
  out.evaluated = best.evaluated;
  out.skipped = best.skipped;
  return out;
}

DecayProfile decay_profile(const ScalarField& field, Quantity quantity,
                           const Eigen::VectorXd& center, const std::vector<double>& radii,
                           std::int64_t samples, std::uint64_t seed, const Tolerances& tol,
                           Exec exec) {
  if (radii.empty()) throw std::invalid_argument("radius schedule must not be empty");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("radius schedule must be strictly increasing");

  DecayProfile profile;
  profile.quantity = quantity;
  profile.center = center;
  profile.radii = radii;
  profile.samples_per_sphere = samples;
  profile.seed = seed;
  profile.eps_decay = tol.eps_decay;

  for (double r : radii) {
    SphereSup s = sphere_sup(field, quantity, center, r, samples, seed, tol, exec);
    profile.sups.push_back(s.sup);
    profile.argmax.push_back(s.argmax);
    profile.evaluated.push_back(s.evaluated);
    profile.skipped.push_back(s.skipped);
  }

  profile.monotone_nonincreasing = true;
  for (std::size_t i = 1; i < profile.sups.size(); ++i)
    if (profile.sups[i] > profile.sups[i - 1]) profile.monotone_nonincreasing = false;
  profile.decay_accepted = profile.sups.back() <= tol.eps_decay;
  return profile;
}

TimelikeScan timelike_scan(const ScalarField& field, const Box& region, std::int64_t samples,
                           std::uint64_t seed, const Tolerances& tol, Exec exec) {
  if (samples < 1) throw std::invalid_argument("need at least one region sample");
  if (region.dim() != field.dim()) throw std::invalid_argument("region dimension mismatch");
  const std::uint64_t scan_seed = mix_seed(seed, 0xCA05u);

  auto point_at = [&](std::int64_t k) {
    return box_point(region, static_cast<std::uint64_t>(k), scan_seed);
  };
  auto eval = [&](std::int64_t k) -> MaxState {
    const Eigen::VectorXd x = point_at(k);
    if (!field.admissible(x)) return skipped_sample();
    return max_sample(causal_type(field, x, tol.tau_light).margin, k);
  };

  MaxState best = scan_fold(samples, MaxState{}, eval, combine_max, exec);
  if (best.evaluated == 0) throw DomainError("no valid samples in the region", region.center());

  TimelikeScan out;
  out.worst_margin = best.value;
  out.witness = point_at(best.index);
  out.timelike_found = best.value > tol.tau_light;
  out.samples = samples;
  out.evaluated = best.evaluated;
  out.skipped = best.skipped;
  return out;
}

namespace {

// Combined developability state: max |det| and min eigenvalue with
// their indices, still an associative monoid.
struct DevState {
  MaxState det;      // value = |det D^2 u|
  MaxState neg_eig;  // value = -min eigenvalue
};

DevState combine_dev(DevState a, DevState b) {
  return DevState{combine_max(a.det, b.det), combine_max(a.neg_eig, b.neg_eig)};
}

}  // namespace

DevelopabilityScan developability_scan(const ScalarField& field, const Box& region,
                                       std::int64_t samples, std::uint64_t seed,
                                       const Tolerances& tol, Exec exec) {
  (void)tol;
  if (samples < 1) throw std::invalid_argument("need at least one region sample");
  if (region.dim() != field.dim()) throw std::invalid_argument("region dimension mismatch");
  const std::uint64_t scan_seed = mix_seed(seed, 0xDE7u);

  auto point_at = [&](std::int64_t k) {
    return box_point(region, static_cast<std::uint64_t>(k), scan_seed);
  };
  auto eval = [&](std::int64_t k) -> DevState {
    const Eigen::VectorXd x = point_at(k);
    DevState s;
    if (!field.admissible(x)) {
      s.det = skipped_sample();
      return s;
    }
    const HessianSummary h = hessian_summary(field, x);
    s.det = max_sample(std::abs(h.det), k);
    s.neg_eig = max_sample(-h.min_eigenvalue, k);
    return s;
  };

  DevState best = scan_fold(samples, DevState{}, eval, combine_dev, exec);
  if (best.det.evaluated == 0)
    throw DomainError("no valid samples in the region", region.center());

  DevelopabilityScan out;
  out.max_abs_det = best.det.value;
  out.det_witness = point_at(best.det.index);
  out.min_eigenvalue = -best.neg_eig.value;
  out.eigenvalue_witness = point_at(best.neg_eig.index);
  out.samples = samples;
  out.evaluated = best.det.evaluated;
  out.skipped = best.det.skipped;
  return out;
}

const char* outcome_name(Outcome outcome) {
  switch (outcome) {
    case Outcome::hyperplane_consistent: return "hyperplane-consistent";
    case Outcome::decay_fails: return "decay-fails";
    case Outcome::not_developable: return "not-developable";
    case Outcome::not_convex: return "not-convex";
    case Outcome::timelike_points_present: return "timelike-points-present";
    case Outcome::conclusion_violated: return "conclusion-violated";
  }
  return "?";
}

namespace {

// Conclusion check sample value: |laplacian| for the analysis variant,
// otherwise the largest |principal curvature| for the quantity's
// signature.  At non-spacelike Minkowski samples the principal
// curvatures are undefined; the Hessian eigenvalues stand in (both
// vanish exactly on hyperplanes).
double conclusion_value(const ScalarField& field, const Eigen::VectorXd& x, Quantity quantity,
                        const Tolerances& tol) {
  if (quantity == Quantity::laplacian) return std::abs(laplacian(field, x));
  const Signature sig = quantity == Quantity::mean_euclidean ? Signature::euclidean
                                                             : Signature::minkowski;
  CurvatureReport report = curvature_report(field, x, sig, tol.tau_light);
  if (report.tilde_only) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(report.hessian, Eigen::EigenvaluesOnly);
    return std::max(std::abs(es.eigenvalues()[0]),
                    std::abs(es.eigenvalues()[report.hessian.rows() - 1]));
  }
  const auto& k = report.principal_curvatures;
  return std::max(std::abs(k[0]), std::abs(k[k.size() - 1]));
}

}  // namespace

Verdict rigidity_verdict(const ScalarField& field, Quantity quantity,
                         const Eigen::VectorXd& center, const std::vector<double>& radii,
                         const Box& region, std::int64_t sphere_samples,
                         std::int64_t region_samples, std::uint64_t seed,
                         const Tolerances& tol, Exec exec) {
  Verdict v;
  v.quantity = quantity;
  v.center = center;
  v.radii = radii;
  v.region = region;
  v.domain = field.domain();
  v.sphere_samples = sphere_samples;
  v.region_samples = region_samples;
  v.seed = seed;
  v.tolerances = tol;

  // Hypothesis 1: convex and developable on the sampled region.
  v.developability = developability_scan(field, region, region_samples, seed, tol, exec);
  if (v.developability->min_eigenvalue < -tol.eps_convex) {
    v.outcome = Outcome::not_convex;
    v.witness = Witness{v.developability->eigenvalue_witness, std::nullopt,
                        v.developability->min_eigenvalue, "hessian-min-eigenvalue"};
    return v;
  }
  if (v.developability->max_abs_det > tol.eps_developable) {
    v.outcome = Outcome::not_developable;
    v.witness = Witness{v.developability->det_witness, std::nullopt,
                        v.developability->max_abs_det, "abs-det-hessian"};
    return v;
  }

  // Hypothesis 2 (Minkowski quantities only): no timelike points.
  if (quantity == Quantity::mean_minkowski_tilde || quantity == Quantity::mean_minkowski) {
    v.causal = timelike_scan(field, region, region_samples, seed, tol, exec);
    if (v.causal->timelike_found) {
      v.outcome = Outcome::timelike_points_present;
      v.witness = Witness{v.causal->witness, std::nullopt, v.causal->worst_margin,
                          "causal-margin"};
      return v;
    }
  }

  // Hypothesis 3: the quantity decays along the radius schedule.
  v.profile = decay_profile(field, quantity, center, radii, sphere_samples, seed, tol, exec);
  if (!v.profile->decay_accepted) {
    v.outcome = Outcome::decay_fails;
    const Eigen::VectorXd& argmax = v.profile->argmax.back();
    Eigen::VectorXd direction = (argmax - center) / radii.back();
    v.witness = Witness{argmax, direction, v.profile->sups.back(), quantity_name(quantity)};
    return v;
  }

  // Conclusion: the sampled graph is flat.
  const std::uint64_t scan_seed = mix_seed(seed, 0xC0C1u);
  auto point_at = [&](std::int64_t k) {
    return box_point(region, static_cast<std::uint64_t>(k), scan_seed);
  };
  auto eval = [&](std::int64_t k) -> MaxState {
    const Eigen::VectorXd x = point_at(k);
    if (!field.admissible(x)) return skipped_sample();
    return max_sample(conclusion_value(field, x, quantity, tol), k);
  };
  MaxState worst = scan_fold(region_samples, MaxState{}, eval, combine_max, exec);
  if (worst.evaluated == 0) throw DomainError("no valid samples in the region", region.center());
  v.conclusion_max = worst.value;
  if (worst.value > tol.eps_conclusion) {
    v.outcome = Outcome::conclusion_violated;
    v.witness = Witness{point_at(worst.index), std::nullopt, worst.value,
                        quantity == Quantity::laplacian ? "abs-laplacian"
                                                        : "max-abs-principal-curvature"};
    return v;
  }

  v.outcome = Outcome::hyperplane_consistent;
  return v;
}

}  // namespace gflat
