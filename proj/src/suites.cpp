#include "gflat/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gflat/affinity.hpp"
#include "gflat/corpus.hpp"
#include "gflat/curvature.hpp"
#include "gflat/error.hpp"
#include "gflat/rigidity.hpp"
#include "gflat/sampling.hpp"

namespace gflat {

void SuiteResult::require_at_most(std::string label, double observed, double bound) {
  const bool ok = observed <= bound;
  checks.push_back({std::move(label), ok, observed, bound});
  passed = passed && ok;
}

void SuiteResult::require_at_least(std::string label, double observed, double bound) {
  const bool ok = observed >= bound;
  checks.push_back({std::move(label), ok, observed, bound});
  passed = passed && ok;
}

void SuiteResult::require(std::string label, bool ok, double observed, double bound) {
  checks.push_back({std::move(label), ok, observed, bound});
  passed = passed && ok;
}

double SuiteResult::worst_margin() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : checks) worst = std::max(worst, c.observed - c.bound);
  return worst;
}

namespace {

double uniform(std::uint64_t seed, std::uint64_t salt, double lo, double hi) {
  const double u = static_cast<double>(splitmix64(seed ^ splitmix64(salt)) >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001B3ull;
  return h;
}

// Admissible low-discrepancy points inside a centered sub-box.
std::vector<Eigen::VectorXd> sample_points(const ScalarField& field, int count,
                                           std::uint64_t seed, double shrink,
                                           double min_excluded_distance = 0.0) {
  const Box& d = field.domain();
  Box inner = d;
  inner.lo = d.center() + shrink * (d.lo - d.center());
  inner.hi = d.center() + shrink * (d.hi - d.center());
  std::vector<Eigen::VectorXd> points;
  std::uint64_t index = 0;
  while (static_cast<int>(points.size()) < count && index < 100000) {
    Eigen::VectorXd x = box_point(inner, index++, seed);
    if (!field.admissible(x)) continue;
    if (min_excluded_distance > 0.0 && !field.excluded().empty() &&
        field.excluded().distance(x) < min_excluded_distance)
      continue;
    points.push_back(std::move(x));
  }
  return points;
}

double cube_half_width(const Box& box) {
  double hw = std::numeric_limits<double>::infinity();
  for (int i = 0; i < box.dim(); ++i)
    hw = std::min({hw, box.hi[i], -box.lo[i]});
  return hw;
}

// Random polynomial of total degree <= 4 with coefficients in [-1, 1].
ExprPtr random_poly4(int dim, std::uint64_t seed) {
  std::vector<std::vector<int>> exponents;
  std::vector<int> current(static_cast<std::size_t>(dim), 0);
  // Enumerate exponent tuples with sum <= 4 in lexicographic order.
  auto rec = [&](auto&& self, int axis, int budget) -> void {
    if (axis == dim) {
      exponents.push_back(current);
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      current[static_cast<std::size_t>(axis)] = e;
      self(self, axis + 1, budget - e);
    }
    current[static_cast<std::size_t>(axis)] = 0;
  };
  rec(rec, 0, 4);

  ExprPtr sum;
  std::uint64_t salt = 0;
  for (const auto& exp : exponents) {
    const double coeff = uniform(seed, 0x9000 + salt++, -1.0, 1.0);
    ExprPtr term = Expr::number(coeff);
    for (int i = 0; i < dim; ++i) {
      const int e = exp[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      ExprPtr factor = e == 1 ? Expr::variable(i) : Expr::pow(Expr::variable(i), e);
      term = Expr::mul(std::move(term), std::move(factor));
    }
    sum = sum ? Expr::add(std::move(sum), std::move(term)) : std::move(term);
  }
  return sum;
}

}  // namespace

SuiteResult suite_remark_formulas(std::uint64_t seed) {
  SuiteResult result;
  result.name = "remark-formulas";
  const double bound = 1e-9;
  for (double a : {0.3, 0.5, 0.9}) {
    for (int n : {2, 3, 4}) {
      ScalarField field = corpus::cone(a, n);
      double worst_lap = 0.0, worst_he = 0.0, worst_ht = 0.0;
      for (int k = 0; k < 20; ++k) {
        const double r = uniform(seed, 0x50 + static_cast<std::uint64_t>(k) * 7 +
                                           static_cast<std::uint64_t>(n) * 131, 1.0, 100.0);
        const Eigen::VectorXd x =
            r * sphere_direction(n, static_cast<std::uint64_t>(k), seed + n);
        const double norm = x.norm();
        const double lap_expected = a * (n - 1) / norm;
        const double he_expected = (n - 1) * a / (std::sqrt(1.0 + a * a) * norm);
        const double ht_expected = (1.0 - a * a) * (n - 1) * a / norm;

        const double lap = laplacian(field, x);
        CurvatureReport euclid = curvature_report(field, x, Signature::euclidean);
        CurvatureReport mink = curvature_report(field, x, Signature::minkowski);

        worst_lap = std::max(worst_lap, std::abs(lap - lap_expected) / lap_expected);
        worst_he =
            std::max(worst_he, std::abs(euclid.mean_curvature - he_expected) / he_expected);
        worst_ht = std::max(worst_ht, std::abs(*mink.htilde - ht_expected) / ht_expected);
      }
      std::ostringstream label;
      label << "cone(a=" << a << ",n=" << n << ")";
      result.require_at_most(label.str() + " laplacian", worst_lap, bound);
      result.require_at_most(label.str() + " mean-euclidean", worst_he, bound);
      result.require_at_most(label.str() + " htilde", worst_ht, bound);
    }
  }
  return result;
}

SuiteResult suite_example11_regression(std::uint64_t seed, Exec exec) {
  SuiteResult result;
  result.name = "example11-regression";
  const double a = 0.5, c = 1.0;
  ScalarField field = corpus::example11(a, c, 2, 50.0);
  const Box& box = field.domain();

  double max_det = 0.0, max_grad = 0.0;
  bool all_spacelike = true;
  std::vector<Eigen::VectorXd> ruling_bases;
  for (int k = 0; k < 10000; ++k) {
    const Eigen::VectorXd x = box_point(box, static_cast<std::uint64_t>(k), seed);
    max_det = std::max(max_det, std::abs(ma_residual(field, x)));
    PointJet2 j = jet2_at(field, x);
    max_grad = std::max(max_grad, j.gradient.norm());
    if (causal_type(field, x).kind != CausalKind::spacelike) all_spacelike = false;
    if (k < 20) ruling_bases.push_back(x);
  }
  result.require_at_most("max |det D2u| over 1e4 points", max_det, 1e-12);
  result.require_at_most("max |Du|", max_grad, a);
  result.require("causal type spacelike everywhere", all_spacelike);

  Tolerances tol;
  Eigen::VectorXd e2(2);
  e2 << 0.0, 1.0;
  const double step = tol.step_fraction * box.diameter();
  double worst_residual = 0.0, worst_endpoint = 0.0;
  for (const auto& x0 : ruling_bases) {
    RulingSegment seg = trace_ruling(field, x0, e2, step, tol);
    worst_residual = std::max(worst_residual, seg.affinity_residual);
    // Full chord: both endpoints on the x2 = +-50 faces.
    worst_endpoint = std::max(worst_endpoint,
                              std::abs(std::abs(seg.point_at(seg.t_minus)[1]) - 50.0));
    worst_endpoint = std::max(worst_endpoint,
                              std::abs(std::abs(seg.point_at(seg.t_plus)[1]) - 50.0));
  }
  result.require_at_most("ruling affinity residual", worst_residual, 1e-10);
  result.require_at_most("full-chord endpoint gap", worst_endpoint, 1e-9 * 50.0);

  const Eigen::VectorXd center = Eigen::VectorXd::Zero(2);
  const std::vector<double> radii{10.0, 45.0};
  for (Quantity q :
       {Quantity::laplacian, Quantity::mean_euclidean, Quantity::mean_minkowski_tilde}) {
    Verdict v = rigidity_verdict(field, q, center, radii, box, 4096, 4096, seed, tol, exec);
    result.require(std::string("decay-fails for ") + quantity_name(q),
                   v.outcome == Outcome::decay_fails);
  }
  return result;
}

SuiteResult suite_euclid_identity(int trials, std::uint64_t seed) {
  SuiteResult result;
  result.name = "euclid-identity";
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int dim = 2 + t % 3;
    ScalarField field = ScalarField::analytic(
        random_poly4(dim, seed + static_cast<std::uint64_t>(t)), dim, Box::cube(dim, 10.0));
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXd x0(dim);
      for (int i = 0; i < dim; ++i)
        x0[i] = uniform(seed, 0xA000 + static_cast<std::uint64_t>(t) * 64 +
                                  static_cast<std::uint64_t>(k) * 8 +
                                  static_cast<std::uint64_t>(i),
                        -1.0, 1.0);
      const Eigen::VectorXd gamma = sphere_direction(
          dim, static_cast<std::uint64_t>(t) * 16 + static_cast<std::uint64_t>(k), seed ^ 0x11);
      worst = std::max(worst, euclidean_combination_identity(field, x0, gamma));
    }
  }
  result.require_at_most("combination identity residual", worst, 1e-8);
  return result;
}

SuiteResult suite_lemma(std::uint64_t seed) {
  SuiteResult result;
  result.name = "lemma";
  Tolerances tol;
  const double bound = 1e-8;

  double worst_r1 = 0.0, worst_r2 = 0.0, worst_r3 = 0.0, worst_r4 = 0.0, worst_r5 = 0.0;
  double worst_profile = 0.0;
  double worst_cone_rel = 0.0;
  bool kernel_complete = true;
  int rulings = 0;

  for (const auto& entry : corpus::default_entries()) {
    if (!(entry.convex && entry.developable)) continue;
    const ScalarField& field = entry.field;
    const double hw = cube_half_width(field.domain());
    const double shrink = hw <= 10.0 ? 0.4 : 0.1;
    const bool is_cone2 = entry.name.rfind("cone(", 0) == 0 && field.dim() == 2;

    for (const auto& x0 : sample_points(field, 3, seed, shrink, 1.0)) {
      std::vector<Eigen::VectorXd> kernel = hessian_kernel(field, x0, tol.tau_ker);
      if (kernel.empty()) kernel_complete = false;
      for (const auto& gamma : kernel) {
        RulingSegment seg =
            trace_ruling(field, x0, gamma, tol.step_fraction * field.domain().diameter(), tol);
        ++rulings;
        for (int e = 0; e < 50; ++e) {
          const Eigen::VectorXd eta = sphere_direction(
              field.dim(), static_cast<std::uint64_t>(rulings) * 64 + static_cast<std::uint64_t>(e),
              seed ^ 0xE7A);
          LemmaResidualReport rep = lemma_residuals(field, seg, eta);
          worst_r1 = std::max(worst_r1, rep.r1);
          worst_r2 = std::max(worst_r2, -rep.r2);
          worst_r3 = std::max(worst_r3, rep.r3);
          worst_r4 = std::max(worst_r4, rep.r4);
          worst_r5 = std::max(worst_r5, -rep.r5);
          for (double p : rep.convexity_profile) worst_profile = std::max(worst_profile, -p);
        }
        if (is_cone2) {
          // Radial ruling of the flat cone: (Htilde)_gg = 2 (1-a^2) a / r^3.
          const double aa = 0.5;
          const double r = x0.norm();
          const double expected = 2.0 * (1.0 - aa * aa) * aa / (r * r * r);
          const double got = htilde_second_derivative(field, seg);
          worst_cone_rel = std::max(worst_cone_rel, std::abs(got - expected) / expected);
        }
      }
    }
  }

  result.require("kernel nonempty at every degenerate sample", kernel_complete);
  result.require_at_least("certified rulings traced", rulings, 10);
  result.require_at_most("|D3u[eta,g,g]|", worst_r1, bound);
  result.require_at_most("-D4u[eta,eta,g,g]", worst_r2, bound);
  result.require_at_most("|(|Du|^2)_g|", worst_r3, bound);
  result.require_at_most("|(|Du|^2)_gg|", worst_r4, bound);
  result.require_at_most("-(Htilde)_gg", worst_r5, bound);
  result.require_at_most("-convexity profile", worst_profile, bound);
  result.require_at_most("cone (Htilde)_gg relative error", worst_cone_rel, 1e-6);
  return result;
}

SuiteResult suite_decay_profiles(std::uint64_t seed, Exec exec) {
  SuiteResult result;
  result.name = "decay-profiles";
  Tolerances tol;

  {
    ScalarField cone = corpus::cone(0.5, 2);
    DecayProfile p = decay_profile(cone, Quantity::laplacian, Eigen::VectorXd::Zero(2),
                                   {1.0, 10.0, 100.0}, 4096, seed, tol, exec);
    const double expected[3] = {0.5, 0.05, 0.005};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(p.sups[static_cast<std::size_t>(i)] - expected[i]));
    result.require_at_most("cone laplacian sup error", worst, 1e-6);
    result.require("cone profile monotone", p.monotone_nonincreasing);
  }
  {
    ScalarField ex = corpus::example11(0.5, 1.0, 2);
    DecayProfile p =
        decay_profile(ex, Quantity::mean_minkowski_tilde, Eigen::VectorXd::Zero(2),
                      {10.0, 100.0}, std::int64_t{1} << 20, seed, tol, exec);
    double worst = 0.0;
    for (double s : p.sups) worst = std::max(worst, std::abs(s - 0.5));
    result.require_at_most("example-1.1 htilde sup error", worst, 1e-6);
    result.require("example-1.1 non-decay detected", !p.decay_accepted);
  }
  return result;
}

SuiteResult suite_falsification(int random_fields, std::uint64_t seed, Exec exec) {
  SuiteResult result;
  result.name = "falsification";
  Tolerances tol;

  std::vector<corpus::Entry> entries = corpus::default_entries();
  for (int i = 0; i < random_fields; ++i)
    entries.push_back(corpus::random_cylinder(seed + static_cast<std::uint64_t>(i), 2 + i % 2));

  bool equivalence_holds = true;
  bool decay_fails_where_expected = true;
  bool witnesses_finite = true;
  std::string first_failure;

  for (const auto& entry : entries) {
    const ScalarField& field = entry.field;
    const int n = field.dim();
    const double hw = cube_half_width(field.domain());
    const Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
    const double rmax = 0.95 * hw;
    const std::vector<double> radii{0.25 * rmax, 0.5 * rmax, 0.9 * rmax};
    Box region = Box::cube(n, 0.45 * hw);

    for (Quantity q :
         {Quantity::laplacian, Quantity::mean_euclidean, Quantity::mean_minkowski_tilde}) {
      Verdict v =
          rigidity_verdict(field, q, center, radii, region, 2048, 2048, seed, tol, exec);
      const bool consistent = v.outcome == Outcome::hyperplane_consistent;
      if (consistent != entry.affine) {
        equivalence_holds = false;
        if (first_failure.empty())
          first_failure = entry.name + " / " + quantity_name(q) + " -> " +
                          outcome_name(v.outcome);
      }
      if (entry.convex && entry.developable && entry.spacelike && !entry.affine) {
        if (v.outcome != Outcome::decay_fails) decay_fails_where_expected = false;
        else if (!v.witness || !v.witness->point.allFinite()) witnesses_finite = false;
      }
    }
  }

  result.require("consistent verdicts exactly for affine fields" +
                     (first_failure.empty() ? "" : " [" + first_failure + "]"),
                 equivalence_holds);
  result.require("spacelike degenerate non-affine fields fail by decay",
                 decay_fails_where_expected);
  result.require("decay witnesses finite", witnesses_finite);
  return result;
}

SuiteResult suite_fd_oracle(std::uint64_t seed) {
  SuiteResult result;
  result.name = "fd-oracle";
  double worst_low = 0.0;   // orders 1-2
  double worst_high = 0.0;  // orders 3-4
  for (const auto& entry : corpus::default_entries()) {
    const ScalarField& field = entry.field;
    if (!field.is_analytic()) continue;
    for (const auto& x : sample_points(field, 100, seed ^ fnv1a(entry.name), 0.3, 1.0)) {
      worst_low = std::max({worst_low, fd_crosscheck(field, x, 1), fd_crosscheck(field, x, 2)});
      worst_high =
          std::max({worst_high, fd_crosscheck(field, x, 3), fd_crosscheck(field, x, 4)});
    }
  }
  result.require_at_most("orders 1-2 discrepancy", worst_low, 1e-6);
  result.require_at_most("orders 3-4 discrepancy", worst_high, 1e-5);
  return result;
}

SuiteResult suite_grid_parity(std::uint64_t seed) {
  SuiteResult result;
  result.name = "grid-parity";
  ScalarField analytic = corpus::example11(0.5, 1.0, 2, 5.0);

  GridSpec spec;
  spec.origin = Eigen::VectorXd::Constant(2, -5.0);
  spec.spacing = Eigen::VectorXd::Constant(2, 0.05);
  spec.counts = {201, 201};
  spec.values.reserve(201 * 201);
  for (int i = 0; i < 201; ++i) {
    for (int j = 0; j < 201; ++j) {
      Eigen::VectorXd x(2);
      x << spec.origin[0] + i * spec.spacing[0], spec.origin[1] + j * spec.spacing[1];
      spec.values.push_back(analytic.value(x));
    }
  }
  ScalarField grid = ScalarField::from_grid(std::move(spec));

  Box inner = Box::cube(2, 4.0);
  double worst_lap = 0.0, worst_ht = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Eigen::VectorXd x = box_point(inner, static_cast<std::uint64_t>(k), seed);
    worst_lap = std::max(worst_lap,
                         std::abs(laplacian(grid, x) - laplacian(analytic, x)));
    const double ht_grid = *quantity_value(grid, x, Quantity::mean_minkowski_tilde);
    const double ht_exact = *quantity_value(analytic, x, Quantity::mean_minkowski_tilde);
    worst_ht = std::max(worst_ht, std::abs(ht_grid - ht_exact));
  }
  result.require_at_most("laplacian parity", worst_lap, 1e-3);
  result.require_at_most("htilde parity", worst_ht, 1e-3);
  return result;
}

}  // namespace gflat
