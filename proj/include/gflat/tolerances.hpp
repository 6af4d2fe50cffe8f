#pragma once

namespace gflat {

// Every threshold the library applies, in one bundle; all of them are
// surfaced in serialized outputs so results are scoped.
struct Tolerances {
  double tau_light = 1e-9;         // lightlike band half-width around |Du| = 1
  double tau_ker = 1e-8;           // kernel threshold, relative to 1 + max |eig|
  double tau_aff = 1e-9;           // affinity residual, scaled by 1 + |u(x0)|
  double tau_lem = 1e-8;           // lemma residual budget
  double tau_id = 1e-8;            // algebraic identity budget
  double eps_decay = 1e-6;         // decay acceptance for the final sphere supremum
  double eps_conclusion = 1e-7;    // |principal curvature| bound for consistency
  double eps_developable = 1e-10;  // max |det D^2 u| allowed on the region
  double eps_convex = 1e-10;       // min Hessian eigenvalue must be >= -eps_convex
  double step_fraction = 1e-2;     // ruling trace step, times the domain diameter
  double endpoint_fraction = 1e-4; // ruling endpoint localization, times diameter
};

}  // namespace gflat
