#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "gflat/field.hpp"

namespace gflat::corpus {

// a*sqrt(x1^2 + c): smooth, convex, degenerate, |Du| < a; the standing
// counterexample to decay-free rigidity.  Requires 0 < a < 1, c > 0.
ScalarField example11(double a, double c, int dim = 2, double half_width = 1000.0);

// a*|x|: flat cone, singular at the origin (declared excluded).
ScalarField cone(double a, int dim, double half_width = 1000.0);

// a*sqrt(x1^2+...+xk^2), 1 <= k < dim: cylindrical cone, singular on
// the subspace x1=...=xk=0 (declared excluded).
ScalarField vk(double a, int k, int dim, double half_width = 1000.0);

// slope . x + offset.
ScalarField affine(const Eigen::VectorXd& slope, double offset, double half_width = 1000.0);

// |x|^2 / 2: convex but nowhere degenerate.
ScalarField half_sq_norm(int dim, double half_width = 1000.0);

// beta*log(1 + exp(shift + axis.x)) + slope.x + offset: smooth convex
// cylinder whose second derivative decays along the axis; |Du| stays
// below beta + |slope|.  The default half-width keeps exp() finite.
ScalarField softplus_cylinder(double beta, const Eigen::VectorXd& axis, double shift,
                              const Eigen::VectorXd& slope, double offset,
                              double half_width = 50.0);

// exp(x1+...+xn)/10 on a small box: degenerate convex with an
// unbounded gradient, so it has timelike points.
ScalarField exp_cylinder(int dim = 2, double half_width = 3.0);

struct Entry {
  std::string name;
  ScalarField field;
  bool convex = false;
  bool developable = false;  // det D^2 u == 0 away from the singular set
  bool affine = false;
  bool spacelike = false;  // |Du| < 1 everywhere on the domain
};

// The built-in corpus the verification suites run over.
std::vector<Entry> default_entries();

// Seeded random developable convex non-affine cylinder field for the
// falsification suite; deterministic per (seed, dim).
Entry random_cylinder(std::uint64_t seed, int dim);

}  // namespace gflat::corpus
