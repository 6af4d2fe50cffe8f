#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "gflat/geom.hpp"

namespace gflat {

// Deterministic low-discrepancy samplers.  The seed offsets and
// rotates the underlying radical-inverse sequences, so different seeds
// give different but fully reproducible sample sets.

std::uint64_t splitmix64(std::uint64_t x);

// Van der Corput radical inverse of `index` in the given base.
double radical_inverse(std::uint64_t index, std::uint32_t base);

// Unit direction on S^{dim-1}; consecutive indices fill the sphere
// evenly (angle sequence for dim 2, Halton + Box-Muller for dim >= 3).
Eigen::VectorXd sphere_direction(int dim, std::uint64_t index, std::uint64_t seed);

// Low-discrepancy point inside the box (per-axis Halton with a
// seed-derived rotation).
Eigen::VectorXd box_point(const Box& box, std::uint64_t index, std::uint64_t seed);

}  // namespace gflat
