#include "gflat/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace gflat {

namespace {

constexpr std::uint32_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                     31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
constexpr int kMaxHaltonDims = static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0]));

constexpr double kTwoPi = 6.283185307179586476925286766559;

double fract(double x) { return x - std::floor(x); }

// Seed-derived uniform in [0, 1).
double seed_rotation(std::uint64_t seed, std::uint64_t salt) {
  return static_cast<double>(splitmix64(seed ^ splitmix64(salt)) >> 11) * 0x1.0p-53;
}

std::uint64_t seed_offset(std::uint64_t seed) { return 1 + (splitmix64(seed) & 0xFFFFF); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double radical_inverse(std::uint64_t index, std::uint32_t base) {
  double result = 0.0;
  double digit = 1.0 / base;
  while (index != 0) {
    result += static_cast<double>(index % base) * digit;
    index /= base;
    digit /= base;
  }
  return result;
}

Eigen::VectorXd sphere_direction(int dim, std::uint64_t index, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("sphere dimension must be >= 1");
  const std::uint64_t i = index + seed_offset(seed);

  Eigen::VectorXd dir(dim);
  if (dim == 1) {
    dir[0] = (i % 2 == 0) ? 1.0 : -1.0;
    return dir;
  }
  if (dim == 2) {
    const double theta =
        kTwoPi * fract(radical_inverse(i, 2) + seed_rotation(seed, 0x5Bu));
    dir[0] = std::cos(theta);
    dir[1] = std::sin(theta);
    return dir;
  }

  // Halton pairs through Box-Muller, then normalize.
  const int pairs = (dim + 1) / 2;
  if (2 * pairs > kMaxHaltonDims)
    throw std::invalid_argument("sphere sampler supports at most 20 Halton dimensions");
  int filled = 0;
  for (int p = 0; p < pairs; ++p) {
    const double u1 =
        fract(radical_inverse(i, kPrimes[2 * p]) + seed_rotation(seed, 2 * p + 1));
    const double u2 =
        fract(radical_inverse(i, kPrimes[2 * p + 1]) + seed_rotation(seed, 2 * p + 2));
    const double r = std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 0x1.0p-60));
    const double z1 = r * std::cos(kTwoPi * u2);
    const double z2 = r * std::sin(kTwoPi * u2);
    dir[filled++] = z1;
    if (filled < dim) dir[filled++] = z2;
  }
  const double norm = dir.norm();
  if (norm < 1e-12) {
    dir.setZero();
    dir[0] = 1.0;
    return dir;
  }
  return dir / norm;
}

Eigen::VectorXd box_point(const Box& box, std::uint64_t index, std::uint64_t seed) {
  const int dim = box.dim();
  if (dim > kMaxHaltonDims)
    throw std::invalid_argument("box sampler supports at most 20 dimensions");
  const std::uint64_t i = index + seed_offset(seed);
  Eigen::VectorXd x(dim);
  for (int a = 0; a < dim; ++a) {
    const double u =
        fract(radical_inverse(i, kPrimes[a]) + seed_rotation(seed, 0x100u + a));
    x[a] = box.lo[a] + u * (box.hi[a] - box.lo[a]);
  }
  return x;
}

}  // namespace gflat
