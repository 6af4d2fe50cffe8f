#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace gflat {

// Degree of the truncated Taylor arithmetic; the highest derivative
// order the library exposes anywhere.
inline constexpr int kJetDegree = 4;

// Truncated univariate Taylor series: c[k] is the k-th Taylor
// coefficient of t -> f(x0 + t v) at t = 0, so the k-th derivative is
// k! * c[k].  All operations propagate the full five coefficients.
//
// Domain failures (division by a series vanishing at 0, sqrt/log off
// their domain, |.| at a sign change) throw std::domain_error; callers
// that know the evaluation point rewrap into DomainError.
struct Taylor {
  std::array<double, kJetDegree + 1> c{};

  static Taylor constant(double v) {
    Taylor t;
    t.c[0] = v;
    return t;
  }
  // Coefficients of x0 + v*t, the seed for a coordinate along a line.
  static Taylor line(double x0, double v) {
    Taylor t;
    t.c[0] = x0;
    t.c[1] = v;
    return t;
  }

  double value() const { return c[0]; }

  double derivative(int k) const {
    static constexpr std::array<double, 5> kFactorial{1.0, 1.0, 2.0, 6.0, 24.0};
    return c[static_cast<std::size_t>(k)] * kFactorial[static_cast<std::size_t>(k)];
  }

  bool all_zero() const {
    for (double v : c)
      if (v != 0.0) return false;
    return true;
  }
};

inline Taylor operator+(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int k = 0; k <= kJetDegree; ++k) r.c[k] = a.c[k] + b.c[k];
  return r;
}

inline Taylor operator-(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int k = 0; k <= kJetDegree; ++k) r.c[k] = a.c[k] - b.c[k];
  return r;
}

inline Taylor operator-(const Taylor& a) {
  Taylor r;
  for (int k = 0; k <= kJetDegree; ++k) r.c[k] = -a.c[k];
  return r;
}

inline Taylor operator*(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int k = 0; k <= kJetDegree; ++k) {
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
    r.c[k] = s;
  }
  return r;
}

inline Taylor operator*(double s, const Taylor& a) {
  Taylor r;
  for (int k = 0; k <= kJetDegree; ++k) r.c[k] = s * a.c[k];
  return r;
}

inline Taylor operator/(const Taylor& a, const Taylor& b) {
  if (b.c[0] == 0.0) throw std::domain_error("division by zero");
  Taylor r;
  for (int k = 0; k <= kJetDegree; ++k) {
    double s = a.c[k];
    for (int j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
    r.c[k] = s / b.c[0];
  }
  return r;
}

inline Taylor sqrt(const Taylor& a) {
  if (a.c[0] < 0.0) throw std::domain_error("sqrt of negative value");
  if (a.c[0] == 0.0) {
    // sqrt of the identically-zero series is zero; otherwise the
    // derivative is singular at this point.
    if (a.all_zero()) return Taylor{};
    throw std::domain_error("sqrt derivative singular at zero argument");
  }
  Taylor r;
  r.c[0] = std::sqrt(a.c[0]);
  for (int k = 1; k <= kJetDegree; ++k) {
    double s = a.c[k];
    for (int j = 1; j < k; ++j) s -= r.c[j] * r.c[k - j];
    r.c[k] = s / (2.0 * r.c[0]);
  }
  return r;
}

inline Taylor exp(const Taylor& a) {
  Taylor r;
  r.c[0] = std::exp(a.c[0]);
  for (int k = 1; k <= kJetDegree; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
    r.c[k] = s / k;
  }
  return r;
}

inline Taylor log(const Taylor& a) {
  if (a.c[0] <= 0.0) throw std::domain_error("log of non-positive value");
  Taylor r;
  r.c[0] = std::log(a.c[0]);
  for (int k = 1; k <= kJetDegree; ++k) {
    double s = k * a.c[k];
    for (int j = 1; j < k; ++j) s -= j * r.c[j] * a.c[k - j];
    r.c[k] = s / (k * a.c[0]);
  }
  return r;
}

inline Taylor abs(const Taylor& a) {
  if (a.c[0] > 0.0) return a;
  if (a.c[0] < 0.0) return -a;
  if (a.all_zero()) return Taylor{};
  throw std::domain_error("abs not differentiable at zero argument");
}

// Integer power by repeated multiplication; negative exponents via the
// reciprocal.  0^0 evaluates to 1.
inline Taylor pow_int(const Taylor& a, int n) {
  if (n < 0) return Taylor::constant(1.0) / pow_int(a, -n);
  Taylor r = Taylor::constant(1.0);
  Taylor base = a;
  int e = n;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

}  // namespace gflat
