#include "gflat/geom.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gflat {

Box Box::cube(int dim, double half_width) {
  Box b;
  b.lo = Eigen::VectorXd::Constant(dim, -half_width);
  b.hi = Eigen::VectorXd::Constant(dim, half_width);
  return b;
}

Box Box::from_bounds(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box bounds dimension mismatch");
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i])) throw std::invalid_argument("box requires lo < hi on every axis");
  Box b;
  b.lo = std::move(lo);
  b.hi = std::move(hi);
  return b;
}

bool Box::contains(const Eigen::VectorXd& x, double slack) const {
  for (int i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
  return true;
}

std::optional<std::pair<double, double>> Box::clip_ray(const Eigen::VectorXd& x0,
                                                       const Eigen::VectorXd& dir) const {
  double tmin = -std::numeric_limits<double>::infinity();
  double tmax = std::numeric_limits<double>::infinity();
  for (int i = 0; i < lo.size(); ++i) {
    if (dir[i] == 0.0) {
      if (x0[i] < lo[i] || x0[i] > hi[i]) return std::nullopt;
      continue;
    }
    double t1 = (lo[i] - x0[i]) / dir[i];
    double t2 = (hi[i] - x0[i]) / dir[i];
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
  }
  if (tmin > tmax) return std::nullopt;
  return std::make_pair(tmin, tmax);
}

AffineSubspace AffineSubspace::single_point(Eigen::VectorXd p) {
  AffineSubspace s;
  s.basis = Eigen::MatrixXd::Zero(p.size(), 0);
  s.point = std::move(p);
  return s;
}

AffineSubspace AffineSubspace::span(Eigen::VectorXd p, const Eigen::MatrixXd& directions) {
  AffineSubspace s;
  s.point = std::move(p);
  if (directions.cols() == 0) {
    s.basis = Eigen::MatrixXd::Zero(s.point.size(), 0);
    return s;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(directions);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(directions.rows(), directions.cols());
  Eigen::MatrixXd r = qr.matrixQR().topRows(directions.cols()).triangularView<Eigen::Upper>();
  // Drop columns whose pivot is numerically zero.
  std::vector<int> keep;
  double scale = directions.norm();
  for (int j = 0; j < r.cols(); ++j)
    if (std::abs(r(j, j)) > 1e-13 * (scale + 1.0)) keep.push_back(j);
  s.basis.resize(s.point.size(), static_cast<int>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) s.basis.col(static_cast<int>(j)) = q.col(keep[j]);
  return s;
}

double AffineSubspace::distance(const Eigen::VectorXd& x) const {
  Eigen::VectorXd d = x - point;
  if (basis.cols() > 0) d -= basis * (basis.transpose() * d);
  return d.norm();
}

double ExcludedSet::distance(const Eigen::VectorXd& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& part : parts_) best = std::min(best, part.distance(x));
  return best;
}

std::vector<std::pair<double, double>> ExcludedSet::forbidden_intervals(
    const Eigen::VectorXd& x0, const Eigen::VectorXd& dir, double guard) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& part : parts_) {
    Eigen::VectorXd q = x0 - part.point;
    Eigen::VectorXd r = dir;
    if (part.basis.cols() > 0) {
      q -= part.basis * (part.basis.transpose() * q);
      r -= part.basis * (part.basis.transpose() * r);
    }
    double a = r.squaredNorm();
    double b = 2.0 * q.dot(r);
    double c = q.squaredNorm() - guard * guard;
    if (a < 1e-30) {
      if (c < 0.0) out.emplace_back(-kUnboundedT, kUnboundedT);
      continue;
    }
    double disc = b * b - 4.0 * a * c;
    if (disc <= 0.0) continue;
    double s = std::sqrt(disc);
    out.emplace_back((-b - s) / (2.0 * a), (-b + s) / (2.0 * a));
  }
  return out;
}

}  // namespace gflat
