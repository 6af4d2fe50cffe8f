#pragma once

#include <Eigen/Core>
#include <optional>
#include <utility>
#include <vector>

namespace gflat {

// Axis-aligned box; the finite truncation of R^n a field lives on.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static Box cube(int dim, double half_width);
  static Box from_bounds(Eigen::VectorXd lo, Eigen::VectorXd hi);

  int dim() const { return static_cast<int>(lo.size()); }
  double diameter() const { return (hi - lo).norm(); }
  Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
  bool contains(const Eigen::VectorXd& x, double slack = 0.0) const;

  // t-interval for which x0 + t*dir stays inside the box.
  std::optional<std::pair<double, double>> clip_ray(
      const Eigen::VectorXd& x0, const Eigen::VectorXd& dir) const;
};

// Affine subspace point + span(basis).  Basis columns are orthonormal;
// an empty basis is a single point.
struct AffineSubspace {
  Eigen::VectorXd point;
  Eigen::MatrixXd basis;  // n x k, k >= 0

  static AffineSubspace single_point(Eigen::VectorXd p);
  static AffineSubspace span(Eigen::VectorXd p, const Eigen::MatrixXd& directions);

  double distance(const Eigen::VectorXd& x) const;
};

// Finite union of affine subspaces a field is singular on (declared
// metadata, e.g. the origin of a cone field).
class ExcludedSet {
 public:
  ExcludedSet() = default;
  explicit ExcludedSet(std::vector<AffineSubspace> parts) : parts_(std::move(parts)) {}

  bool empty() const { return parts_.empty(); }
  const std::vector<AffineSubspace>& parts() const { return parts_; }

  // +inf when the set is empty.
  double distance(const Eigen::VectorXd& x) const;

  // Intervals of t where dist(x0 + t*dir, set) < guard.  Unbounded
  // intervals are returned with +-kUnboundedT endpoints.
  std::vector<std::pair<double, double>> forbidden_intervals(
      const Eigen::VectorXd& x0, const Eigen::VectorXd& dir, double guard) const;

  static constexpr double kUnboundedT = 1e300;

 private:
  std::vector<AffineSubspace> parts_;
};

}  // namespace gflat
