#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <utility>

namespace gflat {

// Raised by the expression parser; carries the byte offset into the
// source text and the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position, std::string token)
      : std::runtime_error(what + " (at position " + std::to_string(position) +
                           ", near '" + token + "')"),
        position_(position),
        token_(std::move(token)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::size_t position_;
  std::string token_;
};

// Raised when a numerical hypothesis an operation depends on fails,
// e.g. a ruling trace started along a direction that is not in the
// Hessian kernel.  Carries the measured residual.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Raised when an evaluation leaves the admissible domain: outside the
// field's box, inside the guard band of an excluded set, or a partial
// function (sqrt, log, division) evaluated off its domain.  Carries the
// offending point.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, Eigen::VectorXd point)
      : std::runtime_error(what), point_(std::move(point)) {}

  const Eigen::VectorXd& point() const noexcept { return point_; }

 private:
  Eigen::VectorXd point_;
};

}  // namespace gflat
