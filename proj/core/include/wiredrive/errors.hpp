#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wiredrive {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a documented precondition or type invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Foot target outside the annulus |l1 - l2| <= r <= l1 + l2.
class UnreachableTarget : public Error {
 public:
  UnreachableTarget(double x, double y, double inner_radius, double outer_radius);

  double x() const { return x_; }
  double y() const { return y_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }

 private:
  double x_, y_, inner_, outer_;
};

class SingularJacobian : public Error {
 public:
  explicit SingularJacobian(double determinant);
  double determinant() const { return det_; }

 private:
  double det_;
};

class JointLimitViolation : public Error {
 public:
  JointLimitViolation(std::size_t joint, double value, double limit);
  std::size_t joint() const { return joint_; }
  double value() const { return value_; }
  double limit() const { return limit_; }

 private:
  std::size_t joint_;
  double value_, limit_;
};

class NoFeasiblePoint : public Error {
 public:
  using Error::Error;
};

// A built gait plan fails one of its invariants; `invariant()` names it.
class PlanInvariantViolation : public Error {
 public:
  PlanInvariantViolation(std::string invariant, std::size_t sample, const std::string& detail);
  const std::string& invariant() const { return invariant_; }
  std::size_t sample() const { return sample_; }

 private:
  std::string invariant_;
  std::size_t sample_;
};

// Malformed configuration document. `path()` is the dotted field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace wiredrive
