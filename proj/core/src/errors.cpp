#include "wiredrive/errors.hpp"

#include <cmath>
#include <sstream>

namespace wiredrive {

namespace {

std::string format_magnitude(double v) {
  std::ostringstream os;
  os << std::abs(v);
  return os.str();
}

}  // namespace

namespace {

std::string unreachable_message(double x, double y, double inner, double outer) {
  std::ostringstream os;
  os << "unreachable target (" << x << ", " << y << "): reachable annulus is " << inner
     << " <= r <= " << outer << " mm";
  return os.str();
}

std::string limit_message(std::size_t joint, double value, double limit) {
  std::ostringstream os;
  os << "joint " << joint << " half-angle " << value << " rad exceeds limit " << limit << " rad";
  return os.str();
}

}  // namespace

UnreachableTarget::UnreachableTarget(double x, double y, double inner_radius, double outer_radius)
    : Error(unreachable_message(x, y, inner_radius, outer_radius)),
      x_(x),
      y_(y),
      inner_(inner_radius),
      outer_(outer_radius) {}

SingularJacobian::SingularJacobian(double determinant)
    : Error("singular tendon Jacobian: |det| = " + format_magnitude(determinant) +
            " < 1e-6"),
      det_(determinant) {}

JointLimitViolation::JointLimitViolation(std::size_t joint, double value, double limit)
    : Error(limit_message(joint, value, limit)), joint_(joint), value_(value), limit_(limit) {}

PlanInvariantViolation::PlanInvariantViolation(std::string invariant, std::size_t sample,
                                               const std::string& detail)
    : Error("plan invariant '" + invariant + "' violated at sample " + std::to_string(sample) +
            (detail.empty() ? "" : ": " + detail)),
      invariant_(std::move(invariant)),
      sample_(sample) {}

ConfigError::ConfigError(std::string path, const std::string& message)
    : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

}  // namespace wiredrive
