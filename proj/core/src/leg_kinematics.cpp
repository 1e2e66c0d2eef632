#include "wiredrive/leg_kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "wiredrive/errors.hpp"

namespace wiredrive {

void LegGeometry::validate() const {
  if (!(upper_length > 0.0) || !(lower_length > 0.0) || !std::isfinite(upper_length) ||
      !std::isfinite(lower_length)) {
    throw InvalidArgument("leg link lengths must be positive and finite");
  }
  if (!(ground_offset > 0.0) || !std::isfinite(ground_offset)) {
    throw InvalidArgument("ground offset must be positive and finite");
  }
  if (ground_offset >= outer_radius()) {
    throw UnreachableTarget(0.0, -ground_offset, inner_radius(), outer_radius());
  }
}

double LegGeometry::inner_radius() const { return std::abs(upper_length - lower_length); }

bool JointAngles::finite() const { return std::isfinite(shoulder) && std::isfinite(elbow); }

double FootPosition::norm() const { return std::hypot(x, y); }

FootPosition forward_kinematics(const LegGeometry& geom, const JointAngles& q) {
  const double knee = q.shoulder - q.elbow;
  return {geom.upper_length * std::cos(q.shoulder) + geom.lower_length * std::cos(knee),
          -(geom.upper_length * std::sin(q.shoulder) + geom.lower_length * std::sin(knee))};
}

bool reachable(const LegGeometry& geom, const FootPosition& p) {
  const double r = p.norm();
  return std::isfinite(r) && r >= geom.inner_radius() && r <= geom.outer_radius();
}

JointAngles inverse_kinematics(const LegGeometry& geom, const FootPosition& p, ElbowBranch branch) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("foot target must be finite");
  if (!reachable(geom, p)) {
    throw UnreachableTarget(p.x, p.y, geom.inner_radius(), geom.outer_radius());
  }
  const double l1 = geom.upper_length;
  const double l2 = geom.lower_length;
  const double d = p.norm();

  // Half-angle form of the law of cosines; better conditioned than acos
  // near full extension.
  const double outer = geom.outer_radius();
  const double inner = geom.inner_radius();
  const double stretch = std::max(0.0, (outer - d) * (outer + d));
  const double fold = std::max(0.0, (d - inner) * (d + inner));
  double elbow = 2.0 * std::atan2(std::sqrt(stretch), std::sqrt(fold));
  if (branch == ElbowBranch::kForward) elbow = -elbow;

  // Foot direction measured clockwise from +x, matching the shoulder sign.
  const double heading = std::atan2(-p.y, p.x);
  const double shoulder =
      heading + std::atan2(l2 * std::sin(elbow), l1 + l2 * std::cos(elbow));
  return {shoulder, elbow};
}

}  // namespace wiredrive
