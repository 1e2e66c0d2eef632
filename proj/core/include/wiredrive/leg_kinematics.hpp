#pragma once

#include <Eigen/Core>
#include <numbers>

namespace wiredrive {

// Planar two-link leg hanging from the shoulder. Millimetres throughout.
struct LegGeometry {
  double upper_length = 125.0;
  double lower_length = 125.0;
  // Distance from the shoulder down to the ground plane (positive down).
  double ground_offset = 200.0;

  // Throws InvalidArgument for non-positive lengths/offset and
  // UnreachableTarget when the ground plane lies at or beyond full extension.
  void validate() const;

  double outer_radius() const { return upper_length + lower_length; }
  double inner_radius() const;
};

// Joint angles in radians.
//
// shoulder: angle of the upper link measured from the forward horizontal,
//           positive rotating downward (pi/2 is straight down).
// elbow:    bend of the lower link relative to the upper link; the lower link
//           points along (shoulder - elbow). elbow >= 0 puts the knee behind
//           the line from hip to foot.
struct JointAngles {
  double shoulder = 0.0;
  double elbow = 0.0;

  Eigen::Vector2d vec() const { return {shoulder, elbow}; }
  static JointAngles from(const Eigen::Vector2d& v) { return {v.x(), v.y()}; }
  bool finite() const;
};

// Foot position in the shoulder frame: x forward, y up.
struct FootPosition {
  double x = 0.0;
  double y = 0.0;

  double norm() const;
};

enum class ElbowBranch {
  kBackward,  // elbow >= 0
  kForward,   // elbow <= 0
};

struct JointLimits {
  double lower = 0.0;
  double upper = std::numbers::pi;

  bool contains(double q) const { return q >= lower && q <= upper; }
};

FootPosition forward_kinematics(const LegGeometry& geom, const JointAngles& q);

// Throws UnreachableTarget when !reachable(geom, p).
JointAngles inverse_kinematics(const LegGeometry& geom, const FootPosition& p,
                               ElbowBranch branch = ElbowBranch::kBackward);

bool reachable(const LegGeometry& geom, const FootPosition& p);

}  // namespace wiredrive
