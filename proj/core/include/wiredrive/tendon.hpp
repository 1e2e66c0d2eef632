#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include "wiredrive/leg_kinematics.hpp"

namespace wiredrive {

// Smallest |det(G)| accepted for a tendon Jacobian.
inline constexpr double kMinJacobianDeterminant = 1e-6;

// Wire length change relative to the initial state, mm.
struct WireDisplacement {
  Eigen::Vector2d l = Eigen::Vector2d::Zero();
};

// l = G (q - q0), G in mm of wire per rad of joint.
class TendonJacobian {
 public:
  // Throws InvalidArgument on non-finite entries, SingularJacobian when
  // |det(g)| < kMinJacobianDeterminant.
  TendonJacobian(const Eigen::Matrix2d& g, const JointAngles& q0);

  const Eigen::Matrix2d& g() const { return g_; }
  const JointAngles& q0() const { return q0_; }
  double determinant() const { return g_.determinant(); }

 private:
  Eigen::Matrix2d g_;
  JointAngles q0_;
};

// Front and back Jacobians of one coupled leg pair.
struct TendonPair {
  TendonJacobian front;
  TendonJacobian back;
};

namespace reference_design {
// Unconstrained-optimum design parameters reported for the robot.
TendonPair optimized();
// Hand-tuned design parameters that were built.
TendonPair tuned();
}  // namespace reference_design

WireDisplacement wire_displacement(const TendonJacobian& t, const JointAngles& q);

// q = q0 + G^-1 l.
JointAngles joint_angles_from_wire(const TendonJacobian& t, const WireDisplacement& l);

// Angles of the `to` leg that share the wire displacement of the `from` leg:
// q_to = q0_to + G_to^-1 G_from (q_from - q0_from).
JointAngles coupling_map(const TendonJacobian& from, const TendonJacobian& to,
                         const JointAngles& q_from);

// |G_f (q_f - q0_f) - G_b (q_b - q0_b)| in mm.
double coupling_residual(const TendonPair& pair, const JointAngles& q_front,
                         const JointAngles& q_back);

}  // namespace wiredrive
