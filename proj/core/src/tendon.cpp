#include "wiredrive/tendon.hpp"

#include <Eigen/LU>
#include <cmath>

#include "wiredrive/errors.hpp"

namespace wiredrive {

TendonJacobian::TendonJacobian(const Eigen::Matrix2d& g, const JointAngles& q0) : g_(g), q0_(q0) {
  if (!g_.allFinite() || !q0_.finite()) {
    throw InvalidArgument("tendon Jacobian entries must be finite");
  }
  const double det = g_.determinant();
  if (std::abs(det) < kMinJacobianDeterminant) throw SingularJacobian(det);
}

namespace reference_design {

TendonPair optimized() {
  Eigen::Matrix2d gf, gb;
  gf << 40, 0, 20, -40;
  gb << -40, 0, -20, 40;
  return {TendonJacobian(gf, {2.2, 1.9}), TendonJacobian(gb, {2.2, 1.7})};
}

TendonPair tuned() {
  Eigen::Matrix2d gf, gb;
  gf << 35, 0, 7.5, -35;
  gb << -35, 0, 7.5, 35;
  return {TendonJacobian(gf, {2.6, 1.0}), TendonJacobian(gb, {1.7, 2.6})};
}

}  // namespace reference_design

WireDisplacement wire_displacement(const TendonJacobian& t, const JointAngles& q) {
  return {t.g() * (q.vec() - t.q0().vec())};
}

JointAngles joint_angles_from_wire(const TendonJacobian& t, const WireDisplacement& l) {
  const double det = t.determinant();
  if (std::abs(det) < kMinJacobianDeterminant) throw SingularJacobian(det);
  return JointAngles::from(t.q0().vec() + t.g().partialPivLu().solve(l.l));
}

JointAngles coupling_map(const TendonJacobian& from, const TendonJacobian& to,
                         const JointAngles& q_from) {
  return joint_angles_from_wire(to, wire_displacement(from, q_from));
}

double coupling_residual(const TendonPair& pair, const JointAngles& q_front,
                         const JointAngles& q_back) {
  return (wire_displacement(pair.front, q_front).l - wire_displacement(pair.back, q_back).l).norm();
}

}  // namespace wiredrive
