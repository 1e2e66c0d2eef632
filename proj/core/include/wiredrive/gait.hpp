#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "wiredrive/leg_kinematics.hpp"
#include "wiredrive/tendon.hpp"

namespace wiredrive {

struct GaitParameters {
  double stride = 80.0;        // stance travel along the ground, mm
  double swing_height = 40.0;  // peak clearance of the target swing arc, mm
  std::size_t samples_per_phase = 50;
  double ground_offset = 200.0;

  // Checks ranges and that the whole stance line is reachable by `geom`.
  void validate(const LegGeometry& geom) const;
};

using JointSequence = std::vector<JointAngles>;
using FootTrace = std::vector<FootPosition>;

struct PlanLimits {
  JointLimits shoulder;
  JointLimits elbow;
  // Largest joint step between consecutive samples of the same phase, rad.
  double max_step = 0.2;
  ElbowBranch branch = ElbowBranch::kBackward;
};

// Comb-shaped targets over one cycle of 2N samples. The front leg is in
// stance for the first N samples; the back target is the front rotated by N.
struct TargetTrajectory {
  FootTrace front;
  FootTrace back;
};

// Point on the target swing arc, u in [0, 1] running from the rear end of the
// stance line back to the front end.
FootPosition swing_target_point(const GaitParameters& p, double u);

// Throws UnreachableTarget if any point is outside the leg's workspace.
TargetTrajectory target_foot_trajectory(const LegGeometry& geom, const GaitParameters& p);

// N stance samples from x = +stride/2 to x = -stride/2 on the ground line.
FootTrace stance_line(const GaitParameters& p);

JointSequence stance_joint_sequence(const LegGeometry& geom, const GaitParameters& p,
                                    ElbowBranch branch = ElbowBranch::kBackward);

// Pointwise coupling of a stance sequence onto the opposite leg of the pair.
JointSequence derive_swing_sequence(const JointSequence& stance,
                                    const TendonJacobian& stance_leg,
                                    const TendonJacobian& swing_leg);

enum class Leg : std::size_t { kFrontRight = 0, kBackRight = 1, kFrontLeft = 2, kBackLeft = 3 };
inline constexpr std::array<Leg, 4> kAllLegs = {Leg::kFrontRight, Leg::kBackRight,
                                                Leg::kFrontLeft, Leg::kBackLeft};
const char* leg_name(Leg leg);

// Drive-wire displacement per sample: right pair (2 wires) then left pair.
using WireLengths = std::array<double, 4>;

// One trot cycle. Right side: front stance on samples [0, N), back stance on
// [N, 2N). The left side is the right side shifted by N samples.
struct GaitPlan {
  LegGeometry geometry;
  GaitParameters parameters;
  TendonPair tendons;
  std::array<JointSequence, 4> joints;
  std::array<FootTrace, 4> feet;
  std::vector<WireLengths> wires;

  std::size_t samples_per_phase() const { return parameters.samples_per_phase; }
  std::size_t size() const { return 2 * parameters.samples_per_phase; }
  // 0 while the front-right leg is in stance, 1 otherwise.
  int phase(std::size_t sample) const;
  bool in_stance(Leg leg, std::size_t sample) const;

  const JointSequence& joint_sequence(Leg leg) const { return joints[static_cast<std::size_t>(leg)]; }
  const FootTrace& foot_trace(Leg leg) const { return feet[static_cast<std::size_t>(leg)]; }

  // Drive-wire samples repeated `cycles` times, closed by the first sample.
  std::vector<WireLengths> wire_loop(std::size_t cycles = 1) const;
};

struct InvariantViolation {
  std::string invariant;
  std::size_t sample;
  std::string detail;
};

// Tolerances for plan invariants.
inline constexpr double kStanceTolerance = 1e-6;   // mm
inline constexpr double kCouplingTolerance = 1e-9; // mm

// Checks stance tracking, swing clearance, side shift, complementarity,
// the coupling law, joint limits and the in-phase step bound. Returns every
// violation found (empty when the plan is valid).
std::vector<InvariantViolation> check_gait_plan(const GaitPlan& plan, const PlanLimits& limits);

// Throws UnreachableTarget / SingularJacobian from the building blocks and
// PlanInvariantViolation (first violation) if the finished plan is invalid.
GaitPlan build_gait_plan(const LegGeometry& geom, const GaitParameters& p,
                         const TendonPair& tendons, const PlanLimits& limits = {});

// Largest drive-wire jump at the two phase switches and the cycle wrap, mm.
double max_phase_switch_jump(const GaitPlan& plan);

}  // namespace wiredrive
