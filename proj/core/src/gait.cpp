#include "wiredrive/gait.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wiredrive/errors.hpp"

namespace wiredrive {

void GaitParameters::validate(const LegGeometry& geom) const {
  if (!(stride > 0.0) || !std::isfinite(stride)) throw InvalidArgument("stride must be positive");
  if (!(swing_height > 0.0) || !std::isfinite(swing_height)) {
    throw InvalidArgument("swing height must be positive");
  }
  if (samples_per_phase < 2) throw InvalidArgument("samples per phase must be at least 2");
  if (ground_offset != geom.ground_offset) {
    throw InvalidArgument("gait ground offset does not match the leg geometry");
  }
  geom.validate();
  for (const FootPosition& p : {FootPosition{stride / 2, -ground_offset},
                                FootPosition{-stride / 2, -ground_offset},
                                FootPosition{0.0, -ground_offset}}) {
    if (!reachable(geom, p)) throw UnreachableTarget(p.x, p.y, geom.inner_radius(), geom.outer_radius());
  }
}

FootTrace stance_line(const GaitParameters& p) {
  const std::size_t n = p.samples_per_phase;
  FootTrace line;
  line.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n - 1);
    line.push_back({p.stride / 2 - s * p.stride, -p.ground_offset});
  }
  return line;
}

FootPosition swing_target_point(const GaitParameters& p, double u) {
  return {-p.stride / 2 + u * p.stride,
          -p.ground_offset + p.swing_height * std::sin(std::numbers::pi * u)};
}

TargetTrajectory target_foot_trajectory(const LegGeometry& geom, const GaitParameters& p) {
  p.validate(geom);
  const std::size_t n = p.samples_per_phase;
  TargetTrajectory target;
  target.front = stance_line(p);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = static_cast<double>(k + 1) / static_cast<double>(n + 1);
    target.front.push_back(swing_target_point(p, u));
  }
  for (const FootPosition& q : target.front) {
    if (!reachable(geom, q)) throw UnreachableTarget(q.x, q.y, geom.inner_radius(), geom.outer_radius());
  }
  target.back.resize(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) target.back[i] = target.front[(i + n) % (2 * n)];
  return target;
}

JointSequence stance_joint_sequence(const LegGeometry& geom, const GaitParameters& p,
                                    ElbowBranch branch) {
  p.validate(geom);
  JointSequence seq;
  for (const FootPosition& foot : stance_line(p)) seq.push_back(inverse_kinematics(geom, foot, branch));
  return seq;
}

JointSequence derive_swing_sequence(const JointSequence& stance, const TendonJacobian& stance_leg,
                                    const TendonJacobian& swing_leg) {
  JointSequence swing;
  swing.reserve(stance.size());
  for (const JointAngles& q : stance) swing.push_back(coupling_map(stance_leg, swing_leg, q));
  return swing;
}

const char* leg_name(Leg leg) {
  switch (leg) {
    case Leg::kFrontRight: return "front_right";
    case Leg::kBackRight: return "back_right";
    case Leg::kFrontLeft: return "front_left";
    case Leg::kBackLeft: return "back_left";
  }
  return "?";
}

int GaitPlan::phase(std::size_t sample) const {
  return (sample % size()) < samples_per_phase() ? 0 : 1;
}

bool GaitPlan::in_stance(Leg leg, std::size_t sample) const {
  const std::size_t n = samples_per_phase();
  const bool left = leg == Leg::kFrontLeft || leg == Leg::kBackLeft;
  const bool front = leg == Leg::kFrontRight || leg == Leg::kFrontLeft;
  const std::size_t right_sample = left ? (sample + n) % size() : sample % size();
  return (phase(right_sample) == 0) == front;
}

std::vector<WireLengths> GaitPlan::wire_loop(std::size_t cycles) const {
  std::vector<WireLengths> loop;
  loop.reserve(cycles * wires.size() + 1);
  for (std::size_t c = 0; c < cycles; ++c) loop.insert(loop.end(), wires.begin(), wires.end());
  if (!wires.empty()) loop.push_back(wires.front());
  return loop;
}

namespace {

std::string describe(double value) {
  std::ostringstream os;
  os.precision(12);
  os << value;
  return os.str();
}

}  // namespace

std::vector<InvariantViolation> check_gait_plan(const GaitPlan& plan, const PlanLimits& limits) {
  std::vector<InvariantViolation> out;
  const std::size_t n = plan.samples_per_phase();
  const std::size_t total = plan.size();
  const double ground = -plan.parameters.ground_offset;

  for (Leg leg : kAllLegs) {
    const auto& joints = plan.joint_sequence(leg);
    const auto& feet = plan.foot_trace(leg);
    if (joints.size() != total || feet.size() != total) {
      out.push_back({"sequence-length", 0, leg_name(leg)});
      continue;
    }
    for (std::size_t i = 0; i < total; ++i) {
      const double y = feet[i].y;
      if (plan.in_stance(leg, i)) {
        if (std::abs(y - ground) > kStanceTolerance) {
          out.push_back({"stance-tracking", i, std::string(leg_name(leg)) + " y=" + describe(y)});
        }
      } else if (!(y > ground)) {
        out.push_back({"swing-clearance", i, std::string(leg_name(leg)) + " y=" + describe(y)});
      }
      const JointAngles& q = joints[i];
      if (!q.finite() || !limits.shoulder.contains(q.shoulder) || !limits.elbow.contains(q.elbow)) {
        out.push_back({"joint-limits", i,
                       std::string(leg_name(leg)) + " q=(" + describe(q.shoulder) + ", " +
                           describe(q.elbow) + ")"});
      }
      // Step bound within a phase only; the stance/swing switch is a genuine
      // discontinuity of the coupled plan.
      if (i + 1 < total && (i + 1) % n != 0) {
        const JointAngles& next = joints[i + 1];
        const double step = std::max(std::abs(next.shoulder - q.shoulder), std::abs(next.elbow - q.elbow));
        if (step > limits.max_step) {
          out.push_back({"step-bound", i, std::string(leg_name(leg)) + " step=" + describe(step)});
        }
      }
    }
  }

  for (std::size_t i = 0; i < total; ++i) {
    for (auto [front, back] : {std::pair{Leg::kFrontRight, Leg::kBackRight},
                               std::pair{Leg::kFrontLeft, Leg::kBackLeft}}) {
      if (plan.in_stance(front, i) == plan.in_stance(back, i)) {
        out.push_back({"complementarity", i, leg_name(front)});
      }
      if (plan.joint_sequence(front).size() == total && plan.joint_sequence(back).size() == total) {
        const double r = coupling_residual(plan.tendons, plan.joint_sequence(front)[i],
                                           plan.joint_sequence(back)[i]);
        if (!(r <= kCouplingTolerance)) {
          out.push_back({"coupling", i, std::string(leg_name(front)) + " residual=" + describe(r)});
        }
      }
    }
    const std::size_t shifted = (i + n) % total;
    for (auto [left, right] : {std::pair{Leg::kFrontLeft, Leg::kFrontRight},
                               std::pair{Leg::kBackLeft, Leg::kBackRight}}) {
      const auto& ql = plan.joint_sequence(left);
      const auto& qr = plan.joint_sequence(right);
      if (ql.size() == total && qr.size() == total &&
          (ql[i].shoulder != qr[shifted].shoulder || ql[i].elbow != qr[shifted].elbow)) {
        out.push_back({"side-shift", i, leg_name(left)});
      }
    }
    if (plan.wires.size() == total) {
      const WireLengths& w = plan.wires[i];
      const WireLengths& ws = plan.wires[shifted];
      if (w[2] != ws[0] || w[3] != ws[1]) out.push_back({"side-shift", i, "drive wires"});
    }
  }
  if (plan.wires.size() != total) out.push_back({"sequence-length", 0, "drive wires"});
  return out;
}

GaitPlan build_gait_plan(const LegGeometry& geom, const GaitParameters& p, const TendonPair& tendons,
                         const PlanLimits& limits) {
  p.validate(geom);
  const std::size_t n = p.samples_per_phase;
  const std::size_t total = 2 * n;

  // Both legs of a pair track the same stance line in their own shoulder frame.
  const JointSequence stance = stance_joint_sequence(geom, p, limits.branch);
  const JointSequence back_swing = derive_swing_sequence(stance, tendons.front, tendons.back);
  const JointSequence front_swing = derive_swing_sequence(stance, tendons.back, tendons.front);

  GaitPlan plan{geom, p, tendons, {}, {}, {}};
  JointSequence front = stance;
  front.insert(front.end(), front_swing.begin(), front_swing.end());
  JointSequence back = back_swing;
  back.insert(back.end(), stance.begin(), stance.end());

  auto shifted = [&](const JointSequence& seq) {
    JointSequence out(total);
    for (std::size_t i = 0; i < total; ++i) out[i] = seq[(i + n) % total];
    return out;
  };
  plan.joints[static_cast<std::size_t>(Leg::kFrontRight)] = front;
  plan.joints[static_cast<std::size_t>(Leg::kBackRight)] = back;
  plan.joints[static_cast<std::size_t>(Leg::kFrontLeft)] = shifted(front);
  plan.joints[static_cast<std::size_t>(Leg::kBackLeft)] = shifted(back);

  for (Leg leg : kAllLegs) {
    auto& trace = plan.feet[static_cast<std::size_t>(leg)];
    trace.reserve(total);
    for (const JointAngles& q : plan.joint_sequence(leg)) trace.push_back(forward_kinematics(geom, q));
  }

  // Drive wire from the stance leg of each phase; the coupled leg must agree.
  std::vector<Eigen::Vector2d> right(total);
  for (std::size_t i = 0; i < total; ++i) {
    right[i] = i < n ? wire_displacement(tendons.front, front[i]).l
                     : wire_displacement(tendons.back, back[i]).l;
  }
  plan.wires.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    const Eigen::Vector2d& r = right[i];
    const Eigen::Vector2d& l = right[(i + n) % total];
    plan.wires[i] = {r.x(), r.y(), l.x(), l.y()};
  }

  const auto violations = check_gait_plan(plan, limits);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw PlanInvariantViolation(v.invariant, v.sample, v.detail);
  }
  return plan;
}

double max_phase_switch_jump(const GaitPlan& plan) {
  const std::size_t n = plan.samples_per_phase();
  const std::size_t total = plan.size();
  double jump = 0.0;
  for (std::size_t i : {n - 1, total - 1}) {
    const WireLengths& a = plan.wires[i];
    const WireLengths& b = plan.wires[(i + 1) % total];
    for (std::size_t j = 0; j < a.size(); ++j) jump = std::max(jump, std::abs(b[j] - a[j]));
  }
  return jump;
}

}  // namespace wiredrive
