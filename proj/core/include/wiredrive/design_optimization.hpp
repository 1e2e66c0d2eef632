#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wiredrive/gait.hpp"
#include "wiredrive/leg_kinematics.hpp"
#include "wiredrive/tendon.hpp"

namespace wiredrive {

// Structural restrictions on each 2x2 Jacobian (1-based entry names).
struct StructuralConstraints {
  bool zero_top_right = true;             // G(1,2) = 0
  bool equal_diagonal_magnitude = true;   // |G(1,1)| = |G(2,2)|
  bool shared_top_left_magnitude = true;  // |Gf(1,1)| = |Gb(1,1)|
};

// Norms are read as Frobenius (lower bound) and max-abs-entry (upper bound);
// both bounds are inclusive.
struct DesignProblem {
  JointSequence front_targets;
  JointSequence back_targets;
  double norm_lower = 60.0;
  double entry_upper = 40.0;
  StructuralConstraints structure;
  double tolerance = 1e-6;

  void validate() const;

  // Ideal sequences from the comb-shaped target via IK.
  static DesignProblem from_gait(const LegGeometry& geom, const GaitParameters& p,
                                 ElbowBranch branch = ElbowBranch::kBackward);
};

// Raw candidate; unlike TendonPair it may be singular.
struct DesignCandidate {
  Eigen::Matrix2d front_g = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d back_g = Eigen::Matrix2d::Zero();
  JointAngles front_q0;
  JointAngles back_q0;

  static DesignCandidate from(const TendonPair& pair);
};

// Sum over samples of |Gf (Qf[i] - q0f) - Gb (Qb[i] - q0b)|^2, mm^2.
double objective(const DesignProblem& problem, const DesignCandidate& candidate);

struct ConstraintCheck {
  std::string name;
  double value;   // measured quantity
  double bound;   // target / bound
  double margin;  // >= -tolerance when satisfied
  bool satisfied;
};

struct ConstraintReport {
  std::vector<ConstraintCheck> checks;
  bool feasible() const;
};

ConstraintReport check_constraints(const DesignProblem& problem, const DesignCandidate& candidate);

struct OptimizerOptions {
  std::size_t starts = 32;
  std::uint64_t seed = 1;
  std::size_t max_iterations = 10000;  // per local search
  double convergence_tolerance = 1e-6;
};

struct DesignSolution {
  TendonPair design;
  double objective = 0.0;
  ConstraintReport constraints;
  std::size_t feasible_starts = 0;
  std::size_t local_searches = 0;
};

// Multi-start compass search over the structurally reduced parameters with an
// extreme barrier on the norm bounds. Deterministic for a given seed.
// Throws NoFeasiblePoint when no start is feasible.
DesignSolution optimize(const DesignProblem& problem, const OptimizerOptions& options = {});

}  // namespace wiredrive
