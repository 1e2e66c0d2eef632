#pragma once

#include <Eigen/Geometry>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace wiredrive {

// How a link's distal joint axis relates to its proximal one.
enum class LinkTwist {
  kParallel,  // same bending plane
  kTwisted,   // bending axis rotated 90 deg about the link's long axis
};

// Serial chain of decoupled joints. Each unit is one decoupled joint (two
// pulleys on a short middle piece, each hinge turning by the half-angle)
// followed by a rigid link. link_length is the pitch between consecutive
// joint midpoints, so a straight chain is links * link_length long.
struct ChainSpec {
  std::size_t links = 7;
  double link_length = 174.0;
  std::vector<LinkTwist> axis_pattern;  // empty = alternate parallel/twisted
  double pulley_radius = 15.0;
  double wire_diameter = 2.0;
  // Distance from the joint midpoint to each pulley centre.
  double pulley_half_spacing = 15.0;
  double joint_limit = std::numbers::pi / 3.0;  // max |half-angle|

  // Throws InvalidArgument for bad sizes, overlapping pulleys, or a layout in
  // which the wire would leave a pulley (negative wrap) within the limits.
  void validate() const;

  double diameter_ratio() const { return 2.0 * pulley_radius / wire_diameter; }
  LinkTwist twist(std::size_t link) const;
};

// Per-joint half-angles, rad. The joint as a whole turns by twice this.
using ChainConfiguration = std::vector<double>;

// Wire routing through one decoupled joint, computed from tangent geometry.
struct JointRouting {
  double entry_wrap;       // rad, on the first pulley
  double exit_wrap;        // rad, on the second pulley
  double crossing_length;  // straight run between the two pulleys, mm
  double arc_length;       // pulley_radius * (entry_wrap + exit_wrap), mm
};

// `mirrored` flips the side the wire enters on.
JointRouting route_decoupled_joint(const ChainSpec& spec, double half_angle, bool mirrored = false);

struct WirePath {
  double length;                      // mm
  std::vector<JointRouting> joints;
  std::vector<double> link_runs;      // straight run along each link, mm
};

// Throws JointLimitViolation (and InvalidArgument for a wrong-sized config).
WirePath route_wire(const ChainSpec& spec, const ChainConfiguration& config);
double wire_path_length(const ChainSpec& spec, const ChainConfiguration& config);

// Pose of each link's distal end in the base frame (x along the straight
// chain, z the first joint axis).
std::vector<Eigen::Isometry3d> chain_forward_kinematics(const ChainSpec& spec,
                                                        const ChainConfiguration& config);

// Transform across units [first, last) of the chain; config is indexed by
// absolute joint number.
Eigen::Isometry3d chain_transform(const ChainSpec& spec, const ChainConfiguration& config,
                                  std::size_t first, std::size_t last);

// Sum of |2 theta| over joints.
double cumulative_bend(const ChainConfiguration& config);

void check_joint_limits(const ChainSpec& spec, const ChainConfiguration& config);

struct EfficiencyModel {
  enum class Kind { kDecoupledChain, kTendonSheath };

  Kind kind = Kind::kDecoupledChain;
  double per_pulley_efficiency = 0.98;
  std::size_t pulley_count = 14;
  double mu = 0.04;

  static EfficiencyModel decoupled_chain(double per_pulley, std::size_t pulleys);
  static EfficiencyModel tendon_sheath(double mu);
};

double transmission_efficiency(const EfficiencyModel& model, double cumulative_bend);

struct EfficiencyBand {
  double lower;
  double upper;
};

struct ChainBand {
  double per_pulley_min = 0.98;
  double per_pulley_max = 0.99;
  std::size_t pulley_count = 14;
};

struct SheathBand {
  double mu_min = 0.04;
  double mu_max = 0.2;
};

struct EfficiencyRow {
  double bend;
  EfficiencyBand chain;
  EfficiencyBand sheath;
};

std::vector<EfficiencyRow> efficiency_comparison(std::span<const double> bends,
                                                 const ChainBand& chain = {},
                                                 const SheathBand& sheath = {});

// Bend at which a sheath with friction mu drops to `efficiency`.
double sheath_crossover_bend(double mu, double efficiency);

}  // namespace wiredrive
