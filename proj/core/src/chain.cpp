#include "wiredrive/chain.hpp"

#include <cmath>
#include <string>

#include "wiredrive/errors.hpp"

namespace wiredrive {

namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

// Counter-clockwise angle from a to b, in (-pi, pi].
double signed_angle(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return std::atan2(cross(a, b), a.dot(b));
}

Eigen::Vector2d heading(double angle) { return {std::cos(angle), std::sin(angle)}; }
Eigen::Vector2d left_normal(const Eigen::Vector2d& d) { return {-d.y(), d.x()}; }

}  // namespace

LinkTwist ChainSpec::twist(std::size_t link) const {
  if (!axis_pattern.empty()) return axis_pattern.at(link);
  return link % 2 == 0 ? LinkTwist::kParallel : LinkTwist::kTwisted;
}

void ChainSpec::validate() const {
  if (links < 1) throw InvalidArgument("chain needs at least one link");
  if (!axis_pattern.empty() && axis_pattern.size() != links) {
    throw InvalidArgument("axis pattern must list one entry per link");
  }
  for (double v : {link_length, pulley_radius, wire_diameter, pulley_half_spacing, joint_limit}) {
    if (!std::isfinite(v) || !(v > 0.0)) throw InvalidArgument("chain dimensions must be positive and finite");
  }
  if (wire_diameter >= 2.0 * pulley_radius) throw InvalidArgument("wire diameter must be below pulley diameter");
  if (pulley_half_spacing < pulley_radius) throw InvalidArgument("pulleys overlap: half spacing below radius");
  if (link_length <= 2.0 * pulley_half_spacing) {
    throw InvalidArgument("link length must exceed the pulley centre distance");
  }
  if (joint_limit > std::numbers::pi / 2) throw InvalidArgument("joint limit must not exceed pi/2");
  for (double theta : {joint_limit, -joint_limit}) {
    const JointRouting r = route_decoupled_joint(*this, theta);
    if (r.entry_wrap < 0.0 || r.exit_wrap < 0.0) {
      throw InvalidArgument("wire leaves a pulley within the joint limit (half spacing too large)");
    }
  }
}

JointRouting route_decoupled_joint(const ChainSpec& spec, double half_angle, bool mirrored) {
  // Joint plane, middle-piece frame: pulley centres at (-s, 0) and (s, 0).
  // The upstream link leaves pulley 1 at -theta, the downstream link at
  // +theta. The wire runs along the upstream link on its left, wraps pulley 1
  // clockwise, crosses over, and wraps pulley 2 counter-clockwise onto the
  // right of the downstream link. A mirrored joint is the reflection, which
  // equals the standard routing at -theta.
  const double theta = mirrored ? -half_angle : half_angle;
  const double r = spec.pulley_radius;
  const Eigen::Vector2d c1(-spec.pulley_half_spacing, 0.0);
  const Eigen::Vector2d c2(spec.pulley_half_spacing, 0.0);

  const Eigen::Vector2d d_in = heading(-theta);
  const Eigen::Vector2d d_out = heading(theta);

  // Internal tangent: contact c1 + r n on pulley 1 and c2 - r n on pulley 2,
  // with n the left normal of the travel direction, so (c2 - c1) . n = 2r.
  const Eigen::Vector2d span = c2 - c1;
  const double ratio = std::min(1.0, 2.0 * r / span.norm());
  const double travel = std::atan2(span.y(), span.x()) - std::asin(ratio);
  const Eigen::Vector2d n = left_normal(heading(travel));
  const Eigen::Vector2d p1 = c1 + r * n;
  const Eigen::Vector2d p2 = c2 - r * n;

  const Eigen::Vector2d entry_radius = left_normal(d_in);    // contact of the incoming run
  const Eigen::Vector2d exit_radius = -left_normal(d_out);   // contact of the outgoing run

  JointRouting out{};
  out.entry_wrap = -signed_angle(entry_radius, n);  // clockwise
  out.exit_wrap = signed_angle(-n, exit_radius);    // counter-clockwise
  out.crossing_length = (p2 - p1).norm();
  out.arc_length = r * (out.entry_wrap + out.exit_wrap);
  return out;
}

void check_joint_limits(const ChainSpec& spec, const ChainConfiguration& config) {
  if (config.size() != spec.links) {
    throw InvalidArgument("configuration has " + std::to_string(config.size()) + " joints, chain has " +
                          std::to_string(spec.links));
  }
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (!std::isfinite(config[j])) throw InvalidArgument("non-finite joint half-angle");
    if (std::abs(config[j]) > spec.joint_limit) throw JointLimitViolation(j, config[j], spec.joint_limit);
  }
}

WirePath route_wire(const ChainSpec& spec, const ChainConfiguration& config) {
  check_joint_limits(spec, config);
  const double r = spec.pulley_radius;
  const double body = spec.link_length - 2.0 * spec.pulley_half_spacing;

  WirePath path{0.0, {}, {}};
  // side = +1: wire enters the joint on the upper (+normal) side.
  double side = 1.0;
  for (std::size_t j = 0; j < spec.links; ++j) {
    const JointRouting joint = route_decoupled_joint(spec, config[j], side < 0.0);
    path.joints.push_back(joint);

    // Link j frame: origin at the downstream hinge of joint j, x along the
    // link. The exit contact sits at -side * r on the joint's normal axis.
    const Eigen::Vector3d exit_point(0.0, -side * r, 0.0);
    double run;
    if (j + 1 < spec.links) {
      const bool twisted = spec.twist(j + 1) == LinkTwist::kTwisted;
      const double next_side = twisted ? side : -side;
      const Eigen::Vector3d next_normal = twisted ? Eigen::Vector3d::UnitZ() : Eigen::Vector3d::UnitY();
      const Eigen::Vector3d entry_point = Eigen::Vector3d(body, 0.0, 0.0) + next_side * r * next_normal;
      run = (entry_point - exit_point).norm();
      side = next_side;
    } else {
      run = (Eigen::Vector3d(body, -side * r, 0.0) - exit_point).norm();
    }
    path.link_runs.push_back(run);
    path.length += joint.arc_length + joint.crossing_length + run;
  }
  return path;
}

double wire_path_length(const ChainSpec& spec, const ChainConfiguration& config) {
  return route_wire(spec, config).length;
}

Eigen::Isometry3d chain_transform(const ChainSpec& spec, const ChainConfiguration& config,
                                  std::size_t first, std::size_t last) {
  const double spacing = 2.0 * spec.pulley_half_spacing;
  const double body = spec.link_length - spacing;
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  for (std::size_t i = first; i < last; ++i) {
    if (spec.twist(i) == LinkTwist::kTwisted) t.rotate(Eigen::AngleAxisd(std::numbers::pi / 2, Eigen::Vector3d::UnitX()));
    t.rotate(Eigen::AngleAxisd(config[i], Eigen::Vector3d::UnitZ()));
    t.translate(Eigen::Vector3d(spacing, 0.0, 0.0));
    t.rotate(Eigen::AngleAxisd(config[i], Eigen::Vector3d::UnitZ()));
    t.translate(Eigen::Vector3d(body, 0.0, 0.0));
  }
  return t;
}

std::vector<Eigen::Isometry3d> chain_forward_kinematics(const ChainSpec& spec,
                                                        const ChainConfiguration& config) {
  check_joint_limits(spec, config);
  std::vector<Eigen::Isometry3d> poses;
  poses.reserve(spec.links);
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  for (std::size_t i = 0; i < spec.links; ++i) {
    t = t * chain_transform(spec, config, i, i + 1);
    poses.push_back(t);
  }
  return poses;
}

double cumulative_bend(const ChainConfiguration& config) {
  double sum = 0.0;
  for (double theta : config) sum += std::abs(2.0 * theta);
  return sum;
}

EfficiencyModel EfficiencyModel::decoupled_chain(double per_pulley, std::size_t pulleys) {
  if (!(per_pulley > 0.0 && per_pulley <= 1.0)) throw InvalidArgument("per-pulley efficiency must be in (0, 1]");
  EfficiencyModel m;
  m.kind = Kind::kDecoupledChain;
  m.per_pulley_efficiency = per_pulley;
  m.pulley_count = pulleys;
  return m;
}

EfficiencyModel EfficiencyModel::tendon_sheath(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidArgument("friction coefficient must be non-negative");
  EfficiencyModel m;
  m.kind = Kind::kTendonSheath;
  m.mu = mu;
  return m;
}

double transmission_efficiency(const EfficiencyModel& model, double bend) {
  if (!(bend >= 0.0)) throw InvalidArgument("cumulative bend must be non-negative");
  if (model.kind == EfficiencyModel::Kind::kDecoupledChain) {
    return std::pow(model.per_pulley_efficiency, static_cast<double>(model.pulley_count));
  }
  return std::exp(-model.mu * bend);
}

std::vector<EfficiencyRow> efficiency_comparison(std::span<const double> bends, const ChainBand& chain,
                                                 const SheathBand& sheath) {
  if (!(chain.per_pulley_min <= chain.per_pulley_max) || !(sheath.mu_min <= sheath.mu_max)) {
    throw InvalidArgument("efficiency band bounds are inverted");
  }
  const auto chain_lo = EfficiencyModel::decoupled_chain(chain.per_pulley_min, chain.pulley_count);
  const auto chain_hi = EfficiencyModel::decoupled_chain(chain.per_pulley_max, chain.pulley_count);
  const auto sheath_lo = EfficiencyModel::tendon_sheath(sheath.mu_max);
  const auto sheath_hi = EfficiencyModel::tendon_sheath(sheath.mu_min);
  std::vector<EfficiencyRow> rows;
  rows.reserve(bends.size());
  for (double b : bends) {
    rows.push_back({b,
                    {transmission_efficiency(chain_lo, b), transmission_efficiency(chain_hi, b)},
                    {transmission_efficiency(sheath_lo, b), transmission_efficiency(sheath_hi, b)}});
  }
  return rows;
}

double sheath_crossover_bend(double mu, double efficiency) {
  if (!(mu > 0.0)) throw InvalidArgument("crossover needs a positive friction coefficient");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw InvalidArgument("efficiency must be in (0, 1]");
  return -std::log(efficiency) / mu;
}

}  // namespace wiredrive
