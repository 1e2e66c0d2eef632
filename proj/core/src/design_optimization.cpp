#include "wiredrive/design_optimization.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "wiredrive/errors.hpp"

namespace wiredrive {

void DesignProblem::validate() const {
  if (front_targets.size() != back_targets.size()) {
    throw InvalidArgument("front and back target sequences differ in length");
  }
  if (front_targets.size() < 4) throw InvalidArgument("target sequences need at least 4 samples");
  if (!(norm_lower > 0.0) || !(entry_upper > 0.0) || !std::isfinite(norm_lower) ||
      !std::isfinite(entry_upper)) {
    throw InvalidArgument("norm bounds must be positive and finite");
  }
  if (!(tolerance >= 0.0)) throw InvalidArgument("tolerance must be non-negative");
  for (const auto* seq : {&front_targets, &back_targets}) {
    for (const JointAngles& q : *seq) {
      if (!q.finite()) throw InvalidArgument("target sequence contains non-finite angles");
    }
  }
}

DesignProblem DesignProblem::from_gait(const LegGeometry& geom, const GaitParameters& p,
                                       ElbowBranch branch) {
  const TargetTrajectory target = target_foot_trajectory(geom, p);
  DesignProblem problem;
  for (const FootPosition& foot : target.front) problem.front_targets.push_back(inverse_kinematics(geom, foot, branch));
  for (const FootPosition& foot : target.back) problem.back_targets.push_back(inverse_kinematics(geom, foot, branch));
  return problem;
}

DesignCandidate DesignCandidate::from(const TendonPair& pair) {
  return {pair.front.g(), pair.back.g(), pair.front.q0(), pair.back.q0()};
}

double objective(const DesignProblem& problem, const DesignCandidate& c) {
  const Eigen::Vector2d offset = c.front_g * c.front_q0.vec() - c.back_g * c.back_q0.vec();
  double sum = 0.0;
  const std::size_t n = std::min(problem.front_targets.size(), problem.back_targets.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d r = c.front_g * problem.front_targets[i].vec() -
                              c.back_g * problem.back_targets[i].vec() - offset;
    sum += r.squaredNorm();
  }
  return sum;
}

bool ConstraintReport::feasible() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConstraintCheck& c) { return c.satisfied; });
}

ConstraintReport check_constraints(const DesignProblem& problem, const DesignCandidate& c) {
  ConstraintReport report;
  const double tol = problem.tolerance;
  auto add = [&](std::string name, double value, double bound, double margin) {
    report.checks.push_back({std::move(name), value, bound, margin, margin >= -tol});
  };
  for (auto [name, g] : {std::pair<const char*, const Eigen::Matrix2d*>{"front", &c.front_g},
                         std::pair<const char*, const Eigen::Matrix2d*>{"back", &c.back_g}}) {
    const std::string leg = name;
    const double frob = g->norm();
    const double max_entry = g->cwiseAbs().maxCoeff();
    add(leg + ".frobenius_norm", frob, problem.norm_lower, frob - problem.norm_lower);
    add(leg + ".max_abs_entry", max_entry, problem.entry_upper, problem.entry_upper - max_entry);
    if (problem.structure.zero_top_right) {
      const double v = std::abs((*g)(0, 1));
      add(leg + ".top_right_zero", v, 0.0, -v);
    }
    if (problem.structure.equal_diagonal_magnitude) {
      const double v = std::abs(std::abs((*g)(0, 0)) - std::abs((*g)(1, 1)));
      add(leg + ".diagonal_magnitude", v, 0.0, -v);
    }
  }
  if (problem.structure.shared_top_left_magnitude) {
    const double v = std::abs(std::abs(c.front_g(0, 0)) - std::abs(c.back_g(0, 0)));
    add("shared_top_left_magnitude", v, 0.0, -v);
  }
  return report;
}

namespace {

// Reduced parameterization. The structural equalities hold by construction;
// discrete signs enumerate the branches the magnitudes leave open. q0 is
// profiled out: the objective depends on it only through
// Gf q0f - Gb q0b, whose optimum is the mean of Gf Qf[i] - Gb Qb[i].
class Parameterization {
 public:
  explicit Parameterization(const DesignProblem& problem) : problem_(problem) {
    const auto& s = problem.structure;
    if (s.shared_top_left_magnitude) {
      add(Slot::kSharedMagnitude);
      sign_bits_ += 2;
    } else {
      add(Slot::kFrontTopLeft);
      add(Slot::kBackTopLeft);
    }
    add(Slot::kFrontLowerLeft);
    add(Slot::kBackLowerLeft);
    if (!s.zero_top_right) {
      add(Slot::kFrontTopRight);
      add(Slot::kBackTopRight);
    }
    if (s.equal_diagonal_magnitude) {
      sign_bits_ += 2;
    } else {
      add(Slot::kFrontBottomRight);
      add(Slot::kBackBottomRight);
    }

    const std::size_t n = problem.front_targets.size();
    Eigen::Vector2d mean_f = Eigen::Vector2d::Zero(), mean_b = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      mean_f += problem.front_targets[i].vec();
      mean_b += problem.back_targets[i].vec();
    }
    mean_front_ = mean_f / static_cast<double>(n);
    mean_back_ = mean_b / static_cast<double>(n);
  }

  std::size_t dimension() const { return slots_.size(); }
  std::size_t sign_patterns() const { return std::size_t{1} << sign_bits_; }

  double scale() const { return problem_.entry_upper / 4.0; }

  // Uniform draw inside the entry box.
  template <typename Uniform>
  std::vector<double> sample(Uniform&& uniform) const {
    std::vector<double> x(dimension());
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] = slots_[k] == Slot::kSharedMagnitude ? uniform(0.0, problem_.entry_upper)
                                                 : uniform(-problem_.entry_upper, problem_.entry_upper);
    }
    return x;
  }

  // Candidate with the profiled optimal q0: the mean target posture of each
  // leg attains the optimal offset for any G.
  DesignCandidate candidate(const std::vector<double>& x, std::size_t pattern) const {
    DesignCandidate c;
    std::size_t bit = 0;
    auto next_sign = [&]() { return ((pattern >> bit++) & 1u) ? -1.0 : 1.0; };
    for (std::size_t k = 0; k < slots_.size(); ++k) {
      const double v = x[k];
      switch (slots_[k]) {
        case Slot::kSharedMagnitude: {
          const double sf = next_sign();
          const double sb = next_sign();
          c.front_g(0, 0) = sf * v;
          c.back_g(0, 0) = sb * v;
          break;
        }
        case Slot::kFrontTopLeft: c.front_g(0, 0) = v; break;
        case Slot::kBackTopLeft: c.back_g(0, 0) = v; break;
        case Slot::kFrontLowerLeft: c.front_g(1, 0) = v; break;
        case Slot::kBackLowerLeft: c.back_g(1, 0) = v; break;
        case Slot::kFrontTopRight: c.front_g(0, 1) = v; break;
        case Slot::kBackTopRight: c.back_g(0, 1) = v; break;
        case Slot::kFrontBottomRight: c.front_g(1, 1) = v; break;
        case Slot::kBackBottomRight: c.back_g(1, 1) = v; break;
      }
    }
    if (problem_.structure.equal_diagonal_magnitude) {
      c.front_g(1, 1) = next_sign() * std::abs(c.front_g(0, 0));
      c.back_g(1, 1) = next_sign() * std::abs(c.back_g(0, 0));
    }

    c.front_q0 = JointAngles::from(mean_front_);
    c.back_q0 = JointAngles::from(mean_back_);
    return c;
  }

  bool feasible(const DesignCandidate& c) const {
    for (const Eigen::Matrix2d* g : {&c.front_g, &c.back_g}) {
      if (!g->allFinite()) return false;
      if (g->norm() < problem_.norm_lower) return false;
      if (g->cwiseAbs().maxCoeff() > problem_.entry_upper) return false;
      if (std::abs(g->determinant()) < kMinJacobianDeterminant) return false;
    }
    return true;
  }

 private:
  enum class Slot {
    kSharedMagnitude,
    kFrontTopLeft,
    kBackTopLeft,
    kFrontLowerLeft,
    kBackLowerLeft,
    kFrontTopRight,
    kBackTopRight,
    kFrontBottomRight,
    kBackBottomRight,
  };
  void add(Slot s) { slots_.push_back(s); }

  const DesignProblem& problem_;
  std::vector<Slot> slots_;
  std::size_t sign_bits_ = 0;
  Eigen::Vector2d mean_front_, mean_back_;
};

struct Trial {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> key;  // lexicographic tie-break
  DesignCandidate candidate;
};

std::vector<double> tie_key(const DesignCandidate& c) {
  return {c.front_g(0, 0), c.front_g(0, 1), c.front_g(1, 0), c.front_g(1, 1),
          c.back_g(0, 0),  c.back_g(0, 1),  c.back_g(1, 0),  c.back_g(1, 1),
          c.front_q0.shoulder, c.front_q0.elbow, c.back_q0.shoulder, c.back_q0.elbow};
}

bool better(const Trial& a, const Trial& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.key < b.key;
}

// Opportunistic compass search with an extreme barrier.
Trial compass_search(const DesignProblem& problem, const Parameterization& param,
                     std::vector<double> x, std::size_t pattern, const OptimizerOptions& options) {
  DesignCandidate c = param.candidate(x, pattern);
  double fx = objective(problem, c);
  double step = 1.0;
  const double scale = param.scale();
  for (std::size_t iter = 0; iter < options.max_iterations && step > options.convergence_tolerance;
       ++iter) {
    bool improved = false;
    for (std::size_t d = 0; d < x.size() && !improved; ++d) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[d] += dir * step * scale;
        const DesignCandidate cy = param.candidate(y, pattern);
        if (!param.feasible(cy)) continue;
        const double fy = objective(problem, cy);
        if (fy < fx) {
          x = std::move(y);
          fx = fy;
          c = cy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {fx, tie_key(c), c};
}

// 53-bit uniform doubles from the raw engine output; independent of the
// standard library's distribution implementation.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

DesignSolution optimize(const DesignProblem& problem, const OptimizerOptions& options) {
  problem.validate();
  if (options.starts == 0) throw InvalidArgument("optimizer needs at least one start");

  const Parameterization param(problem);
  Uniform uniform(options.seed);
  constexpr int kDrawsPerStart = 1000;

  Trial best;
  std::size_t feasible_starts = 0;
  std::size_t searches = 0;
  for (std::size_t start = 0; start < options.starts; ++start) {
    // The feasible set does not depend on the sign pattern, so one draw
    // seeds every pattern.
    std::vector<double> x0;
    for (int draw = 0; draw < kDrawsPerStart; ++draw) {
      std::vector<double> x = param.sample(uniform);
      if (param.feasible(param.candidate(x, 0))) {
        x0 = std::move(x);
        break;
      }
    }
    if (x0.empty()) continue;
    ++feasible_starts;
    for (std::size_t pattern = 0; pattern < param.sign_patterns(); ++pattern) {
      Trial t = compass_search(problem, param, x0, pattern, options);
      ++searches;
      if (better(t, best)) best = std::move(t);
    }
  }
  if (feasible_starts == 0) {
    throw NoFeasiblePoint("no feasible design found: every start violates the norm bounds");
  }

  const DesignCandidate& c = best.candidate;
  DesignSolution solution{TendonPair{TendonJacobian(c.front_g, c.front_q0), TendonJacobian(c.back_g, c.back_q0)},
                          best.value, check_constraints(problem, c), feasible_starts, searches};
  return solution;
}

}  // namespace wiredrive
