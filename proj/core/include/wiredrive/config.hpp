#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wiredrive/chain.hpp"
#include "wiredrive/command_pipeline.hpp"
#include "wiredrive/design_optimization.hpp"
#include "wiredrive/gait.hpp"
#include "wiredrive/leg_kinematics.hpp"
#include "wiredrive/tendon.hpp"

namespace wiredrive {

struct OptimizationSettings {
  double norm_lower = 60.0;
  double entry_upper = 40.0;
  StructuralConstraints structure;
  std::size_t starts = 32;
  std::uint64_t seed = 1;
  std::size_t max_iterations = 10000;
};

struct EfficiencySettings {
  ChainBand chain;
  SheathBand sheath;
  double bend_max = 4.0 * std::numbers::pi;
  std::size_t samples = 20;
};

// Whole-project configuration. Every section is optional in the document and
// defaults to the values below; unknown keys are rejected.
struct ProjectConfig {
  LegGeometry leg;
  PlanLimits limits;
  GaitParameters gait;
  // Empty means "optimize": derive the pair with design_optimization.
  std::optional<TendonPair> tendons = reference_design::tuned();
  OptimizationSettings optimization;
  ChainSpec chain;
  PipelineConfig pipeline;
  std::size_t cycles = 1;
  EfficiencySettings efficiency;

  DesignProblem design_problem() const;
  OptimizerOptions optimizer_options() const;
};

// Throws ConfigError (with field path and, for syntax errors, line/column)
// or the owning module's error when a section fails validation.
ProjectConfig parse_project_config(std::string_view text);
ProjectConfig load_project_config(const std::filesystem::path& path);

nlohmann::json to_json(const ProjectConfig& config);

// {"configurations": [[theta_1, ..., theta_n], ...]}
std::vector<ChainConfiguration> parse_chain_configurations(std::string_view text);
std::vector<ChainConfiguration> load_chain_configurations(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace wiredrive
