#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "wiredrive/chain.hpp"
#include "wiredrive/command_pipeline.hpp"
#include "wiredrive/design_optimization.hpp"
#include "wiredrive/gait.hpp"

namespace wiredrive {

// Shortest round-trip decimal representation; '.' separator, no locale.
std::string format_number(double value);

// CSV: comma separated, header row, LF endings.
void write_plan_csv(std::ostream& out, const GaitPlan& plan);
void write_commands_csv(std::ostream& out, const CommandSeries& commands);
void write_efficiency_csv(std::ostream& out, const std::vector<EfficiencyRow>& rows);

struct ChainRow {
  std::size_t index;
  bool ok;
  std::string error;
  double path_length = 0.0;
  Eigen::Vector3d tip_position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond tip_orientation = Eigen::Quaterniond::Identity();
  double cumulative_bend = 0.0;
  EfficiencyBand chain_efficiency{0.0, 0.0};
  EfficiencyBand sheath_efficiency{0.0, 0.0};
};
void write_chain_csv(std::ostream& out, const std::vector<ChainRow>& rows);

nlohmann::json to_json(const TendonJacobian& t);
nlohmann::json to_json(const ConstraintReport& report);
nlohmann::json to_json(const GaitPlan& plan);
nlohmann::json to_json(const std::vector<EfficiencyRow>& rows);
nlohmann::json to_json(const std::vector<ChainRow>& rows);

// Solution, its constraint margins, and the comparison against the
// reference optimized design evaluated on the same problem.
nlohmann::json design_report(const DesignProblem& problem, const DesignSolution& solution);

std::string foot_trace_svg(const GaitPlan& plan);
std::string efficiency_svg(const std::vector<EfficiencyRow>& rows);

}  // namespace wiredrive
