#include <gtest/gtest.h>

#include <string>

#include "wiredrive/config.hpp"
#include "wiredrive/errors.hpp"

namespace wd = wiredrive;

namespace {

std::string config_error_path(const std::string& text) {
  try {
    (void)wd::parse_project_config(text);
  } catch (const wd::ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(ProjectConfig, EmptyDocumentGivesDefaults) {
  const auto c = wd::parse_project_config("{}");
  EXPECT_EQ(c.leg.upper_length, 125.0);
  EXPECT_EQ(c.gait.samples_per_phase, 50u);
  EXPECT_EQ(c.gait.stride, 80.0);
  ASSERT_TRUE(c.tendons.has_value());
  EXPECT_EQ(c.tendons->front.g()(0, 0), 35.0);
  EXPECT_EQ(c.optimization.starts, 32u);
  EXPECT_EQ(c.chain.links, 7u);
  EXPECT_EQ(c.pipeline.max_wire_speed, 50.0);
  EXPECT_EQ(c.cycles, 1u);
}

TEST(ProjectConfig, ReadsSections) {
  const auto c = wd::parse_project_config(R"({
    "leg": {"upper_length": 120, "lower_length": 130, "elbow_branch": "forward",
            "shoulder_limits": [-1, 3]},
    "gait": {"stride": 60, "samples_per_phase": 20, "max_step": 0.3},
    "tendons": {"front": {"g": [[40, 0], [20, -40]], "q0": [2.2, 1.9]},
                "back": {"g": [[-40, 0], [-20, 40]], "q0": [2.2, 1.7]}},
    "optimization": {"starts": 8, "seed": 7, "zero_top_right": false},
    "chain": {"links": 3, "axis_pattern": ["parallel", "twisted", "twisted"]},
    "pipeline": {"walking_scale": 2.5, "cycles": 3},
    "efficiency": {"samples": 5, "mu_max": 0.3}
  })");
  EXPECT_EQ(c.leg.lower_length, 130.0);
  EXPECT_EQ(c.limits.branch, wd::ElbowBranch::kForward);
  EXPECT_EQ(c.limits.shoulder.lower, -1.0);
  EXPECT_EQ(c.gait.samples_per_phase, 20u);
  EXPECT_EQ(c.limits.max_step, 0.3);
  EXPECT_EQ(c.tendons->back.g()(1, 0), -20.0);
  EXPECT_EQ(c.optimization.seed, 7u);
  EXPECT_FALSE(c.optimization.structure.zero_top_right);
  EXPECT_EQ(c.chain.twist(2), wd::LinkTwist::kTwisted);
  EXPECT_EQ(c.pipeline.walking_scale, 2.5);
  EXPECT_EQ(c.cycles, 3u);
  EXPECT_EQ(c.efficiency.samples, 5u);
  EXPECT_EQ(c.optimizer_options().starts, 8u);
  EXPECT_EQ(c.design_problem().front_targets.size(), 40u);
}

TEST(ProjectConfig, OptimizeKeyword) {
  EXPECT_FALSE(wd::parse_project_config(R"({"tendons": "optimize"})").tendons.has_value());
  EXPECT_EQ(config_error_path(R"({"tendons": "maybe"})"), "tendons");
}

TEST(ProjectConfig, ErrorsCarryFieldPaths) {
  EXPECT_EQ(config_error_path(R"({"gait": {"strid": 10}})"), "gait.strid");
  EXPECT_EQ(config_error_path(R"({"bogus": {}})"), "bogus");
  EXPECT_EQ(config_error_path(R"({"gait": {"stride": "long"}})"), "gait.stride");
  EXPECT_EQ(config_error_path(R"({"gait": {"samples_per_phase": 2.5}})"), "gait.samples_per_phase");
  EXPECT_EQ(config_error_path(R"({"tendons": {"front": {"g": [[1, 0]], "q0": [0, 0]}, "back": {"g": [[1, 0], [0, 1]], "q0": [0, 0]}}})"),
            "tendons.front.g");
  EXPECT_EQ(config_error_path(R"({"chain": {"axis_pattern": ["bent"], "links": 1}})"), "chain.axis_pattern[0]");
  EXPECT_EQ(config_error_path(R"({"pipeline": {"walking_scale": 0.5}})"), "pipeline");
  EXPECT_EQ(config_error_path(R"({"leg": {"shoulder_limits": [2, 1]}})"), "leg.shoulder_limits");
}

TEST(ProjectConfig, SingularTendonsRejected) {
  EXPECT_EQ(config_error_path(R"({"tendons": {"front": {"g": [[1, 2], [2, 4]], "q0": [0, 0]}, "back": {"g": [[1, 0], [0, 1]], "q0": [0, 0]}}})"),
            "tendons.front");
}

TEST(ProjectConfig, SyntaxErrorReportsLine) {
  try {
    (void)wd::parse_project_config("{\n  \"gait\": {\n    \"stride\": ,\n  }\n}");
    FAIL() << "expected ConfigError";
  } catch (const wd::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(ProjectConfig, UnreachableGroundOffsetPropagates) {
  EXPECT_THROW((void)wd::parse_project_config(R"({"leg": {"ground_offset": 260}})"), wd::UnreachableTarget);
}

TEST(ProjectConfig, JsonRoundTrip) {
  const auto a = wd::parse_project_config(R"({"gait": {"stride": 70}, "tendons": "optimize",
                                              "chain": {"links": 4}})");
  const auto b = wd::parse_project_config(wd::to_json(a).dump());
  EXPECT_EQ(wd::to_json(a), wd::to_json(b));
  EXPECT_EQ(b.gait.stride, 70.0);
  EXPECT_FALSE(b.tendons.has_value());
}

TEST(ChainConfigurations, Parse) {
  const auto v = wd::parse_chain_configurations(R"({"configurations": [[0, 0.1], [0.2, -0.3]]})");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1][1], -0.3);
  EXPECT_THROW((void)wd::parse_chain_configurations(R"({"configurations": [["a"]]})"), wd::ConfigError);
  EXPECT_THROW((void)wd::parse_chain_configurations(R"([[0]])"), wd::ConfigError);
}

TEST(ProjectConfig, MissingFile) {
  EXPECT_THROW((void)wd::load_project_config("/nonexistent/config.json"), wd::ConfigError);
}

}  // namespace
