#include <gtest/gtest.h>

#include <fstream>
#include <numbers>
#include <sstream>

#include "wiredrive/command_pipeline.hpp"
#include "wiredrive/config.hpp"
#include "wiredrive/io.hpp"

namespace wd = wiredrive;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t fields(const std::string& line) { return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(wd::format_number(0.1), "0.1");
  EXPECT_EQ(wd::format_number(-0.0), "0");
  EXPECT_EQ(wd::format_number(250.0), "250");
  EXPECT_EQ(wd::format_number(1e-20), "1e-20");
  for (double v : {std::numbers::pi, -1.0 / 3.0, 123456.789}) {
    EXPECT_EQ(std::stod(wd::format_number(v)), v);
  }
}

TEST(PlanCsv, HeaderAndRows) {
  const auto plan = wd::build_gait_plan({}, {}, wd::reference_design::tuned());
  std::ostringstream os;
  wd::write_plan_csv(os, plan);
  const auto l = lines(os.str());
  ASSERT_EQ(l.size(), 101u);
  EXPECT_EQ(l[0].rfind("sample,phase,front_right_q1,front_right_q2,back_right_q1", 0), 0u);
  EXPECT_NE(l[0].find(",wire1,wire2,wire3,wire4"), std::string::npos);
  for (const auto& row : l) EXPECT_EQ(fields(row), 22u);
  EXPECT_EQ(l[1].rfind("0,0,", 0), 0u);
  EXPECT_EQ(l[51].rfind("50,1,", 0), 0u);
}

TEST(PlanJson, Structure) {
  const auto plan = wd::build_gait_plan({}, {}, wd::reference_design::tuned());
  const auto j = wd::to_json(plan);
  EXPECT_EQ(j["wires"].size(), 100u);
  EXPECT_EQ(j["legs"]["back_left"]["joints"].size(), 100u);
  EXPECT_EQ(j["tendons"]["front"]["g"][1][0], 7.5);
}

TEST(CommandsCsv, Format) {
  const std::vector<wd::WireLengths> s{{0, 0, 0, 0}, {1, 2, 3, 4}};
  const auto c = wd::emit_commands(s, {});
  std::ostringstream os;
  wd::write_commands_csv(os, c);
  const auto l = lines(os.str());
  EXPECT_EQ(l[0], "t,l1,l2,l3,l4");
  EXPECT_EQ(l[1], "0,0,0,0,0");
  EXPECT_EQ(l.size(), c.samples.size() + 1);
}

TEST(ChainCsv, ErrorRowKeepsColumnCount) {
  std::vector<wd::ChainRow> rows(2);
  rows[0] = {0, true, "", 100.0};
  rows[1] = {1, false, "joint 2, out of range"};
  std::ostringstream os;
  wd::write_chain_csv(os, rows);
  const auto l = lines(os.str());
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(fields(l[0]), fields(l[1]));
  EXPECT_EQ(fields(l[0]), fields(l[2]));
  EXPECT_EQ(l[2].rfind("1,error,", 0), 0u);
  EXPECT_NE(l[2].find("joint 2; out of range"), std::string::npos);
}

TEST(EfficiencyCsv, MatchesGoldenFile) {
  std::vector<double> bends;
  for (int i = 0; i < 5; ++i) bends.push_back(std::numbers::pi * i);
  std::ostringstream os;
  wd::write_efficiency_csv(os, wd::efficiency_comparison(bends));
  std::ifstream in(WIREDRIVE_TEST_DATA_DIR "/efficiency_golden.csv");
  ASSERT_TRUE(in) << "missing golden file";
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(os.str(), golden.str());
}

TEST(DesignReport, ComparesAgainstReference) {
  const auto problem = wd::DesignProblem::from_gait({}, {});
  wd::OptimizerOptions o;
  o.starts = 2;
  const auto report = wd::design_report(problem, wd::optimize(problem, o));
  EXPECT_TRUE(report.contains("solution"));
  EXPECT_TRUE(report.contains("reference"));
  EXPECT_TRUE(report["dominates_reference"].get<bool>());
}

TEST(Svg, ProducesDocuments) {
  const auto plan = wd::build_gait_plan({}, {}, wd::reference_design::tuned());
  EXPECT_EQ(wd::foot_trace_svg(plan).rfind("<svg", 0), 0u);
  const std::vector<double> bends{0.0, 1.0, 2.0};
  EXPECT_NE(wd::efficiency_svg(wd::efficiency_comparison(bends)).find("</svg>"), std::string::npos);
}

}  // namespace
