#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wiredrive/command_pipeline.hpp"
#include "wiredrive/errors.hpp"

namespace wd = wiredrive;

namespace {

std::vector<wd::WireLengths> random_series(std::size_t n, double amplitude) {
  std::vector<wd::WireLengths> s(n);
  for (auto& w : s)
    for (double& v : w) v = oracle::uniform(-amplitude, amplitude);
  return s;
}

wd::Knot knot(double t, double v) { return {t, {v, -v, 2 * v, 0.0}}; }

TEST(AllocateTimes, WorkedExamples) {
  const wd::PipelineConfig cfg;
  const std::vector<wd::WireLengths> a{{0, 0, 0, 0}, {10, 0, 0, 0}};
  EXPECT_DOUBLE_EQ(wd::allocate_times(a, cfg)[1].time, 0.2);
  const std::vector<wd::WireLengths> b{{0, 0, 0, 0}, {0, 0, 0, 0}};
  EXPECT_DOUBLE_EQ(wd::allocate_times(b, cfg)[1].time, 0.01);
  const std::vector<wd::WireLengths> c{{0, 0, 0, 0}, {10, 30, 0, 0}, {10, 30, 0, -5}};
  const auto k = wd::allocate_times(c, cfg);
  EXPECT_DOUBLE_EQ(k[1].time, 0.6);
  EXPECT_DOUBLE_EQ(k[2].time, 0.7);
}

TEST(AllocateTimes, RespectsSpeedBetweenKnots) {
  const wd::PipelineConfig cfg;
  for (int r = 0; r < 20; ++r) {
    const auto s = random_series(30, 20.0);
    const auto k = wd::allocate_times(s, cfg);
    for (std::size_t i = 1; i < k.size(); ++i) {
      const double dt = k[i].time - k[i - 1].time;
      ASSERT_GE(dt, cfg.min_step_time);
      for (std::size_t j = 0; j < 4; ++j) ASSERT_LE(std::abs(s[i][j] - s[i - 1][j]) / dt, cfg.max_wire_speed + 1e-9);
    }
  }
}

TEST(AllocateTimes, RejectsBadInput) {
  const std::vector<wd::WireLengths> one{{0, 0, 0, 0}};
  EXPECT_THROW((void)wd::allocate_times(one, {}), wd::InvalidArgument);
  wd::PipelineConfig cfg;
  cfg.walking_scale = 0.5;
  const std::vector<wd::WireLengths> two{{0, 0, 0, 0}, {1, 0, 0, 0}};
  EXPECT_THROW((void)wd::allocate_times(two, cfg), wd::InvalidArgument);
  cfg = {};
  cfg.max_wire_speed = 0.0;
  EXPECT_THROW((void)wd::allocate_times(two, cfg), wd::InvalidArgument);
}

TEST(Spline, TwoKnotsAreLinear) {
  const wd::WireTrajectory s({knot(0.0, 0.0), knot(2.0, 4.0)});
  EXPECT_NEAR(s(1.0)[0], 2.0, 1e-12);
  EXPECT_NEAR(s(0.5)[0], 1.0, 1e-12);
  EXPECT_NEAR(s(0.5)[2], 2.0, 1e-12);
  EXPECT_NEAR(s.velocity(0.3)[0], 2.0, 1e-12);
  EXPECT_NEAR(s.max_speed(), 4.0, 1e-12);
}

TEST(Spline, ThreeKnotExample) {
  const wd::WireTrajectory s({knot(0.0, 0.0), knot(1.0, 1.0), knot(2.0, 0.0)});
  EXPECT_NEAR(s(0.5)[0], 0.625, 1e-12);
  EXPECT_NEAR(s(0.5)[0], oracle::catmull_rom(-1.0, 0.0, 1.0, 0.0, 0.5), 1e-12);
  EXPECT_NEAR(s(1.5)[0], 0.625, 1e-12);
}

TEST(Spline, UniformKnotsMatchCatmullRomMatrix) {
  std::vector<double> p(12);
  for (double& v : p) v = oracle::uniform(-10, 10);
  std::vector<wd::Knot> knots;
  for (std::size_t i = 0; i < p.size(); ++i) knots.push_back(knot(0.5 * static_cast<double>(i), p[i]));
  const wd::WireTrajectory s(knots);
  auto at = [&](long i) {
    // Reflected phantoms reproduce the one-sided end tangents.
    if (i < 0) return 2 * p[0] - p[1];
    if (i >= static_cast<long>(p.size())) return 2 * p.back() - p[p.size() - 2];
    return p[static_cast<std::size_t>(i)];
  };
  for (long i = 0; i + 1 < static_cast<long>(p.size()); ++i) {
    for (double u : {0.1, 0.25, 0.5, 0.8}) {
      const double ref = oracle::catmull_rom(at(i - 1), at(i), at(i + 1), at(i + 2), u);
      ASSERT_NEAR(s(0.5 * (static_cast<double>(i) + u))[0], ref, 1e-9);
    }
  }
}

TEST(Spline, InterpolatesKnotsAndClamps) {
  const auto knots = wd::allocate_times(random_series(40, 30.0), {});
  const wd::WireTrajectory s(knots);
  for (const auto& k : knots)
    for (std::size_t j = 0; j < 4; ++j) ASSERT_NEAR(s(k.time)[j], k.lengths[j], 1e-12);
  EXPECT_EQ(s(-1.0), knots.front().lengths);
  EXPECT_EQ(s(1e6), knots.back().lengths);
}

TEST(Spline, VelocityMatchesFiniteDifference) {
  const auto knots = wd::allocate_times(random_series(20, 30.0), {});
  const wd::WireTrajectory s(knots);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double t = oracle::uniform(s.start_time() + 2 * h, s.end_time() - 2 * h);
    const auto v = s.velocity(t);
    const auto a = s(t + h), b = s(t - h);
    for (std::size_t j = 0; j < 4; ++j) ASSERT_NEAR(v[j], (a[j] - b[j]) / (2 * h), 1e-4);
  }
}

TEST(Spline, MaxSpeedBoundsDenseSampling) {
  for (int r = 0; r < 10; ++r) {
    const wd::WireTrajectory s(wd::allocate_times(random_series(25, 30.0), {}));
    double dense = 0.0;
    const int steps = 200000;
    for (int i = 0; i <= steps; ++i) {
      const double t = s.start_time() + (s.end_time() - s.start_time()) * i / steps;
      for (double v : s.velocity(t)) dense = std::max(dense, std::abs(v));
    }
    EXPECT_GE(s.max_speed(), dense - 1e-9);
    EXPECT_LE(s.max_speed(), dense * (1 + 1e-3));
  }
}

TEST(Spline, RejectsBadKnots) {
  EXPECT_THROW(wd::WireTrajectory({knot(0.0, 0.0)}), wd::InvalidArgument);
  EXPECT_THROW(wd::WireTrajectory({knot(0.0, 0.0), knot(0.0, 1.0)}), wd::InvalidArgument);
  EXPECT_THROW(wd::WireTrajectory({knot(1.0, 0.0), knot(0.5, 1.0)}), wd::InvalidArgument);
}

TEST(Emit, ScaleOneDurationEqualsAllocationWhenNoDilation) {
  // Monotone ramps cannot overshoot, so no dilation is needed.
  std::vector<wd::WireLengths> s;
  for (int i = 0; i < 10; ++i) s.push_back({1.0 * i, 0.5 * i, 0.0, 0.0});
  const wd::PipelineConfig cfg;
  const auto e = wd::emit(s, cfg);
  EXPECT_NEAR(e.commands.dilation, 1.0, 1e-12);
  EXPECT_NEAR(e.commands.duration, wd::allocate_times(s, cfg).back().time, 1e-9);
}

TEST(Emit, SpeedLimitAndDurationScaling) {
  for (int r = 0; r < 20; ++r) {
    const auto s = random_series(30, 25.0);
    wd::PipelineConfig cfg;
    const auto one = wd::emit(s, cfg);
    cfg.walking_scale = 2.0;
    const auto two = wd::emit(s, cfg);
    EXPECT_NEAR(two.commands.duration, 2 * one.commands.duration, 1e-9);
    EXPECT_LE(one.trajectory.base().max_speed() / one.commands.time_scale, 50.0 + 1e-9);
    EXPECT_LE(two.trajectory.base().max_speed() / two.commands.time_scale, 25.0 + 1e-9);
    EXPECT_LE(wd::max_sampled_speed(two.commands), 25.0 + 1e-9);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < 4; ++j) ASSERT_NEAR(two.trajectory(two.commands.knot_times[i])[j], s[i][j], 1e-9);
  }
}

TEST(Emit, SamplingGrid) {
  const auto s = random_series(10, 10.0);
  const auto c = wd::emit_commands(s, {});
  ASSERT_FALSE(c.samples.empty());
  EXPECT_EQ(c.samples.front().time, 0.0);
  EXPECT_GE(c.samples.back().time, c.duration - 1e-12);
  EXPECT_LT(c.samples.back().time, c.duration + 1.0 / c.control_rate);
  EXPECT_EQ(c.samples.front().lengths, s.front());
  EXPECT_EQ(c.samples.back().lengths, s.back());
  for (std::size_t i = 0; i < c.samples.size(); ++i) ASSERT_DOUBLE_EQ(c.samples[i].time, i / 100.0);
}

TEST(Emit, SampleJumpShrinksWithRate) {
  const auto s = random_series(30, 25.0);
  wd::PipelineConfig cfg;
  const double coarse = wd::max_sample_jump(wd::emit_commands(s, cfg));
  cfg.control_rate = 1000.0;
  const double fine = wd::max_sample_jump(wd::emit_commands(s, cfg));
  EXPECT_GT(coarse / fine, 8.0);
  EXPECT_LT(coarse / fine, 12.0);
}

}  // namespace
