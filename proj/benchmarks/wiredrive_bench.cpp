#include <benchmark/benchmark.h>

#include <random>

#include "wiredrive/wiredrive.hpp"

namespace wd = wiredrive;

static void BM_LegRoundTrip(benchmark::State& state) {
  const wd::LegGeometry geom;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(0.1, 3.0);
  for (auto _ : state) {
    const wd::JointAngles q{angle(rng), angle(rng)};
    benchmark::DoNotOptimize(wd::inverse_kinematics(geom, wd::forward_kinematics(geom, q)));
  }
}
BENCHMARK(BM_LegRoundTrip);

static void BM_GaitPlan(benchmark::State& state) {
  wd::GaitParameters p;
  p.samples_per_phase = static_cast<std::size_t>(state.range(0));
  const auto tendons = wd::reference_design::tuned();
  for (auto _ : state) benchmark::DoNotOptimize(wd::build_gait_plan({}, p, tendons));
}
BENCHMARK(BM_GaitPlan)->Arg(50)->Arg(500);

static void BM_Optimize(benchmark::State& state) {
  const auto problem = wd::DesignProblem::from_gait({}, {});
  wd::OptimizerOptions o;
  o.starts = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wd::optimize(problem, o));
}
BENCHMARK(BM_Optimize)->Arg(1)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_WirePath(benchmark::State& state) {
  const wd::ChainSpec spec;
  const wd::ChainConfiguration c{0.3, -0.2, 0.5, 0.0, -0.9, 0.4, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(wd::wire_path_length(spec, c));
}
BENCHMARK(BM_WirePath);

static void BM_ChainKinematics(benchmark::State& state) {
  const wd::ChainSpec spec;
  const wd::ChainConfiguration c{0.3, -0.2, 0.5, 0.0, -0.9, 0.4, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(wd::chain_forward_kinematics(spec, c));
}
BENCHMARK(BM_ChainKinematics);

static void BM_EmitCommands(benchmark::State& state) {
  const auto plan = wd::build_gait_plan({}, {}, wd::reference_design::tuned());
  const auto loop = plan.wire_loop(static_cast<std::size_t>(state.range(0)));
  const wd::PipelineConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(wd::emit_commands(loop, cfg));
}
BENCHMARK(BM_EmitCommands)->Arg(1)->Arg(10);
BENCHMARK_MAIN();
