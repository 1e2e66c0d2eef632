#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wiredrive/wiredrive.hpp"

namespace wiredrive::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  bool plot = false;

  bool emit_commands = false;
  std::string configurations_path;
  std::size_t random_count = 0;
  std::optional<double> bend_max;
  std::optional<std::size_t> samples;
};

class Session {
 public:
  Session(const Options& opts, std::ostream& out) : opts_(opts), out_(out) {
    config_ = opts.config_path.empty() ? ProjectConfig{} : load_project_config(opts.config_path);
    if (opts.seed) config_.optimization.seed = *opts.seed;
    fs::create_directories(opts.out_dir);
  }

  int optimize_design() {
    const DesignProblem problem = config_.design_problem();
    const DesignSolution solution = optimize(problem, config_.optimizer_options());
    const auto report = design_report(problem, solution);
    write("design_report.json", report.dump(2) + "\n");
    out_ << "objective " << format_number(solution.objective) << " (reference "
         << format_number(report["reference"]["objective"].get<double>()) << "), feasible "
         << (solution.constraints.feasible() ? "yes" : "no") << "\n";
    return solution.constraints.feasible() ? kSuccess : kInfeasible;
  }

  int plan_gait() {
    TendonPair tendons = config_.tendons ? *config_.tendons : optimize(config_.design_problem(), config_.optimizer_options()).design;
    const GaitPlan plan = build_gait_plan(config_.leg, config_.gait, tendons, config_.limits);
    if (json()) {
      write("plan.json", to_json(plan).dump(2) + "\n");
    } else {
      std::ostringstream os;
      write_plan_csv(os, plan);
      write("plan.csv", os.str());
    }
    if (opts_.plot) write("foot_trace.svg", foot_trace_svg(plan));
    out_ << "plan: " << plan.size() << " samples per cycle, largest phase-switch wire jump "
         << format_number(max_phase_switch_jump(plan)) << " mm\n";

    if (opts_.emit_commands) {
      const auto loop = plan.wire_loop(config_.cycles);
      const CommandSeries commands = emit_commands(loop, config_.pipeline);
      if (json()) {
        nlohmann::json j = {{"control_rate", commands.control_rate},
                            {"duration", commands.duration},
                            {"dilation", commands.dilation},
                            {"time_scale", commands.time_scale}};
        nlohmann::json samples = nlohmann::json::array();
        for (const auto& s : commands.samples) samples.push_back({{"t", s.time}, {"l", s.lengths}});
        j["samples"] = std::move(samples);
        write("commands.json", j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        write_commands_csv(os, commands);
        write("commands.csv", os.str());
      }
      out_ << "commands: " << commands.samples.size() << " samples, duration "
           << format_number(commands.duration) << " s, dilation " << format_number(commands.dilation)
           << "\n";
    }
    return kSuccess;
  }

  int simulate_chain() {
    const ChainSpec& spec = config_.chain;
    std::vector<ChainConfiguration> configs;
    if (!opts_.configurations_path.empty()) configs = load_chain_configurations(opts_.configurations_path);
    if (opts_.random_count > 0) {
      std::mt19937_64 rng(config_.optimization.seed);
      std::uniform_real_distribution<double> dist(-spec.joint_limit, spec.joint_limit);
      for (std::size_t k = 0; k < opts_.random_count; ++k) {
        ChainConfiguration c(spec.links);
        for (double& t : c) t = dist(rng);
        configs.push_back(std::move(c));
      }
    }
    if (configs.empty()) configs.emplace_back(spec.links, 0.0);

    const ChainBand& cb = config_.efficiency.chain;
    const SheathBand& sb = config_.efficiency.sheath;
    std::vector<ChainRow> rows;
    bool limit_error = false;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      ChainRow row{i, true, ""};
      try {
        row.path_length = wire_path_length(spec, configs[i]);
        const Eigen::Isometry3d tip = chain_forward_kinematics(spec, configs[i]).back();
        row.tip_position = tip.translation();
        row.tip_orientation = Eigen::Quaterniond(tip.rotation());
        row.cumulative_bend = cumulative_bend(configs[i]);
        const double bend[] = {row.cumulative_bend};
        const EfficiencyRow eff = efficiency_comparison(bend, cb, sb).front();
        row.chain_efficiency = eff.chain;
        row.sheath_efficiency = eff.sheath;
      } catch (const JointLimitViolation& e) {
        row = ChainRow{i, false, e.what()};
        limit_error = true;
      } catch (const InvalidArgument& e) {
        row = ChainRow{i, false, e.what()};
        limit_error = true;
      }
      rows.push_back(std::move(row));
    }
    if (json()) {
      write("chain.json", to_json(rows).dump(2) + "\n");
    } else {
      std::ostringstream os;
      write_chain_csv(os, rows);
      write("chain.csv", os.str());
    }

    double lo = INFINITY, hi = -INFINITY;
    std::size_t ok = 0;
    for (const ChainRow& r : rows) {
      if (!r.ok) continue;
      ++ok;
      lo = std::min(lo, r.path_length);
      hi = std::max(hi, r.path_length);
    }
    out_ << "chain: " << ok << "/" << rows.size() << " configurations routed";
    if (ok > 0) out_ << ", path length spread " << format_number(hi - lo) << " mm";
    out_ << "\n";
    return limit_error ? kChainLimit : kSuccess;
  }

  int efficiency_compare() {
    const double bend_max = opts_.bend_max.value_or(config_.efficiency.bend_max);
    const std::size_t n = opts_.samples.value_or(config_.efficiency.samples);
    if (!(bend_max > 0.0) || n < 2) throw InvalidArgument("need --bend-max > 0 and --samples >= 2");
    std::vector<double> bends(n);
    for (std::size_t i = 0; i < n; ++i) bends[i] = bend_max * static_cast<double>(i) / static_cast<double>(n - 1);
    const ChainBand& cb = config_.efficiency.chain;
    const SheathBand& sb = config_.efficiency.sheath;
    const auto rows = efficiency_comparison(bends, cb, sb);
    if (json()) {
      write("efficiency.json", to_json(rows).dump(2) + "\n");
    } else {
      std::ostringstream os;
      write_efficiency_csv(os, rows);
      write("efficiency.csv", os.str());
    }
    if (opts_.plot) write("efficiency.svg", efficiency_svg(rows));

    const EfficiencyBand band = rows.front().chain;
    out_ << "chain band [" << format_number(band.lower) << ", " << format_number(band.upper) << "]\n";
    out_ << "crossover: tsm(mu=" << format_number(sb.mu_min) << ") falls below 0.75 at bend "
         << format_number(sheath_crossover_bend(sb.mu_min, 0.75)) << " rad, below the chain band minimum at "
         << format_number(sheath_crossover_bend(sb.mu_min, band.lower)) << " rad\n";
    return kSuccess;
  }

 private:
  bool json() const { return opts_.format == "json"; }

  void write(const std::string& name, const std::string& text) {
    const fs::path path = fs::path(opts_.out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) throw Error("cannot write " + path.string());
    out_ << "wrote " << path.string() << "\n";
  }

  const Options& opts_;
  std::ostream& out_;
  ProjectConfig config_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Wire-driven quadruped design, gait planning and transmission analysis"};
  app.name("wiredrive");
  app.require_subcommand(1);
  app.add_option("--config", opts.config_path, "Project configuration (JSON)")->check(CLI::ExistingFile);
  app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", opts.seed, "Random seed for the optimizer and random chain configurations");
  app.add_option("--format", opts.format, "Artifact format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_flag("--plot", opts.plot, "Also write SVG plots");

  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize the tendon Jacobians for the configured gait");
  auto* plan_cmd = app.add_subcommand("plan-gait", "Build the coupled trot plan");
  plan_cmd->add_flag("--emit-commands", opts.emit_commands, "Also emit the timed motor command series");
  auto* chain_cmd = app.add_subcommand("simulate-chain", "Route the wire through chain configurations");
  chain_cmd->add_option("--configurations", opts.configurations_path, "JSON file with {\"configurations\": [[...]]}")
      ->check(CLI::ExistingFile);
  chain_cmd->add_option("--random", opts.random_count, "Number of random in-limit configurations to add");
  auto* eff_cmd = app.add_subcommand("efficiency-compare", "Tabulate chain vs tendon-sheath efficiency bands");
  eff_cmd->add_option("--bend-max", opts.bend_max, "Largest cumulative bend, rad");
  eff_cmd->add_option("--samples", opts.samples, "Number of bend samples");
  for (auto* sub : {optimize_cmd, plan_cmd, chain_cmd, eff_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    Session session(opts, out);
    if (*optimize_cmd) return session.optimize_design();
    if (*plan_cmd) return session.plan_gait();
    if (*chain_cmd) return session.simulate_chain();
    return session.efficiency_compare();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kParseError;
  } catch (const NoFeasiblePoint& e) {
    err << "no feasible point: " << e.what() << "\n";
    return kInfeasible;
  } catch (const PlanInvariantViolation& e) {
    err << "plan invariant violated: " << e.what() << "\n";
    return kPlanInvariant;
  } catch (const UnreachableTarget& e) {
    err << "unreachable trajectory: " << e.what() << "\n";
    return kPlanInvariant;
  } catch (const JointLimitViolation& e) {
    err << "chain limit: " << e.what() << "\n";
    return kChainLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
}

}  // namespace wiredrive::cli
