#include "wiredrive/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "wiredrive/errors.hpp"

namespace wiredrive {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Strict reader over one JSON object: every key must be consumed.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  void number(const std::string& key, double& out) {
    if (const json* v = take(key)) {
      if (!v->is_number()) throw ConfigError(join(path_, key), "expected a number");
      out = v->get<double>();
    }
  }

  template <typename Int>
  void count(const std::string& key, Int& out) {
    if (const json* v = take(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) {
        throw ConfigError(join(path_, key), "expected a non-negative integer");
      }
      out = static_cast<Int>(v->get<unsigned long long>());
    }
  }

  void flag(const std::string& key, bool& out) {
    if (const json* v = take(key)) {
      if (!v->is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
      out = v->get<bool>();
    }
  }

  const json* take(const std::string& key) {
    auto it = node_.find(key);
    if (it == node_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  Section child(const std::string& key) {
    const json* v = take(key);
    return Section(v ? *v : empty(), join(path_, key));
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown key");
    }
  }

 private:
  static const json& empty() {
    static const json e = json::object();
    return e;
  }

  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

JointLimits read_limits(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected [lower, upper]");
  JointLimits lim{number_at(v[0], path + "[0]"), number_at(v[1], path + "[1]")};
  if (!(lim.lower < lim.upper)) throw ConfigError(path, "lower limit must be below upper limit");
  return lim;
}

TendonJacobian read_jacobian(const json& node, const std::string& path) {
  Section s(node, path);
  const json* g = s.take("g");
  const json* q0 = s.take("q0");
  s.finish();
  if (!g) throw ConfigError(path + ".g", "missing");
  if (!q0) throw ConfigError(path + ".q0", "missing");
  if (!g->is_array() || g->size() != 2) throw ConfigError(path + ".g", "expected a 2x2 array");
  Eigen::Matrix2d m;
  for (int r = 0; r < 2; ++r) {
    const json& row = (*g)[static_cast<std::size_t>(r)];
    const std::string rp = path + ".g[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != 2) throw ConfigError(rp, "expected two entries");
    for (int c = 0; c < 2; ++c) m(r, c) = number_at(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
  }
  if (!q0->is_array() || q0->size() != 2) throw ConfigError(path + ".q0", "expected two angles");
  const JointAngles q{number_at((*q0)[0], path + ".q0[0]"), number_at((*q0)[1], path + ".q0[1]")};
  try {
    return TendonJacobian(m, q);
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  } catch (const SingularJacobian& e) {
    throw ConfigError(path, e.what());
  }
}

// Runs a module validator, reporting InvalidArgument as a config error at `path`.
template <typename F>
void validated(const std::string& path, F&& check) {
  try {
    check();
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, e.what());
  }
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("", "parse error at line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ": " + e.what());
  }
}

}  // namespace

DesignProblem ProjectConfig::design_problem() const {
  DesignProblem problem = DesignProblem::from_gait(leg, gait, limits.branch);
  problem.norm_lower = optimization.norm_lower;
  problem.entry_upper = optimization.entry_upper;
  problem.structure = optimization.structure;
  return problem;
}

OptimizerOptions ProjectConfig::optimizer_options() const {
  OptimizerOptions o;
  o.starts = optimization.starts;
  o.seed = optimization.seed;
  o.max_iterations = optimization.max_iterations;
  return o;
}

ProjectConfig parse_project_config(std::string_view text) {
  const json doc = parse_document(text);
  ProjectConfig cfg;
  Section root(doc, "");

  {
    Section s = root.child("leg");
    s.number("upper_length", cfg.leg.upper_length);
    s.number("lower_length", cfg.leg.lower_length);
    s.number("ground_offset", cfg.leg.ground_offset);
    if (const json* v = s.take("shoulder_limits")) cfg.limits.shoulder = read_limits(*v, s.path("shoulder_limits"));
    if (const json* v = s.take("elbow_limits")) cfg.limits.elbow = read_limits(*v, s.path("elbow_limits"));
    if (const json* v = s.take("elbow_branch")) {
      if (*v == "backward") cfg.limits.branch = ElbowBranch::kBackward;
      else if (*v == "forward") cfg.limits.branch = ElbowBranch::kForward;
      else throw ConfigError(s.path("elbow_branch"), "expected \"backward\" or \"forward\"");
    }
    s.finish();
    // Ground beyond reach is an unreachable trajectory, not a syntax problem.
    validated("leg", [&] { cfg.leg.validate(); });
  }
  {
    Section s = root.child("gait");
    s.number("stride", cfg.gait.stride);
    s.number("swing_height", cfg.gait.swing_height);
    s.count("samples_per_phase", cfg.gait.samples_per_phase);
    s.number("max_step", cfg.limits.max_step);
    s.finish();
    cfg.gait.ground_offset = cfg.leg.ground_offset;
    validated("gait", [&] { cfg.gait.validate(cfg.leg); });
    if (!(cfg.limits.max_step > 0.0)) throw ConfigError("gait.max_step", "must be positive");
  }
  if (const json* t = root.take("tendons")) {
    if (t->is_string()) {
      if (*t != "optimize") throw ConfigError("tendons", "expected \"optimize\" or an object");
      cfg.tendons.reset();
    } else {
      Section s(*t, "tendons");
      const json* front = s.take("front");
      const json* back = s.take("back");
      s.finish();
      if (!front || !back) throw ConfigError("tendons", "needs both \"front\" and \"back\"");
      cfg.tendons = TendonPair{read_jacobian(*front, "tendons.front"), read_jacobian(*back, "tendons.back")};
    }
  }
  {
    Section s = root.child("optimization");
    s.number("norm_lower", cfg.optimization.norm_lower);
    s.number("entry_upper", cfg.optimization.entry_upper);
    s.count("starts", cfg.optimization.starts);
    s.count("seed", cfg.optimization.seed);
    s.count("max_iterations", cfg.optimization.max_iterations);
    s.flag("zero_top_right", cfg.optimization.structure.zero_top_right);
    s.flag("equal_diagonal_magnitude", cfg.optimization.structure.equal_diagonal_magnitude);
    s.flag("shared_top_left_magnitude", cfg.optimization.structure.shared_top_left_magnitude);
    s.finish();
    if (!(cfg.optimization.norm_lower > 0.0)) throw ConfigError("optimization.norm_lower", "must be positive");
    if (!(cfg.optimization.entry_upper > 0.0)) throw ConfigError("optimization.entry_upper", "must be positive");
    if (cfg.optimization.starts == 0) throw ConfigError("optimization.starts", "must be at least 1");
  }
  {
    Section s = root.child("chain");
    s.count("links", cfg.chain.links);
    s.number("link_length", cfg.chain.link_length);
    s.number("pulley_radius", cfg.chain.pulley_radius);
    s.number("wire_diameter", cfg.chain.wire_diameter);
    s.number("pulley_half_spacing", cfg.chain.pulley_half_spacing);
    s.number("joint_limit", cfg.chain.joint_limit);
    if (const json* v = s.take("axis_pattern")) {
      const std::string p = s.path("axis_pattern");
      if (!v->is_array()) throw ConfigError(p, "expected an array of \"parallel\"/\"twisted\"");
      cfg.chain.axis_pattern.clear();
      for (std::size_t i = 0; i < v->size(); ++i) {
        const json& e = (*v)[i];
        if (e == "parallel") cfg.chain.axis_pattern.push_back(LinkTwist::kParallel);
        else if (e == "twisted") cfg.chain.axis_pattern.push_back(LinkTwist::kTwisted);
        else throw ConfigError(p + "[" + std::to_string(i) + "]", "expected \"parallel\" or \"twisted\"");
      }
    }
    s.finish();
    validated("chain", [&] { cfg.chain.validate(); });
  }
  {
    Section s = root.child("pipeline");
    s.number("max_wire_speed", cfg.pipeline.max_wire_speed);
    s.number("min_step_time", cfg.pipeline.min_step_time);
    s.number("control_rate", cfg.pipeline.control_rate);
    s.number("walking_scale", cfg.pipeline.walking_scale);
    s.count("cycles", cfg.cycles);
    s.finish();
    validated("pipeline", [&] { cfg.pipeline.validate(); });
    if (cfg.cycles == 0) throw ConfigError("pipeline.cycles", "must be at least 1");
  }
  {
    Section s = root.child("efficiency");
    s.number("per_pulley_min", cfg.efficiency.chain.per_pulley_min);
    s.number("per_pulley_max", cfg.efficiency.chain.per_pulley_max);
    s.count("pulley_count", cfg.efficiency.chain.pulley_count);
    s.number("mu_min", cfg.efficiency.sheath.mu_min);
    s.number("mu_max", cfg.efficiency.sheath.mu_max);
    s.number("bend_max", cfg.efficiency.bend_max);
    s.count("samples", cfg.efficiency.samples);
    s.finish();
    const auto& c = cfg.efficiency.chain;
    const auto& m = cfg.efficiency.sheath;
    if (!(c.per_pulley_min > 0.0 && c.per_pulley_min <= c.per_pulley_max && c.per_pulley_max <= 1.0)) {
      throw ConfigError("efficiency", "per-pulley efficiencies must satisfy 0 < min <= max <= 1");
    }
    if (!(m.mu_min > 0.0 && m.mu_min <= m.mu_max)) throw ConfigError("efficiency", "need 0 < mu_min <= mu_max");
    if (!(cfg.efficiency.bend_max > 0.0)) throw ConfigError("efficiency.bend_max", "must be positive");
    if (cfg.efficiency.samples < 2) throw ConfigError("efficiency.samples", "must be at least 2");
  }
  root.finish();
  return cfg;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProjectConfig load_project_config(const std::filesystem::path& path) {
  return parse_project_config(read_text_file(path));
}

namespace {

json jacobian_json(const TendonJacobian& t) {
  return {{"g", {{t.g()(0, 0), t.g()(0, 1)}, {t.g()(1, 0), t.g()(1, 1)}}},
          {"q0", {t.q0().shoulder, t.q0().elbow}}};
}

}  // namespace

json to_json(const ProjectConfig& c) {
  json pattern = json::array();
  for (std::size_t i = 0; i < c.chain.links; ++i) {
    pattern.push_back(c.chain.twist(i) == LinkTwist::kTwisted ? "twisted" : "parallel");
  }
  json tendons = c.tendons ? json{{"front", jacobian_json(c.tendons->front)}, {"back", jacobian_json(c.tendons->back)}}
                           : json("optimize");
  return {
      {"leg",
       {{"upper_length", c.leg.upper_length},
        {"lower_length", c.leg.lower_length},
        {"ground_offset", c.leg.ground_offset},
        {"shoulder_limits", {c.limits.shoulder.lower, c.limits.shoulder.upper}},
        {"elbow_limits", {c.limits.elbow.lower, c.limits.elbow.upper}},
        {"elbow_branch", c.limits.branch == ElbowBranch::kBackward ? "backward" : "forward"}}},
      {"gait",
       {{"stride", c.gait.stride},
        {"swing_height", c.gait.swing_height},
        {"samples_per_phase", c.gait.samples_per_phase},
        {"max_step", c.limits.max_step}}},
      {"tendons", tendons},
      {"optimization",
       {{"norm_lower", c.optimization.norm_lower},
        {"entry_upper", c.optimization.entry_upper},
        {"starts", c.optimization.starts},
        {"seed", c.optimization.seed},
        {"max_iterations", c.optimization.max_iterations},
        {"zero_top_right", c.optimization.structure.zero_top_right},
        {"equal_diagonal_magnitude", c.optimization.structure.equal_diagonal_magnitude},
        {"shared_top_left_magnitude", c.optimization.structure.shared_top_left_magnitude}}},
      {"chain",
       {{"links", c.chain.links},
        {"link_length", c.chain.link_length},
        {"axis_pattern", pattern},
        {"pulley_radius", c.chain.pulley_radius},
        {"wire_diameter", c.chain.wire_diameter},
        {"pulley_half_spacing", c.chain.pulley_half_spacing},
        {"joint_limit", c.chain.joint_limit}}},
      {"pipeline",
       {{"max_wire_speed", c.pipeline.max_wire_speed},
        {"min_step_time", c.pipeline.min_step_time},
        {"control_rate", c.pipeline.control_rate},
        {"walking_scale", c.pipeline.walking_scale},
        {"cycles", c.cycles}}},
      {"efficiency",
       {{"per_pulley_min", c.efficiency.chain.per_pulley_min},
        {"per_pulley_max", c.efficiency.chain.per_pulley_max},
        {"pulley_count", c.efficiency.chain.pulley_count},
        {"mu_min", c.efficiency.sheath.mu_min},
        {"mu_max", c.efficiency.sheath.mu_max},
        {"bend_max", c.efficiency.bend_max},
        {"samples", c.efficiency.samples}}},
  };
}

std::vector<ChainConfiguration> parse_chain_configurations(std::string_view text) {
  const json doc = parse_document(text);
  Section root(doc, "");
  const json* list = root.take("configurations");
  root.finish();
  if (!list || !list->is_array()) throw ConfigError("configurations", "expected an array of angle arrays");
  std::vector<ChainConfiguration> out;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const json& row = (*list)[i];
    const std::string p = "configurations[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ConfigError(p, "expected an array of half-angles");
    ChainConfiguration c;
    for (std::size_t j = 0; j < row.size(); ++j) c.push_back(number_at(row[j], p + "[" + std::to_string(j) + "]"));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ChainConfiguration> load_chain_configurations(const std::filesystem::path& path) {
  return parse_chain_configurations(read_text_file(path));
}

}  // namespace wiredrive
