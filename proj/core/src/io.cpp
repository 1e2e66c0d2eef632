#include "wiredrive/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace wiredrive {

using nlohmann::json;

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_plan_csv(std::ostream& out, const GaitPlan& plan) {
  out << "sample,phase";
  for (Leg leg : kAllLegs) out << ',' << leg_name(leg) << "_q1," << leg_name(leg) << "_q2";
  for (Leg leg : kAllLegs) out << ',' << leg_name(leg) << "_x," << leg_name(leg) << "_y";
  out << ",wire1,wire2,wire3,wire4\n";
  for (std::size_t i = 0; i < plan.size(); ++i) {
    out << i << ',' << plan.phase(i);
    for (Leg leg : kAllLegs) {
      const JointAngles& q = plan.joint_sequence(leg)[i];
      out << ',' << format_number(q.shoulder) << ',' << format_number(q.elbow);
    }
    for (Leg leg : kAllLegs) {
      const FootPosition& p = plan.foot_trace(leg)[i];
      out << ',' << format_number(p.x) << ',' << format_number(p.y);
    }
    for (double w : plan.wires[i]) out << ',' << format_number(w);
    out << '\n';
  }
}

void write_commands_csv(std::ostream& out, const CommandSeries& commands) {
  out << "t,l1,l2,l3,l4\n";
  for (const CommandSample& s : commands.samples) {
    out << format_number(s.time);
    for (double l : s.lengths) out << ',' << format_number(l);
    out << '\n';
  }
}

void write_efficiency_csv(std::ostream& out, const std::vector<EfficiencyRow>& rows) {
  out << "bend_rad,chain_min,chain_max,tsm_min,tsm_max\n";
  for (const EfficiencyRow& r : rows) {
    out << format_number(r.bend) << ',' << format_number(r.chain.lower) << ',' << format_number(r.chain.upper)
        << ',' << format_number(r.sheath.lower) << ',' << format_number(r.sheath.upper) << '\n';
  }
}

void write_chain_csv(std::ostream& out, const std::vector<ChainRow>& rows) {
  out << "index,status,path_length_mm,tip_x,tip_y,tip_z,tip_qw,tip_qx,tip_qy,tip_qz,"
         "cumulative_bend_rad,chain_eff_min,chain_eff_max,tsm_eff_min,tsm_eff_max,error\n";
  for (const ChainRow& r : rows) {
    out << r.index << ',' << (r.ok ? "ok" : "error");
    if (r.ok) {
      const auto& p = r.tip_position;
      const auto& q = r.tip_orientation;
      for (double v : {r.path_length, p.x(), p.y(), p.z(), q.w(), q.x(), q.y(), q.z(), r.cumulative_bend,
                       r.chain_efficiency.lower, r.chain_efficiency.upper, r.sheath_efficiency.lower,
                       r.sheath_efficiency.upper}) {
        out << ',' << format_number(v);
      }
      out << ",\n";
    } else {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << ",,,,,,,,,,,,,," << msg << '\n';
    }
  }
}

json to_json(const TendonJacobian& t) {
  return {{"g", {{t.g()(0, 0), t.g()(0, 1)}, {t.g()(1, 0), t.g()(1, 1)}}},
          {"q0", {t.q0().shoulder, t.q0().elbow}}};
}

json to_json(const ConstraintReport& report) {
  json checks = json::array();
  for (const ConstraintCheck& c : report.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"margin", c.margin},
                      {"satisfied", c.satisfied}});
  }
  return {{"feasible", report.feasible()}, {"checks", checks}};
}

json to_json(const GaitPlan& plan) {
  json legs = json::object();
  for (Leg leg : kAllLegs) {
    json q = json::array(), feet = json::array(), stance = json::array();
    for (std::size_t i = 0; i < plan.size(); ++i) {
      const JointAngles& a = plan.joint_sequence(leg)[i];
      const FootPosition& p = plan.foot_trace(leg)[i];
      q.push_back({a.shoulder, a.elbow});
      feet.push_back({p.x, p.y});
      stance.push_back(plan.in_stance(leg, i));
    }
    legs[leg_name(leg)] = {{"joints", q}, {"feet", feet}, {"stance", stance}};
  }
  json wires = json::array();
  for (const WireLengths& w : plan.wires) wires.push_back(w);
  return {
      {"parameters",
       {{"stride", plan.parameters.stride},
        {"swing_height", plan.parameters.swing_height},
        {"samples_per_phase", plan.parameters.samples_per_phase},
        {"ground_offset", plan.parameters.ground_offset}}},
      {"geometry",
       {{"upper_length", plan.geometry.upper_length},
        {"lower_length", plan.geometry.lower_length},
        {"ground_offset", plan.geometry.ground_offset}}},
      {"tendons", {{"front", to_json(plan.tendons.front)}, {"back", to_json(plan.tendons.back)}}},
      {"legs", legs},
      {"wires", wires},
  };
}

json to_json(const std::vector<EfficiencyRow>& rows) {
  json out = json::array();
  for (const EfficiencyRow& r : rows) {
    out.push_back({{"bend", r.bend},
                   {"chain", {r.chain.lower, r.chain.upper}},
                   {"tsm", {r.sheath.lower, r.sheath.upper}}});
  }
  return out;
}

json to_json(const std::vector<ChainRow>& rows) {
  json out = json::array();
  for (const ChainRow& r : rows) {
    if (!r.ok) {
      out.push_back({{"index", r.index}, {"status", "error"}, {"error", r.error}});
      continue;
    }
    const auto& p = r.tip_position;
    const auto& q = r.tip_orientation;
    out.push_back({{"index", r.index},
                   {"status", "ok"},
                   {"path_length", r.path_length},
                   {"tip_position", {p.x(), p.y(), p.z()}},
                   {"tip_orientation", {q.w(), q.x(), q.y(), q.z()}},
                   {"cumulative_bend", r.cumulative_bend},
                   {"chain_efficiency", {r.chain_efficiency.lower, r.chain_efficiency.upper}},
                   {"tsm_efficiency", {r.sheath_efficiency.lower, r.sheath_efficiency.upper}}});
  }
  return out;
}

json design_report(const DesignProblem& problem, const DesignSolution& solution) {
  const DesignCandidate reference = DesignCandidate::from(reference_design::optimized());
  const double reference_objective = objective(problem, reference);
  const ConstraintReport reference_constraints = check_constraints(problem, reference);
  return {
      {"solution",
       {{"front", to_json(solution.design.front)},
        {"back", to_json(solution.design.back)},
        {"objective", solution.objective},
        {"constraints", to_json(solution.constraints)},
        {"feasible_starts", solution.feasible_starts},
        {"local_searches", solution.local_searches}}},
      {"reference",
       {{"front", to_json(reference_design::optimized().front)},
        {"back", to_json(reference_design::optimized().back)},
        {"objective", reference_objective},
        {"constraints", to_json(reference_constraints)}}},
      {"problem",
       {{"samples", problem.front_targets.size()},
        {"norm_lower", problem.norm_lower},
        {"entry_upper", problem.entry_upper},
        {"tolerance", problem.tolerance}}},
      {"dominates_reference", solution.objective <= reference_objective + problem.tolerance},
  };
}

namespace {

struct Frame {
  double xmin, xmax, ymin, ymax;
  double width = 640, height = 400, margin = 40;

  double px(double x) const { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); }
  double py(double y) const { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); }
};

std::string polyline(const Frame& f, const std::vector<std::pair<double, double>>& pts, const char* colour) {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) os << format_number(std::round(f.px(x) * 100) / 100) << ','
                                    << format_number(std::round(f.py(y) * 100) / 100) << ' ';
  os << "\"/>\n";
  return os.str();
}

std::string header(const Frame& f, const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << f.margin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title
     << "</text>\n";
  return os.str();
}

}  // namespace

std::string foot_trace_svg(const GaitPlan& plan) {
  double xmin = 0, xmax = 0, ymin = -plan.parameters.ground_offset, ymax = ymin;
  for (Leg leg : kAllLegs) {
    for (const FootPosition& p : plan.foot_trace(leg)) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  const double pad = 10;
  Frame f{xmin - pad, xmax + pad, ymin - pad, ymax + pad};
  std::ostringstream os;
  os << header(f, "Foot traces (right side), shoulder frame [mm]");
  os << polyline(f, {{f.xmin, -plan.parameters.ground_offset}, {f.xmax, -plan.parameters.ground_offset}}, "#999999");
  const char* colours[] = {"#1f77b4", "#d62728"};
  int c = 0;
  for (Leg leg : {Leg::kFrontRight, Leg::kBackRight}) {
    std::vector<std::pair<double, double>> pts;
    for (const FootPosition& p : plan.foot_trace(leg)) pts.emplace_back(p.x, p.y);
    pts.push_back(pts.front());
    os << polyline(f, pts, colours[c++]);
  }
  os << "</svg>\n";
  return os.str();
}

std::string efficiency_svg(const std::vector<EfficiencyRow>& rows) {
  if (rows.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
  Frame f{rows.front().bend, rows.back().bend, 0.0, 1.0};
  if (f.xmax <= f.xmin) f.xmax = f.xmin + 1.0;
  std::ostringstream os;
  os << header(f, "Transmission efficiency vs cumulative bend [rad]");
  auto band = [&](auto lower, auto upper, const char* colour) {
    std::vector<std::pair<double, double>> lo, hi;
    for (const EfficiencyRow& r : rows) {
      lo.emplace_back(r.bend, lower(r));
      hi.emplace_back(r.bend, upper(r));
    }
    os << polyline(f, lo, colour) << polyline(f, hi, colour);
  };
  band([](const EfficiencyRow& r) { return r.chain.lower; }, [](const EfficiencyRow& r) { return r.chain.upper; },
       "#2ca02c");
  band([](const EfficiencyRow& r) { return r.sheath.lower; }, [](const EfficiencyRow& r) { return r.sheath.upper; },
       "#ff7f0e");
  os << "</svg>\n";
  return os.str();
}

}  // namespace wiredrive
