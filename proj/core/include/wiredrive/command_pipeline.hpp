#pragma once

#include <array>
#include <span>
#include <vector>

#include "wiredrive/gait.hpp"

namespace wiredrive {

struct PipelineConfig {
  double max_wire_speed = 50.0;  // mm/s
  double min_step_time = 0.01;   // s
  double control_rate = 100.0;   // Hz
  double walking_scale = 1.0;    // >= 1

  void validate() const;
};

struct Knot {
  double time;
  WireLengths lengths;
};

// dt_i = max(min_step_time, max_j |dl_ij| / max_wire_speed).
std::vector<Knot> allocate_times(std::span<const WireLengths> series, const PipelineConfig& cfg);

// C1 cubic Hermite interpolant with Catmull-Rom tangents
// m_i = (p_{i+1} - p_{i-1}) / (t_{i+1} - t_{i-1}) and one-sided secant
// tangents at both ends. Queries outside the knot span clamp.
class WireTrajectory {
 public:
  explicit WireTrajectory(std::vector<Knot> knots);

  WireLengths operator()(double t) const;
  // Derivative dl/dt (zero outside the knot span).
  WireLengths velocity(double t) const;

  double start_time() const { return knots_.front().time; }
  double end_time() const { return knots_.back().time; }
  const std::vector<Knot>& knots() const { return knots_; }

  // Exact max over the span and all wires of |dl/dt|.
  double max_speed() const;

 private:
  std::size_t segment(double t) const;

  std::vector<Knot> knots_;
  std::vector<WireLengths> tangents_;
};

WireTrajectory spline(std::vector<Knot> knots);

struct CommandSample {
  double time;
  WireLengths lengths;
};

struct CommandSeries {
  std::vector<CommandSample> samples;
  double control_rate;
  double duration;    // continuous trajectory length in command time, s
  double dilation;    // >= 1, applied when the spline overshoots the speed limit
  double time_scale;  // dilation * walking_scale
  std::vector<double> knot_times;  // in command time
};

// The spline stretched to command time: t_cmd = time_scale * t_knot.
class CommandTrajectory {
 public:
  CommandTrajectory(WireTrajectory base, double time_scale)
      : base_(std::move(base)), scale_(time_scale) {}

  WireLengths operator()(double t) const { return base_(t / scale_); }
  double duration() const { return scale_ * base_.end_time(); }
  double time_scale() const { return scale_; }
  const WireTrajectory& base() const { return base_; }

 private:
  WireTrajectory base_;
  double scale_;
};

struct Emission {
  CommandSeries commands;
  CommandTrajectory trajectory;
};

Emission emit(std::span<const WireLengths> series, const PipelineConfig& cfg);
CommandSeries emit_commands(std::span<const WireLengths> series, const PipelineConfig& cfg);

// Largest per-wire finite-difference speed between consecutive samples.
double max_sampled_speed(const CommandSeries& commands);
// Largest per-wire change between consecutive samples.
double max_sample_jump(const CommandSeries& commands);

}  // namespace wiredrive
