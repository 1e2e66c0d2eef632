#include "wiredrive/command_pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "wiredrive/errors.hpp"

namespace wiredrive {

void PipelineConfig::validate() const {
  if (!(max_wire_speed > 0.0) || !std::isfinite(max_wire_speed)) throw InvalidArgument("max wire speed must be positive");
  if (!(min_step_time >= 0.0) || !std::isfinite(min_step_time)) throw InvalidArgument("min step time must be non-negative");
  if (!(control_rate > 0.0) || !std::isfinite(control_rate)) throw InvalidArgument("control rate must be positive");
  if (!(walking_scale >= 1.0) || !std::isfinite(walking_scale)) throw InvalidArgument("walking scale must be >= 1");
}

std::vector<Knot> allocate_times(std::span<const WireLengths> series, const PipelineConfig& cfg) {
  cfg.validate();
  if (series.size() < 2) throw InvalidArgument("wire series needs at least two samples");
  std::vector<Knot> knots;
  knots.reserve(series.size());
  knots.push_back({0.0, series[0]});
  for (std::size_t i = 1; i < series.size(); ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < series[i].size(); ++j) {
      worst = std::max(worst, std::abs(series[i][j] - series[i - 1][j]));
    }
    const double dt = std::max(cfg.min_step_time, worst / cfg.max_wire_speed);
    if (!(dt > 0.0)) throw InvalidArgument("repeated sample with zero min step time");
    knots.push_back({knots.back().time + dt, series[i]});
  }
  return knots;
}

WireTrajectory::WireTrajectory(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw InvalidArgument("spline needs at least two knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].time > knots_[i - 1].time)) throw InvalidArgument("knot times must be strictly increasing");
  }
  const std::size_t n = knots_.size();
  tangents_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    const double dt = knots_[hi].time - knots_[lo].time;
    for (std::size_t j = 0; j < tangents_[i].size(); ++j) {
      tangents_[i][j] = (knots_[hi].lengths[j] - knots_[lo].lengths[j]) / dt;
    }
  }
}

std::size_t WireTrajectory::segment(double t) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double value, const Knot& k) { return value < k.time; });
  const std::size_t idx = static_cast<std::size_t>(it - knots_.begin());
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, knots_.size() - 2);
}

WireLengths WireTrajectory::operator()(double t) const {
  if (t <= start_time()) return knots_.front().lengths;
  if (t >= end_time()) return knots_.back().lengths;
  const std::size_t i = segment(t);
  const Knot& a = knots_[i];
  const Knot& b = knots_[i + 1];
  const double h = b.time - a.time;
  const double u = (t - a.time) / h;
  if (u == 0.0) return a.lengths;
  const double u2 = u * u, u3 = u2 * u;
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  WireLengths out{};
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = h00 * a.lengths[j] + h10 * h * tangents_[i][j] + h01 * b.lengths[j] + h11 * h * tangents_[i + 1][j];
  }
  return out;
}

WireLengths WireTrajectory::velocity(double t) const {
  WireLengths out{};
  if (t < start_time() || t > end_time()) return out;
  const std::size_t i = segment(t);
  const Knot& a = knots_[i];
  const Knot& b = knots_[i + 1];
  const double h = b.time - a.time;
  const double u = std::clamp((t - a.time) / h, 0.0, 1.0);
  const double u2 = u * u;
  const double d00 = 6 * u2 - 6 * u;
  const double d10 = 3 * u2 - 4 * u + 1;
  const double d01 = -6 * u2 + 6 * u;
  const double d11 = 3 * u2 - 2 * u;
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = (d00 * a.lengths[j] + d01 * b.lengths[j]) / h + d10 * tangents_[i][j] + d11 * tangents_[i + 1][j];
  }
  return out;
}

double WireTrajectory::max_speed() const {
  // On each segment dl/dt = (A u^2 + B u + C) / h is quadratic in u; its
  // extreme magnitude is at an end or at the vertex.
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const Knot& a = knots_[i];
    const Knot& b = knots_[i + 1];
    const double h = b.time - a.time;
    for (std::size_t j = 0; j < a.lengths.size(); ++j) {
      const double p0 = a.lengths[j], p1 = b.lengths[j];
      const double m0 = h * tangents_[i][j], m1 = h * tangents_[i + 1][j];
      const double qa = 6 * p0 + 3 * m0 - 6 * p1 + 3 * m1;
      const double qb = -6 * p0 - 4 * m0 + 6 * p1 - 2 * m1;
      const double qc = m0;
      auto value = [&](double u) { return std::abs((qa * u + qb) * u + qc) / h; };
      best = std::max({best, value(0.0), value(1.0)});
      if (qa != 0.0) {
        const double vertex = -qb / (2 * qa);
        if (vertex > 0.0 && vertex < 1.0) best = std::max(best, value(vertex));
      }
    }
  }
  return best;
}

WireTrajectory spline(std::vector<Knot> knots) { return WireTrajectory(std::move(knots)); }

Emission emit(std::span<const WireLengths> series, const PipelineConfig& cfg) {
  WireTrajectory base = spline(allocate_times(series, cfg));
  // Cubic overshoot can exceed the knot-to-knot speed; stretch uniformly so
  // that the continuous speed stays within the limit.
  const double dilation = std::max(1.0, base.max_speed() / cfg.max_wire_speed);
  const double time_scale = dilation * cfg.walking_scale;

  CommandSeries commands;
  commands.control_rate = cfg.control_rate;
  commands.dilation = dilation;
  commands.time_scale = time_scale;
  commands.duration = time_scale * base.end_time();
  for (const Knot& k : base.knots()) commands.knot_times.push_back(time_scale * k.time);

  CommandTrajectory trajectory(std::move(base), time_scale);
  const auto count = static_cast<std::size_t>(std::ceil(commands.duration * cfg.control_rate - 1e-9));
  commands.samples.reserve(count + 1);
  for (std::size_t j = 0; j <= count; ++j) {
    const double t = static_cast<double>(j) / cfg.control_rate;
    commands.samples.push_back({t, trajectory(t)});
  }
  return {std::move(commands), std::move(trajectory)};
}

CommandSeries emit_commands(std::span<const WireLengths> series, const PipelineConfig& cfg) {
  return emit(series, cfg).commands;
}

double max_sample_jump(const CommandSeries& commands) {
  double jump = 0.0;
  for (std::size_t i = 1; i < commands.samples.size(); ++i) {
    const auto& a = commands.samples[i - 1].lengths;
    const auto& b = commands.samples[i].lengths;
    for (std::size_t j = 0; j < a.size(); ++j) jump = std::max(jump, std::abs(b[j] - a[j]));
  }
  return jump;
}

double max_sampled_speed(const CommandSeries& commands) {
  double speed = 0.0;
  for (std::size_t i = 1; i < commands.samples.size(); ++i) {
    const double dt = commands.samples[i].time - commands.samples[i - 1].time;
    const auto& a = commands.samples[i - 1].lengths;
    const auto& b = commands.samples[i].lengths;
    for (std::size_t j = 0; j < a.size(); ++j) speed = std::max(speed, std::abs(b[j] - a[j]) / dt);
  }
  return speed;
}

}  // namespace wiredrive
