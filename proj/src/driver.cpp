#include "osim/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace osim {

void DriverParams::validate() const {
  if (!(lookahead > 0.0)) throw std::invalid_argument("driver: lookahead must be > 0");
  if (!(steer_max > 0.0 && steer_max < kPi / 2.0))
    throw std::invalid_argument("driver: steer_max must be in (0, 90) degrees");
  if (!(steer_rate_max > 0.0))
    throw std::invalid_argument("driver: steer_rate_max must be > 0");
  if (!(speed_target >= 0.0))
    throw std::invalid_argument("driver: speed_target must be >= 0");
  if (!(speed_gain >= 0.0)) throw std::invalid_argument("driver: speed_gain must be >= 0");
  if (!(force_max > 0.0)) throw std::invalid_argument("driver: force_max must be > 0");
}

namespace {

constexpr double kMaxSpacing = 0.1;  // m

void append_point(ReferencePath& path, double x, double y) {
  if (!path.xs.empty()) {
    const double d = std::hypot(x - path.xs.back(), y - path.ys.back());
    if (d < 1e-12) return;
    path.arc.push_back(path.arc.back() + d);
  } else {
    path.arc.push_back(0.0);
  }
  path.xs.push_back(x);
  path.ys.push_back(y);
}

void append_segment(ReferencePath& path, double x0, double y0, double x1, double y1) {
  const double len = std::hypot(x1 - x0, y1 - y0);
  const int n = std::max(1, static_cast<int>(std::ceil(len / kMaxSpacing)));
  for (int i = 0; i <= n; ++i) {
    const double f = static_cast<double>(i) / n;
    append_point(path, x0 + f * (x1 - x0), y0 + f * (y1 - y0));
  }
}

}  // namespace

ReferencePath reference_path(const Terrain& terrain) {
  const RoadGeometry& road = terrain.road();
  const double approach = 15.0;

  // Built in the scenario frame, rotated to world at the end.
  ReferencePath path;
  const double start_x = terrain.ramp_start_x() - approach;
  const double corner_start = terrain.corner_start_x();
  append_segment(path, start_x, 0.0, corner_start, 0.0);

  const double radius = road.corner_radius;
  const double turn = road.corner_turn;
  const double side = (turn < 0.0) ? -1.0 : 1.0;
  const double cx = corner_start;
  const double cy = side * radius;
  const double beta_start = -side * kPi / 2.0;
  const int arc_n = std::max(1, static_cast<int>(std::ceil(radius * std::abs(turn) / kMaxSpacing)));
  for (int i = 1; i <= arc_n; ++i) {
    const double beta = beta_start + turn * static_cast<double>(i) / arc_n;
    append_point(path, cx + radius * std::cos(beta), cy + radius * std::sin(beta));
  }

  const double beta_end = beta_start + turn;
  const double exit_x = cx + radius * std::cos(beta_end);
  const double exit_y = cy + radius * std::sin(beta_end);
  append_segment(path, exit_x, exit_y, exit_x + road.exit_length * std::cos(turn),
                 exit_y + road.exit_length * std::sin(turn));

  const double yaw = terrain.frame_yaw();
  if (yaw != 0.0) {
    const double c = std::cos(yaw);
    const double s = std::sin(yaw);
    for (std::size_t i = 0; i < path.size(); ++i) {
      const double x = path.xs[i];
      const double y = path.ys[i];
      path.xs[i] = c * x - s * y;
      path.ys[i] = s * x + c * y;
    }
  }
  return path;
}

double pure_pursuit_steer(const VehicleState& s, const ReferencePath& path,
                          const DriverParams& p, double wheelbase, double prev_steer,
                          double dt) {
  if (path.size() < 2) throw std::invalid_argument("driver: reference path is empty");
  if (!(dt > 0.0)) throw std::invalid_argument("driver: dt must be > 0");

  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double dx = path.xs[i] - s.x;
    const double dy = path.ys[i] - s.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 < best) {
      best = d2;
      nearest = i;
    }
  }

  const double goal_arc = std::min(path.arc[nearest] + p.lookahead, path.arc.back());
  const auto it = std::lower_bound(path.arc.begin(), path.arc.end(), goal_arc);
  const std::size_t hi = std::min<std::size_t>(it - path.arc.begin(), path.size() - 1);
  double gx = path.xs[hi];
  double gy = path.ys[hi];
  if (hi > 0) {
    const std::size_t lo = hi - 1;
    const double span = path.arc[hi] - path.arc[lo];
    if (span > 1e-12) {
      const double f = (goal_arc - path.arc[lo]) / span;
      gx = path.xs[lo] + f * (path.xs[hi] - path.xs[lo]);
      gy = path.ys[lo] + f * (path.ys[hi] - path.ys[lo]);
    }
  }

  const double eta = wrap_to_pi(std::atan2(gy - s.y, gx - s.x) - s.psi);
  const double kappa = 2.0 * std::sin(eta) / p.lookahead;
  const double raw = std::clamp(std::atan(wheelbase * kappa), -p.steer_max, p.steer_max);
  const double max_delta = p.steer_rate_max * dt;
  return std::clamp(raw, prev_steer - max_delta, prev_steer + max_delta);
}

double speed_control(double u, const DriverParams& p) {
  return std::clamp(p.speed_gain * (p.speed_target - u), -p.force_max, p.force_max);
}

}  // namespace osim
