#pragma once

#include <vector>

#include "osim/dynamics.hpp"
#include "osim/terrain.hpp"

namespace osim {

struct DriverParams {
  double lookahead = 3.0;             // m
  double steer_max = deg2rad(45.0);   // rad
  double steer_rate_max = 0.6;        // rad/s
  double speed_target = 4.3;          // m/s
  double speed_gain = 20000.0;        // N per m/s of speed error
  double force_max = 4000.0;          // N

  void validate() const;
};

// Polyline reference with cumulative arc length, densified to at most 0.1 m
// spacing.
struct ReferencePath {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> arc;

  std::size_t size() const { return xs.size(); }
};

// Centerline route for both scenarios: approach lane through the ramp
// footprint, the corner arc, then the exit leg. The (x, y) polyline is
// identical with and without the slope so surface shape is the only
// difference between runs.
ReferencePath reference_path(const Terrain& terrain);

// Pure-pursuit steering toward the point one lookahead ahead of the nearest
// path vertex, clamped to steer_max and rate-limited against prev_steer.
// Throws std::invalid_argument on an empty path or non-positive dt.
double pure_pursuit_steer(const VehicleState& s, const ReferencePath& path,
                          const DriverParams& p, double wheelbase, double prev_steer,
                          double dt);

// Proportional speed hold, clamped to +/- force_max.
double speed_control(double u, const DriverParams& p);

}  // namespace osim
