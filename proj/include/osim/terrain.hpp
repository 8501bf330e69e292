#pragma once

#include <array>
#include <cmath>

// Ground model for the passage-slope scenario: a flat field, a straight
// approach lane, a planar ramp up to a raised farm road, a right-angle
// corner, a long exit leg, and an embankment falling away beyond the far
// edge of the exit road. Elevation is piecewise planar and C0 everywhere.

namespace osim {

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wrap an angle into [-pi, pi).
inline double wrap_to_pi(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

enum class Scenario { WithSlope, WithoutSlope };

// Ramp connecting the field (datum 0) to the road surface.
struct SlopeGeometry {
  double gradient = deg2rad(19.0);  // rad, in (0, pi/2)
  double height = 0.7;              // m, > 0
  double ramp_start_x = 8.0;        // m, foot of the ramp on the approach lane

  // Horizontal run of the ramp.
  double run() const { return height / std::tan(gradient); }
};

struct RoadGeometry {
  double width = 3.0;                       // m
  double corner_radius = 3.5;               // m, centerline radius
  double corner_turn = -kPi / 2.0;          // rad heading change; right turn negative
  double corner_setback = 2.0;              // m from ramp crest to corner entry
  double exit_length = 60.0;                // m of straight road after the corner
  double embankment_setback = 0.25;         // m of level shoulder past the outer road edge
  double embankment_drop = 1.5;             // m, >= 0, cap on the falloff depth
  double embankment_gradient = deg2rad(45.0);  // rad
};

class Terrain {
 public:
  // Validates the geometry and assembles the elevation profile and road
  // polygon. The slope geometry anchors the layout (crest and corner
  // position) in both scenarios; only the elevation height differs, so the
  // WithoutSlope course is the WithSlope course with height -> 0. For
  // WithoutSlope a degenerate slope is tolerated (zero-length ramp).
  // Throws std::invalid_argument with the offending field on bad geometry.
  static Terrain build_scenario(Scenario scenario, const SlopeGeometry& slope,
                                const RoadGeometry& road);

  // Elevation above datum. Continuous everywhere. The lane and ramp form a
  // lateral-invariant prism; beyond the outer road edge (the left of travel)
  // the raised platform falls away at the embankment gradient, never below
  // the field datum.
  double elevation_at(double x, double y) const;

  // (de/dx, de/dy) of the planar patch containing the point. At a patch
  // boundary the patch being entered in the +x direction wins.
  std::array<double, 2> surface_gradient(double x, double y) const;

  // True iff the point lies in the closed road polygon:
  // approach lane (including the ramp footprint) U corner annulus U exit leg.
  bool on_road(double x, double y) const;

  // Copy of this terrain with the whole scenario rotated by `yaw` about the
  // world origin. Queries accept world coordinates. Validation hook for
  // frame-invariance checks; the CLI never sets it.
  Terrain with_frame_yaw(double yaw) const;

  Scenario scenario() const { return scenario_; }
  const SlopeGeometry& slope() const { return slope_; }
  const RoadGeometry& road() const { return road_; }

  double ramp_start_x() const { return ramp_start_; }
  double crest_x() const { return crest_; }
  // Elevation of the road surface (0 for WithoutSlope).
  double road_elevation() const { return height_; }
  double corner_start_x() const { return corner_start_; }
  std::array<double, 2> corner_center() const { return {corner_center_x_, corner_center_y_}; }
  double frame_yaw() const { return frame_yaw_; }

 private:
  Terrain() = default;

  double profile_elevation(double x) const;
  double profile_slope(double x) const;
  // Signed distance past the outer road edge (positive = beyond the edge),
  // and its scenario-frame gradient. Continuous across the layout seams.
  double outer_excess(double xs, double ys) const;
  std::array<double, 2> outer_excess_gradient(double xs, double ys) const;
  void to_scenario_frame(double x, double y, double& xs, double& ys) const;

  Scenario scenario_ = Scenario::WithSlope;
  SlopeGeometry slope_;
  RoadGeometry road_;

  // Derived layout (scenario frame).
  double height_ = 0.0;        // effective road elevation
  double ramp_start_ = 0.0;
  double crest_ = 0.0;         // ramp_start + run
  double corner_start_ = 0.0;  // crest + corner_setback
  double corner_center_x_ = 0.0;
  double corner_center_y_ = 0.0;
  double tan_gradient_ = 0.0;
  double tan_embank_ = 0.0;

  double frame_yaw_ = 0.0;
  double cos_yaw_ = 1.0;
  double sin_yaw_ = 0.0;
};

}  // namespace osim
