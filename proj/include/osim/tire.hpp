#pragma once

#include <array>

namespace osim {

struct TireParams {
  double vertical_stiffness = 2.0e5;  // N/m
  double vertical_damping = 1.0e3;    // N*s/m, tire-only: no suspension to add more
  double cornering_stiffness = 8.0;   // per rad of slip, scaled by load
  double friction = 0.6;
  double min_speed = 0.2;        // m/s, below this slip angles are zeroed
  double relaxation_length = 1.2;  // m of rolling before lateral force builds

  void validate() const;
};

// Per-wheel vertical loads, front-left first.
struct WheelLoads {
  double fl = 0.0;
  double fr = 0.0;
  double rl = 0.0;
  double rr = 0.0;

  double front_sum() const { return fl + fr; }
  double rear_sum() const { return rl + rr; }
  double total() const { return fl + fr + rl + rr; }
};

// Unilateral spring-damper contact: zero when the wheel is off the ground
// (deflection <= 0) and never negative even when the damper pulls down.
double vertical_force(double deflection, double deflection_rate, const TireParams& params);

// Load-proportional cornering force for one axle, saturated at the friction
// limit. Returns exactly zero at zero load. Throws on negative load.
double axle_cornering_force(double slip_angle, double axle_load, const TireParams& params);

// Front and rear slip angles for a single-track model. Both are zero below
// params.min_speed forward velocity.
std::array<double, 2> slip_angles(double u, double v, double r, double steer,
                                  double cg_front_offset, double cg_rear_offset,
                                  const TireParams& params);

}  // namespace osim
