#include "osim/tire.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace osim {

void TireParams::validate() const {
  if (!(vertical_stiffness > 0.0))
    throw std::invalid_argument("tires: vertical_stiffness must be > 0");
  if (!(vertical_damping >= 0.0))
    throw std::invalid_argument("tires: vertical_damping must be >= 0");
  if (!(cornering_stiffness > 0.0))
    throw std::invalid_argument("tires: cornering_stiffness must be > 0");
  if (!(friction > 0.0)) throw std::invalid_argument("tires: friction must be > 0");
  if (!(min_speed >= 0.0)) throw std::invalid_argument("tires: min_speed must be >= 0");
  if (!(relaxation_length > 0.0))
    throw std::invalid_argument("tires: relaxation_length must be > 0");
}

double vertical_force(double deflection, double deflection_rate, const TireParams& params) {
  if (deflection <= 0.0) return 0.0;
  const double f =
      params.vertical_stiffness * deflection + params.vertical_damping * deflection_rate;
  return std::max(0.0, f);
}

double axle_cornering_force(double slip_angle, double axle_load, const TireParams& params) {
  if (axle_load < 0.0) throw std::invalid_argument("tires: axle load must be >= 0");
  if (axle_load == 0.0) return 0.0;
  const double magnitude =
      std::min(params.cornering_stiffness * axle_load * std::abs(slip_angle),
               params.friction * axle_load);
  return (slip_angle > 0.0) ? -magnitude : (slip_angle < 0.0) ? magnitude : 0.0;
}

std::array<double, 2> slip_angles(double u, double v, double r, double steer,
                                  double cg_front_offset, double cg_rear_offset,
                                  const TireParams& params) {
  if (u < params.min_speed) return {0.0, 0.0};
  const double alpha_f = std::atan2(v + cg_front_offset * r, u) - steer;
  const double alpha_r = std::atan2(v - cg_rear_offset * r, u);
  return {alpha_f, alpha_r};
}

}  // namespace osim
