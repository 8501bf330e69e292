#pragma once

#include <array>
#include <cmath>

#include "osim/terrain.hpp"
#include "osim/tire.hpp"

namespace osim {

struct TractorParams {
  double m_body = 788.0;    // kg
  double m_wheels = 200.0;  // kg, total, lumped into the sprung mass 50/50 per axle
  double i_pitch = 700.0;   // kg*m^2
  double a = 0.7;           // m, body CG to front axle
  double b = 0.64;          // m, body CG to rear axle
  double track = 1.2;       // m
  double h_cg = 0.75;       // m, CG height above contact plane at static rest
  double i_yaw = 700.0;     // kg*m^2
  double i_roll = 300.0;    // kg*m^2
  TireParams tires;
  double g = 9.81;  // m/s^2

  double total_mass() const { return m_body + m_wheels; }
  double wheelbase() const { return a + b; }

  // Axle arms measured from the combined CG (body plus wheel mass split
  // 50/50 per axle). These drive the moment balance so the static axle
  // shares come out as m_body*g*b/(a+b) + (m_wheels/2)*g per axle.
  double cg_front_offset() const {
    return (m_body * a + (m_wheels / 2.0) * wheelbase()) / total_mass();
  }
  double cg_rear_offset() const { return wheelbase() - cg_front_offset(); }

  double static_deflection() const {
    return total_mass() * g / (4.0 * tires.vertical_stiffness);
  }
  double tip_angle() const { return std::atan(track / (2.0 * h_cg)); }

  void validate() const;
};

struct VehicleState {
  double x = 0.0;          // m, CG ground-plane position
  double y = 0.0;          // m
  double psi = 0.0;        // rad, yaw
  double u = 0.0;          // m/s, longitudinal velocity
  double v = 0.0;          // m/s, lateral velocity
  double r = 0.0;          // rad/s, yaw rate
  double z = 0.0;          // m, CG height above datum
  double z_dot = 0.0;      // m/s
  double theta = 0.0;      // rad, pitch, nose-up positive
  double theta_dot = 0.0;  // rad/s
  double phi = 0.0;        // rad, roll, left-side-up positive
  double phi_dot = 0.0;    // rad/s
  // Lagged slip angles: lateral force builds over a relaxation length of
  // rolling, so a freshly loaded tire delivers no force until it has rolled.
  double alpha_front = 0.0;  // rad
  double alpha_rear = 0.0;   // rad

  VehicleState operator+(const VehicleState& o) const;
  VehicleState operator*(double s) const;
  bool all_finite() const;
};

struct Controls {
  double steer = 0.0;        // rad, front steering angle
  double drive_force = 0.0;  // N
};

// Spring deflections and deflection rates at the four contacts, front-left
// first. Negative deflection means the wheel is off the ground.
struct ContactState {
  std::array<double, 4> deflection{};
  std::array<double, 4> deflection_rate{};

  bool any_contact() const {
    return deflection[0] > 0.0 || deflection[1] > 0.0 || deflection[2] > 0.0 ||
           deflection[3] > 0.0;
  }
};

// Body-frame planar offsets of the four wheels, front-left first: x forward
// from the combined CG, y to the left.
std::array<std::array<double, 2>, 4> wheel_offsets(const TractorParams& p);

// World ground-plane positions of the four contact points.
std::array<std::array<double, 2>, 4> wheel_contact_positions(const VehicleState& s,
                                                             const TractorParams& p);

ContactState contact_kinematics(const VehicleState& s, const Terrain& terrain,
                                const TractorParams& p);

WheelLoads wheel_loads(const ContactState& c, const TireParams& tires);

// Time derivative of the full state under zero-order-hold controls.
// Throws std::invalid_argument on a non-finite state.
VehicleState state_derivative(const VehicleState& s, const Controls& c,
                              const Terrain& terrain, const TractorParams& p);

// Normalized left/right load imbalance in [-1, 1]; +1 means the right side
// carries nothing.
double load_transfer_ratio(const WheelLoads& w);

// Closed-form settled rest state at ground-plane position (x, y) on locally
// flat terrain, facing yaw psi.
VehicleState static_equilibrium_state(double x, double y, double psi,
                                      const Terrain& terrain, const TractorParams& p);

// Kinetic + gravitational + spring energy; tire damping losses excluded.
double mechanical_energy(const VehicleState& s, const Terrain& terrain,
                         const TractorParams& p);

}  // namespace osim
