#include "osim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace osim {

void TractorParams::validate() const {
  if (!(m_body > 0.0)) throw std::invalid_argument("tractor: m_body must be > 0");
  if (!(m_wheels > 0.0)) throw std::invalid_argument("tractor: m_wheels must be > 0");
  if (!(i_pitch > 0.0)) throw std::invalid_argument("tractor: i_pitch must be > 0");
  if (!(i_yaw > 0.0)) throw std::invalid_argument("tractor: i_yaw must be > 0");
  if (!(i_roll > 0.0)) throw std::invalid_argument("tractor: i_roll must be > 0");
  if (!(a > 0.0)) throw std::invalid_argument("tractor: a must be > 0");
  if (!(b > 0.0)) throw std::invalid_argument("tractor: b must be > 0");
  if (!(track > 0.0)) throw std::invalid_argument("tractor: track must be > 0");
  if (!(h_cg > 0.0)) throw std::invalid_argument("tractor: h_cg must be > 0");
  if (!(g > 0.0)) throw std::invalid_argument("tractor: g must be > 0");
  tires.validate();
  const double tip = tip_angle();
  if (!(tip > 0.0 && tip < kPi / 2.0))
    throw std::invalid_argument("tractor: tip angle out of range");
}

VehicleState VehicleState::operator+(const VehicleState& o) const {
  VehicleState s;
  s.x = x + o.x;
  s.y = y + o.y;
  s.psi = psi + o.psi;
  s.u = u + o.u;
  s.v = v + o.v;
  s.r = r + o.r;
  s.z = z + o.z;
  s.z_dot = z_dot + o.z_dot;
  s.theta = theta + o.theta;
  s.theta_dot = theta_dot + o.theta_dot;
  s.phi = phi + o.phi;
  s.phi_dot = phi_dot + o.phi_dot;
  s.alpha_front = alpha_front + o.alpha_front;
  s.alpha_rear = alpha_rear + o.alpha_rear;
  return s;
}

VehicleState VehicleState::operator*(double k) const {
  VehicleState s;
  s.x = x * k;
  s.y = y * k;
  s.psi = psi * k;
  s.u = u * k;
  s.v = v * k;
  s.r = r * k;
  s.z = z * k;
  s.z_dot = z_dot * k;
  s.theta = theta * k;
  s.theta_dot = theta_dot * k;
  s.phi = phi * k;
  s.phi_dot = phi_dot * k;
  s.alpha_front = alpha_front * k;
  s.alpha_rear = alpha_rear * k;
  return s;
}

bool VehicleState::all_finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(psi) && std::isfinite(u) &&
         std::isfinite(v) && std::isfinite(r) && std::isfinite(z) && std::isfinite(z_dot) &&
         std::isfinite(theta) && std::isfinite(theta_dot) && std::isfinite(phi) &&
         std::isfinite(phi_dot) && std::isfinite(alpha_front) && std::isfinite(alpha_rear);
}

std::array<std::array<double, 2>, 4> wheel_offsets(const TractorParams& p) {
  const double af = p.cg_front_offset();
  const double br = p.cg_rear_offset();
  const double h = p.track / 2.0;
  return {{{af, h}, {af, -h}, {-br, h}, {-br, -h}}};
}

std::array<std::array<double, 2>, 4> wheel_contact_positions(const VehicleState& s,
                                                             const TractorParams& p) {
  const auto off = wheel_offsets(p);
  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  std::array<std::array<double, 2>, 4> world{};
  for (int i = 0; i < 4; ++i) {
    world[i][0] = s.x + off[i][0] * c - off[i][1] * sn;
    world[i][1] = s.y + off[i][0] * sn + off[i][1] * c;
  }
  return world;
}

ContactState contact_kinematics(const VehicleState& s, const Terrain& terrain,
                                const TractorParams& p) {
  const auto off = wheel_offsets(p);
  const auto world = wheel_contact_positions(s, p);
  const double c = std::cos(s.psi);
  const double sn = std::sin(s.psi);
  const double xdot = s.u * c - s.v * sn;
  const double ydot = s.u * sn + s.v * c;
  // Unloaded-tire contact reference sits h_cg + static_deflection below the
  // CG; positive deflection is spring compression.
  const double ref = p.h_cg + p.static_deflection();

  ContactState out;
  for (int i = 0; i < 4; ++i) {
    const double bx = off[i][0];
    const double by = off[i][1];
    const double e = terrain.elevation_at(world[i][0], world[i][1]);
    out.deflection[i] = e + ref - s.z - bx * s.theta - by * s.phi;

    const auto grad = terrain.surface_gradient(world[i][0], world[i][1]);
    const double cx = xdot - s.r * (bx * sn + by * c);
    const double cy = ydot + s.r * (bx * c - by * sn);
    out.deflection_rate[i] = grad[0] * cx + grad[1] * cy -
                             (s.z_dot + bx * s.theta_dot + by * s.phi_dot);
  }
  return out;
}

WheelLoads wheel_loads(const ContactState& c, const TireParams& tires) {
  WheelLoads w;
  w.fl = vertical_force(c.deflection[0], c.deflection_rate[0], tires);
  w.fr = vertical_force(c.deflection[1], c.deflection_rate[1], tires);
  w.rl = vertical_force(c.deflection[2], c.deflection_rate[2], tires);
  w.rr = vertical_force(c.deflection[3], c.deflection_rate[3], tires);
  return w;
}

VehicleState state_derivative(const VehicleState& s, const Controls& c,
                              const Terrain& terrain, const TractorParams& p) {
  if (!s.all_finite())
    throw std::invalid_argument("dynamics: non-finite state passed to state_derivative");

  const double m = p.total_mass();
  const double af = p.cg_front_offset();
  const double br = p.cg_rear_offset();
  const auto contacts = contact_kinematics(s, terrain, p);
  const WheelLoads w = wheel_loads(contacts, p.tires);
  const bool grounded = contacts.any_contact();

  // Forces respond to the lagged slip states; the kinematic slips are only
  // the targets the lag relaxes toward as the loaded contact patch rolls. An
  // airborne axle has no patch, so its lag unwinds toward zero instead and a
  // landing tire must roll about a relaxation length before it grips again.
  const auto alphas = slip_angles(s.u, s.v, s.r, c.steer, af, br, p.tires);
  const double target_front = (w.front_sum() > 0.0) ? alphas[0] : 0.0;
  const double target_rear = (w.rear_sum() > 0.0) ? alphas[1] : 0.0;
  const double fy_front = axle_cornering_force(s.alpha_front, w.front_sum(), p.tires);
  const double fy_rear = axle_cornering_force(s.alpha_rear, w.rear_sum(), p.tires);
  const double cos_steer = std::cos(c.steer);
  const double roll_rate = std::max(std::abs(s.u), p.tires.min_speed);

  // Local ground orientation under the CG; fully airborne flight is ballistic
  // (no slope resistance, no roll pendulum, straight-down gravity).
  double sin_incline = 0.0;
  double cos_incline = 1.0;
  double pendulum = 0.0;
  if (grounded) {
    const auto grad = terrain.surface_gradient(s.x, s.y);
    const double along = grad[0] * std::cos(s.psi) + grad[1] * std::sin(s.psi);
    sin_incline = std::sin(std::atan(along));
    cos_incline = std::cos(std::atan(std::hypot(grad[0], grad[1])));
    pendulum = m * p.g * p.h_cg * std::sin(s.phi);
  }

  const auto off = wheel_offsets(p);
  const std::array<double, 4> fz = {w.fl, w.fr, w.rl, w.rr};
  double pitch_moment = 0.0;
  double roll_moment = 0.0;
  for (int i = 0; i < 4; ++i) {
    pitch_moment += off[i][0] * fz[i];
    roll_moment += off[i][1] * fz[i];
  }
  if (grounded) {
    // Ground-level longitudinal force and the CG-height pendulum pitch the
    // body exactly as their lateral counterparts roll it; climbing shifts
    // load off the front axle.
    const double long_force = c.drive_force - m * p.g * sin_incline;
    pitch_moment += long_force * p.h_cg + m * p.g * p.h_cg * std::sin(s.theta);
  }

  VehicleState d;
  d.x = s.u * std::cos(s.psi) - s.v * std::sin(s.psi);
  d.y = s.u * std::sin(s.psi) + s.v * std::cos(s.psi);
  d.psi = s.r;
  d.u = s.v * s.r + (c.drive_force - m * p.g * sin_incline) / m;
  d.v = -s.u * s.r + (fy_front * cos_steer + fy_rear) / m;
  d.r = (af * fy_front * cos_steer - br * fy_rear) / p.i_yaw;
  d.z = s.z_dot;
  d.z_dot = (w.total() - m * p.g * cos_incline) / m;
  d.theta = s.theta_dot;
  d.theta_dot = pitch_moment / p.i_pitch;
  d.phi = s.phi_dot;
  d.phi_dot = (roll_moment + (fy_front + fy_rear) * p.h_cg + pendulum) / p.i_roll;
  d.alpha_front = roll_rate / p.tires.relaxation_length * (target_front - s.alpha_front);
  d.alpha_rear = roll_rate / p.tires.relaxation_length * (target_rear - s.alpha_rear);
  return d;
}

double load_transfer_ratio(const WheelLoads& w) {
  const double total = std::max(1.0, w.total());
  const double ratio = ((w.fl + w.rl) - (w.fr + w.rr)) / total;
  return std::clamp(ratio, -1.0, 1.0);
}

VehicleState static_equilibrium_state(double x, double y, double psi,
                                      const Terrain& terrain, const TractorParams& p) {
  const double m = p.total_mass();
  const double k = p.tires.vertical_stiffness;
  const double af = p.cg_front_offset();
  const double br = p.cg_rear_offset();
  const double wheel_share = (p.m_wheels / 2.0) * p.g / 2.0;
  const double front_per_wheel = p.m_body * p.g * p.b / (2.0 * p.wheelbase()) + wheel_share;
  const double rear_per_wheel = p.m_body * p.g * p.a / (2.0 * p.wheelbase()) + wheel_share;
  const double defl_front = front_per_wheel / k;
  const double defl_rear = rear_per_wheel / k;
  const double ref = terrain.elevation_at(x, y) + p.h_cg + p.static_deflection();

  // Seed from the moment balance without the pitch pendulum, then solve the
  // heave/pitch balance including it with a few Newton steps on (z, theta).
  double theta = (defl_rear - defl_front) / p.wheelbase();
  double z = ref - defl_front - af * theta;
  for (int iter = 0; iter < 8; ++iter) {
    const double df = ref - z - af * theta;
    const double dr = ref - z + br * theta;
    const double heave = 2.0 * k * (df + dr) - m * p.g;
    const double pitch = 2.0 * k * (af * df - br * dr) + m * p.g * p.h_cg * std::sin(theta);
    const double j11 = -4.0 * k;
    const double j12 = -2.0 * k * (af - br);
    const double j21 = j12;
    const double j22 = -2.0 * k * (af * af + br * br) + m * p.g * p.h_cg * std::cos(theta);
    const double det = j11 * j22 - j12 * j21;
    z -= (heave * j22 - pitch * j12) / det;
    theta -= (pitch * j11 - heave * j21) / det;
  }

  VehicleState s;
  s.x = x;
  s.y = y;
  s.psi = psi;
  s.theta = theta;
  s.z = z;
  return s;
}

double mechanical_energy(const VehicleState& s, const Terrain& terrain,
                         const TractorParams& p) {
  const double m = p.total_mass();
  const double kinetic = 0.5 * m * (s.u * s.u + s.v * s.v + s.z_dot * s.z_dot) +
                         0.5 * p.i_yaw * s.r * s.r + 0.5 * p.i_pitch * s.theta_dot * s.theta_dot +
                         0.5 * p.i_roll * s.phi_dot * s.phi_dot;
  const double gravitational = m * p.g * s.z;
  const auto contacts = contact_kinematics(s, terrain, p);
  double spring = 0.0;
  for (double defl : contacts.deflection) {
    const double compressed = std::max(0.0, defl);
    spring += 0.5 * p.tires.vertical_stiffness * compressed * compressed;
  }
  return kinetic + gravitational + spring;
}

}  // namespace osim
