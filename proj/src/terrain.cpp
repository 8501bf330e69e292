#include "osim/terrain.hpp"

#include <cmath>
#include <stdexcept>

namespace osim {

namespace {

bool slope_is_valid(const SlopeGeometry& s) {
  return s.gradient > 0.0 && s.gradient < kPi / 2.0 && s.height > 0.0 &&
         std::isfinite(s.run()) && s.run() > 0.0;
}

}  // namespace

Terrain Terrain::build_scenario(Scenario scenario, const SlopeGeometry& slope,
                                const RoadGeometry& road) {
  if (scenario == Scenario::WithSlope && !slope_is_valid(slope)) {
    if (!(slope.height > 0.0))
      throw std::invalid_argument("terrain: slope height must be > 0");
    throw std::invalid_argument("terrain: slope gradient must be in (0, 90) degrees");
  }
  if (!(road.width > 0.0))
    throw std::invalid_argument("terrain: road_width must be > 0");
  if (!(road.corner_radius > 0.0))
    throw std::invalid_argument("terrain: corner_radius must be > 0");
  if (!(road.embankment_drop >= 0.0))
    throw std::invalid_argument("terrain: embankment_drop must be >= 0");
  if (!(road.embankment_gradient > 0.0 && road.embankment_gradient < kPi / 2.0))
    throw std::invalid_argument("terrain: embankment_gradient must be in (0, 90) degrees");
  if (!(std::abs(road.corner_turn) > 0.0 && std::abs(road.corner_turn) <= kPi))
    throw std::invalid_argument("terrain: corner_turn must be nonzero and at most 180 degrees");
  if (!(road.corner_setback >= 0.0))
    throw std::invalid_argument("terrain: corner_setback must be >= 0");
  if (!(road.exit_length > 0.0))
    throw std::invalid_argument("terrain: exit_length must be > 0");
  if (!(road.embankment_setback >= 0.0))
    throw std::invalid_argument("terrain: embankment_setback must be >= 0");

  Terrain t;
  t.scenario_ = scenario;
  t.slope_ = slope;
  t.road_ = road;

  const bool layout_has_ramp = slope_is_valid(slope);
  const double run = layout_has_ramp ? slope.run() : 0.0;

  t.height_ = (scenario == Scenario::WithSlope) ? slope.height : 0.0;
  t.ramp_start_ = slope.ramp_start_x;
  t.crest_ = t.ramp_start_ + run;
  t.corner_start_ = t.crest_ + road.corner_setback;
  // Right turn curves toward -y, left toward +y.
  const double side = (road.corner_turn < 0.0) ? -1.0 : 1.0;
  t.corner_center_x_ = t.corner_start_;
  t.corner_center_y_ = side * road.corner_radius;
  t.tan_gradient_ = layout_has_ramp ? std::tan(slope.gradient) : 0.0;
  t.tan_embank_ = std::tan(road.embankment_gradient);
  return t;
}

Terrain Terrain::with_frame_yaw(double yaw) const {
  Terrain t = *this;
  t.frame_yaw_ = yaw;
  t.cos_yaw_ = std::cos(yaw);
  t.sin_yaw_ = std::sin(yaw);
  return t;
}

void Terrain::to_scenario_frame(double x, double y, double& xs, double& ys) const {
  xs = cos_yaw_ * x + sin_yaw_ * y;
  ys = -sin_yaw_ * x + cos_yaw_ * y;
}

double Terrain::profile_elevation(double x) const {
  if (x < ramp_start_) return 0.0;
  if (height_ <= 0.0) return 0.0;
  if (x < crest_) return std::min((x - ramp_start_) * tan_gradient_, height_);
  return height_;
}

double Terrain::profile_slope(double x) const {
  // Boundary ties resolve to the patch entered in +x.
  if (x < ramp_start_) return 0.0;
  if (x < crest_) return (height_ > 0.0) ? tan_gradient_ : 0.0;
  return 0.0;
}

double Terrain::outer_excess(double xs, double ys) const {
  const double half_w = road_.width / 2.0;
  // The outer edge is the left of travel for a right turn, the right for a
  // left turn.
  const double out_sign = (road_.corner_turn < 0.0) ? 1.0 : -1.0;
  if (xs <= corner_start_) return out_sign * ys - half_w;
  const double dx = xs - corner_center_x_;
  const double dy = ys - corner_center_y_;
  // Split at the corner-center line: annulus side before the turn completes,
  // exit-leg side after. For the 90 degree corner the seams agree exactly.
  const bool annulus_side = (road_.corner_turn < 0.0) ? (ys >= corner_center_y_)
                                                      : (ys <= corner_center_y_);
  if (annulus_side) return std::hypot(dx, dy) - (road_.corner_radius + half_w);
  const double turn = road_.corner_turn;
  const double beta_end = ((turn < 0.0) ? kPi / 2.0 : -kPi / 2.0) + turn;
  const double exit_x = corner_center_x_ + road_.corner_radius * std::cos(beta_end);
  const double exit_y = corner_center_y_ + road_.corner_radius * std::sin(beta_end);
  const double hx = std::cos(turn);
  const double hy = std::sin(turn);
  const double lateral = -(xs - exit_x) * hy + (ys - exit_y) * hx;
  return out_sign * lateral - half_w;
}

std::array<double, 2> Terrain::outer_excess_gradient(double xs, double ys) const {
  const double out_sign = (road_.corner_turn < 0.0) ? 1.0 : -1.0;
  if (xs <= corner_start_) return {0.0, out_sign};
  const double dx = xs - corner_center_x_;
  const double dy = ys - corner_center_y_;
  const bool annulus_side = (road_.corner_turn < 0.0) ? (ys >= corner_center_y_)
                                                      : (ys <= corner_center_y_);
  if (annulus_side) {
    const double rho = std::hypot(dx, dy);
    if (rho <= 0.0) return {0.0, 0.0};
    return {dx / rho, dy / rho};
  }
  const double turn = road_.corner_turn;
  return {-out_sign * std::sin(turn), out_sign * std::cos(turn)};
}

double Terrain::elevation_at(double x, double y) const {
  double xs, ys;
  to_scenario_frame(x, y, xs, ys);
  const double base = profile_elevation(xs);
  if (base <= 0.0) return base;
  const double excess = outer_excess(xs, ys) - road_.embankment_setback;
  if (excess <= 0.0) return base;
  // The raised platform falls away past the outer edge, at most
  // embankment_drop and never below the field datum.
  const double drop = std::min({excess * tan_embank_, road_.embankment_drop, base});
  return base - drop;
}

std::array<double, 2> Terrain::surface_gradient(double x, double y) const {
  double xs, ys;
  to_scenario_frame(x, y, xs, ys);
  double gx = profile_slope(xs);
  double gy = 0.0;
  const double base = profile_elevation(xs);
  if (base > 0.0) {
    const double excess = outer_excess(xs, ys) - road_.embankment_setback;
    if (excess > 0.0) {
      const double face = excess * tan_embank_;
      // Active falloff branch, ties resolved in the order face, cap, datum.
      if (face <= road_.embankment_drop && face <= base) {
        const auto dgrad = outer_excess_gradient(xs, ys);
        gx -= tan_embank_ * dgrad[0];
        gy -= tan_embank_ * dgrad[1];
      } else if (road_.embankment_drop <= base) {
        // Constant-depth shelf: gradient of base alone.
      } else {
        // Clamped at the field datum: flat.
        gx = 0.0;
        gy = 0.0;
      }
    }
  }
  // Rotate the scenario-frame gradient back to world axes.
  return {gx * cos_yaw_ - gy * sin_yaw_, gx * sin_yaw_ + gy * cos_yaw_};
}

bool Terrain::on_road(double x, double y) const {
  double xs, ys;
  to_scenario_frame(x, y, xs, ys);

  const double half_w = road_.width / 2.0;

  // Approach lane and ramp footprint (the lane extends arbitrarily far back).
  if (xs <= corner_start_ && std::abs(ys) <= half_w) return true;

  // Corner annulus sector.
  const double dx = xs - corner_center_x_;
  const double dy = ys - corner_center_y_;
  const double rho = std::hypot(dx, dy);
  const double radius = road_.corner_radius;
  const double turn = road_.corner_turn;
  if (rho >= radius - half_w && rho <= radius + half_w) {
    // Angle from the corner center; the arc starts pointing back at the lane.
    const double beta_start = (turn < 0.0) ? kPi / 2.0 : -kPi / 2.0;
    const double rel = wrap_to_pi(std::atan2(dy, dx) - beta_start);
    const bool in_sector = (turn < 0.0) ? (rel <= 1e-12 && rel >= turn - 1e-12)
                                        : (rel >= -1e-12 && rel <= turn + 1e-12);
    if (in_sector) return true;
  }

  // Exit leg.
  const double beta_end = ((turn < 0.0) ? kPi / 2.0 : -kPi / 2.0) + turn;
  const double exit_x = corner_center_x_ + radius * std::cos(beta_end);
  const double exit_y = corner_center_y_ + radius * std::sin(beta_end);
  const double hx = std::cos(turn);
  const double hy = std::sin(turn);
  const double qx = xs - exit_x;
  const double qy = ys - exit_y;
  const double along = qx * hx + qy * hy;
  const double lateral = -qx * hy + qy * hx;
  return along >= 0.0 && along <= road_.exit_length && std::abs(lateral) <= half_w;
}

}  // namespace osim
