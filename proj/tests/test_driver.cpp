#include "osim/driver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "osim/terrain.hpp"

namespace osim {
namespace {

Terrain slope_terrain() {
  return Terrain::build_scenario(Scenario::WithSlope, SlopeGeometry{}, RoadGeometry{});
}

Terrain flat_terrain() {
  return Terrain::build_scenario(Scenario::WithoutSlope, SlopeGeometry{}, RoadGeometry{});
}

ReferencePath straight_path(double x0, double x1) {
  ReferencePath path;
  const int n = static_cast<int>((x1 - x0) / 0.1);
  for (int i = 0; i <= n; ++i) {
    path.xs.push_back(x0 + 0.1 * i);
    path.ys.push_back(0.0);
    path.arc.push_back(0.1 * i);
  }
  return path;
}

// Polyline heading straight +y from the origin; a goal on it sits 90 degrees
// to the left of a vehicle facing +x.
ReferencePath leftward_path() {
  ReferencePath path;
  for (int i = 0; i <= 35; ++i) {
    path.xs.push_back(0.0);
    path.ys.push_back(0.1 * i);
    path.arc.push_back(0.1 * i);
  }
  return path;
}

TEST(ReferencePathShape, IdenticalPolylineForBothScenarios) {
  const ReferencePath slope = reference_path(slope_terrain());
  const ReferencePath flat = reference_path(flat_terrain());
  ASSERT_EQ(slope.size(), flat.size());
  for (std::size_t i = 0; i < slope.size(); ++i) {
    ASSERT_DOUBLE_EQ(slope.xs[i], flat.xs[i]);
    ASSERT_DOUBLE_EQ(slope.ys[i], flat.ys[i]);
  }
}

TEST(ReferencePathShape, DenseWithStrictlyIncreasingArc) {
  const ReferencePath path = reference_path(slope_terrain());
  ASSERT_GE(path.size(), 2u);
  EXPECT_EQ(path.arc.front(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double d = std::hypot(path.xs[i] - path.xs[i - 1], path.ys[i] - path.ys[i - 1]);
    ASSERT_GT(path.arc[i], path.arc[i - 1]);
    ASSERT_LE(d, 0.1 + 1e-9);
    ASSERT_NEAR(path.arc[i] - path.arc[i - 1], d, 1e-12);
  }
}

TEST(ReferencePathShape, PassesOverTheRampCrest) {
  const Terrain t = slope_terrain();
  const ReferencePath path = reference_path(t);
  double best = 1e9;
  for (std::size_t i = 0; i < path.size(); ++i) {
    best = std::min(best, std::hypot(path.xs[i] - t.crest_x(), path.ys[i]));
  }
  EXPECT_LT(best, 0.06);
}

TEST(ReferencePathShape, CornerArcMidpointOnCircle) {
  const Terrain t = slope_terrain();
  const ReferencePath path = reference_path(t);
  const auto cc = t.corner_center();
  const double radius = t.road().corner_radius;
  // Right turn from heading +x: the 45-degree point of the arc.
  const double mx = cc[0] + radius * std::cos(kPi / 4.0);
  const double my = cc[1] + radius * std::sin(kPi / 4.0);
  double best = 1e9;
  for (std::size_t i = 0; i < path.size(); ++i) {
    best = std::min(best, std::hypot(path.xs[i] - mx, path.ys[i] - my));
  }
  EXPECT_LT(best, 0.1);
}

TEST(PurePursuit, OnPathAlignedGivesZeroSteer) {
  const ReferencePath path = straight_path(0.0, 20.0);
  VehicleState s;
  s.x = 5.03;
  s.y = 0.0;
  s.psi = 0.0;
  const DriverParams p;
  EXPECT_EQ(pure_pursuit_steer(s, path, p, 1.34, 0.0, 0.01), 0.0);
}

TEST(PurePursuit, GoalLeftByNinetyDegreesHandValue) {
  const ReferencePath path = leftward_path();
  VehicleState s;  // at the origin facing +x, goal 3 m straight left
  DriverParams p;
  p.lookahead = 3.0;
  const double steer = pure_pursuit_steer(s, path, p, 1.34, 0.0, 10.0);
  EXPECT_NEAR(steer, std::atan(2.0 * 1.34 * std::sin(kPi / 2.0) / 3.0), 1e-9);
  EXPECT_NEAR(steer, 0.729, 1e-3);
}

TEST(PurePursuit, RateLimitBindsFromZero) {
  const ReferencePath path = leftward_path();
  VehicleState s;
  DriverParams p;
  p.lookahead = 3.0;
  p.steer_rate_max = 0.6;
  EXPECT_DOUBLE_EQ(pure_pursuit_steer(s, path, p, 1.34, 0.0, 0.001), 0.0006);
}

TEST(PurePursuit, AngleClampBinds) {
  const ReferencePath path = leftward_path();
  VehicleState s;
  DriverParams p;
  p.lookahead = 3.0;
  p.steer_max = 0.3;
  EXPECT_DOUBLE_EQ(pure_pursuit_steer(s, path, p, 1.34, 0.0, 10.0), 0.3);
}

TEST(PurePursuit, EmptyPathRejected) {
  const DriverParams p;
  EXPECT_THROW(pure_pursuit_steer(VehicleState{}, ReferencePath{}, p, 1.34, 0.0, 0.01),
               std::invalid_argument);
}

TEST(PurePursuit, NonPositiveDtRejected) {
  const ReferencePath path = straight_path(0.0, 20.0);
  const DriverParams p;
  EXPECT_THROW(pure_pursuit_steer(VehicleState{}, path, p, 1.34, 0.0, 0.0),
               std::invalid_argument);
}

TEST(PurePursuit, ClampAndRateLimitProperties) {
  const ReferencePath path = reference_path(slope_terrain());
  const DriverParams p;
  std::mt19937 rng(201);
  std::uniform_int_distribution<std::size_t> pick(0, path.size() - 2);
  std::uniform_real_distribution<double> off(-0.5, 0.5);
  std::uniform_real_distribution<double> dpsi(-0.5, 0.5);
  std::uniform_real_distribution<double> prev_d(-0.9, 0.9);
  std::uniform_real_distribution<double> dt_d(0.001, 0.05);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t k = pick(rng);
    const double heading =
        std::atan2(path.ys[k + 1] - path.ys[k], path.xs[k + 1] - path.xs[k]);
    VehicleState s;
    const double lat = off(rng);
    s.x = path.xs[k] - std::sin(heading) * lat;
    s.y = path.ys[k] + std::cos(heading) * lat;
    s.psi = heading + dpsi(rng);
    const double prev = prev_d(rng) * p.steer_max;
    const double dt = dt_d(rng);
    const double steer = pure_pursuit_steer(s, path, p, 1.34, prev, dt);
    ASSERT_LE(std::abs(steer), p.steer_max + 1e-15);
    ASSERT_LE(std::abs(steer - prev), p.steer_rate_max * dt + 1e-12);
  }
}

TEST(PurePursuit, MirrorSymmetryNegatesSteer) {
  const ReferencePath path = reference_path(slope_terrain());
  ReferencePath mirrored = path;
  for (double& y : mirrored.ys) y = -y;
  const DriverParams p;
  std::mt19937 rng(202);
  std::uniform_int_distribution<std::size_t> pick(0, path.size() - 2);
  std::uniform_real_distribution<double> off(-0.5, 0.5);
  std::uniform_real_distribution<double> dpsi(-0.5, 0.5);
  std::uniform_real_distribution<double> prev_d(-0.9, 0.9);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t k = pick(rng);
    const double heading =
        std::atan2(path.ys[k + 1] - path.ys[k], path.xs[k + 1] - path.xs[k]);
    VehicleState s;
    const double lat = off(rng);
    s.x = path.xs[k] - std::sin(heading) * lat;
    s.y = path.ys[k] + std::cos(heading) * lat;
    s.psi = heading + dpsi(rng);
    VehicleState m = s;
    m.y = -s.y;
    m.psi = -s.psi;
    const double prev = prev_d(rng) * p.steer_max;
    const double steer = pure_pursuit_steer(s, path, p, 1.34, prev, 0.02);
    const double steer_m = pure_pursuit_steer(m, mirrored, p, 1.34, -prev, 0.02);
    ASSERT_NEAR(steer_m, -steer, 1e-12);
  }
}

TEST(SpeedControl, HandValues) {
  DriverParams p;
  p.speed_target = 4.3;
  p.speed_gain = 2000.0;
  p.force_max = 3000.0;
  EXPECT_EQ(speed_control(4.3, p), 0.0);
  EXPECT_NEAR(speed_control(4.0, p), 600.0, 1e-9);
  EXPECT_EQ(speed_control(10.0, p), -3000.0);
}

TEST(SpeedControl, ZeroErrorFixedPoint) {
  const ReferencePath path = straight_path(0.0, 20.0);
  const DriverParams p;
  VehicleState s;
  s.x = 4.0;
  s.u = p.speed_target;
  EXPECT_EQ(pure_pursuit_steer(s, path, p, 1.34, 0.0, 0.001), 0.0);
  EXPECT_EQ(speed_control(s.u, p), 0.0);
}

TEST(DriverParams, ValidateRejectsBadValues) {
  DriverParams p;
  p.lookahead = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = DriverParams{};
  p.steer_max = kPi;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_NO_THROW(DriverParams{}.validate());
}

}  // namespace
}  // namespace osim
