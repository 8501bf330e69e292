#include "osim/sim.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "osim/dynamics.hpp"
#include "osim/terrain.hpp"

namespace osim {
namespace {

SimConfig make_config(Scenario scenario) {
  SimConfig c;
  c.scenario = scenario;
  return c;
}

const SimOutput& slope_output() {
  static const SimOutput out = run(make_config(Scenario::WithSlope));
  return out;
}

const SimOutput& flat_output() {
  static const SimOutput out = run(make_config(Scenario::WithoutSlope));
  return out;
}

TEST(RunLoop, SettledStateIsFixedPoint) {
  const Terrain t =
      Terrain::build_scenario(Scenario::WithoutSlope, SlopeGeometry{}, RoadGeometry{});
  const TractorParams p;
  const VehicleState s = static_equilibrium_state(0.0, 0.0, 0.0, t, p);
  const VehicleState next = rk4_step(s, Controls{}, t, p, 1e-3);
  EXPECT_NEAR(next.z, s.z, 1e-12);
  EXPECT_NEAR(next.theta, s.theta, 1e-12);
  EXPECT_NEAR(next.phi, s.phi, 1e-12);
  EXPECT_NEAR(next.z_dot, 0.0, 1e-9);
  EXPECT_NEAR(next.theta_dot, 0.0, 1e-9);
}

TEST(RunLoop, SlopeScenarioReproducesTheAccident) {
  const SimOutput& out = slope_output();
  EXPECT_EQ(out.status, TerminalStatus::RolledOver);
  ASSERT_EQ(out.events.size(), 3u);
  EXPECT_EQ(out.events[0].kind, EventKind::FrontAxleLiftoff);
  EXPECT_EQ(out.events[1].kind, EventKind::OffRoad);
  EXPECT_EQ(out.events[2].kind, EventKind::Rollover);
  EXPECT_LE(out.events[0].t, out.events[1].t);
  EXPECT_LE(out.events[1].t, out.events[2].t);
  // Rollover is terminal: nothing is recorded after it.
  EXPECT_DOUBLE_EQ(out.t.back(), out.events[2].t);
}

TEST(RunLoop, FlatScenarioCompletesInContact) {
  const SimOutput& out = flat_output();
  EXPECT_EQ(out.status, TerminalStatus::Completed);
  EXPECT_TRUE(out.events.empty());
  double min_front = 1e18;
  for (std::size_t i = 0; i < out.size(); ++i) {
    min_front = std::min(min_front, out.fz_fl[i] + out.fz_fr[i]);
  }
  EXPECT_GT(min_front, 0.0);
}

TEST(RunLoop, ChannelsShareOneTimeGrid) {
  const SimOutput& out = slope_output();
  const std::size_t n = out.size();
  ASSERT_GT(n, 1000u);
  for (const auto* ch :
       {&out.x, &out.y, &out.psi, &out.u, &out.v, &out.r, &out.z, &out.theta, &out.phi,
        &out.steer, &out.fz_fl, &out.fz_fr, &out.fz_rl, &out.fz_rr, &out.fy_front,
        &out.fy_rear, &out.elev_front, &out.ltr}) {
    ASSERT_EQ(ch->size(), n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    ASSERT_TRUE(std::isfinite(out.z[i]));
    ASSERT_TRUE(std::isfinite(out.phi[i]));
    ASSERT_NEAR(out.t[i], static_cast<double>(i) * 1e-3, 1e-9);
  }
}

TEST(RunLoop, DeterministicChannelData) {
  const SimOutput a = run(make_config(Scenario::WithSlope));
  const SimOutput b = run(make_config(Scenario::WithSlope));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a.x[i], b.x[i]);
    ASSERT_EQ(a.y[i], b.y[i]);
    ASSERT_EQ(a.phi[i], b.phi[i]);
    ASSERT_EQ(a.fz_fl[i], b.fz_fl[i]);
    ASSERT_EQ(a.ltr[i], b.ltr[i]);
  }
}

TEST(RunLoop, SlowSlopeTraversalCompletes) {
  SimConfig c = make_config(Scenario::WithSlope);
  c.driver.speed_target = 0.5;
  const SimOutput out = run(c);
  EXPECT_EQ(out.status, TerminalStatus::Completed);
  for (const Event& e : out.events) EXPECT_NE(e.kind, EventKind::Rollover);
}

TEST(RunLoop, InvalidConfigRejected) {
  SimConfig c;
  c.dt = 0.02;
  EXPECT_THROW(run(c), std::invalid_argument);
}

TEST(EventDetection, ReplayMatchesLiveEvents) {
  const SimConfig c = make_config(Scenario::WithSlope);
  const Terrain t = Terrain::build_scenario(c.scenario, c.slope, c.road);
  const SimOutput& out = slope_output();
  const std::vector<Event> replay =
      detect_events(out, t, c.tractor, c.liftoff_debounce, c.liftoff_force_eps);
  ASSERT_EQ(replay.size(), out.events.size());
  for (std::size_t i = 0; i < replay.size(); ++i) {
    EXPECT_EQ(replay[i].kind, out.events[i].kind);
    EXPECT_DOUBLE_EQ(replay[i].t, out.events[i].t);
  }
}

class DetectorFeed : public ::testing::Test {
 protected:
  DetectorFeed()
      : terrain_(Terrain::build_scenario(Scenario::WithoutSlope, SlopeGeometry{},
                                         RoadGeometry{})),
        state_(static_equilibrium_state(0.0, 0.0, 0.0, terrain_, params_)) {}

  WheelLoads loaded() const { return WheelLoads{2400.0, 2400.0, 2500.0, 2500.0}; }
  WheelLoads front_light() const { return WheelLoads{0.0, 0.0, 2500.0, 2500.0}; }

  TractorParams params_;
  Terrain terrain_;
  VehicleState state_;
  std::vector<Event> events_;
};

TEST_F(DetectorFeed, AllPositiveFrontLoadNoLiftoff) {
  EventDetector det(terrain_, params_, 0.01, 1.0);
  for (int k = 0; k < 100; ++k) {
    EXPECT_FALSE(det.feed(k * 1e-3, state_, loaded(), events_));
  }
  EXPECT_TRUE(events_.empty());
}

TEST_F(DetectorFeed, SingleLowSampleIsDebouncedAway) {
  EventDetector det(terrain_, params_, 0.01, 1.0);
  det.feed(0.0, state_, loaded(), events_);
  det.feed(0.001, state_, front_light(), events_);
  for (int k = 2; k < 50; ++k) det.feed(k * 1e-3, state_, loaded(), events_);
  EXPECT_TRUE(events_.empty());
}

TEST_F(DetectorFeed, SustainedLiftoffFiresAtRunStart) {
  EventDetector det(terrain_, params_, 0.01, 1.0);
  det.feed(0.0, state_, loaded(), events_);
  for (int k = 1; k <= 20; ++k) det.feed(k * 1e-3, state_, front_light(), events_);
  ASSERT_EQ(events_.size(), 1u);
  EXPECT_EQ(events_[0].kind, EventKind::FrontAxleLiftoff);
  // Debounce confirms the event but stamps it where the low run began.
  EXPECT_DOUBLE_EQ(events_[0].t, 0.001);
}

TEST_F(DetectorFeed, RolloverFiresAtFirstCrossingAndTerminates) {
  EventDetector det(terrain_, params_, 0.01, 1.0);
  const double tip = params_.tip_angle();
  bool terminal = false;
  double fired_t = -1.0;
  for (int k = 0; k < 2000; ++k) {
    VehicleState s = state_;
    s.phi = 5e-4 * k;  // ramps past the tip angle
    terminal = det.feed(k * 1e-3, s, loaded(), events_);
    if (terminal) {
      fired_t = k * 1e-3;
      break;
    }
  }
  ASSERT_TRUE(terminal);
  ASSERT_FALSE(events_.empty());
  const Event& rollover = events_.back();
  EXPECT_EQ(rollover.kind, EventKind::Rollover);
  EXPECT_DOUBLE_EQ(rollover.t, fired_t);
  EXPECT_GT(5e-4 * (fired_t / 1e-3), tip);
  EXPECT_LE(5e-4 * (fired_t / 1e-3 - 1.0), tip);
}

TEST_F(DetectorFeed, OffRoadFiresWhenAWheelLeavesThePolygon) {
  EventDetector det(terrain_, params_, 0.01, 1.0);
  VehicleState s = state_;
  s.y = 0.0;
  det.feed(0.0, s, loaded(), events_);
  EXPECT_TRUE(events_.empty());
  s.y = 1.2;  // left wheels now past the lane edge at y = 1.5
  det.feed(0.001, s, loaded(), events_);
  ASSERT_EQ(events_.size(), 1u);
  EXPECT_EQ(events_[0].kind, EventKind::OffRoad);
}

TEST(Sweep, SingleCellMatchesIndividualRun) {
  const SimConfig base;
  const StabilityMap map = sweep(base, {4.3}, {deg2rad(19.0)}, 1);
  ASSERT_EQ(map.cells.size(), 1u);
  const SweepCell& cell = map.cell(0, 0);
  const SimOutput& direct = slope_output();
  EXPECT_EQ(cell.status, TerminalStatus::RolledOver);
  ASSERT_TRUE(cell.t_liftoff.has_value());
  ASSERT_TRUE(cell.t_offroad.has_value());
  ASSERT_TRUE(cell.t_rollover.has_value());
  EXPECT_DOUBLE_EQ(*cell.t_liftoff, direct.events[0].t);
  EXPECT_DOUBLE_EQ(*cell.t_offroad, direct.events[1].t);
  EXPECT_DOUBLE_EQ(*cell.t_rollover, direct.events[2].t);
}

TEST(Sweep, ZeroGradientCellReducesToFlatScenario) {
  const SimConfig base;
  const StabilityMap map = sweep(base, {4.3}, {0.0}, 1);
  const SweepCell& cell = map.cell(0, 0);
  EXPECT_EQ(cell.status, TerminalStatus::Completed);
  EXPECT_FALSE(cell.t_liftoff.has_value());
  EXPECT_FALSE(cell.t_rollover.has_value());
}

TEST(Sweep, CellsOrderedGradientMajor) {
  const SimConfig base;
  SimConfig quick = base;
  quick.t_end = 0.5;
  const std::vector<double> speeds{1.0, 2.0};
  const std::vector<double> gradients{0.0, deg2rad(19.0)};
  const StabilityMap map = sweep(quick, speeds, gradients, 2);
  ASSERT_EQ(map.cells.size(), 4u);
  for (std::size_t gi = 0; gi < gradients.size(); ++gi) {
    for (std::size_t si = 0; si < speeds.size(); ++si) {
      const SweepCell& cell = map.cell(gi, si);
      EXPECT_DOUBLE_EQ(cell.speed, speeds[si]);
      EXPECT_DOUBLE_EQ(cell.gradient, gradients[gi]);
    }
  }
}

TEST(Sweep, EmptyGridRejected) {
  EXPECT_THROW(sweep(SimConfig{}, {}, {0.0}, 1), std::invalid_argument);
  EXPECT_THROW(sweep(SimConfig{}, {1.0}, {}, 1), std::invalid_argument);
}

}  // namespace
}  // namespace osim
