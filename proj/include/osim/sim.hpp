#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "osim/driver.hpp"
#include "osim/dynamics.hpp"
#include "osim/integrate.hpp"
#include "osim/terrain.hpp"
#include "osim/tire.hpp"

namespace osim {

enum class TerminalStatus { Completed, RolledOver, Aborted };
enum class EventKind { FrontAxleLiftoff, OffRoad, Rollover };

const char* to_string(TerminalStatus s);
const char* to_string(EventKind k);

struct Event {
  EventKind kind;
  double t = 0.0;
  VehicleState state;
};

struct SimConfig {
  Scenario scenario = Scenario::WithSlope;
  SlopeGeometry slope;
  RoadGeometry road;
  TractorParams tractor;
  DriverParams driver;
  double dt = 1.0e-3;              // s
  double t_end = 15.0;             // s
  double settle_time = 2.0;        // s of pre-run vertical settling
  double liftoff_debounce = 0.01;  // s the front axle must stay unloaded
  double liftoff_force_eps = 1.0;  // N

  void validate() const;
};

// Uniform-grid time series plus the event log. Channel vectors share one
// length; nothing is recorded past the terminal sample.
struct SimOutput {
  std::vector<double> t, x, y, psi, u, v, r, z, theta, phi, steer;
  std::vector<double> fz_fl, fz_fr, fz_rl, fz_rr, fy_front, fy_rear, elev_front, ltr;
  std::vector<Event> events;
  TerminalStatus status = TerminalStatus::Completed;

  std::size_t size() const { return t.size(); }
};

// One RK4 step of the closed vehicle dynamics with zero-order-hold controls.
VehicleState rk4_step(const VehicleState& s, const Controls& c, const Terrain& terrain,
                      const TractorParams& p, double dt);

// Incremental event scanner fed one recorded sample at a time. feed()
// returns true when the terminal rollover fires.
class EventDetector {
 public:
  EventDetector(const Terrain& terrain, const TractorParams& params, double debounce,
                double force_eps);

  bool feed(double t, const VehicleState& s, const WheelLoads& loads,
            std::vector<Event>& events);

 private:
  const Terrain& terrain_;
  const TractorParams& params_;
  double debounce_;
  double force_eps_;
  bool liftoff_fired_ = false;
  bool offroad_fired_ = false;
  bool rollover_fired_ = false;
  bool in_low_run_ = false;
  double low_run_start_t_ = 0.0;
  VehicleState low_run_start_state_;
};

// Replay of the event rules over a recorded run; equals the event list the
// run itself produced.
std::vector<Event> detect_events(const SimOutput& out, const Terrain& terrain,
                                 const TractorParams& params, double debounce,
                                 double force_eps);

SimOutput run(const SimConfig& config);

struct SweepCell {
  double speed = 0.0;         // m/s
  double gradient = 0.0;      // rad
  TerminalStatus status = TerminalStatus::Completed;
  std::optional<double> t_liftoff;
  std::optional<double> t_offroad;
  std::optional<double> t_rollover;
};

struct StabilityMap {
  std::vector<double> speeds;
  std::vector<double> gradients;
  std::vector<SweepCell> cells;  // gradient-major: cells[gi * speeds.size() + si]

  const SweepCell& cell(std::size_t gi, std::size_t si) const {
    return cells[gi * speeds.size() + si];
  }
};

// Runs every (speed, gradient) combination of the base config independently.
// A gradient below 1e-9 rad runs the flat scenario on the base course.
// Cells that fail to run are marked Aborted; the sweep itself never throws
// for per-cell failures. max_threads = 0 picks the hardware concurrency.
StabilityMap sweep(const SimConfig& base, const std::vector<double>& speeds,
                   const std::vector<double>& gradients, unsigned max_threads = 0);

}  // namespace osim
