#include "osim/sim.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace osim {

const char* to_string(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::Completed: return "Completed";
    case TerminalStatus::RolledOver: return "RolledOver";
    case TerminalStatus::Aborted: return "Aborted";
  }
  return "Unknown";
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::FrontAxleLiftoff: return "FrontAxleLiftoff";
    case EventKind::OffRoad: return "OffRoad";
    case EventKind::Rollover: return "Rollover";
  }
  return "Unknown";
}

void SimConfig::validate() const {
  if (!(dt > 0.0 && dt <= 0.01))
    throw std::invalid_argument("sim: dt must be in (0, 0.01] s");
  if (!(t_end > 0.0)) throw std::invalid_argument("sim: t_end must be > 0");
  if (!(settle_time >= 0.0)) throw std::invalid_argument("sim: settle_time must be >= 0");
  if (!(liftoff_debounce >= 0.0))
    throw std::invalid_argument("sim: liftoff_debounce must be >= 0");
  if (!(liftoff_force_eps >= 0.0))
    throw std::invalid_argument("sim: liftoff_force_eps must be >= 0");
  tractor.validate();
  driver.validate();
  if (!(road.width > tractor.track))
    throw std::invalid_argument("sim: road width must exceed the track width");
  Terrain::build_scenario(scenario, slope, road);
}

VehicleState rk4_step(const VehicleState& s, const Controls& c, const Terrain& terrain,
                      const TractorParams& p, double dt) {
  return rk4_step(s, 0.0, dt, [&](const VehicleState& state, double) {
    return state_derivative(state, c, terrain, p);
  });
}

EventDetector::EventDetector(const Terrain& terrain, const TractorParams& params,
                             double debounce, double force_eps)
    : terrain_(terrain), params_(params), debounce_(debounce), force_eps_(force_eps) {}

bool EventDetector::feed(double t, const VehicleState& s, const WheelLoads& loads,
                         std::vector<Event>& events) {
  if (!liftoff_fired_) {
    if (loads.front_sum() < force_eps_) {
      if (!in_low_run_) {
        in_low_run_ = true;
        low_run_start_t_ = t;
        low_run_start_state_ = s;
      }
      if (t - low_run_start_t_ >= debounce_ - 1e-12) {
        liftoff_fired_ = true;
        events.push_back({EventKind::FrontAxleLiftoff, low_run_start_t_, low_run_start_state_});
      }
    } else {
      in_low_run_ = false;
    }
  }

  if (!offroad_fired_) {
    for (const auto& contact : wheel_contact_positions(s, params_)) {
      if (!terrain_.on_road(contact[0], contact[1])) {
        offroad_fired_ = true;
        events.push_back({EventKind::OffRoad, t, s});
        break;
      }
    }
  }

  if (!rollover_fired_ && std::abs(s.phi) > params_.tip_angle()) {
    rollover_fired_ = true;
    events.push_back({EventKind::Rollover, t, s});
    return true;
  }
  return false;
}

std::vector<Event> detect_events(const SimOutput& out, const Terrain& terrain,
                                 const TractorParams& params, double debounce,
                                 double force_eps) {
  EventDetector detector(terrain, params, debounce, force_eps);
  std::vector<Event> events;
  for (std::size_t i = 0; i < out.size(); ++i) {
    VehicleState s;
    s.x = out.x[i];
    s.y = out.y[i];
    s.psi = out.psi[i];
    s.u = out.u[i];
    s.v = out.v[i];
    s.r = out.r[i];
    s.z = out.z[i];
    s.theta = out.theta[i];
    s.phi = out.phi[i];
    WheelLoads loads;
    loads.fl = out.fz_fl[i];
    loads.fr = out.fz_fr[i];
    loads.rl = out.fz_rl[i];
    loads.rr = out.fz_rr[i];
    if (detector.feed(out.t[i], s, loads, events)) break;
  }
  return events;
}

namespace {

void record_sample(SimOutput& out, double t, const VehicleState& s, const Controls& c,
                   const Terrain& terrain, const TractorParams& p, const WheelLoads& w) {
  out.t.push_back(t);
  out.x.push_back(s.x);
  out.y.push_back(s.y);
  out.psi.push_back(s.psi);
  out.u.push_back(s.u);
  out.v.push_back(s.v);
  out.r.push_back(s.r);
  out.z.push_back(s.z);
  out.theta.push_back(s.theta);
  out.phi.push_back(s.phi);
  out.steer.push_back(c.steer);
  out.fz_fl.push_back(w.fl);
  out.fz_fr.push_back(w.fr);
  out.fz_rl.push_back(w.rl);
  out.fz_rr.push_back(w.rr);

  out.fy_front.push_back(axle_cornering_force(s.alpha_front, w.front_sum(), p.tires));
  out.fy_rear.push_back(axle_cornering_force(s.alpha_rear, w.rear_sum(), p.tires));

  const double fx = s.x + p.cg_front_offset() * std::cos(s.psi);
  const double fy = s.y + p.cg_front_offset() * std::sin(s.psi);
  out.elev_front.push_back(terrain.elevation_at(fx, fy));
  out.ltr.push_back(load_transfer_ratio(w));
}

}  // namespace

SimOutput run(const SimConfig& config) {
  config.validate();
  const Terrain terrain = Terrain::build_scenario(config.scenario, config.slope, config.road);
  const ReferencePath path = reference_path(terrain);
  const TractorParams& p = config.tractor;

  const double heading = std::atan2(path.ys[1] - path.ys[0], path.xs[1] - path.xs[0]);
  VehicleState s =
      static_equilibrium_state(path.xs[0], path.ys[0], heading, terrain, p);

  // Vertical-only settling at rest so the springs start from their true
  // equilibrium; planar motion is masked out.
  const Controls at_rest{};
  const long settle_steps = std::lround(config.settle_time / config.dt);
  for (long k = 0; k < settle_steps; ++k) {
    s = rk4_step(s, 0.0, config.dt, [&](const VehicleState& state, double) {
      VehicleState d = state_derivative(state, at_rest, terrain, p);
      d.x = d.y = d.psi = d.u = d.v = d.r = 0.0;
      return d;
    });
  }
  s.u = config.driver.speed_target;

  SimOutput out;
  EventDetector detector(terrain, p, config.liftoff_debounce, config.liftoff_force_eps);
  const long n_steps = std::lround(config.t_end / config.dt);
  double prev_steer = 0.0;

  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    Controls c;
    c.steer = pure_pursuit_steer(s, path, config.driver, p.wheelbase(), prev_steer, config.dt);
    c.drive_force = speed_control(s.u, config.driver);
    prev_steer = c.steer;

    const WheelLoads loads = wheel_loads(contact_kinematics(s, terrain, p), p.tires);
    record_sample(out, t, s, c, terrain, p, loads);
    if (detector.feed(t, s, loads, out.events)) {
      out.status = TerminalStatus::RolledOver;
      break;
    }
    if (k >= n_steps) {
      out.status = TerminalStatus::Completed;
      break;
    }

    const VehicleState next = rk4_step(s, c, terrain, p, config.dt);
    if (!next.all_finite()) {
      out.status = TerminalStatus::Aborted;
      break;
    }
    s = next;
  }
  return out;
}

namespace {

SweepCell run_cell(const SimConfig& base, double speed, double gradient) {
  SweepCell cell;
  cell.speed = speed;
  cell.gradient = gradient;

  SimConfig cfg = base;
  cfg.driver.speed_target = speed;
  if (gradient < 1e-9) {
    // Flat case on the base course; the base slope still anchors the layout.
    cfg.scenario = Scenario::WithoutSlope;
  } else {
    cfg.scenario = Scenario::WithSlope;
    cfg.slope.gradient = gradient;
  }

  try {
    const SimOutput out = run(cfg);
    cell.status = out.status;
    for (const Event& e : out.events) {
      switch (e.kind) {
        case EventKind::FrontAxleLiftoff:
          if (!cell.t_liftoff) cell.t_liftoff = e.t;
          break;
        case EventKind::OffRoad:
          if (!cell.t_offroad) cell.t_offroad = e.t;
          break;
        case EventKind::Rollover:
          if (!cell.t_rollover) cell.t_rollover = e.t;
          break;
      }
    }
  } catch (const std::exception&) {
    cell.status = TerminalStatus::Aborted;
  }
  return cell;
}

}  // namespace

StabilityMap sweep(const SimConfig& base, const std::vector<double>& speeds,
                   const std::vector<double>& gradients, unsigned max_threads) {
  if (speeds.empty() || gradients.empty())
    throw std::invalid_argument("sweep: speed and gradient grids must be non-empty");

  StabilityMap map;
  map.speeds = speeds;
  map.gradients = gradients;
  map.cells.resize(speeds.size() * gradients.size());

  unsigned n_threads = max_threads != 0 ? max_threads : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(map.cells.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= map.cells.size()) return;
      const std::size_t gi = i / map.speeds.size();
      const std::size_t si = i % map.speeds.size();
      map.cells[i] = run_cell(base, map.speeds[si], map.gradients[gi]);
    }
  };

  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return map;
}

}  // namespace osim
