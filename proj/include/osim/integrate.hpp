#pragma once

namespace osim {

// Classical fourth-order Runge-Kutta step for any state type supporting
// state + state and state * double. The derivative callable is evaluated with
// controls held fixed across the step.
template <typename State, typename Deriv>
State rk4_step(const State& state, double t, double dt, Deriv&& deriv) {
  const State k1 = deriv(state, t);
  const State k2 = deriv(state + k1 * (dt / 2.0), t + dt / 2.0);
  const State k3 = deriv(state + k2 * (dt / 2.0), t + dt / 2.0);
  const State k4 = deriv(state + k3 * dt, t + dt);
  return state + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

}  // namespace osim
