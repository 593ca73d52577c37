#include "hhnet/reference_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace hhnet {

NeuronState hat_derivative(const NeuronState& s, const PopulationParams& params,
                           double j_ch, double v_rev) {
  NeuronState d;
  d.v = voltage_drift(s.v, s.m, s.n, s.h, params) - j_ch * s.y * (s.v - v_rev);
  const RateSpec& rates = params.rates;
  auto gate = [&](GateKind g, double u) {
    const RatePair r = gate_rates(g, s.v, rates);
    return r.rho * (1.0 - u) - r.zeta * u;
  };
  d.m = gate(GateKind::M, s.m);
  d.n = gate(GateKind::N, s.n);
  d.h = gate(GateKind::H, s.h);
  d.y = gate(GateKind::Y, s.y);
  return d;
}

namespace {

NeuronState axpy(const NeuronState& x, double a, const NeuronState& d) {
  return {x.v + a * d.v, x.m + a * d.m, x.n + a * d.n, x.h + a * d.h, x.y + a * d.y};
}

NeuronState rk4_step(const NeuronState& x, double dt, const PopulationParams& params,
                     double j_ch, double v_rev) {
  const NeuronState k1 = hat_derivative(x, params, j_ch, v_rev);
  const NeuronState k2 = hat_derivative(axpy(x, 0.5 * dt, k1), params, j_ch, v_rev);
  const NeuronState k3 = hat_derivative(axpy(x, 0.5 * dt, k2), params, j_ch, v_rev);
  const NeuronState k4 = hat_derivative(axpy(x, dt, k3), params, j_ch, v_rev);
  NeuronState out = x;
  const double w = dt / 6.0;
  out.v += w * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
  out.m += w * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
  out.n += w * (k1.n + 2.0 * k2.n + 2.0 * k3.n + k4.n);
  out.h += w * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h);
  out.y += w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
  return out;
}

}  // namespace

Trajectory hat_trajectory(const NeuronState& launch, const PopulationParams& params,
                          double j_ch, double v_rev, double t0, double t_end,
                          double dt) {
  StepConfig grid{dt, t_end - t0};
  const std::uint64_t steps = grid.step_count();
  Trajectory traj;
  traj.t.reserve(steps + 1);
  traj.x.reserve(steps + 1);
  traj.t.push_back(t0);
  traj.x.push_back(launch);
  NeuronState x = launch;
  for (std::uint64_t k = 0; k < steps; ++k) {
    x = rk4_step(x, dt, params, j_ch, v_rev);
    traj.t.push_back(t0 + static_cast<double>(k + 1) * dt);
    traj.x.push_back(x);
  }
  return traj;
}

Trajectory single_neuron_trajectory(const PopulationParams& params,
                                    const NeuronState& x0, double t_end, double dt) {
  return hat_trajectory(x0, params, 0.0, 0.0, 0.0, t_end, dt);
}

namespace {

double mean_squared_deviation(const std::vector<NeuronState>& neurons,
                              const NeuronState& hat) {
  double sum = 0.0;
  for (const NeuronState& s : neurons) {
    sum += squared_distance(s, hat);
  }
  return sum / static_cast<double>(neurons.size());
}

}  // namespace

double hat_deviation(const std::vector<double>& net_t,
                     const std::vector<std::vector<NeuronState>>& net_states,
                     const Trajectory& hat, double t1, double delta) {
  if (net_t.size() != net_states.size()) {
    throw std::invalid_argument("network trajectory shape mismatch");
  }
  double sup = 0.0;
  bool any = false;
  std::size_t j = 0;
  for (std::size_t k = 0; k < net_t.size(); ++k) {
    const double t = net_t[k];
    if (t < t1 - 1e-12 || t > t1 + delta + 1e-12) {
      continue;
    }
    while (j < hat.t.size() && hat.t[j] < t - 1e-9) {
      ++j;
    }
    if (j >= hat.t.size() || std::abs(hat.t[j] - t) > 1e-9) {
      throw std::invalid_argument("network and hat grids do not match in the window");
    }
    sup = std::max(sup, mean_squared_deviation(net_states[k], hat.x[j]));
    any = true;
  }
  if (!any) {
    throw std::invalid_argument("window contains no common grid points");
  }
  return sup;
}

HatDeviationTracker::HatDeviationTracker(Trajectory hat) : hat_(std::move(hat)) {}

void HatDeviationTracker::observe(std::uint64_t step, const NetworkState& state) {
  if (step >= hat_.t.size()) {
    throw std::invalid_argument("network run overruns the hat trajectory grid");
  }
  if (std::abs(hat_.t[step] - state.t) > 1e-9) {
    throw std::invalid_argument("network and hat grids do not match");
  }
  const NeuronState& hat = hat_.x[step];
  double sum = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    sum += squared_distance(state.neuron(i), hat);
  }
  sup_mean_sq_ = std::max(sup_mean_sq_, sum / static_cast<double>(state.size()));
}

}  // namespace hhnet
