#include "hhnet/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace hhnet {

NeuronState rest_state(const PopulationParams& params, double v_rest) {
  NeuronState s;
  s.v = v_rest;
  s.m = gate_equilibrium(GateKind::M, v_rest, params.rates);
  s.n = gate_equilibrium(GateKind::N, v_rest, params.rates);
  s.h = gate_equilibrium(GateKind::H, v_rest, params.rates);
  s.y = gate_equilibrium(GateKind::Y, v_rest, params.rates);
  return s;
}

NetworkState make_initial_state(const Network& network, const InitialLaw& law,
                                const GaussianStream& stream) {
  NetworkState state(network.sizes);
  const auto& labels = state.labels();
  if (const auto* box = std::get_if<UniformBoxLaw>(&law)) {
    if (!(box->v_max >= box->v_min)) {
      throw std::invalid_argument("uniform box needs v_max >= v_min");
    }
    const double width = box->v_max - box->v_min;
    for (std::size_t i = 0; i < state.size(); ++i) {
      const std::uint32_t l = labels[i];
      state.v[i] = box->v_min + width * stream.uniform(l, StreamChannel::InitV, 0);
      state.m[i] = stream.uniform(l, StreamChannel::InitM, 0);
      state.n[i] = stream.uniform(l, StreamChannel::InitN, 0);
      state.h[i] = stream.uniform(l, StreamChannel::InitH, 0);
      state.y[i] = stream.uniform(l, StreamChannel::InitY, 0);
    }
  } else if (const auto* rest = std::get_if<RestStateLaw>(&law)) {
    for (std::size_t p = 0; p < network.populations.size(); ++p) {
      const NeuronState s = rest_state(network.populations[p], rest->v_rest);
      const auto [lo, hi] = state.population_range(p);
      for (std::size_t i = lo; i < hi; ++i) {
        state.set_neuron(i, s);
      }
    }
  } else {
    const auto& explicit_law = std::get<ExplicitLaw>(law);
    if (explicit_law.states.size() != state.size()) {
      throw std::invalid_argument("explicit initial law must list one state per neuron");
    }
    for (std::size_t i = 0; i < state.size(); ++i) {
      state.set_neuron(i, explicit_law.states[i]);
    }
  }
  return state;
}

SimulationResult simulate(const Network& network, const StepConfig& cfg,
                          NetworkState state, NoiseSource& noise,
                          std::span<StateObserver* const> observers,
                          MeanProvider* mean_provider) {
  const std::uint64_t steps = cfg.step_count();
  EmpiricalMeanProvider empirical;
  MeanProvider& provider = mean_provider ? *mean_provider : empirical;

  const double t0 = state.t;
  SimulationResult result;
  for (StateObserver* obs : observers) {
    obs->observe(0, state);
  }
  for (std::uint64_t k = 0; k < steps; ++k) {
    const PopulationMeans means = provider.means(state, k, state.t);
    result.projections += network_step(state, network, cfg, noise, k, means);
    state.t = t0 + static_cast<double>(k + 1) * cfg.dt;
    for (StateObserver* obs : observers) {
      obs->observe(k + 1, state);
    }
  }
  result.steps = steps;
  result.final_state = std::move(state);
  return result;
}

void TrajectoryRecorder::observe(std::uint64_t step, const NetworkState& state) {
  if (stride_ == 0 || step % stride_ != 0) {
    return;
  }
  times.push_back(state.t);
  std::vector<NeuronState> snapshot(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    snapshot[i] = state.neuron(i);
  }
  states.push_back(std::move(snapshot));
}

SnapshotObserver::SnapshotObserver(std::vector<std::uint64_t> steps)
    : requested(std::move(steps)) {
  std::sort(requested.begin(), requested.end());
}

void SnapshotObserver::observe(std::uint64_t step, const NetworkState& state) {
  if (!std::binary_search(requested.begin(), requested.end(), step)) {
    return;
  }
  times.push_back(state.t);
  std::vector<NeuronState> snapshot(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    snapshot[i] = state.neuron(i);
  }
  states.push_back(std::move(snapshot));
}

VstarObserver::VstarObserver(const Network& network, double v0_max)
    : network_(network), v0_max_(v0_max) {}

void VstarObserver::observe(std::uint64_t, const NetworkState& state) {
  for (std::size_t p = 0; p < network_.populations.size(); ++p) {
    const double bound =
        v_star(state.t, v0_max_, network_.populations[p], network_.coupling, p);
    const auto [lo, hi] = state.population_range(p);
    for (std::size_t i = lo; i < hi; ++i) {
      worst_ratio_ = std::max(worst_ratio_, std::abs(state.v[i]) / bound);
    }
  }
}

}  // namespace hhnet
