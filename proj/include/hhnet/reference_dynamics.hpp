#pragma once

#include <vector>

#include "hhnet/simulate.hpp"

namespace hhnet {

/// A single 5-component trajectory on a uniform grid.
struct Trajectory {
  std::vector<double> t;
  std::vector<NeuronState> x;
};

/// Right-hand side of the synchronized ("hat") ODE: the single-neuron voltage
/// drift minus the chemical term J_Ch y (V - V_rev); gates follow their
/// deterministic kinetics. The electrical term is absent, it cancels at the
/// mean.
NeuronState hat_derivative(const NeuronState& s, const PopulationParams& params,
                           double j_ch, double v_rev);

/// Classical fixed-step RK4 for the hat ODE, launched from `launch` at t0.
Trajectory hat_trajectory(const NeuronState& launch, const PopulationParams& params,
                          double j_ch, double v_rev, double t0, double t_end,
                          double dt);

/// Deterministic single-neuron trajectory (no synapses), RK4 on the same grid.
Trajectory single_neuron_trajectory(const PopulationParams& params,
                                    const NeuronState& x0, double t_end, double dt);

/// Sup over a window of the per-time mean over neurons of the squared
/// 5-component deviation from the hat trajectory. Both trajectories must share
/// the grid inside the window.
double hat_deviation(const std::vector<double>& net_t,
                     const std::vector<std::vector<NeuronState>>& net_states,
                     const Trajectory& hat, double t1, double delta);

/// Online form of the same measurement: feed it every grid state of a network
/// run whose grid matches the precomputed hat trajectory.
class HatDeviationTracker final : public StateObserver {
 public:
  explicit HatDeviationTracker(Trajectory hat);

  void observe(std::uint64_t step, const NetworkState& state) override;

  double sup_mean_sq() const { return sup_mean_sq_; }

 private:
  Trajectory hat_;
  double sup_mean_sq_ = 0.0;
};

}  // namespace hhnet
