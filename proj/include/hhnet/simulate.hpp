#pragma once

#include <span>
#include <variant>
#include <vector>

#include "hhnet/epes.hpp"

namespace hhnet {

/// i.i.d. uniform on [v_min, v_max] x [0,1]^4, the default experiment law.
struct UniformBoxLaw {
  double v_min = -100.0;
  double v_max = 100.0;
};

/// V = -65 mV with every gate at its equilibrium fraction rho/(rho+zeta).
struct RestStateLaw {
  double v_rest = -65.0;
};

/// Explicit per-slot states.
struct ExplicitLaw {
  std::vector<NeuronState> states;
};

using InitialLaw = std::variant<UniformBoxLaw, RestStateLaw, ExplicitLaw>;

NeuronState rest_state(const PopulationParams& params, double v_rest = -65.0);

/// Draws the initial state; uniform-box draws are addressed per neuron label
/// so they are shared with any coupled run using the same streams.
NetworkState make_initial_state(const Network& network, const InitialLaw& law,
                                const GaussianStream& stream);

/// Grid-point callback; step 0 is the initial state.
class StateObserver {
 public:
  virtual ~StateObserver() = default;
  virtual void observe(std::uint64_t step, const NetworkState& state) = 0;
};

struct SimulationResult {
  NetworkState final_state;
  StepReport projections;
  std::uint64_t steps = 0;
};

/// Runs the configured scheme over the full grid. The observers see the state
/// at every grid point, including the initial one.
SimulationResult simulate(const Network& network, const StepConfig& cfg,
                          NetworkState state, NoiseSource& noise,
                          std::span<StateObserver* const> observers = {},
                          MeanProvider* mean_provider = nullptr);

/// Keeps thinned full-state snapshots in memory.
class TrajectoryRecorder final : public StateObserver {
 public:
  explicit TrajectoryRecorder(std::uint64_t stride = 1) : stride_(stride) {}

  void observe(std::uint64_t step, const NetworkState& state) override;

  std::vector<double> times;
  std::vector<std::vector<NeuronState>> states;

 private:
  std::uint64_t stride_;
};

/// Captures the state at selected step indices.
class SnapshotObserver final : public StateObserver {
 public:
  explicit SnapshotObserver(std::vector<std::uint64_t> steps);

  void observe(std::uint64_t step, const NetworkState& state) override;

  std::vector<std::uint64_t> requested;
  std::vector<double> times;
  std::vector<std::vector<NeuronState>> states;
};

/// Tracks the worst ratio |V_i(t)| / V*_t over a run (one population bound per
/// neuron). A run satisfies the a-priori bound iff worst_ratio() <= 1.
class VstarObserver final : public StateObserver {
 public:
  VstarObserver(const Network& network, double v0_max);

  void observe(std::uint64_t step, const NetworkState& state) override;

  double worst_ratio() const { return worst_ratio_; }

 private:
  const Network& network_;
  double v0_max_;
  double worst_ratio_ = 0.0;
};

}  // namespace hhnet
