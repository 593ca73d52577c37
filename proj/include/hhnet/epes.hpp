#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hhnet/network_model.hpp"
#include "hhnet/rng.hpp"

namespace hhnet {

enum class Scheme { Epes, EulerMaruyama };

struct StepConfig {
  double dt = 0.01;     // ms
  double t_end = 400.0; // ms
  Scheme scheme = Scheme::Epes;

  /// Number of grid steps M with t_end = M dt; throws if the grid rule is
  /// violated (dt <= 0 or t_end not a positive integer multiple of dt).
  std::uint64_t step_count() const;
};

/// Per-step projection counts, split by gate and clamp side.
struct StepReport {
  std::array<std::uint64_t, kGateCount> low{};
  std::array<std::uint64_t, kGateCount> high{};

  std::uint64_t total() const;
  StepReport& operator+=(const StepReport& other);
};

/// Brownian increments, one standard normal per (neuron label, gate, step).
class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual double normal(std::uint32_t label, int gate, std::uint64_t step) = 0;
};

/// Draws straight from the addressed stream contract.
class ContractNoise final : public NoiseSource {
 public:
  ContractNoise(std::uint64_t master_seed, std::uint64_t replica)
      : stream_(master_seed, replica) {}
  explicit ContractNoise(GaussianStream stream) : stream_(stream) {}

  double normal(std::uint32_t label, int gate, std::uint64_t step) override {
    return stream_.normal(label, static_cast<std::uint32_t>(gate), step);
  }

 private:
  GaussianStream stream_;
};

/// Coarse-level noise coupled to a shared fine path: the normal for coarse
/// step k is the rescaled sum of `ratio` fine-grid normals, so every level of
/// a step-size ladder is driven by the same Brownian motion.
class BrownianLadderNoise final : public NoiseSource {
 public:
  BrownianLadderNoise(std::uint64_t master_seed, std::uint64_t replica,
                      std::uint32_t ratio);

  double normal(std::uint32_t label, int gate, std::uint64_t step) override;

 private:
  GaussianStream fine_;
  std::uint32_t ratio_;
  double inv_sqrt_ratio_;
};

/// Exact solution at time dt of dV = (r - a V) dt with frozen coefficients:
/// V + (r - a V)(1 - e^{-a dt})/a, with a first-order branch when a dt < 1e-8
/// (covers a = 0). Requires a >= 0.
double exact_voltage_step(double v, double a, double r, double dt);

struct OuMoments {
  double mean;
  double variance;
};

/// Conditional mean and variance of the frozen-coefficient OU gate step:
/// mean = x e^{-k dt} + (rho/k)(1 - e^{-k dt}), var = s^2 (1 - e^{-2 k dt})/(2k)
/// with k = rho + zeta. Requires rho, zeta > 0 and sigma_x >= 0.
OuMoments ou_gate_moments(double x, double rho, double zeta, double sigma_x, double dt);

struct GateUpdate {
  double raw;        // the Gaussian sample x_check
  double projected;  // clamped to [0,1]
  bool clamped_low = false;
  bool clamped_high = false;
};

/// raw = mean + sqrt(variance) z; projected = clamp(raw, 0, 1).
GateUpdate ou_gate_step(const OuMoments& moments, double gaussian_draw);

/// Network layout plus per-population parameters and coupling.
struct Network {
  std::vector<std::size_t> sizes;
  std::vector<PopulationParams> populations;
  CouplingSpec coupling;

  std::size_t neuron_count() const;
  static Network single(std::size_t n, const PopulationParams& p,
                        const CouplingSpec& coupling);
  void validate(bool require_leak = true) const;
};

/// Source of the per-population means used by the coupling terms at each grid
/// time. The default is the empirical means of the evolving state; the
/// mean-field limit process substitutes precomputed curves.
class MeanProvider {
 public:
  virtual ~MeanProvider() = default;
  virtual PopulationMeans means(const NetworkState& state, std::uint64_t step,
                                double t) = 0;
};

class EmpiricalMeanProvider final : public MeanProvider {
 public:
  PopulationMeans means(const NetworkState& state, std::uint64_t, double) override {
    return population_means(state);
  }
};

/// Advances the state by one grid step. All coefficients are frozen at t_k:
/// voltages take the exact linear-ODE step, gates take the exact OU step with
/// rates at V_{t_k} and diffusion at (V_{t_k}, x_{t_k}), then project to [0,1].
StepReport network_step(NetworkState& state, const Network& network,
                        const StepConfig& cfg, NoiseSource& noise,
                        std::uint64_t step_index, const PopulationMeans& means);

/// Convenience: computes empirical means, then steps.
StepReport network_step(NetworkState& state, const Network& network,
                        const StepConfig& cfg, NoiseSource& noise,
                        std::uint64_t step_index);

}  // namespace hhnet
