#pragma once

#include <optional>

#include "hhnet/diagnostics.hpp"
#include "hhnet/simulate.hpp"

namespace hhnet {

/// Tabulated mean-field surrogate t -> (E[V_t], E[y_t]), linearly interpolated
/// between grid points, with the provenance of the reference run it came from.
struct MeanFieldCurves {
  std::vector<double> t;
  std::vector<double> mean_v;
  std::vector<double> mean_y;
  std::size_t n_ref = 0;
  std::uint64_t seed = 0;

  double v_at(double time) const;
  double y_at(double time) const;
};

/// States of the reference run captured at selected times, used as the
/// empirical stand-in for the limit law.
struct ReferenceSample {
  std::vector<double> times;
  std::vector<std::vector<NeuronState>> states;
};

struct MeanFieldBuild {
  MeanFieldCurves curves;
  ReferenceSample sample;
};

/// Replica id reserved for the surrogate reference run, distinct from every
/// coupled-cell replica.
inline constexpr std::uint64_t kCurveReplica = 0xFFFFFFFFull;

/// Runs one EPES simulation at size n_ref and tabulates the empirical V and y
/// means on the full grid, capturing reference states at `snapshot_times`.
MeanFieldBuild build_mean_field(const PopulationParams& params,
                                const CouplingSpec& coupling, const StepConfig& step,
                                std::size_t n_ref, std::uint64_t seed,
                                const InitialLaw& init,
                                std::span<const double> snapshot_times);

/// Coupling means taken from precomputed curves (single population).
class CurveMeanProvider final : public MeanProvider {
 public:
  explicit CurveMeanProvider(const MeanFieldCurves& curves) : curves_(curves) {}

  PopulationMeans means(const NetworkState&, std::uint64_t, double t) override {
    PopulationMeans m;
    m.by_population.push_back({curves_.v_at(t), 0.0, 0.0, 0.0, curves_.y_at(t)});
    return m;
  }

 private:
  const MeanFieldCurves& curves_;
};

/// Fixed per-step means (used to show the degenerate self-consistency of the
/// coupled construction).
class RecordedMeanProvider final : public MeanProvider {
 public:
  explicit RecordedMeanProvider(std::vector<PopulationMeans> by_step)
      : by_step_(std::move(by_step)) {}

  PopulationMeans means(const NetworkState&, std::uint64_t step, double) override {
    return by_step_.at(step);
  }

 private:
  std::vector<PopulationMeans> by_step_;
};

struct CoupledResult {
  std::vector<double> per_neuron_sup_sq;  // sup over the grid of |X_i - X~_i|^2
  double mean_sup_sq = 0.0;
  /// Particle-system snapshots at the requested capture times.
  std::vector<double> capture_times;
  std::vector<std::vector<NeuronState>> particle_states;
  /// Worst |V~_i(t)| / (4 Rmax/gL + 2 V0max e^{-gL t}) seen along the limit run.
  double limit_bound_ratio = 0.0;
  StepReport limit_projections;
};

/// Simulates the N-particle system and, with identical streams and identical
/// initial draws, N copies of the limit process whose coupling uses `curves`;
/// returns the per-neuron sup-over-grid squared deviation.
CoupledResult coupled_copies(const MeanFieldCurves& curves,
                             const PopulationParams& params,
                             const CouplingSpec& coupling, const StepConfig& step,
                             std::size_t n, std::uint64_t seed, std::uint64_t replica,
                             const InitialLaw& init,
                             std::span<const double> capture_times = {},
                             double v0_max = 100.0);

struct ChaosFit {
  std::vector<std::size_t> ladder;
  std::vector<double> coupled_error;            // per ladder size
  LineFit coupled_fit;                          // ln(error) vs ln(N)
  std::vector<double> w2_mean;                  // per ladder size, pooled over times
  std::vector<std::vector<double>> w2_by_time;  // [size][time]
  LineFit w2_fit;                               // ln(W2^2) vs ln(N)
  std::vector<double> times;
};

struct ChaosStudyConfig {
  std::vector<std::size_t> ladder{16, 64, 256, 1024};
  std::size_t replicas = 8;
  std::size_t w2_replicas = 3;
  std::size_t workers = 1;
};

/// Coupled-error and W2 convergence-rate fits over a ladder of network sizes.
/// W2 is measured against equal-size strided subsamples of the reference
/// sample at matched times.
ChaosFit chaos_rate_fit(const MeanFieldBuild& build, const PopulationParams& params,
                        const CouplingSpec& coupling, const StepConfig& step,
                        std::uint64_t seed, const InitialLaw& init,
                        const ChaosStudyConfig& study);

}  // namespace hhnet
