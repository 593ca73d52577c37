#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hhnet/simulate.hpp"

namespace hhnet {

/// Population (1/N) empirical variance via the corrected two-pass algorithm;
/// exactly 0 for constant input. Throws on empty input.
double empirical_variance(std::span<const double> values);

/// One replica's per-grid-time component statistics across all neurons.
/// Components are indexed v,m,n,h,y = 0..4.
struct SeriesStats {
  std::uint64_t replica_id = 0;
  std::vector<double> t;
  std::vector<std::array<double, kComponentCount>> mean;
  std::vector<std::array<double, kComponentCount>> var;
};

/// Replica-averaged statistics. Aggregation runs in replica-id order, so the
/// result does not depend on the order replicas were produced in.
struct EnsembleStats {
  std::vector<double> t;
  std::vector<std::array<double, kComponentCount>> mean;
  std::vector<std::array<double, kComponentCount>> var;
  std::size_t replica_count = 0;
};

EnsembleStats dissipation_curves(std::vector<SeriesStats> replicas);

/// Records SeriesStats along a run (thinned by stride).
class StatsRecorder final : public StateObserver {
 public:
  explicit StatsRecorder(std::uint64_t replica_id, std::uint64_t stride = 1)
      : stride_(stride) {
    series.replica_id = replica_id;
  }

  void observe(std::uint64_t step, const NetworkState& state) override;

  SeriesStats series;

 private:
  std::uint64_t stride_;
};

struct PlateauRate {
  double plateau = 0.0;
  std::optional<double> half_time;  // absent when the series never dissipates
};

/// plateau: time-average over the trailing `tail_window` of the series.
/// half_time: first grid time at or after the series' first global maximum
/// where the value is <= (s[0] + plateau) / 2.
PlateauRate plateau_and_rate(std::span<const double> t, std::span<const double> s,
                             double tail_window);

/// Upward threshold crossings with a refractory window (times in ms).
std::vector<double> detect_spikes(std::span<const double> t, std::span<const double> v,
                                  double threshold = 0.0, double refractory = 2.0);

/// Inter-spike-interval coefficient of variation over [t_lo, t_hi]; empty when
/// fewer than two spikes fall in the window.
std::optional<double> isi_coefficient_of_variation(std::span<const double> spikes,
                                                   double t_lo, double t_hi);

/// Minimum total cost of a perfect row-to-column matching of the n x n cost
/// matrix (row-major), by shortest augmenting paths with dual potentials.
double solve_assignment(std::span<const double> cost, std::size_t n);

/// Exact squared 2-Wasserstein distance between two equal-size empirical
/// measures in R^5: the optimal-assignment cost under squared Euclidean
/// ground cost, divided by N. Sizes above `cap` are refused.
double wasserstein2_squared(std::span<const NeuronState> a,
                            std::span<const NeuronState> b, std::size_t cap = 1024);

inline double wasserstein2(std::span<const NeuronState> a,
                           std::span<const NeuronState> b, std::size_t cap = 1024) {
  return std::sqrt(wasserstein2_squared(a, b, cap));
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double stderr_slope = 0.0;
};

/// Ordinary least squares y ~ slope x + intercept. Throws with fewer than two
/// points or a degenerate (constant) x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace hhnet
