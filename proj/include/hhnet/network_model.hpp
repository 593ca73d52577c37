#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "hhnet/channel_kinetics.hpp"

namespace hhnet {

/// One neuron's state: membrane voltage plus the four gate fractions.
/// Also reused as a plain 5-vector (means, deviations).
struct NeuronState {
  double v = 0.0;
  double m = 0.0;
  double n = 0.0;
  double h = 0.0;
  double y = 0.0;

  double component(int c) const;
  void set_component(int c, double value);
};

inline constexpr int kComponentCount = 5;
const char* component_name(int c);  // "v","m","n","h","y"

/// Squared Euclidean distance in R^5.
double squared_distance(const NeuronState& a, const NeuronState& b);

struct PopulationParams {
  double g_na = 0.0;  // mS/cm^3
  double g_k = 0.0;   // mS/cm^3
  double g_l = 0.0;   // mS/cm^3
  double v_na = 0.0;  // mV
  double v_k = 0.0;   // mV
  double v_l = 0.0;   // mV
  double i_ext = 0.0;
  RateSpec rates = RateSpec::hodgkin_huxley();
  NoiseSpec noise;

  static PopulationParams hodgkin_huxley(double i_ext = 25.0, double sigma = 0.0);

  void validate(bool require_leak = true) const;
};

/// Per ordered population pair (target alpha, source gamma): electrical
/// conductance, chemical conductance and chemical reversal potential.
struct CouplingSpec {
  std::vector<std::vector<double>> j_e;
  std::vector<std::vector<double>> j_ch;
  std::vector<std::vector<double>> v_rev;  // mV

  static CouplingSpec none(std::size_t populations = 1);
  static CouplingSpec single(double j_e, double j_ch = 0.0, double v_rev = 0.0);

  std::size_t population_count() const { return j_e.size(); }
  void validate(std::size_t populations) const;
};

/// Network state in structure-of-arrays layout. Populations occupy contiguous
/// index ranges. Each slot carries a label used both as its RNG stream id and
/// as its position in reduction order, so that relabeling neurons together
/// with their streams is an exact symmetry.
class NetworkState {
 public:
  NetworkState() = default;
  explicit NetworkState(const std::vector<std::size_t>& population_sizes);

  std::size_t size() const { return v.size(); }
  std::size_t population_count() const { return pop_begin_.empty() ? 0 : pop_begin_.size() - 1; }
  std::size_t population_of(std::size_t i) const;
  std::pair<std::size_t, std::size_t> population_range(std::size_t p) const;

  NeuronState neuron(std::size_t i) const { return {v[i], m[i], n[i], h[i], y[i]}; }
  void set_neuron(std::size_t i, const NeuronState& s);

  const std::vector<std::uint32_t>& labels() const { return label_; }
  void set_labels(std::vector<std::uint32_t> labels);

  /// Slots in label order, per population; reductions traverse this order.
  const std::vector<std::uint32_t>& reduction_order() const { return order_; }

  std::vector<double> v, m, n, h, y;
  double t = 0.0;

 private:
  std::vector<std::size_t> pop_begin_;
  std::vector<std::uint32_t> label_;
  std::vector<std::uint32_t> order_;
};

/// Per-population component-wise empirical means.
struct PopulationMeans {
  std::vector<NeuronState> by_population;
};

/// F(V,m,n,h) = I - g_K n^4 (V-V_K) - g_Na m^3 h (V-V_Na) - g_L (V-V_L), mV/ms.
double voltage_drift(double v, double m, double n, double h, const PopulationParams& p);

/// The same drift written as r - a v (no coupling). a >= g_L always.
struct VoltageAffine {
  double a;  // 1/ms
  double r;  // mV/ms
};
VoltageAffine voltage_drift_affine(double m, double n, double h, const PopulationParams& p);

/// Empirical means per population, accumulated with compensated summation in
/// label order so they are invariant under joint relabeling.
PopulationMeans population_means(const NetworkState& state);

/// Linear-in-V decomposition of the coupling drift on a neuron of population
/// alpha: drift = r - a V with a = sum_g (J_E + J_Ch ybar_g) and
/// r = sum_g (J_E Vbar_g + J_Ch ybar_g Vrev). Self-terms are included in the
/// means, matching the model's sums over all j.
struct CouplingTerms {
  double a;  // 1/ms
  double r;  // mV/ms
};
CouplingTerms coupling_terms(std::size_t target_population, const PopulationMeans& means,
                             const CouplingSpec& coupling);

/// R_max = max over gate corners of |I + g_Na V_Na r + g_K V_K s + g_L V_L
/// + sum_g J_Ch V_rev u_g|. The expression is affine, so the maximum of the
/// absolute value is attained at a corner of the unit box.
double r_max(const PopulationParams& p, const CouplingSpec& coupling,
             std::size_t population = 0);

/// A-priori voltage bound V*_t = 4 R_max / g_L + 2 V0max exp(-g_L t).
/// Requires g_L > 0.
double v_star(double t, double v0_max, const PopulationParams& p,
              const CouplingSpec& coupling, std::size_t population = 0);

}  // namespace hhnet
