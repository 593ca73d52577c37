#include "hhnet/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hhnet/parallel.hpp"

namespace hhnet {

namespace {

double interpolate(const std::vector<double>& t, const std::vector<double>& v,
                   double time) {
  if (t.empty()) {
    throw std::invalid_argument("empty mean-field curve");
  }
  if (time <= t.front()) return v.front();
  if (time >= t.back()) return v.back();
  const auto it = std::lower_bound(t.begin(), t.end(), time);
  const std::size_t j = static_cast<std::size_t>(it - t.begin());
  if (std::abs(t[j] - time) < 1e-12) {
    return v[j];
  }
  const double w = (time - t[j - 1]) / (t[j] - t[j - 1]);
  return v[j - 1] + w * (v[j] - v[j - 1]);
}

class MeanCurveRecorder final : public StateObserver {
 public:
  explicit MeanCurveRecorder(MeanFieldCurves& curves) : curves_(curves) {}

  void observe(std::uint64_t, const NetworkState& state) override {
    const PopulationMeans m = population_means(state);
    curves_.t.push_back(state.t);
    curves_.mean_v.push_back(m.by_population[0].v);
    curves_.mean_y.push_back(m.by_population[0].y);
  }

 private:
  MeanFieldCurves& curves_;
};

std::vector<std::uint64_t> steps_for_times(const StepConfig& step,
                                           std::span<const double> times) {
  std::vector<std::uint64_t> out;
  for (double time : times) {
    const double k = time / step.dt;
    const double rounded = std::round(k);
    if (std::abs(k - rounded) > 1e-6) {
      throw std::invalid_argument("capture time is not on the step grid");
    }
    out.push_back(static_cast<std::uint64_t>(rounded));
  }
  return out;
}

}  // namespace

double MeanFieldCurves::v_at(double time) const { return interpolate(t, mean_v, time); }
double MeanFieldCurves::y_at(double time) const { return interpolate(t, mean_y, time); }

MeanFieldBuild build_mean_field(const PopulationParams& params,
                                const CouplingSpec& coupling, const StepConfig& step,
                                std::size_t n_ref, std::uint64_t seed,
                                const InitialLaw& init,
                                std::span<const double> snapshot_times) {
  const Network network = Network::single(n_ref, params, coupling);
  network.validate();
  const GaussianStream stream(seed, kCurveReplica);
  NetworkState state = make_initial_state(network, init, stream);

  MeanFieldBuild build;
  build.curves.n_ref = n_ref;
  build.curves.seed = seed;
  MeanCurveRecorder recorder(build.curves);
  SnapshotObserver snapshots(steps_for_times(step, snapshot_times));

  ContractNoise noise(seed, kCurveReplica);
  StateObserver* observers[] = {&recorder, &snapshots};
  simulate(network, step, std::move(state), noise, observers);

  build.sample.times = std::move(snapshots.times);
  build.sample.states = std::move(snapshots.states);
  return build;
}

CoupledResult coupled_copies(const MeanFieldCurves& curves,
                             const PopulationParams& params,
                             const CouplingSpec& coupling, const StepConfig& step,
                             std::size_t n, std::uint64_t seed, std::uint64_t replica,
                             const InitialLaw& init,
                             std::span<const double> capture_times, double v0_max) {
  if (!curves.t.empty() && curves.t.back() + 1e-9 < step.t_end) {
    throw std::invalid_argument("mean-field curves do not cover the run horizon");
  }
  const Network network = Network::single(n, params, coupling);
  network.validate();
  const std::uint64_t steps = step.step_count();

  const GaussianStream stream(seed, replica);
  NetworkState particle = make_initial_state(network, init, stream);
  NetworkState limit = particle;

  ContractNoise particle_noise(seed, replica);
  ContractNoise limit_noise(seed, replica);
  CurveMeanProvider limit_means(curves);

  const std::vector<std::uint64_t> capture_steps = steps_for_times(step, capture_times);

  CoupledResult result;
  result.per_neuron_sup_sq.assign(n, 0.0);

  const double bound_const = 4.0 * r_max(params, coupling, 0) / params.g_l;
  auto track = [&](std::uint64_t k) {
    for (std::size_t i = 0; i < n; ++i) {
      result.per_neuron_sup_sq[i] =
          std::max(result.per_neuron_sup_sq[i],
                   squared_distance(particle.neuron(i), limit.neuron(i)));
    }
    const double bound = bound_const + 2.0 * v0_max * std::exp(-params.g_l * limit.t);
    for (std::size_t i = 0; i < n; ++i) {
      result.limit_bound_ratio =
          std::max(result.limit_bound_ratio, std::abs(limit.v[i]) / bound);
    }
    if (std::binary_search(capture_steps.begin(), capture_steps.end(), k)) {
      result.capture_times.push_back(particle.t);
      std::vector<NeuronState> snap(n);
      for (std::size_t i = 0; i < n; ++i) {
        snap[i] = particle.neuron(i);
      }
      result.particle_states.push_back(std::move(snap));
    }
  };

  track(0);
  for (std::uint64_t k = 0; k < steps; ++k) {
    const PopulationMeans empirical = population_means(particle);
    network_step(particle, network, step, particle_noise, k, empirical);
    const PopulationMeans curve_means = limit_means.means(limit, k, limit.t);
    result.limit_projections +=
        network_step(limit, network, step, limit_noise, k, curve_means);
    particle.t = static_cast<double>(k + 1) * step.dt;
    limit.t = particle.t;
    track(k + 1);
  }

  double total = 0.0;
  for (double d : result.per_neuron_sup_sq) {
    total += d;
  }
  result.mean_sup_sq = total / static_cast<double>(n);
  return result;
}

ChaosFit chaos_rate_fit(const MeanFieldBuild& build, const PopulationParams& params,
                        const CouplingSpec& coupling, const StepConfig& step,
                        std::uint64_t seed, const InitialLaw& init,
                        const ChaosStudyConfig& study) {
  if (study.ladder.size() < 3) {
    throw std::invalid_argument("chaos ladder needs at least 3 sizes");
  }
  if (study.replicas == 0) {
    throw std::invalid_argument("chaos study needs at least one replica");
  }
  const std::size_t sizes = study.ladder.size();
  const std::size_t w2_replicas = std::min(study.w2_replicas, study.replicas);
  const std::size_t n_times = build.sample.times.size();

  struct Cell {
    double coupled = 0.0;
    std::vector<double> w2;  // per time, only for the first w2_replicas
  };
  std::vector<Cell> cells(sizes * study.replicas);

  parallel_for_index(cells.size(), study.workers, [&](std::size_t index) {
    const std::size_t size_index = index / study.replicas;
    const std::size_t replica = index % study.replicas;
    const std::size_t n = study.ladder[size_index];
    const bool want_w2 = replica < w2_replicas && n_times > 0;

    const CoupledResult run = coupled_copies(
        build.curves, params, coupling, step, n, seed, replica, init,
        want_w2 ? std::span<const double>(build.sample.times) : std::span<const double>{});

    Cell cell;
    cell.coupled = run.mean_sup_sq;
    if (want_w2) {
      cell.w2.resize(n_times);
      for (std::size_t j = 0; j < n_times; ++j) {
        const auto& reference = build.sample.states[j];
        // Evenly strided equal-size subsample of the reference empirical law.
        std::vector<NeuronState> sub(n);
        for (std::size_t k = 0; k < n; ++k) {
          sub[k] = reference[k * reference.size() / n];
        }
        cell.w2[j] = wasserstein2_squared(run.particle_states[j], sub, n);
      }
    }
    cells[index] = std::move(cell);
  });

  ChaosFit fit;
  fit.ladder = study.ladder;
  fit.times = build.sample.times;
  fit.coupled_error.resize(sizes);
  fit.w2_mean.assign(sizes, 0.0);
  fit.w2_by_time.assign(sizes, std::vector<double>(n_times, 0.0));
  for (std::size_t s = 0; s < sizes; ++s) {
    double coupled = 0.0;
    for (std::size_t r = 0; r < study.replicas; ++r) {
      coupled += cells[s * study.replicas + r].coupled;
    }
    fit.coupled_error[s] = coupled / static_cast<double>(study.replicas);
    if (w2_replicas > 0 && n_times > 0) {
      for (std::size_t j = 0; j < n_times; ++j) {
        double sum = 0.0;
        for (std::size_t r = 0; r < w2_replicas; ++r) {
          sum += cells[s * study.replicas + r].w2[j];
        }
        fit.w2_by_time[s][j] = sum / static_cast<double>(w2_replicas);
      }
      double pooled = 0.0;
      for (double w : fit.w2_by_time[s]) {
        pooled += w;
      }
      fit.w2_mean[s] = pooled / static_cast<double>(n_times);
    }
  }

  auto log_fit = [&](const std::vector<double>& errors) {
    const double lo = *std::min_element(errors.begin(), errors.end());
    const double hi = *std::max_element(errors.begin(), errors.end());
    if (!(lo > 0.0) || lo == hi) {
      throw std::invalid_argument("rate fit unavailable: degenerate errors");
    }
    std::vector<double> xs, ys;
    for (std::size_t s = 0; s < sizes; ++s) {
      xs.push_back(std::log(static_cast<double>(study.ladder[s])));
      ys.push_back(std::log(errors[s]));
    }
    return fit_line(xs, ys);
  };
  fit.coupled_fit = log_fit(fit.coupled_error);
  if (w2_replicas > 0 && n_times > 0) {
    fit.w2_fit = log_fit(fit.w2_mean);
  }
  return fit;
}

}  // namespace hhnet
