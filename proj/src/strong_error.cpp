#include "hhnet/strong_error.hpp"

#include <cmath>
#include <stdexcept>

#include "hhnet/parallel.hpp"

namespace hhnet {

namespace {

struct PathAccumulator {
  std::vector<double> squared_error;  // per level, summed over neurons
  std::vector<std::uint64_t> projections;
};

bool network_is_noiseless(const Network& net) {
  for (const auto& p : net.populations) {
    if (p.noise.sigma != 0.0) {
      return false;
    }
  }
  return true;
}

}  // namespace

StrongErrorResult strong_error_study(const StrongErrorConfig& cfg) {
  if (cfg.levels < 3) {
    throw std::invalid_argument("strong error study needs at least 3 levels");
  }
  if (cfg.paths == 0) {
    throw std::invalid_argument("strong error study needs at least one path");
  }
  const int finest_divisor = 1 << (cfg.levels - 1);
  if (cfg.reference_refinement % finest_divisor != 0 ||
      cfg.reference_refinement <= finest_divisor) {
    throw std::invalid_argument(
        "reference refinement must be a multiple of the finest ladder level");
  }
  cfg.network.validate();

  const std::size_t n = cfg.network.neuron_count();
  const double dt_ref = cfg.coarsest_dt / cfg.reference_refinement;

  std::vector<PathAccumulator> per_path(cfg.paths);
  parallel_for_index(cfg.paths, cfg.workers, [&](std::size_t path) {
    const GaussianStream stream(cfg.seed, path);
    const NetworkState initial = make_initial_state(cfg.network, cfg.init, stream);

    BrownianLadderNoise reference_noise(cfg.seed, path, 1);
    const StepConfig ref_cfg{dt_ref, cfg.t_end, cfg.scheme};
    const SimulationResult reference =
        simulate(cfg.network, ref_cfg, initial, reference_noise);

    PathAccumulator acc;
    acc.squared_error.resize(cfg.levels, 0.0);
    acc.projections.resize(cfg.levels, 0);
    for (int level = 0; level < cfg.levels; ++level) {
      const std::uint32_t ratio =
          static_cast<std::uint32_t>(cfg.reference_refinement >> level);
      BrownianLadderNoise noise(cfg.seed, path, ratio);
      const StepConfig level_cfg{cfg.coarsest_dt / (1 << level), cfg.t_end, cfg.scheme};
      const SimulationResult run = simulate(cfg.network, level_cfg, initial, noise);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += squared_distance(run.final_state.neuron(i),
                                reference.final_state.neuron(i));
      }
      acc.squared_error[level] = sum;
      acc.projections[level] = run.projections.total();
    }
    per_path[path] = std::move(acc);
  });

  StrongErrorResult result;
  result.levels.resize(cfg.levels);
  for (int level = 0; level < cfg.levels; ++level) {
    double total_sq = 0.0;
    std::uint64_t proj = 0;
    for (const auto& acc : per_path) {
      total_sq += acc.squared_error[level];
      proj += acc.projections[level];
    }
    StrongErrorLevel& out = result.levels[level];
    out.dt = cfg.coarsest_dt / (1 << level);
    out.rms_error = std::sqrt(total_sq / (static_cast<double>(cfg.paths) * n));
    const StepConfig level_cfg{out.dt, cfg.t_end, cfg.scheme};
    out.gate_steps = level_cfg.step_count() * n * kGateCount * cfg.paths;
    out.projections = proj;
    out.projection_frequency =
        static_cast<double>(proj) / static_cast<double>(out.gate_steps);
  }

  if (!network_is_noiseless(cfg.network)) {
    bool fit_ok = true;
    std::vector<double> log_dt, log_rms;
    for (const auto& level : result.levels) {
      if (!(level.rms_error > 0.0)) {
        fit_ok = false;
        break;
      }
      log_dt.push_back(std::log2(level.dt));
      log_rms.push_back(std::log2(level.rms_error));
    }
    if (fit_ok) {
      result.order_fit = fit_line(log_dt, log_rms);
    }
  }
  return result;
}

}  // namespace hhnet
