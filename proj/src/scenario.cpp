#include "hhnet/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "hhnet/chaos.hpp"
#include "hhnet/csv.hpp"
#include "hhnet/diagnostics.hpp"
#include "hhnet/parallel.hpp"
#include "hhnet/reference_dynamics.hpp"
#include "hhnet/strong_error.hpp"

namespace hhnet {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kTrajectoryHeader = "t,neuron_id,v,m,n,h,y";
constexpr const char* kStatsHeader = "t,meanV,varV,varM,varN,varH,varY";
constexpr const char* kSpikesHeader = "neuron_id,t";
constexpr const char* kCurvesHeader = "t,meanV,meanY";
constexpr const char* kLevelsHeader =
    "dt,rms_error,projection_frequency,projections,gate_steps";

std::string hex_digest(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return std::string(buf);
}

class Outputs {
 public:
  Outputs(const fs::path& dir, bool overwrite) : dir_(dir), overwrite_(overwrite) {
    fs::create_directories(dir_);
  }

  fs::path reserve(const std::string& name) {
    const fs::path path = dir_ / name;
    if (!overwrite_ && fs::exists(path)) {
      throw std::runtime_error("output file already exists (use --overwrite): " +
                               path.string());
    }
    names_.push_back(name);
    return path;
  }

  std::vector<OutputRecord> records() const {
    std::vector<OutputRecord> out;
    for (const std::string& name : names_) {
      OutputRecord rec;
      rec.path = name;
      const fs::path path = dir_ / name;
      rec.bytes = fs::file_size(path);
      rec.digest = hex_digest(fnv1a64_file(path));
      out.push_back(std::move(rec));
    }
    return out;
  }

 private:
  fs::path dir_;
  bool overwrite_;
  std::vector<std::string> names_;
};

class CsvTrajectoryObserver final : public StateObserver {
 public:
  CsvTrajectoryObserver(CsvWriter& writer, std::uint64_t stride)
      : writer_(writer), stride_(stride) {}

  void observe(std::uint64_t step, const NetworkState& state) override {
    if (step % stride_ != 0) {
      return;
    }
    const auto& labels = state.labels();
    for (std::size_t i = 0; i < state.size(); ++i) {
      writer_.numeric_row(state.t, static_cast<std::uint64_t>(labels[i]), state.v[i],
                          state.m[i], state.n[i], state.h[i], state.y[i]);
    }
  }

 private:
  CsvWriter& writer_;
  std::uint64_t stride_;
};

class SpikeObserver final : public StateObserver {
 public:
  SpikeObserver(double threshold = 0.0, double refractory = 2.0)
      : threshold_(threshold), refractory_(refractory) {}

  void observe(std::uint64_t step, const NetworkState& state) override {
    if (step == 0) {
      prev_v_ = state.v;
      last_spike_.assign(state.size(), -1e300);
      return;
    }
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (prev_v_[i] < threshold_ && state.v[i] >= threshold_ &&
          state.t - last_spike_[i] >= refractory_) {
        events_.emplace_back(state.labels()[i], state.t);
        last_spike_[i] = state.t;
      }
    }
    prev_v_ = state.v;
  }

  void write(CsvWriter& writer) {
    std::sort(events_.begin(), events_.end());
    for (const auto& [neuron, t] : events_) {
      writer.numeric_row(static_cast<std::uint64_t>(neuron), t);
    }
  }

 private:
  double threshold_;
  double refractory_;
  std::vector<double> prev_v_;
  std::vector<double> last_spike_;
  std::vector<std::pair<std::uint32_t, double>> events_;
};

void write_stats_csv(CsvWriter& writer, const EnsembleStats& stats) {
  for (std::size_t k = 0; k < stats.t.size(); ++k) {
    writer.numeric_row(stats.t[k], stats.mean[k][0], stats.var[k][0], stats.var[k][1],
                       stats.var[k][2], stats.var[k][3], stats.var[k][4]);
  }
}

json stats_summary(const EnsembleStats& stats, double tail_window) {
  json summary;
  static const char* names[kComponentCount] = {"V", "m", "n", "h", "y"};
  for (int c = 0; c < kComponentCount; ++c) {
    std::vector<double> series(stats.t.size());
    for (std::size_t k = 0; k < stats.t.size(); ++k) {
      series[k] = stats.var[k][c];
    }
    const PlateauRate pr = plateau_and_rate(stats.t, series, tail_window);
    json entry;
    entry["plateau"] = pr.plateau;
    if (pr.half_time) {
      entry["half_time"] = *pr.half_time;
    } else {
      entry["half_time"] = nullptr;
    }
    summary[std::string("var") + names[c]] = std::move(entry);
  }
  return summary;
}

void run_trajectory_cell(const std::string& name, const RunConfig& cfg,
                         Outputs& outputs, CellResult& result) {
  const Network network = cfg.network();
  network.validate(false);
  const GaussianStream stream(cfg.seed, 0);
  NetworkState state = make_initial_state(network, cfg.initial_law, stream);
  ContractNoise noise(cfg.seed, 0);

  std::vector<StateObserver*> observers;
  std::optional<CsvWriter> traj_csv;
  std::optional<CsvTrajectoryObserver> traj_obs;
  if (cfg.output.trajectory) {
    traj_csv.emplace(outputs.reserve(name + "_trajectory.csv"), kTrajectoryHeader);
    traj_obs.emplace(*traj_csv, cfg.output.stride);
    observers.push_back(&*traj_obs);
  }
  std::optional<StatsRecorder> stats_obs;
  if (cfg.output.stats) {
    stats_obs.emplace(0, cfg.output.stride);
    observers.push_back(&*stats_obs);
  }
  std::optional<SpikeObserver> spike_obs;
  if (cfg.output.spikes) {
    spike_obs.emplace();
    observers.push_back(&*spike_obs);
  }

  const SimulationResult sim =
      simulate(network, cfg.step, std::move(state), noise, observers);
  result.steps = sim.steps;
  for (int g = 0; g < kGateCount; ++g) {
    result.projections_low += sim.projections.low[g];
    result.projections_high += sim.projections.high[g];
  }

  if (traj_csv) {
    traj_csv->close();
  }
  if (stats_obs) {
    CsvWriter writer(outputs.reserve(name + "_stats.csv"), kStatsHeader);
    write_stats_csv(writer, dissipation_curves({stats_obs->series}));
    writer.close();
  }
  if (spike_obs) {
    CsvWriter writer(outputs.reserve(name + "_spikes.csv"), kSpikesHeader);
    spike_obs->write(writer);
    writer.close();
  }
}

void run_ensemble_cell(const std::string& name, const RunConfig& cfg,
                       const RunOptions& options, Outputs& outputs,
                       CellResult& result) {
  const Network network = cfg.network();
  network.validate(false);

  std::vector<SeriesStats> replicas(cfg.replicas);
  std::vector<StepReport> reports(cfg.replicas);
  auto run_replica = [&](std::size_t r) {
    const GaussianStream stream(cfg.seed, r);
    NetworkState state = make_initial_state(network, cfg.initial_law, stream);
    ContractNoise noise(cfg.seed, r);
    StatsRecorder stats(r, cfg.output.stride);
    StateObserver* observers[] = {&stats};
    const SimulationResult sim =
        simulate(network, cfg.step, std::move(state), noise, observers);
    replicas[r] = std::move(stats.series);
    reports[r] = sim.projections;
  };
  parallel_for_index(cfg.replicas, options.workers, [&](std::size_t r) {
    try {
      run_replica(r);
    } catch (const std::exception&) {
      // One retry with the identical stream; a second failure aborts the run.
      run_replica(r);
    }
  });

  const StepConfig& step = cfg.step;
  result.steps = step.step_count() * cfg.replicas;
  for (const StepReport& rep : reports) {
    for (int g = 0; g < kGateCount; ++g) {
      result.projections_low += rep.low[g];
      result.projections_high += rep.high[g];
    }
  }

  const EnsembleStats stats = dissipation_curves(std::move(replicas));
  CsvWriter writer(outputs.reserve(name + "_stats.csv"), kStatsHeader);
  write_stats_csv(writer, stats);
  writer.close();

  std::ofstream summary(outputs.reserve(name + "_summary.json"), std::ios::binary);
  summary << stats_summary(stats, cfg.step.t_end / 4.0).dump(2) << '\n';
  summary.close();
}

void run_single_neuron_cell(const std::string& name, const RunConfig& cfg,
                            Outputs& outputs, CellResult& result) {
  const Network network = cfg.network();
  network.validate(false);
  const GaussianStream stream(cfg.seed, 0);
  const NetworkState init = make_initial_state(network, cfg.initial_law, stream);
  const Trajectory traj = single_neuron_trajectory(network.populations[0],
                                                   init.neuron(0), cfg.step.t_end,
                                                   cfg.step.dt);
  result.steps = cfg.step.step_count();

  if (cfg.output.trajectory) {
    CsvWriter writer(outputs.reserve(name + "_trajectory.csv"), kTrajectoryHeader);
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
      if (k % cfg.output.stride != 0) continue;
      const NeuronState& s = traj.x[k];
      writer.numeric_row(traj.t[k], 0ull, s.v, s.m, s.n, s.h, s.y);
    }
    writer.close();
  }
  if (cfg.output.spikes) {
    std::vector<double> v(traj.x.size());
    for (std::size_t k = 0; k < traj.x.size(); ++k) {
      v[k] = traj.x[k].v;
    }
    const std::vector<double> spikes = detect_spikes(traj.t, v);
    CsvWriter writer(outputs.reserve(name + "_spikes.csv"), kSpikesHeader);
    for (double t : spikes) {
      writer.numeric_row(0ull, t);
    }
    writer.close();
  }
}

void run_convergence_cell(const std::string& name, const RunConfig& cfg,
                          const RunOptions& options, Outputs& outputs,
                          CellResult& result) {
  const ConvergenceRunConfig& study = *cfg.convergence;
  StrongErrorConfig sec;
  sec.network = cfg.network();
  sec.init = cfg.initial_law;
  sec.coarsest_dt = study.coarsest_dt;
  sec.levels = study.levels;
  sec.reference_refinement = study.reference_refinement;
  sec.t_end = cfg.step.t_end;
  sec.paths = study.paths;
  sec.seed = cfg.seed;
  sec.workers = options.workers;
  sec.scheme = cfg.step.scheme;
  const StrongErrorResult res = strong_error_study(sec);

  CsvWriter writer(outputs.reserve(name + "_levels.csv"), kLevelsHeader);
  for (const auto& level : res.levels) {
    writer.numeric_row(level.dt, level.rms_error, level.projection_frequency,
                       level.projections, level.gate_steps);
    result.steps += level.gate_steps / (kGateCount);
  }
  writer.close();

  json summary;
  summary["paths"] = sec.paths;
  summary["reference_dt"] = sec.coarsest_dt / sec.reference_refinement;
  if (res.order_fit) {
    summary["order_slope"] = res.order_fit->slope;
    summary["order_r2"] = res.order_fit->r2;
    summary["order_stderr"] = res.order_fit->stderr_slope;
    summary["order_ci95"] =
        json::array({res.order_fit->slope - 1.96 * res.order_fit->stderr_slope,
                     res.order_fit->slope + 1.96 * res.order_fit->stderr_slope});
  } else {
    summary["order_slope"] = nullptr;
  }
  std::ofstream out(outputs.reserve(name + "_summary.json"), std::ios::binary);
  out << summary.dump(2) << '\n';
  out.close();
}

void run_chaos_cell(const std::string& name, const RunConfig& cfg,
                    const RunOptions& options, Outputs& outputs, CellResult& result) {
  const ChaosRunConfig& study = *cfg.chaos;
  const PopulationParams& params = cfg.populations[0].params;
  const double t_end = cfg.step.t_end;
  const double times[] = {t_end / 4.0, t_end / 2.0, t_end};
  const MeanFieldBuild build = build_mean_field(params, cfg.coupling, cfg.step,
                                                study.n_ref, cfg.seed,
                                                cfg.initial_law, times);
  CsvWriter curves(outputs.reserve(name + "_curves.csv"), kCurvesHeader);
  for (std::size_t k = 0; k < build.curves.t.size(); ++k) {
    if (k % cfg.output.stride != 0) continue;
    curves.numeric_row(build.curves.t[k], build.curves.mean_v[k],
                       build.curves.mean_y[k]);
  }
  curves.close();

  ChaosStudyConfig scfg;
  scfg.ladder = study.ladder;
  scfg.replicas = study.replicas;
  scfg.w2_replicas = study.w2_replicas;
  scfg.workers = options.workers;
  const ChaosFit fit = chaos_rate_fit(build, params, cfg.coupling, cfg.step, cfg.seed,
                                      cfg.initial_law, scfg);
  result.steps = cfg.step.step_count() * (study.n_ref + 1);

  json report;
  report["n_ref"] = study.n_ref;
  report["seed"] = cfg.seed;
  report["ladder"] = fit.ladder;
  report["times"] = fit.times;
  auto ci95 = [](const LineFit& f) {
    return json::array({f.slope - 1.96 * f.stderr_slope,
                        f.slope + 1.96 * f.stderr_slope});
  };
  report["coupled_error"] = fit.coupled_error;
  report["coupled_slope"] = fit.coupled_fit.slope;
  report["coupled_slope_stderr"] = fit.coupled_fit.stderr_slope;
  report["coupled_slope_ci95"] = ci95(fit.coupled_fit);
  report["w2_mean"] = fit.w2_mean;
  report["w2_by_time"] = fit.w2_by_time;
  report["w2_slope"] = fit.w2_fit.slope;
  report["w2_slope_stderr"] = fit.w2_fit.stderr_slope;
  report["w2_slope_ci95"] = ci95(fit.w2_fit);
  std::ofstream out(outputs.reserve(name + "_report.json"), std::ios::binary);
  out << report.dump(2) << '\n';
  out.close();
}

}  // namespace

CellResult run_cell(const std::string& name, const RunConfig& cfg,
                    const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Outputs outputs(options.out_dir, options.overwrite);
  CellResult result;
  result.name = name;
  result.config = to_json(cfg);

  switch (cfg.mode) {
    case RunMode::Trajectory:
      run_trajectory_cell(name, cfg, outputs, result);
      break;
    case RunMode::Ensemble:
      run_ensemble_cell(name, cfg, options, outputs, result);
      break;
    case RunMode::SingleNeuronOde:
      run_single_neuron_cell(name, cfg, outputs, result);
      break;
    case RunMode::Convergence:
      run_convergence_cell(name, cfg, options, outputs, result);
      break;
    case RunMode::Chaos:
      run_chaos_cell(name, cfg, options, outputs, result);
      break;
  }

  result.outputs = outputs.records();
  result.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

nlohmann::json run_scenario(const std::string& scenario,
                            const std::vector<PresetCell>& cells,
                            const RunOptions& options) {
  json manifest;
  manifest["kind"] = "hhnet-manifest";
  manifest["schema_version"] = 1;
  manifest["tool_version"] = kToolVersion;
  manifest["scenario"] = scenario;
  manifest["workers"] = options.workers;
  json cell_array = json::array();
  double total_ms = 0.0;
  for (const PresetCell& cell : cells) {
    const CellResult result = run_cell(cell.name, cell.config, options);
    json c;
    c["name"] = result.name;
    c["config"] = result.config;
    json outs = json::array();
    for (const OutputRecord& rec : result.outputs) {
      outs.push_back({{"path", rec.path}, {"bytes", rec.bytes}, {"fnv1a64", rec.digest}});
    }
    c["outputs"] = std::move(outs);
    c["steps"] = result.steps;
    c["projections_low"] = result.projections_low;
    c["projections_high"] = result.projections_high;
    c["wall_ms"] = result.wall_ms;
    cell_array.push_back(std::move(c));
    total_ms += result.wall_ms;
  }
  manifest["cells"] = std::move(cell_array);
  manifest["total_wall_ms"] = total_ms;

  const fs::path path = options.out_dir / "manifest.json";
  if (!options.overwrite && fs::exists(path)) {
    throw std::runtime_error("manifest already exists (use --overwrite): " +
                             path.string());
  }
  std::ofstream out(path, std::ios::binary);
  out << manifest.dump(2) << '\n';
  out.close();
  return manifest;
}

std::vector<PresetCell> cells_from_manifest(const nlohmann::json& manifest) {
  if (!manifest.is_object() || manifest.value("kind", "") != "hhnet-manifest") {
    throw std::runtime_error("not a manifest file");
  }
  std::vector<PresetCell> cells;
  for (const auto& cell : manifest.at("cells")) {
    const ParseResult parsed = parse_config(cell.at("config"));
    if (!parsed.ok()) {
      throw std::runtime_error("manifest cell config failed validation: " +
                               cell.value("name", "?"));
    }
    cells.push_back({cell.at("name").get<std::string>(), *parsed.config});
  }
  return cells;
}

std::vector<ReportLine> verify_manifest(const nlohmann::json& manifest,
                                        const std::filesystem::path& base_dir) {
  std::vector<ReportLine> lines;
  for (const auto& cell : manifest.at("cells")) {
    for (const auto& rec : cell.at("outputs")) {
      ReportLine line;
      line.path = rec.at("path").get<std::string>();
      const fs::path path = base_dir / line.path;
      if (!fs::exists(path)) {
        line.status = "missing";
      } else if (fs::file_size(path) != rec.at("bytes").get<std::uint64_t>()) {
        line.status = "size-mismatch";
      } else if (hex_digest(fnv1a64_file(path)) != rec.at("fnv1a64").get<std::string>()) {
        line.status = "digest-mismatch";
      } else {
        line.status = "ok";
      }
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

}  // namespace hhnet
