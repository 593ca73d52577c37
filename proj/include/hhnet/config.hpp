#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhnet/simulate.hpp"

namespace hhnet {

enum class RunMode { Trajectory, Ensemble, SingleNeuronOde, Convergence, Chaos };

const char* run_mode_name(RunMode mode);

struct OutputOptions {
  std::string dir = "out";
  std::uint64_t stride = 10;
  bool trajectory = true;
  bool stats = true;
  bool spikes = false;
};

struct PopulationConfig {
  std::string name = "main";
  std::size_t size = 1;
  PopulationParams params;
};

struct ConvergenceRunConfig {
  double coarsest_dt = 0.02;
  int levels = 4;
  int reference_refinement = 32;
  std::size_t paths = 200;
};

struct ChaosRunConfig {
  std::size_t n_ref = 4096;
  std::vector<std::size_t> ladder{16, 64, 256, 1024};
  std::size_t replicas = 8;
  std::size_t w2_replicas = 3;
};

/// A fully resolved run cell: layout, parameters, scheme, law, seed, outputs.
struct RunConfig {
  int schema_version = 1;
  std::string scenario = "custom";
  RunMode mode = RunMode::Trajectory;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  StepConfig step{0.01, 400.0, Scheme::Epes};
  std::vector<PopulationConfig> populations;
  CouplingSpec coupling = CouplingSpec::single(0.0);
  InitialLaw initial_law = UniformBoxLaw{};
  OutputOptions output;
  std::optional<ConvergenceRunConfig> convergence;
  std::optional<ChaosRunConfig> chaos;

  Network network() const;
};

struct ConfigError {
  std::string path;
  std::string message;
};

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<ConfigError> errors;
  bool ok() const { return errors.empty() && config.has_value(); }
};

/// Full structural and invariant validation with aggregated, path-qualified
/// errors. Unknown keys are rejected.
ParseResult parse_config(const nlohmann::json& j);
ParseResult parse_config_text(std::string_view text);

nlohmann::json to_json(const RunConfig& config);

struct PresetCell {
  std::string name;
  RunConfig config;
};

std::vector<std::string> preset_names();
std::vector<PresetCell> preset_cells(const std::string& preset);

}  // namespace hhnet
