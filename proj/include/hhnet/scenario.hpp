#pragma once

#include <filesystem>

#include "hhnet/config.hpp"

namespace hhnet {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunOptions {
  std::filesystem::path out_dir;
  std::size_t workers = 1;
  bool overwrite = false;
};

struct OutputRecord {
  std::string path;  // relative to the output directory
  std::uint64_t bytes = 0;
  std::string digest;  // fnv1a64, hex
};

struct CellResult {
  std::string name;
  nlohmann::json config;
  std::vector<OutputRecord> outputs;
  std::uint64_t steps = 0;
  std::uint64_t projections_low = 0;
  std::uint64_t projections_high = 0;
  double wall_ms = 0.0;
};

/// Executes one resolved cell, writing its data files under out_dir.
/// Refuses to clobber existing outputs unless overwrite is set.
CellResult run_cell(const std::string& name, const RunConfig& config,
                    const RunOptions& options);

/// Executes a list of cells and writes `manifest.json` in the output
/// directory. Returns the manifest.
nlohmann::json run_scenario(const std::string& scenario,
                            const std::vector<PresetCell>& cells,
                            const RunOptions& options);

/// Extracts the cells embedded in a manifest, so a run can be reproduced.
std::vector<PresetCell> cells_from_manifest(const nlohmann::json& manifest);

struct ReportLine {
  std::string path;
  std::string status;  // "ok", "missing", "digest-mismatch", "size-mismatch"
};

/// Verifies every output listed in a manifest against its recorded digest.
std::vector<ReportLine> verify_manifest(const nlohmann::json& manifest,
                                        const std::filesystem::path& base_dir);

}  // namespace hhnet
