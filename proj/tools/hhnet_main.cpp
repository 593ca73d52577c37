#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhnet/parallel.hpp"
#include "hhnet/scenario.hpp"

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open: " + path);
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw std::runtime_error("invalid JSON: " + path);
  }
  return j;
}

void print_errors(const std::vector<hhnet::ConfigError>& errors) {
  for (const auto& e : errors) {
    std::cerr << "  " << e.path << ": " << e.message << "\n";
  }
}

int cmd_run(const std::string& config_path, const std::string& preset,
            const std::string& out_dir, std::size_t workers, bool overwrite) {
  std::vector<hhnet::PresetCell> cells;
  std::string scenario;
  if (!preset.empty() && !config_path.empty()) {
    std::cerr << "error: pass either a config file or --preset, not both\n";
    return 2;
  }
  if (!preset.empty()) {
    cells = hhnet::preset_cells(preset);
    scenario = preset;
  } else if (!config_path.empty()) {
    const json j = load_json(config_path);
    if (j.is_object() && j.value("kind", "") == "hhnet-manifest") {
      cells = hhnet::cells_from_manifest(j);
      scenario = j.value("scenario", "manifest-rerun");
    } else {
      const hhnet::ParseResult parsed = hhnet::parse_config(j);
      if (!parsed.ok()) {
        std::cerr << "configuration is invalid:\n";
        print_errors(parsed.errors);
        return 2;
      }
      cells.push_back({parsed.config->scenario, *parsed.config});
      scenario = parsed.config->scenario;
    }
  } else {
    std::cerr << "error: a config file or --preset is required\n";
    return 2;
  }

  hhnet::RunOptions options;
  options.out_dir = out_dir;
  options.workers = workers == 0 ? hhnet::default_worker_count() : workers;
  options.overwrite = overwrite;

  const json manifest = hhnet::run_scenario(scenario, cells, options);
  std::cout << "wrote " << (options.out_dir / "manifest.json").string() << " ("
            << manifest.at("cells").size() << " cell(s))\n";
  for (const auto& cell : manifest.at("cells")) {
    std::cout << "  " << cell.at("name").get<std::string>() << ": "
              << cell.at("outputs").size() << " file(s), "
              << cell.at("wall_ms").get<double>() << " ms\n";
  }
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const json j = load_json(config_path);
  const hhnet::ParseResult parsed = hhnet::parse_config(j);
  if (!parsed.ok()) {
    std::cerr << "configuration is invalid:\n";
    print_errors(parsed.errors);
    return 2;
  }
  std::cout << "ok: " << config_path << " (scenario "
            << parsed.config->scenario << ", mode "
            << hhnet::run_mode_name(parsed.config->mode) << ")\n";
  return 0;
}

int cmd_report(const std::string& manifest_path) {
  const json manifest = load_json(manifest_path);
  const auto base_dir = std::filesystem::path(manifest_path).parent_path();
  std::cout << "scenario: " << manifest.value("scenario", "?") << "\n";
  std::cout << "tool version: " << manifest.value("tool_version", "?") << "\n";
  bool all_ok = true;
  for (const auto& line : hhnet::verify_manifest(manifest, base_dir)) {
    std::cout << "  " << line.status << "  " << line.path << "\n";
    all_ok = all_ok && line.status == "ok";
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field Hodgkin-Huxley network simulator"};
  app.require_subcommand(1);

  std::string config_path, preset, out_dir = "out", manifest_path;
  std::size_t workers = 0;
  bool overwrite = false;

  CLI::App* run = app.add_subcommand("run", "execute a config, preset, or manifest");
  run->add_option("config", config_path, "run configuration (JSON) or manifest");
  run->add_option("--preset", preset, "named scenario preset");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--workers", workers, "worker threads (0 = hardware)");
  run->add_flag("--overwrite", overwrite, "allow clobbering existing outputs");

  CLI::App* validate = app.add_subcommand("validate", "validate a config file");
  std::string validate_path;
  validate->add_option("config", validate_path, "run configuration (JSON)")
      ->required();

  CLI::App* report = app.add_subcommand("report", "verify a manifest's outputs");
  report->add_option("manifest", manifest_path, "manifest JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path, preset, out_dir, workers, overwrite);
    }
    if (validate->parsed()) {
      return cmd_validate(validate_path);
    }
    if (report->parsed()) {
      return cmd_report(manifest_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
