#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fipm/config.hpp"
#include "fipm/experiment.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverAbort = 3;

fs::path resolve_config(const std::string& arg) {
  const fs::path direct(arg);
  if (fs::exists(direct)) return direct;
  const fs::path preset = fs::path(FIPM_PRESET_DIR) / (arg + ".cfg");
  if (fs::exists(preset)) return preset;
  throw fipm::ConfigError("config: no file '" + arg + "' and no preset of that name");
}

fs::path output_root() {
  if (const char* env = std::getenv("FIPM_OUTPUT_ROOT"); env && *env) return env;
  return fs::current_path();
}

fs::path run_dir(const fipm::ExperimentConfig& config) { return output_root() / config.output_dir / config.name; }

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw fipm::ConfigError("sweep: bad value '" + item + "'");
    }
  }
  return out;
}

void apply_threads(const fipm::ExperimentConfig& config) {
#ifdef _OPENMP
  if (config.threads > 0) omp_set_num_threads(config.threads);
#else
  (void)config;
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered intrusive UQ solver for the uncertain 1D Euler shock tube"};
  app.require_subcommand(1);
  bool dry_run = false;
  app.add_flag("--dry-run", dry_run, "Print the resolved configuration and exit");

  std::string config_arg;
  std::vector<std::string> overrides;

  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("config", config_arg, "Config file or preset name")->required();
  run->add_option("--set", overrides, "Override a key: key=value")->take_all();

  std::string sweep_key;
  std::string sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Run one experiment per value of a numeric key");
  sweep->add_option("config", config_arg, "Config file or preset name")->required();
  sweep->add_option("--set", overrides, "Override a key: key=value")->take_all();
  sweep->add_option("--key", sweep_key, "Key to vary")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();

  auto* scan = app.add_subcommand("scan-figure1", "Filter images of the degree-2 realizable set");
  scan->add_option("config", config_arg, "Config file or preset name")->required();
  scan->add_option("--set", overrides, "Override a key: key=value")->take_all();

  auto* reference = app.add_subcommand("reference", "Export only the reference statistics");
  reference->add_option("config", config_arg, "Config file or preset name")->required();
  reference->add_option("--set", overrides, "Override a key: key=value")->take_all();

  CLI11_PARSE(app, argc, argv);

  fipm::ExperimentConfig config;
  std::vector<double> values;
  try {
    config = fipm::load_config(resolve_config(config_arg), overrides);
    if (sweep->parsed()) {
      if (!fipm::is_sweepable(sweep_key)) throw fipm::ConfigError("sweep: key '" + sweep_key + "' is not sweepable");
      values = parse_values(sweep_values);
    }
  } catch (const fipm::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  }

  std::cout << fipm::to_text(config);
  if (dry_run) return 0;
  apply_threads(config);

  try {
    const fs::path dir = run_dir(config);
    if (run->parsed()) {
      fipm::run_experiment(config, dir, std::cout);
      std::cout << "artifacts in " << dir.string() << '\n';
    } else if (sweep->parsed()) {
      const auto rows = fipm::run_sweep(config, sweep_key, values, dir, std::cout);
      for (const auto& r : rows) {
        std::cout << sweep_key << " = " << fipm::format_number(r.value) << ": deltaE " << r.delta_mean
                  << ", deltaVar " << r.delta_variance << ", " << r.runtime << " s"
                  << (r.error.empty() ? "" : " (failed)") << '\n';
      }
      std::cout << "table in " << (dir / "sweep.csv").string() << '\n';
    } else if (scan->parsed()) {
      fipm::run_filter_scan(config, dir, std::cout);
      std::cout << "scan in " << dir.string() << '\n';
    } else {
      fs::create_directories(dir);
      fipm::export_reference(config, dir / "reference.csv");
      std::cout << "reference in " << (dir / "reference.csv").string() << '\n';
    }
  } catch (const fipm::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "solver abort: " << e.what() << '\n';
    return kSolverAbort;
  }
  return 0;
}
