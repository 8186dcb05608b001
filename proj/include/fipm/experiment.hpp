#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "fipm/config.hpp"
#include "fipm/realizability.hpp"
#include "fipm/statistics.hpp"

namespace fipm {

struct RunSummary {
  double t = 0.0;
  int steps = 0;
  long newton_iterations = 0;
  bool compared = false;  // false when t_end = 0
  ErrorMetrics metrics;
};

/// Runs the shock tube described by `config` and writes into `out_dir`:
/// config.cfg, run.log, snapshot_t<t>.csv per output time, telemetry.csv,
/// stats.csv, reference.csv, errors.csv, summary.csv and plot.gp. Solver
/// errors are logged and rethrown.
RunSummary run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

/// Writes only reference.csv for the configured grid and t_end.
void export_reference(const ExperimentConfig& config, const std::filesystem::path& path);

struct SweepRow {
  double value = 0.0;
  double delta_mean = 0.0;
  double delta_variance = 0.0;
  double runtime = 0.0;  // seconds
  std::string error;     // empty on success
};

/// Numeric keys a sweep may vary.
bool is_sweepable(const std::string& key);

/// One run per value in out_dir/<key>_<value>/, plus out_dir/sweep.csv with
/// columns value,deltaE,deltaVar,runtime. Failed runs get nan metrics.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const std::string& key,
                                const std::vector<double>& values, const std::filesystem::path& out_dir,
                                std::ostream& log);

struct ScanEntry {
  std::string filter;  // "exponential" or "fokker-planck"
  double parameter = 0.0;
  ScanResult result;
};

/// Filter images of the degree-2 realizable slice for every configured
/// exponential exponent and FP strength. Writes scan_<filter>_<p>.csv,
/// scan_gains.csv and scan.gp.
std::vector<ScanEntry> run_filter_scan(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                           std::ostream& log);

}  // namespace fipm
