#include "fipm/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include "fipm/csv.hpp"
#include "fipm/euler.hpp"

namespace fipm {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  out.close();
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

void write_snapshot(const fs::path& path, const std::vector<double>& xs, const std::vector<MomentMatrix>& moments) {
  CsvWriter csv(path);
  const int rows = moments.empty() ? 0 : static_cast<int>(moments[0].rows());
  const int comps = moments.empty() ? 0 : static_cast<int>(moments[0].cols());
  std::vector<std::string> head{"x"};
  for (int k = 0; k < comps; ++k) {
    for (int i = 0; i < rows; ++i) head.push_back("u" + std::to_string(k) + "_mom" + std::to_string(i));
  }
  csv.header(head);
  std::vector<double> row(1 + rows * comps);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    row[0] = xs[j];
    for (int k = 0; k < comps; ++k) {
      for (int i = 0; i < rows; ++i) row[1 + k * rows + i] = moments[j](i, k);
    }
    csv.row(row);
  }
  csv.close();
}

void write_telemetry(const fs::path& path, const std::vector<TelemetryRow>& rows) {
  CsvWriter csv(path);
  csv.header({"step", "t", "dt", "total_newton_iters", "max_newton_iters", "max_grad_norm"});
  for (const auto& r : rows) {
    csv.raw_row({std::to_string(r.step), format_double(r.t), format_double(r.dt),
                 std::to_string(r.total_newton_iterations), std::to_string(r.max_newton_iterations),
                 format_double(r.max_gradient_norm)});
  }
  csv.close();
}

const char* kPlotScript = R"(set datafile separator ','
set terminal pngcairo size 1200,500
set output 'statistics.png'
set multiplot layout 1,2
set xlabel 'x'
set title 'E[rho]'
plot 'reference.csv' using 1:2 with lines title 'reference', \
     'stats.csv' using 1:2 with lines title 'numeric'
set title 'Var[rho]'
plot 'reference.csv' using 1:3 with lines title 'reference', \
     'stats.csv' using 1:3 with lines title 'numeric'
unset multiplot
)";

StatField reference_for(const ExperimentConfig& c) {
  const std::vector<double> xs = c.grid.centers();
  return reference_statistics(xs, c.grid.dx(), c.grid.t_end, c.ic.x0, c.ic.sigma, c.ic.left, c.ic.right, c.gamma);
}

}  // namespace

void export_reference(const ExperimentConfig& config, const fs::path& path) {
  write_stats_csv(path, reference_for(config));
}

RunSummary run_experiment(const ExperimentConfig& config, const fs::path& out_dir, std::ostream& log) {
  fs::create_directories(out_dir);
  const std::string resolved = to_text(config);
  write_text(out_dir / "config.cfg", resolved);
  std::ofstream run_log(out_dir / "run.log");
  const auto both = [&](const std::string& line) {
    run_log << line << '\n';
    log << line << '\n';
  };
  run_log << resolved;
  both("closure " + std::string(to_string(config.closure)) + ", filter " + std::string(to_string(config.filter.kind)) +
       ", N = " + std::to_string(config.degree) + ", N_q = " + std::to_string(config.resolved_quad_points()) +
       ", N_x = " + std::to_string(config.grid.cells));

  RunResult result;
  try {
    result = run_shock_tube(config.shock_tube());
  } catch (const std::exception& e) {
    run_log << "solver abort: " << e.what() << '\n';
    throw;
  }

  const std::vector<double> xs = config.grid.centers();
  for (const Snapshot& snap : result.snapshots) {
    const fs::path path = out_dir / ("snapshot_t" + format_number(snap.t) + ".csv");
    write_snapshot(path, xs, snap.moments);
    both("wrote " + path.filename().string());
  }
  write_telemetry(out_dir / "telemetry.csv", result.telemetry);

  RunSummary summary;
  summary.t = result.t;
  summary.steps = static_cast<int>(result.telemetry.size());
  for (const auto& row : result.telemetry) summary.newton_iterations += row.total_newton_iterations;
  both("steps " + std::to_string(summary.steps) + ", newton iterations " + std::to_string(summary.newton_iterations));

  const StatField numeric = stats_from_moments(result.field.moments, xs, config.grid.dx(), {"rho", "m", "E"});
  if (config.grid.t_end > 0.0) {
    const StatField reference = reference_for(config);
    const ExportPaths paths{out_dir / "stats.csv", out_dir / "reference.csv", out_dir / "errors.csv",
                            out_dir / "summary.csv"};
    compare_and_export(&numeric, reference, config.delta_region, paths);
    summary.metrics = compare(numeric, reference, config.delta_region);
    summary.compared = true;
    both("deltaE " + format_double(summary.metrics.delta_mean[0]) + ", deltaVar " +
         format_double(summary.metrics.delta_variance[0]) + ", l1_mean " + format_double(summary.metrics.l1_mean[0]));
    write_text(out_dir / "plot.gp", kPlotScript);
  } else {
    write_stats_csv(out_dir / "stats.csv", numeric);
    both("t_end = 0: no reference comparison");
  }
  run_log.close();
  return summary;
}

bool is_sweepable(const std::string& key) {
  for (const char* k : {"filter_strength", "filter_order", "eta", "tau", "cfl", "sigma"}) {
    if (key == k) return true;
  }
  return false;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const std::string& key,
                                const std::vector<double>& values, const fs::path& out_dir, std::ostream& log) {
  if (!is_sweepable(key)) throw ConfigError("sweep: key '" + key + "' is not sweepable");
  fs::create_directories(out_dir);
  const std::string base = to_text(config);
  std::vector<SweepRow> rows;
  for (double value : values) {
    SweepRow row;
    row.value = value;
    const std::string tag = key + "_" + format_number(value);
    log << "sweep " << tag << '\n';
    const auto start = std::chrono::steady_clock::now();
    try {
      ExperimentConfig run = parse_config(base, {key + "=" + format_number(value), "name=" + config.name + "_" + tag});
      const RunSummary s = run_experiment(run, out_dir / tag, log);
      row.delta_mean = s.compared ? s.metrics.delta_mean[0] : std::numeric_limits<double>::quiet_NaN();
      row.delta_variance = s.compared ? s.metrics.delta_variance[0] : std::numeric_limits<double>::quiet_NaN();
    } catch (const std::exception& e) {
      row.error = e.what();
      row.delta_mean = row.delta_variance = std::numeric_limits<double>::quiet_NaN();
      log << "sweep " << tag << " failed: " << e.what() << '\n';
    }
    row.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }
  CsvWriter csv(out_dir / "sweep.csv");
  csv.header({"value", "deltaE", "deltaVar", "runtime"});
  for (const auto& r : rows) csv.row({r.value, r.delta_mean, r.delta_variance, r.runtime});
  csv.close();
  return rows;
}

std::vector<ScanEntry> run_filter_scan(const ExperimentConfig& config, const fs::path& out_dir,
                                           std::ostream& log) {
  fs::create_directories(out_dir);
  write_text(out_dir / "config.cfg", to_text(config));
  const ScanBox box = realizable_slice_box(config.scan_resolution);
  std::vector<ScanEntry> entries;
  for (double exponent : config.scan_exp_exponents) {
    FilterSpec spec{FilterKind::Exponential, exponent, config.scan_exp_order, false};
    entries.push_back({"exponential", exponent, filter_image_scan(degree2_gains(spec), box, config.policy)});
  }
  for (double lambda : config.scan_fp_strengths) {
    FilterSpec spec{FilterKind::FokkerPlanck, lambda, 1.0, false};
    entries.push_back({"fokker-planck", lambda, filter_image_scan(degree2_gains(spec), box, config.policy)});
  }

  CsvWriter gains(out_dir / "scan_gains.csv");
  gains.header({"filter", "parameter", "g0", "g1", "g2", "realizable_before", "lost"});
  std::string plot = "set datafile separator ','\nset terminal pngcairo size 600,500\nset xlabel 'u1'\nset ylabel 'u2'\n";
  for (const auto& e : entries) {
    const std::string file = "scan_" + e.filter + "_" + format_number(e.parameter) + ".csv";
    write_scan_csv(out_dir / file, e.result);
    gains.raw_row({e.filter, format_double(e.parameter), format_double(e.result.gains[0]),
                   format_double(e.result.gains[1]), format_double(e.result.gains[2]),
                   std::to_string(e.result.realizable_before), std::to_string(e.result.lost)});
    log << e.filter << ' ' << format_number(e.parameter) << ": " << e.result.lost << " of "
        << e.result.realizable_before << " realizable points leave the realizable set\n";
    plot += "set output '" + file.substr(0, file.size() - 4) + ".png'\nset title '" + e.filter + " " +
            format_number(e.parameter) + "'\nplot '" + file +
            "' using 1:($3 == 1 ? $2 : 1/0) with dots title 'realizable', '" + file +
            "' using 1:($3 == 1 && $4 == 0 ? $2 : 1/0) with points pt 7 ps 0.2 title 'lost by filter'\n";
  }
  gains.close();
  write_text(out_dir / "scan.gp", plot);
  return entries;
}

}  // namespace fipm
