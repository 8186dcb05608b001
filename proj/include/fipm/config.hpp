#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fipm/fv_solver.hpp"
#include "fipm/statistics.hpp"

namespace fipm {

struct ExperimentConfig {
  std::string name = "run";
  GridConfig grid;
  UncertainShockIC ic;
  double gamma = 1.4;
  int degree = 5;
  int quad_points = 0;  // 0: 2 (degree + 1)
  ClosureKind closure = ClosureKind::IPM;
  FilterSpec filter;
  double eta = 0.0;
  double tau = 1e-7;
  int max_newton_iterations = 200;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
  int threads = 0;  // 0: OpenMP default
  std::string output_dir = "runs";
  std::uint64_t seed = 0;
  Interval delta_region{0.7, 0.8};
  std::vector<double> output_times;

  // Filter-image scan of the degree-2 realizable slice.
  int scan_resolution = 400;
  double scan_exp_order = 7.0;
  std::vector<double> scan_exp_exponents{0.05, 0.1, 0.2, 0.3};
  std::vector<double> scan_fp_strengths{0.05, 0.1, 0.2, 0.3};

  int resolved_quad_points() const { return quad_points > 0 ? quad_points : 2 * (degree + 1); }
  SolverSettings solver_settings() const;
  ShockTubeSetup shock_tube() const;
};

/// Flat `key = value` text, `#` starts a comment. `overrides` are further
/// `key=value` entries applied after the text (reported as --set in errors).
/// Throws ConfigError naming the key and line.
ExperimentConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Every key in canonical order; parse_config(to_text(c)) == c.
std::string to_text(const ExperimentConfig& config);

/// Known config keys in canonical order.
std::vector<std::string> config_keys();

/// Shortest round-trip decimal form.
std::string format_number(double value);

}  // namespace fipm
