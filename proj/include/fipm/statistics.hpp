#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fipm/stat_field.hpp"
#include "fipm/types.hpp"

namespace fipm {

/// E = row 0, Var = sum of squares of rows 1..N (orthonormal basis).
StatField stats_from_moments(std::span<const MomentMatrix> moments, std::span<const double> x, double dx,
                             std::vector<std::string> component_names);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Per-component oscillation metrics and pointwise error norms of
/// e = reference - numeric.
struct ErrorMetrics {
  std::vector<double> delta_mean;
  std::vector<double> delta_variance;
  std::vector<double> l1_mean;
  std::vector<double> l2_mean;
  std::vector<double> l1_variance;
  std::vector<double> l2_variance;
};

/// sqrt(sum_j dx (d_xx e_j)^2) over cells whose centers lie in `region`, with
/// d_xx the central second difference. The stencil may reach outside the
/// region; cells on the domain boundary have no stencil and are skipped.
double delta_metric(std::span<const double> error, std::span<const double> x, double dx, Interval region);

/// Throws DomainError on mismatched grids.
ErrorMetrics compare(const StatField& numeric, const StatField& reference, Interval region);

struct ExportPaths {
  std::filesystem::path stats;      // numeric mean/variance
  std::filesystem::path reference;  // reference mean/variance
  std::filesystem::path errors;
  std::filesystem::path summary;
};

/// stats: x,mean_<c>,var_<c>...; errors: x,err_mean_<c>,err_var_<c>...;
/// summary: deltaE,deltaVar,l1_mean,l2_mean,l1_var,l2_var for component 0.
/// Without `numeric` only the reference file is written.
void write_stats_csv(const std::filesystem::path& path, const StatField& field);
void compare_and_export(const StatField* numeric, const StatField& reference, Interval region,
                        const ExportPaths& paths);

}  // namespace fipm
