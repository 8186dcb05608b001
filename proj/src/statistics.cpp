#include "fipm/statistics.hpp"

#include <cmath>

#include "fipm/csv.hpp"

namespace fipm {

StatField stats_from_moments(std::span<const MomentMatrix> moments, std::span<const double> x, double dx,
                             std::vector<std::string> component_names) {
  if (moments.size() != x.size()) throw DomainError("stats_from_moments: moments and x differ in length");
  const int n = static_cast<int>(moments.size());
  const int m = n ? static_cast<int>(moments[0].cols()) : static_cast<int>(component_names.size());
  if (static_cast<int>(component_names.size()) != m) throw DomainError("stats_from_moments: component name count");
  StatField out;
  out.x.assign(x.begin(), x.end());
  out.dx = dx;
  out.mean.resize(n, m);
  out.variance.resize(n, m);
  out.component_names = std::move(component_names);
  for (int j = 0; j < n; ++j) {
    const MomentMatrix& u = moments[j];
    out.mean.row(j) = u.row(0);
    out.variance.row(j) = u.bottomRows(u.rows() - 1).colwise().squaredNorm();
  }
  return out;
}

double delta_metric(std::span<const double> error, std::span<const double> x, double dx, Interval region) {
  if (error.size() != x.size()) throw DomainError("delta_metric: error and x differ in length");
  if (!(dx > 0.0)) throw DomainError("delta_metric: dx must be positive");
  double sum = 0.0;
  for (std::size_t j = 1; j + 1 < x.size(); ++j) {
    if (x[j] < region.lo || x[j] > region.hi) continue;
    const double d2 = (error[j - 1] - 2.0 * error[j] + error[j + 1]) / (dx * dx);
    sum += dx * d2 * d2;
  }
  return std::sqrt(sum);
}

namespace {

void require_matching(const StatField& a, const StatField& b) {
  if (a.cells() != b.cells() || a.components() != b.components() || a.dx != b.dx) {
    throw DomainError("compare: grids do not match");
  }
  for (int j = 0; j < a.cells(); ++j) {
    if (std::abs(a.x[j] - b.x[j]) > 1e-12 * (1.0 + std::abs(a.x[j]))) {
      throw DomainError("compare: cell centers do not match");
    }
  }
}

std::vector<double> column(const Eigen::MatrixXd& m, int k) {
  std::vector<double> out(m.rows());
  for (Eigen::Index j = 0; j < m.rows(); ++j) out[j] = m(j, k);
  return out;
}

}  // namespace

ErrorMetrics compare(const StatField& numeric, const StatField& reference, Interval region) {
  require_matching(numeric, reference);
  const Eigen::MatrixXd err_mean = reference.mean - numeric.mean;
  const Eigen::MatrixXd err_var = reference.variance - numeric.variance;
  const double dx = numeric.dx;
  ErrorMetrics out;
  for (int k = 0; k < numeric.components(); ++k) {
    out.delta_mean.push_back(delta_metric(column(err_mean, k), numeric.x, dx, region));
    out.delta_variance.push_back(delta_metric(column(err_var, k), numeric.x, dx, region));
    out.l1_mean.push_back(dx * err_mean.col(k).cwiseAbs().sum());
    out.l2_mean.push_back(std::sqrt(dx * err_mean.col(k).squaredNorm()));
    out.l1_variance.push_back(dx * err_var.col(k).cwiseAbs().sum());
    out.l2_variance.push_back(std::sqrt(dx * err_var.col(k).squaredNorm()));
  }
  return out;
}

namespace {

void write_pairs(const std::filesystem::path& path, const std::vector<double>& x, const Eigen::MatrixXd& mean,
                 const Eigen::MatrixXd& var, const std::vector<std::string>& names, const std::string& prefix) {
  CsvWriter csv(path);
  std::vector<std::string> head{"x"};
  for (const auto& c : names) {
    head.push_back(prefix + "mean_" + c);
    head.push_back(prefix + "var_" + c);
  }
  csv.header(head);
  std::vector<double> row(1 + 2 * names.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    row[0] = x[j];
    for (std::size_t k = 0; k < names.size(); ++k) {
      row[1 + 2 * k] = mean(j, k);
      row[2 + 2 * k] = var(j, k);
    }
    csv.row(row);
  }
  csv.close();
}

}  // namespace

void write_stats_csv(const std::filesystem::path& path, const StatField& field) {
  write_pairs(path, field.x, field.mean, field.variance, field.component_names, "");
}

void compare_and_export(const StatField* numeric, const StatField& reference, Interval region,
                        const ExportPaths& paths) {
  write_stats_csv(paths.reference, reference);
  if (!numeric) return;
  const ErrorMetrics metrics = compare(*numeric, reference, region);
  write_stats_csv(paths.stats, *numeric);
  write_pairs(paths.errors, numeric->x, reference.mean - numeric->mean, reference.variance - numeric->variance,
              numeric->component_names, "err_");
  CsvWriter summary(paths.summary);
  summary.header({"deltaE", "deltaVar", "l1_mean", "l2_mean", "l1_var", "l2_var"});
  summary.row({metrics.delta_mean[0], metrics.delta_variance[0], metrics.l1_mean[0], metrics.l2_mean[0],
               metrics.l1_variance[0], metrics.l2_variance[0]});
  summary.close();
}

}  // namespace fipm
