#include "fipm/realizability.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fipm/csv.hpp"
#include "fipm/gpc_basis.hpp"

namespace fipm {

namespace {
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);
}  // namespace

MonomialMoments to_monomial(const MomentTriple& t) {
  return {t.u0, t.u1 / kSqrt3, (2.0 * t.u2 / kSqrt5 + t.u0) / 3.0};
}

MomentTriple from_monomial(const MonomialMoments& m) {
  return {m.m0, kSqrt3 * m.m1, 0.5 * kSqrt5 * (3.0 * m.m2 - m.m0)};
}

double realizability_margin(const MomentTriple& t) {
  const MonomialMoments m = to_monomial(t);
  return std::min({m.m0 - m.m2, m.m2, m.m0 * m.m2 - m.m1 * m.m1});
}

bool is_realizable_n2(const MomentTriple& t) {
  const MonomialMoments m = to_monomial(t);
  return m.m0 > m.m2 && m.m2 > 0.0 && m.m0 * m.m2 > m.m1 * m.m1;
}

ScanBox realizable_slice_box(int resolution) {
  return {-kSqrt3, kSqrt3, -0.5 * kSqrt5, kSqrt5, resolution};
}

ScanResult filter_image_scan(const std::array<double, 3>& gains, const ScanBox& box, ExecutionPolicy policy) {
  if (box.resolution < 2) throw DomainError("filter_image_scan: resolution must be >= 2");
  const int n = box.resolution;
  ScanResult result;
  result.gains = gains;
  result.points.resize(static_cast<std::size_t>(n) * n);
  const double d1 = (box.u1_max - box.u1_min) / (n - 1);
  const double d2 = (box.u2_max - box.u2_min) / (n - 1);
  for_each_index(policy, n, [&](int row) {
    const double u2 = box.u2_min + row * d2;
    for (int col = 0; col < n; ++col) {
      const double u1 = box.u1_min + col * d1;
      ScanPoint& p = result.points[static_cast<std::size_t>(row) * n + col];
      p.u1 = u1;
      p.u2 = u2;
      p.inside_before = is_realizable_n2({1.0, u1, u2});
      p.inside_after = p.inside_before && is_realizable_n2({gains[0], gains[1] * u1, gains[2] * u2});
    }
  });
  for (const auto& p : result.points) {
    result.realizable_before += p.inside_before;
    result.lost += p.inside_before && !p.inside_after;
  }
  return result;
}

std::array<double, 3> degree2_gains(const FilterSpec& spec, double dt) {
  const auto g = filter_gains(spec, 2, dt);
  return {g[0], g[1], g[2]};
}

void write_scan_csv(const std::filesystem::path& path, const ScanResult& result) {
  CsvWriter csv(path);
  csv.header({"u1", "u2", "inside_before", "inside_after"});
  for (const auto& p : result.points) {
    csv.raw_row({format_double(p.u1), format_double(p.u2), p.inside_before ? "1" : "0", p.inside_after ? "1" : "0"});
  }
  csv.close();
}

MomentMatrix exponential_density_moments(const std::vector<double>& coefficients) {
  const int degree = static_cast<int>(coefficients.size()) - 1;
  if (degree < 0) throw DomainError("exponential_density_moments: need at least one coefficient");
  const StochasticDiscretization disc(degree, 64);
  const Eigen::Map<const Eigen::VectorXd> c(coefficients.data(), degree + 1);
  const Eigen::VectorXd density = (disc.phi() * c).array().exp().matrix();
  return disc.projector() * density;
}

std::vector<MomentMatrix> sample_realizable(int count, int degree, std::uint64_t seed, double coefficient_bound) {
  if (count < 1) throw DomainError("sample_realizable: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coefficient(-coefficient_bound, coefficient_bound);
  const StochasticDiscretization disc(degree, 64);
  std::vector<MomentMatrix> samples;
  samples.reserve(count);
  Eigen::VectorXd c(degree + 1);
  for (int s = 0; s < count; ++s) {
    for (int i = 0; i <= degree; ++i) c[i] = coefficient(rng);
    const Eigen::VectorXd density = (disc.phi() * c).array().exp().matrix();
    samples.push_back(disc.projector() * density);
  }
  return samples;
}

}  // namespace fipm
