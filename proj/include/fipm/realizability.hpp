#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "fipm/filters.hpp"
#include "fipm/parallel.hpp"
#include "fipm/types.hpp"

namespace fipm {

/// Orthonormal-Legendre moments (u0, u1, u2) of a scalar density on [-1, 1].
struct MomentTriple {
  double u0 = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
};

/// <1>, <xi>, <xi^2> under the probability measure.
struct MonomialMoments {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

MonomialMoments to_monomial(const MomentTriple& t);
MomentTriple from_monomial(const MonomialMoments& m);

/// min(m0 - m2, m2, m0 m2 - m1^2). Positive exactly on the interior of the
/// degree-2 moment cone of positive densities on [-1, 1].
double realizability_margin(const MomentTriple& t);

/// Strict membership: m0 > m2 > 0 and m0 m2 > m1^2 in monomial coordinates.
bool is_realizable_n2(const MomentTriple& t);

/// Rectangle of the u0 = 1 slice sampled by the filter-image scan (endpoints included).
struct ScanBox {
  double u1_min = 0.0;
  double u1_max = 0.0;
  double u2_min = 0.0;
  double u2_max = 0.0;
  int resolution = 400;
};

/// Bounding box of the whole realizable slice: |u1| < sqrt(3), -sqrt(5)/2 < u2 < sqrt(5).
ScanBox realizable_slice_box(int resolution = 400);

struct ScanPoint {
  double u1 = 0.0;
  double u2 = 0.0;
  bool inside_before = false;
  bool inside_after = false;
};

struct ScanResult {
  std::array<double, 3> gains{};
  std::vector<ScanPoint> points;  // row-major over (u2, u1)
  int realizable_before = 0;
  int lost = 0;  // realizable before, nonrealizable after
};

/// Applies diag(g0, g1, g2) to every grid point of the u0 = 1 slice and records
/// membership before and after.
ScanResult filter_image_scan(const std::array<double, 3>& gains, const ScanBox& box,
                             ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Degree-2 gains of a filter. For exponential/erfc filters built with
/// dt_coupled = false the strength is the exponent itself.
std::array<double, 3> degree2_gains(const FilterSpec& spec, double dt = 1.0);

/// CSV with columns u1,u2,inside_before,inside_after.
void write_scan_csv(const std::filesystem::path& path, const ScanResult& result);

/// Moments of u(xi) = exp(sum_i c_i phi_i(xi)) with c_i uniform in
/// [-coefficient_bound, coefficient_bound], integrated with a 64-point rule.
/// Deterministic for a given seed.
std::vector<MomentMatrix> sample_realizable(int count, int degree, std::uint64_t seed,
                                            double coefficient_bound = 1.5);

/// Moments of exp(sum_i c_i phi_i) for given coefficients.
MomentMatrix exponential_density_moments(const std::vector<double>& coefficients);

}  // namespace fipm
