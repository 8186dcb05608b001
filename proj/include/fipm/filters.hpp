#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fipm/gpc_basis.hpp"
#include "fipm/types.hpp"

namespace fipm {

enum class FilterKind { None, L2, Exponential, Erfc, FokkerPlanck };

FilterKind parse_filter_kind(std::string_view name);
std::string_view to_string(FilterKind kind);

/// Diagonal moment filter. `order` is only read by Exponential and Erfc; when
/// `dt_coupled` is set those two raise h(i/N) to the power strength * dt,
/// otherwise to the power strength.
struct FilterSpec {
  FilterKind kind = FilterKind::None;
  double strength = 0.0;
  double order = 1.0;
  bool dt_coupled = true;

  /// Throws ConfigError on negative strength or order < 1 where the order matters.
  void validate() const;
};

/// c = log(eps_M) for double precision.
double machine_log_epsilon();

/// Damping factor g_i for moment order i of a degree-N expansion.
double filter_gain(const FilterSpec& spec, int i, int degree, double dt);

/// g_0..g_N.
std::vector<double> filter_gains(const FilterSpec& spec, int degree, double dt);

/// Scales row i of the moment matrix by g_i, identically for every state component.
MomentMatrix apply_filter(const FilterSpec& spec, const MomentMatrix& moments, double dt);
void apply_filter_in_place(std::span<const double> gains, MomentMatrix& moments);

}  // namespace fipm
