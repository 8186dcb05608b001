#include "fipm/filters.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fipm {

FilterKind parse_filter_kind(std::string_view name) {
  if (name == "none") return FilterKind::None;
  if (name == "l2") return FilterKind::L2;
  if (name == "exponential" || name == "exp") return FilterKind::Exponential;
  if (name == "erfc") return FilterKind::Erfc;
  if (name == "fokker-planck" || name == "fp") return FilterKind::FokkerPlanck;
  throw ConfigError("unknown filter kind '" + std::string(name) + "'");
}

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::None: return "none";
    case FilterKind::L2: return "l2";
    case FilterKind::Exponential: return "exponential";
    case FilterKind::Erfc: return "erfc";
    case FilterKind::FokkerPlanck: return "fokker-planck";
  }
  return "?";
}

void FilterSpec::validate() const {
  if (!(strength >= 0.0) || !std::isfinite(strength)) {
    throw ConfigError("filter strength must be finite and >= 0");
  }
  if ((kind == FilterKind::Exponential || kind == FilterKind::Erfc) && !(order >= 1.0)) {
    throw ConfigError("filter order must be >= 1 for exponential/erfc filters");
  }
}

double machine_log_epsilon() { return std::log(std::numeric_limits<double>::epsilon()); }

double filter_gain(const FilterSpec& spec, int i, int degree, double dt) {
  if (i < 0 || i > degree) throw DomainError("filter_gain: order outside 0..N");
  const double di = i;
  switch (spec.kind) {
    case FilterKind::None:
      return 1.0;
    case FilterKind::L2:
      return 1.0 / (1.0 + spec.strength * di * di * (di + 1.0) * (di + 1.0));
    case FilterKind::FokkerPlanck:
      return std::exp(eigenvalue(PolynomialFamily::Legendre, i) * spec.strength);
    case FilterKind::Exponential:
    case FilterKind::Erfc: {
      if (spec.dt_coupled && !(dt > 0.0)) throw DomainError("filter_gain: dt must be > 0 for dt-coupled filters");
      const double exponent = spec.dt_coupled ? spec.strength * dt : spec.strength;
      const double zeta = degree == 0 ? 0.0 : di / degree;
      if (spec.kind == FilterKind::Exponential) {
        return std::exp(exponent * machine_log_epsilon() * std::pow(zeta, spec.order));
      }
      const double h = 0.5 * std::erfc(2.0 * std::sqrt(spec.order) * (std::abs(zeta) - 0.5));
      return std::pow(h, exponent);
    }
  }
  throw ConfigError("filter_gain: unknown filter kind");
}

std::vector<double> filter_gains(const FilterSpec& spec, int degree, double dt) {
  std::vector<double> gains(degree + 1);
  for (int i = 0; i <= degree; ++i) gains[i] = filter_gain(spec, i, degree, dt);
  return gains;
}

void apply_filter_in_place(std::span<const double> gains, MomentMatrix& moments) {
  for (Eigen::Index i = 0; i < moments.rows(); ++i) moments.row(i) *= gains[i];
}

MomentMatrix apply_filter(const FilterSpec& spec, const MomentMatrix& moments, double dt) {
  MomentMatrix out = moments;
  if (spec.kind == FilterKind::None) return out;
  const auto gains = filter_gains(spec, static_cast<int>(moments.rows()) - 1, dt);
  apply_filter_in_place(gains, out);
  return out;
}

}  // namespace fipm
