#include "fipm/euler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fipm/gpc_basis.hpp"

namespace fipm {

State ConservedState::to_state() const {
  State u(3);
  u << density, momentum, energy;
  return u;
}

ConservedState ConservedState::from_state(const State& u) { return {u[0], u[1], u[2]}; }

double pressure(const ConservedState& u, double gamma) {
  if (!(u.density > 0.0)) throw InadmissibleStateError("pressure: density must be positive");
  return (gamma - 1.0) * (u.energy - 0.5 * u.momentum * u.momentum / u.density);
}

bool is_admissible(const ConservedState& u, double gamma) {
  if (!(u.density > 0.0) || !std::isfinite(u.momentum) || !std::isfinite(u.energy)) return false;
  return pressure(u, gamma) > 0.0;
}

namespace {

void require_admissible(const ConservedState& u, double gamma, const char* where) {
  if (!is_admissible(u, gamma)) {
    std::ostringstream msg;
    msg << where << ": inadmissible state (rho=" << u.density << ", m=" << u.momentum << ", E=" << u.energy << ")";
    throw InadmissibleStateError(msg.str());
  }
}

}  // namespace

ConservedState to_conserved(const PrimitiveState& w, double gamma) {
  return {w.density, w.density * w.velocity, w.pressure / (gamma - 1.0) + 0.5 * w.density * w.velocity * w.velocity};
}

PrimitiveState to_primitive(const ConservedState& u, double gamma) {
  return {u.density, u.momentum / u.density, pressure(u, gamma)};
}

ConservedState physical_flux(const ConservedState& u, double gamma) {
  require_admissible(u, gamma, "physical_flux");
  const double p = pressure(u, gamma);
  const double v = u.momentum / u.density;
  return {u.momentum, u.momentum * v + p, v * (u.energy + p)};
}

double max_wavespeed(const ConservedState& u, double gamma) {
  require_admissible(u, gamma, "max_wavespeed");
  const double p = pressure(u, gamma);
  return std::abs(u.momentum / u.density) + std::sqrt(gamma * p / u.density);
}

ConservedState numerical_flux(const ConservedState& left, const ConservedState& right, double gamma) {
  const ConservedState fl = physical_flux(left, gamma);
  const ConservedState fr = physical_flux(right, gamma);
  const double a = std::max(max_wavespeed(left, gamma), max_wavespeed(right, gamma));
  return {0.5 * (fl.density + fr.density) - 0.5 * a * (right.density - left.density),
          0.5 * (fl.momentum + fr.momentum) - 0.5 * a * (right.momentum - left.momentum),
          0.5 * (fl.energy + fr.energy) - 0.5 * a * (right.energy - left.energy)};
}

// ---------------------------------------------------------------------------

ExactRiemannSolver::ExactRiemannSolver(const PrimitiveState& left, const PrimitiveState& right, double gamma)
    : left_(left), right_(right), gamma_(gamma) {
  if (!(gamma > 1.0)) throw DomainError("exact_riemann: gamma must exceed 1");
  if (!(left.density > 0.0 && left.pressure > 0.0 && right.density > 0.0 && right.pressure > 0.0)) {
    throw DomainError("exact_riemann: densities and pressures must be positive");
  }
  c_left_ = std::sqrt(gamma * left.pressure / left.density);
  c_right_ = std::sqrt(gamma * right.pressure / right.density);
  const double dv = right.velocity - left.velocity;
  if (2.0 / (gamma - 1.0) * (c_left_ + c_right_) <= dv) {
    throw DomainError("exact_riemann: initial data generate vacuum");
  }

  // Two-rarefaction approximation as the starting pressure.
  const double z = (gamma - 1.0) / (2.0 * gamma);
  double p = std::pow((c_left_ + c_right_ - 0.5 * (gamma - 1.0) * dv) /
                          (c_left_ / std::pow(left.pressure, z) + c_right_ / std::pow(right.pressure, z)),
                      1.0 / z);
  p = std::max(p, 1e-12);
  bool converged = false;
  for (iterations_ = 1; iterations_ <= 100; ++iterations_) {
    const double f = pressure_function(p);
    const double df = side_derivative(p, left_, c_left_) + side_derivative(p, right_, c_right_);
    double p_new = p - f / df;
    if (p_new < 0.0) p_new = 1e-12;
    const double change = 2.0 * std::abs(p_new - p) / (p_new + p);
    p = p_new;
    if (change < 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) throw DomainError("exact_riemann: pressure iteration did not converge in 100 steps");
  p_star_ = p;
  u_star_ = 0.5 * (left.velocity + right.velocity) +
            0.5 * (side_function(p, right_, c_right_) - side_function(p, left_, c_left_));
}

double ExactRiemannSolver::side_function(double p, const PrimitiveState& side, double c) const {
  if (p > side.pressure) {
    const double a = 2.0 / ((gamma_ + 1.0) * side.density);
    const double b = (gamma_ - 1.0) / (gamma_ + 1.0) * side.pressure;
    return (p - side.pressure) * std::sqrt(a / (p + b));
  }
  return 2.0 * c / (gamma_ - 1.0) * (std::pow(p / side.pressure, (gamma_ - 1.0) / (2.0 * gamma_)) - 1.0);
}

double ExactRiemannSolver::side_derivative(double p, const PrimitiveState& side, double c) const {
  if (p > side.pressure) {
    const double a = 2.0 / ((gamma_ + 1.0) * side.density);
    const double b = (gamma_ - 1.0) / (gamma_ + 1.0) * side.pressure;
    return std::sqrt(a / (b + p)) * (1.0 - 0.5 * (p - side.pressure) / (b + p));
  }
  return std::pow(p / side.pressure, -(gamma_ + 1.0) / (2.0 * gamma_)) / (side.density * c);
}

double ExactRiemannSolver::pressure_function(double p) const {
  return side_function(p, left_, c_left_) + side_function(p, right_, c_right_) + (right_.velocity - left_.velocity);
}

PrimitiveState ExactRiemannSolver::sample(double zeta) const {
  const double g = gamma_;
  const double g1 = (g - 1.0) / (2.0 * g);
  const double g2 = (g + 1.0) / (2.0 * g);
  const double g4 = 2.0 / (g - 1.0);
  const double g5 = 2.0 / (g + 1.0);
  const double g6 = (g - 1.0) / (g + 1.0);
  const double g7 = (g - 1.0) / 2.0;
  const double g3 = 2.0 * g / (g - 1.0);

  if (zeta <= u_star_) {
    const auto& w = left_;
    const double c = c_left_;
    const double ratio = p_star_ / w.pressure;
    if (p_star_ > w.pressure) {
      const double shock = w.velocity - c * std::sqrt(g2 * ratio + g1);
      if (zeta <= shock) return w;
      return {w.density * (ratio + g6) / (g6 * ratio + 1.0), u_star_, p_star_};
    }
    const double head = w.velocity - c;
    if (zeta <= head) return w;
    const double tail = u_star_ - c * std::pow(ratio, g1);
    if (zeta > tail) return {w.density * std::pow(ratio, 1.0 / g), u_star_, p_star_};
    const double cf = g5 * (c + g7 * (w.velocity - zeta));
    return {w.density * std::pow(cf / c, g4), g5 * (c + g7 * w.velocity + zeta), w.pressure * std::pow(cf / c, g3)};
  }

  const auto& w = right_;
  const double c = c_right_;
  const double ratio = p_star_ / w.pressure;
  if (p_star_ > w.pressure) {
    const double shock = w.velocity + c * std::sqrt(g2 * ratio + g1);
    if (zeta >= shock) return w;
    return {w.density * (ratio + g6) / (g6 * ratio + 1.0), u_star_, p_star_};
  }
  const double head = w.velocity + c;
  if (zeta >= head) return w;
  const double tail = u_star_ + c * std::pow(ratio, g1);
  if (zeta <= tail) return {w.density * std::pow(ratio, 1.0 / g), u_star_, p_star_};
  const double cf = g5 * (c - g7 * (w.velocity - zeta));
  return {w.density * std::pow(cf / c, g4), g5 * (-c + g7 * w.velocity + zeta), w.pressure * std::pow(cf / c, g3)};
}

PrimitiveState exact_riemann(const PrimitiveState& left, const PrimitiveState& right, double zeta, double gamma) {
  return ExactRiemannSolver(left, right, gamma).sample(zeta);
}

StatField reference_statistics(std::span<const double> xs, double dx, double t, double x0, double sigma,
                               const PrimitiveState& left, const PrimitiveState& right, double gamma,
                               int quad_points) {
  if (!(t > 0.0)) throw DomainError("reference_statistics: t must be > 0");
  if (!(sigma >= 0.0)) throw DomainError("reference_statistics: sigma must be >= 0");
  const ExactRiemannSolver solver(left, right, gamma);
  // A deterministic interface needs one exact sample.
  const QuadratureRule rule = sigma > 0.0 ? gauss_rule(quad_points) : QuadratureRule{{0.0}, {1.0}};
  const int n = static_cast<int>(xs.size());
  StatField stats;
  stats.x.assign(xs.begin(), xs.end());
  stats.dx = dx;
  stats.mean.setZero(n, 3);
  stats.variance.setZero(n, 3);
  stats.component_names = {"rho", "m", "E"};
  Eigen::MatrixXd samples(rule.size(), 3);
  for (int j = 0; j < n; ++j) {
    for (int q = 0; q < rule.size(); ++q) {
      const double zeta = (xs[j] - x0 - sigma * rule.nodes[q]) / t;
      const ConservedState u = to_conserved(solver.sample(zeta), gamma);
      samples.row(q) << u.density, u.momentum, u.energy;
    }
    for (int k = 0; k < 3; ++k) {
      double mean = 0.0;
      for (int q = 0; q < rule.size(); ++q) mean += rule.weights[q] * samples(q, k);
      double var = 0.0;
      for (int q = 0; q < rule.size(); ++q) var += rule.weights[q] * (samples(q, k) - mean) * (samples(q, k) - mean);
      stats.mean(j, k) = mean;
      stats.variance(j, k) = var;
    }
  }
  return stats;
}

}  // namespace fipm
