#pragma once

#include <span>

#include "fipm/stat_field.hpp"
#include "fipm/types.hpp"

namespace fipm {

/// (rho, rho v, rho E). Also used for flux vectors of the same layout.
struct ConservedState {
  double density = 0.0;
  double momentum = 0.0;
  double energy = 0.0;

  State to_state() const;
  static ConservedState from_state(const State& u);
};

struct PrimitiveState {
  double density = 0.0;
  double velocity = 0.0;
  double pressure = 0.0;
};

struct GasParams {
  double gamma = 1.4;
};

/// p = (gamma - 1)(E - m^2 / (2 rho)). Throws InadmissibleStateError for rho <= 0.
double pressure(const ConservedState& u, double gamma);

/// rho > 0 and p > 0.
bool is_admissible(const ConservedState& u, double gamma);

ConservedState to_conserved(const PrimitiveState& w, double gamma);
PrimitiveState to_primitive(const ConservedState& u, double gamma);

/// (m, m^2 / rho + p, v (E + p)). Throws for inadmissible states.
ConservedState physical_flux(const ConservedState& u, double gamma);

/// |v| + sqrt(gamma p / rho). Throws for inadmissible states.
double max_wavespeed(const ConservedState& u, double gamma);

/// Local Lax-Friedrichs (Rusanov) flux.
ConservedState numerical_flux(const ConservedState& left, const ConservedState& right, double gamma);

/// Exact solution of the 1D Euler Riemann problem (no vacuum).
class ExactRiemannSolver {
 public:
  /// Throws DomainError on nonpositive input, vacuum generation, or if the
  /// pressure iteration does not converge in 100 steps to 1e-12.
  ExactRiemannSolver(const PrimitiveState& left, const PrimitiveState& right, double gamma);

  double star_pressure() const { return p_star_; }
  double star_velocity() const { return u_star_; }
  int newton_iterations() const { return iterations_; }

  /// f_L(p) + f_R(p) + (v_R - v_L); its root is the star pressure.
  double pressure_function(double p) const;

  /// Solution at similarity coordinate zeta = (x - x_interface) / t.
  PrimitiveState sample(double zeta) const;

 private:
  double side_function(double p, const PrimitiveState& side, double sound_speed) const;
  double side_derivative(double p, const PrimitiveState& side, double sound_speed) const;

  PrimitiveState left_;
  PrimitiveState right_;
  double gamma_;
  double c_left_;
  double c_right_;
  double p_star_ = 0.0;
  double u_star_ = 0.0;
  int iterations_ = 0;
};

PrimitiveState exact_riemann(const PrimitiveState& left, const PrimitiveState& right, double zeta, double gamma);

/// Mean and variance of the conserved variables of the exact solution with a
/// uniformly random interface x0 + sigma xi, xi ~ U[-1, 1], evaluated with an
/// `quad_points`-node Gauss-Legendre rule at each x.
StatField reference_statistics(std::span<const double> xs, double dx, double t, double x0, double sigma,
                               const PrimitiveState& left, const PrimitiveState& right, double gamma,
                               int quad_points = 100);

}  // namespace fipm
