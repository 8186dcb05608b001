#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "fipm/types.hpp"

namespace fipm {

/// Deterministic physics of u_t + f(u)_x = 0 on point states. The moment
/// solvers apply it node-wise in xi.
class FluxModel {
 public:
  virtual ~FluxModel() = default;

  virtual int state_dim() const = 0;
  virtual bool admissible(const State& u) const = 0;
  virtual State flux(const State& u) const = 0;
  virtual double max_wavespeed(const State& u) const = 0;
  virtual std::vector<std::string> component_names() const = 0;

  /// Local Lax-Friedrichs: 1/2 (f(l) + f(r)) - 1/2 max(a(l), a(r)) (r - l).
  virtual State numerical_flux(const State& left, const State& right) const;
};

class EulerFlux final : public FluxModel {
 public:
  explicit EulerFlux(double gamma = 1.4) : gamma_(gamma) {}

  int state_dim() const override { return 3; }
  bool admissible(const State& u) const override;
  State flux(const State& u) const override;
  double max_wavespeed(const State& u) const override;
  std::vector<std::string> component_names() const override { return {"rho", "m", "E"}; }
  State numerical_flux(const State& left, const State& right) const override;

  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

/// f(u) = a u. LLF reduces to upwinding.
class LinearAdvectionFlux final : public FluxModel {
 public:
  explicit LinearAdvectionFlux(double speed) : speed_(speed) {}

  int state_dim() const override { return 1; }
  bool admissible(const State& u) const override { return u.size() == 1 && std::isfinite(u[0]); }
  State flux(const State& u) const override { return speed_ * u; }
  double max_wavespeed(const State&) const override { return std::abs(speed_); }
  std::vector<std::string> component_names() const override { return {"u"}; }

  double speed() const { return speed_; }

 private:
  double speed_;
};

}  // namespace fipm
