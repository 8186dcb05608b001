#pragma once

#include <memory>

#include "fipm/types.hpp"

namespace fipm {

/// Result of evaluating the Legendre dual at one entropy-variable point.
struct DualPointEvaluation {
  double potential = 0.0;  // s_*(v)
  State state;             // s'_*(v) = (s')^{-1}(v)
  StateJacobian jacobian;  // D s'_*(v), symmetric positive definite
};

/// Strictly convex entropy s on the admissible set R_u together with its
/// Legendre dual. Implementations are stateless apart from parameters and
/// safe to share between threads.
class EntropyModel {
 public:
  virtual ~EntropyModel() = default;

  virtual int state_dim() const = 0;

  /// u in R_u.
  virtual bool admissible(const State& u) const = 0;
  virtual double entropy(const State& u) const = 0;
  /// v = s'(u).
  virtual State entropy_variables(const State& u) const = 0;

  /// Evaluates s_*, s'_* and optionally D s'_* at v. Returns false when v lies
  /// outside the dual domain (or the result would overflow); `out` is then unspecified.
  virtual bool evaluate_dual(const State& v, DualPointEvaluation& out, bool with_jacobian) const = 0;

  /// Convenience wrappers that throw DomainError outside the dual domain.
  State ansatz(const State& v) const;
  double dual_potential(const State& v) const;
  StateJacobian ansatz_jacobian(const State& v) const;

  /// Admissible state used to cold-start the dual solver when a cell mean is not admissible.
  virtual State fallback_state() const = 0;
};

/// s(u) = u log u on (0, inf); s_*(v) = exp(v - 1).
class LogEntropy final : public EntropyModel {
 public:
  int state_dim() const override { return 1; }
  bool admissible(const State& u) const override;
  double entropy(const State& u) const override;
  State entropy_variables(const State& u) const override;
  bool evaluate_dual(const State& v, DualPointEvaluation& out, bool with_jacobian) const override;
  State fallback_state() const override;
};

/// s(u) = (u - lo) log(u - lo) + (hi - u) log(hi - u) on (lo, hi).
class BoundedEntropy final : public EntropyModel {
 public:
  BoundedEntropy(double lower, double upper);

  int state_dim() const override { return 1; }
  bool admissible(const State& u) const override;
  double entropy(const State& u) const override;
  State entropy_variables(const State& u) const override;
  bool evaluate_dual(const State& v, DualPointEvaluation& out, bool with_jacobian) const override;
  State fallback_state() const override;

  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

/// Convex 1D Euler entropy s(rho, m, E) = -rho log(rho^-gamma (E - m^2 / (2 rho))),
/// conserved variables (rho, m = rho v, E = rho e). Entropy variables
/// v = (gamma + log(rho^gamma / eps) - m^2 / (2 rho eps), m / eps, -rho / eps)
/// with eps = E - m^2 / (2 rho); the dual domain is v_2 < 0 and s_* = (gamma - 1) rho.
class EulerEntropy final : public EntropyModel {
 public:
  explicit EulerEntropy(double gamma = 1.4);

  int state_dim() const override { return 3; }
  bool admissible(const State& u) const override;
  double entropy(const State& u) const override;
  State entropy_variables(const State& u) const override;
  bool evaluate_dual(const State& v, DualPointEvaluation& out, bool with_jacobian) const override;
  State fallback_state() const override;

  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

}  // namespace fipm
