#pragma once

#include <span>
#include <vector>

#include "fipm/types.hpp"

namespace fipm {

/// Orthogonal polynomial families with a Sturm-Liouville characterization.
/// Only Legendre (uniform xi on [-1, 1]) can be evaluated; the others exist
/// for their eigenvalue constants.
enum class PolynomialFamily { Legendre, Chebyshev, Hermite, Laguerre };

/// Sturm-Liouville eigenvalue mu_i of the family's eigenoperator.
double eigenvalue(PolynomialFamily family, int i);

/// Classical (non-normalized) Legendre polynomial P_i(x), three-term recurrence.
double legendre(int i, double x);

/// Orthonormal gPC basis phi_0..phi_N under the probability measure of xi.
class BasisSet {
 public:
  explicit BasisSet(int degree, PolynomialFamily family = PolynomialFamily::Legendre);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  PolynomialFamily family() const { return family_; }
  double eigenvalue(int i) const;

  /// phi_i(xi) = sqrt(2i+1) P_i(xi). Throws DomainError for i > N or xi outside [-1, 1].
  double operator()(int i, double xi) const;

  /// phi_0(xi)..phi_N(xi) in one recurrence sweep; `out` must hold size() values.
  void evaluate_all(double xi, std::span<double> out) const;

 private:
  int degree_;
  PolynomialFamily family_;
};

double basis_eval(const BasisSet& basis, int i, double xi);

/// Gauss-Legendre rule normalized to the probability measure f = 1/2 on [-1, 1]:
/// weights sum to one, so <g> = sum_k w_k g(xi_k).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

QuadratureRule gauss_rule(int count);

/// Phi[k][i] = phi_i(xi_k), an N_q x (N+1) table.
Eigen::MatrixXd vandermonde(const BasisSet& basis, const QuadratureRule& quad);

/// Basis + quadrature + their evaluation table, bundled because every closure
/// and flux kernel needs all three together. Immutable after construction.
class StochasticDiscretization {
 public:
  StochasticDiscretization(int degree, int quad_points);

  const BasisSet& basis() const { return basis_; }
  const QuadratureRule& quadrature() const { return quad_; }
  /// N_q x (N+1)
  const Eigen::MatrixXd& phi() const { return phi_; }
  /// Phi^T diag(w), (N+1) x N_q; maps node values to moments.
  const Eigen::MatrixXd& projector() const { return projector_; }
  int moments() const { return basis_.size(); }
  int nodes() const { return quad_.size(); }

 private:
  BasisSet basis_;
  QuadratureRule quad_;
  Eigen::MatrixXd phi_;
  Eigen::MatrixXd projector_;
};

}  // namespace fipm
