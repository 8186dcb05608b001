#include "fipm/gpc_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fipm {

double eigenvalue(PolynomialFamily family, int i) {
  if (i < 0) throw DomainError("eigenvalue: negative order " + std::to_string(i));
  const double di = i;
  switch (family) {
    case PolynomialFamily::Legendre:
      return -di * (di + 1.0);
    case PolynomialFamily::Chebyshev:
      return -di * di;
    case PolynomialFamily::Hermite:
      return -2.0 * di;
    case PolynomialFamily::Laguerre:
      return -di;
  }
  throw DomainError("eigenvalue: unknown polynomial family");
}

double legendre(int i, double x) {
  if (i < 0) throw DomainError("legendre: negative order");
  if (i == 0) return 1.0;
  double p_prev = 1.0;
  double p = x;
  for (int n = 1; n < i; ++n) {
    const double p_next = ((2.0 * n + 1.0) * x * p - n * p_prev) / (n + 1.0);
    p_prev = p;
    p = p_next;
  }
  return p;
}

BasisSet::BasisSet(int degree, PolynomialFamily family) : degree_(degree), family_(family) {
  if (degree < 0) throw DomainError("BasisSet: degree must be >= 0");
}

double BasisSet::eigenvalue(int i) const {
  if (i < 0 || i > degree_) throw DomainError("BasisSet::eigenvalue: order out of range");
  return fipm::eigenvalue(family_, i);
}

double BasisSet::operator()(int i, double xi) const {
  if (family_ != PolynomialFamily::Legendre) {
    throw DomainError("BasisSet: only the Legendre family can be evaluated");
  }
  if (i < 0 || i > degree_) {
    throw DomainError("basis_eval: order " + std::to_string(i) + " outside 0.." + std::to_string(degree_));
  }
  if (!(xi >= -1.0 && xi <= 1.0)) throw DomainError("basis_eval: xi outside [-1, 1]");
  return std::sqrt(2.0 * i + 1.0) * legendre(i, xi);
}

void BasisSet::evaluate_all(double xi, std::span<double> out) const {
  if (family_ != PolynomialFamily::Legendre) {
    throw DomainError("BasisSet: only the Legendre family can be evaluated");
  }
  if (static_cast<int>(out.size()) < size()) throw DomainError("evaluate_all: output span too small");
  if (!(xi >= -1.0 && xi <= 1.0)) throw DomainError("basis_eval: xi outside [-1, 1]");
  double p_prev = 1.0;
  double p = xi;
  out[0] = 1.0;
  if (degree_ >= 1) out[1] = std::sqrt(3.0) * xi;
  for (int n = 1; n < degree_; ++n) {
    const double p_next = ((2.0 * n + 1.0) * xi * p - n * p_prev) / (n + 1.0);
    p_prev = p;
    p = p_next;
    out[n + 1] = std::sqrt(2.0 * n + 3.0) * p;
  }
}

double basis_eval(const BasisSet& basis, int i, double xi) { return basis(i, xi); }

QuadratureRule gauss_rule(int count) {
  if (count < 1) throw DomainError("gauss_rule: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const int half = (count + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Tricomi initial guess for the k-th largest root, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (k + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int n = 1; n < count; ++n) {
        const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int n = 1; n < count; ++n) {
      const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    // Probability normalization halves the classical weight 2 / ((1-x^2) P'^2).
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[k] = -x;
    rule.nodes[count - 1 - k] = x;
    rule.weights[k] = w;
    rule.weights[count - 1 - k] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

Eigen::MatrixXd vandermonde(const BasisSet& basis, const QuadratureRule& quad) {
  Eigen::MatrixXd phi(quad.size(), basis.size());
  std::vector<double> row(basis.size());
  for (int k = 0; k < quad.size(); ++k) {
    basis.evaluate_all(quad.nodes[k], row);
    for (int i = 0; i < basis.size(); ++i) phi(k, i) = row[i];
  }
  return phi;
}

StochasticDiscretization::StochasticDiscretization(int degree, int quad_points)
    : basis_(degree), quad_(gauss_rule(quad_points)), phi_(vandermonde(basis_, quad_)) {
  projector_ = phi_.transpose();
  for (int k = 0; k < quad_.size(); ++k) projector_.col(k) *= quad_.weights[k];
}

}  // namespace fipm
