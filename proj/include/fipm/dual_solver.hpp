#pragma once

#include <stdexcept>
#include <vector>

#include "fipm/entropy.hpp"
#include "fipm/gpc_basis.hpp"
#include "fipm/types.hpp"

namespace fipm {

struct DualSolverConfig {
  double tolerance = 1e-7;       // tau, on the Frobenius norm of the dual gradient
  double regularization = 0.0;   // eta
  int max_iterations = 200;
  double contraction = 0.5;
  double sufficient_decrease = 1e-4;
  int max_backtracks = 50;
  bool record_trace = false;

  void validate() const;
};

/// Newton iteration cap or line-search failure. Near the realizable boundary
/// (or for nonrealizable moments with eta = 0) this is the expected outcome.
class DualSolveError : public std::runtime_error {
 public:
  DualSolveError(const std::string& what, double gradient_norm, int iterations)
      : std::runtime_error(what), gradient_norm_(gradient_norm), iterations_(iterations) {}

  double gradient_norm() const { return gradient_norm_; }
  int iterations() const { return iterations_; }

 private:
  double gradient_norm_;
  int iterations_;
};

/// Some quadrature node left the dual domain of s_*.
class DualDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct DualSolution {
  DualMatrix duals;
  int iterations = 0;
  double gradient_norm = 0.0;
  std::vector<double> objective_trace;  // filled when config.record_trace
};

/// sum_q w_q s_*(v^T phi(xi_q)) - v . u + eta/2 |v|^2
double dual_objective(const DualMatrix& duals, const MomentMatrix& moments, const StochasticDiscretization& disc,
                      const EntropyModel& model, double eta);

/// <phi s'_*(v^T phi)> + eta v - u
MomentMatrix dual_gradient(const DualMatrix& duals, const MomentMatrix& moments, const StochasticDiscretization& disc,
                           const EntropyModel& model, double eta);

/// Hessian of the dual objective on the flattened unknowns; entry (i, k) maps
/// to index i + (N+1) k (column-major flattening of the (N+1) x m matrix).
Eigen::MatrixXd dual_hessian(const DualMatrix& duals, const StochasticDiscretization& disc, const EntropyModel& model,
                             double eta);

/// Row 0 = s'(mean state) (or of the model's fallback state), higher rows zero.
DualMatrix cold_start(const MomentMatrix& moments, const StochasticDiscretization& disc, const EntropyModel& model);

/// Damped Newton on the dual objective. `start` is used when it evaluates,
/// otherwise the solve begins from cold_start(). Throws DualSolveError.
DualSolution solve_dual(const MomentMatrix& moments, const DualMatrix& start, const DualSolverConfig& config,
                        const StochasticDiscretization& disc, const EntropyModel& model);

/// u(xi) = s'_*(v^T phi(xi)).
State closure_eval(const DualMatrix& duals, double xi, const BasisSet& basis, const EntropyModel& model);

/// Ansatz at every quadrature node, N_q x m. Throws DualDomainError.
Eigen::MatrixXd ansatz_at_nodes(const DualMatrix& duals, const StochasticDiscretization& disc,
                                const EntropyModel& model);

/// <phi s'_*(v^T phi)>, the moments of the ansatz under the quadrature measure.
MomentMatrix reconstruct_moments(const DualMatrix& duals, const StochasticDiscretization& disc,
                                 const EntropyModel& model);

}  // namespace fipm
