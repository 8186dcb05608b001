#include "fipm/dual_solver.hpp"

#include <cmath>
#include <sstream>

namespace fipm {

void DualSolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw ConfigError("dual solver tolerance tau must be > 0");
  if (!(regularization >= 0.0)) throw ConfigError("regularization eta must be >= 0");
  if (max_iterations < 1) throw ConfigError("max Newton iterations must be >= 1");
  if (!(contraction > 0.0 && contraction < 1.0)) throw ConfigError("line-search contraction must lie in (0, 1)");
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < 0.5)) {
    throw ConfigError("sufficient-decrease constant must lie in (0, 0.5)");
  }
  if (max_backtracks < 1) throw ConfigError("max backtracks must be >= 1");
}

namespace {

struct Evaluation {
  double objective = 0.0;
  MomentMatrix gradient;
  Eigen::MatrixXd hessian;
  Eigen::MatrixXd node_states;  // N_q x m
};

// Evaluates objective and gradient (and Hessian on request) at `duals`.
// Returns false if any node leaves the dual domain.
bool evaluate(const DualMatrix& duals, const MomentMatrix& moments, const StochasticDiscretization& disc,
              const EntropyModel& model, double eta, bool with_hessian, Evaluation& out) {
  const int nq = disc.nodes();
  const int n1 = disc.moments();
  const int m = static_cast<int>(duals.cols());
  const auto& weights = disc.quadrature().weights;
  const Eigen::MatrixXd node_duals = disc.phi() * duals;
  out.node_states.resize(nq, m);

  // Per-node Jacobian entries, stored as N_q x m^2 so each block is one product.
  Eigen::MatrixXd jac;
  if (with_hessian) jac.resize(nq, m * m);

  double potential = 0.0;
  DualPointEvaluation point;
  State v(m);
  for (int q = 0; q < nq; ++q) {
    v = node_duals.row(q).transpose();
    if (!model.evaluate_dual(v, point, with_hessian)) return false;
    potential += weights[q] * point.potential;
    out.node_states.row(q) = point.state.transpose();
    if (with_hessian) {
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) jac(q, k * m + l) = point.jacobian(k, l);
    }
  }
  out.objective = potential - duals.cwiseProduct(moments).sum() + 0.5 * eta * duals.squaredNorm();
  out.gradient = disc.projector() * out.node_states + eta * duals - moments;
  if (!std::isfinite(out.objective) || !out.gradient.allFinite()) return false;

  if (with_hessian) {
    const int n = n1 * m;
    out.hessian.setZero(n, n);
    Eigen::MatrixXd scaled(n1, nq);
    for (int k = 0; k < m; ++k) {
      for (int l = k; l < m; ++l) {
        scaled = disc.projector() * jac.col(k * m + l).asDiagonal();
        const Eigen::MatrixXd block = scaled * disc.phi();
        out.hessian.block(k * n1, l * n1, n1, n1) = block;
        if (l != k) out.hessian.block(l * n1, k * n1, n1, n1) = block.transpose();
      }
    }
    out.hessian.diagonal().array() += eta;
  }
  return true;
}

Eigen::Map<const Eigen::VectorXd> flat(const MomentMatrix& a) { return {a.data(), a.size()}; }

}  // namespace

double dual_objective(const DualMatrix& duals, const MomentMatrix& moments, const StochasticDiscretization& disc,
                      const EntropyModel& model, double eta) {
  Evaluation eval;
  if (!evaluate(duals, moments, disc, model, eta, false, eval)) {
    throw DualDomainError("dual_objective: a quadrature node lies outside the dual domain");
  }
  return eval.objective;
}

MomentMatrix dual_gradient(const DualMatrix& duals, const MomentMatrix& moments, const StochasticDiscretization& disc,
                           const EntropyModel& model, double eta) {
  Evaluation eval;
  if (!evaluate(duals, moments, disc, model, eta, false, eval)) {
    throw DualDomainError("dual_gradient: a quadrature node lies outside the dual domain");
  }
  return eval.gradient;
}

Eigen::MatrixXd dual_hessian(const DualMatrix& duals, const StochasticDiscretization& disc, const EntropyModel& model,
                             double eta) {
  Evaluation eval;
  const MomentMatrix zero = MomentMatrix::Zero(duals.rows(), duals.cols());
  if (!evaluate(duals, zero, disc, model, eta, true, eval)) {
    throw DualDomainError("dual_hessian: a quadrature node lies outside the dual domain");
  }
  return eval.hessian;
}

DualMatrix cold_start(const MomentMatrix& moments, const StochasticDiscretization& disc, const EntropyModel& model) {
  const int m = model.state_dim();
  DualMatrix duals = DualMatrix::Zero(disc.moments(), m);
  State mean = moments.row(0).transpose();
  if (!model.admissible(mean)) mean = model.fallback_state();
  duals.row(0) = model.entropy_variables(mean).transpose();
  return duals;
}

DualSolution solve_dual(const MomentMatrix& moments, const DualMatrix& start, const DualSolverConfig& config,
                        const StochasticDiscretization& disc, const EntropyModel& model) {
  const double eta = config.regularization;
  DualSolution result;
  Evaluation current;
  result.duals = start;
  bool ok = start.rows() == disc.moments() && start.cols() == model.state_dim() &&
            evaluate(result.duals, moments, disc, model, eta, true, current);
  if (!ok) {
    result.duals = cold_start(moments, disc, model);
    if (!evaluate(result.duals, moments, disc, model, eta, true, current)) {
      throw DualSolveError("solve_dual: cold start lies outside the dual domain", INFINITY, 0);
    }
  }

  Evaluation trial;
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (int iter = 0;; ++iter) {
    const double grad_norm = current.gradient.norm();
    if (config.record_trace) result.objective_trace.push_back(current.objective);
    result.iterations = iter;
    result.gradient_norm = grad_norm;
    if (grad_norm < config.tolerance) return result;
    if (iter >= config.max_iterations) {
      std::ostringstream msg;
      msg << "solve_dual: no convergence after " << iter << " Newton iterations (gradient norm " << grad_norm << ")";
      throw DualSolveError(msg.str(), grad_norm, iter);
    }

    const Eigen::VectorXd g = flat(current.gradient);
    Eigen::VectorXd direction;
    llt.compute(current.hessian);
    if (llt.info() == Eigen::Success) {
      direction = -llt.solve(g);
    }
    double slope = direction.size() ? g.dot(direction) : 0.0;
    if (!direction.size() || !direction.allFinite() || !(slope < 0.0)) {
      // Factorization failed: steepest descent.
      direction = -g;
      slope = -g.squaredNorm();
    }

    bool accepted = false;
    double step = 1.0;
    DualMatrix candidate(result.duals.rows(), result.duals.cols());
    for (int bt = 0; bt < config.max_backtracks; ++bt, step *= config.contraction) {
      candidate = result.duals + step * Eigen::Map<const MomentMatrix>(direction.data(), result.duals.rows(),
                                                                          result.duals.cols());
      if (!evaluate(candidate, moments, disc, model, eta, false, trial)) continue;
      const bool armijo = trial.objective <= current.objective + config.sufficient_decrease * step * slope;
      // Close to the optimum the objective decrease drops below rounding; the
      // gradient norm is the meaningful merit there.
      const bool roundoff_level = trial.objective <= current.objective + 1e-13 * (1.0 + std::abs(current.objective));
      const bool gradient_decrease = trial.gradient.norm() < (1.0 - config.sufficient_decrease * step) * grad_norm;
      if (armijo || (roundoff_level && gradient_decrease)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      std::ostringstream msg;
      msg << "solve_dual: line search failed at iteration " << iter << " (gradient norm " << grad_norm << ")";
      throw DualSolveError(msg.str(), grad_norm, iter);
    }
    result.duals = candidate;
    if (!evaluate(result.duals, moments, disc, model, eta, true, current)) {
      throw DualSolveError("solve_dual: accepted iterate left the dual domain", grad_norm, iter);
    }
  }
}

State closure_eval(const DualMatrix& duals, double xi, const BasisSet& basis, const EntropyModel& model) {
  std::vector<double> phi(basis.size());
  basis.evaluate_all(xi, phi);
  const Eigen::Map<const Eigen::VectorXd> phi_vec(phi.data(), basis.size());
  const State v = duals.transpose() * phi_vec;
  DualPointEvaluation point;
  if (!model.evaluate_dual(v, point, false)) {
    throw DualDomainError("closure_eval: entropy variables outside the dual domain");
  }
  return point.state;
}

Eigen::MatrixXd ansatz_at_nodes(const DualMatrix& duals, const StochasticDiscretization& disc,
                                const EntropyModel& model) {
  const Eigen::MatrixXd node_duals = disc.phi() * duals;
  Eigen::MatrixXd states(node_duals.rows(), node_duals.cols());
  DualPointEvaluation point;
  State v(node_duals.cols());
  for (Eigen::Index q = 0; q < node_duals.rows(); ++q) {
    v = node_duals.row(q).transpose();
    if (!model.evaluate_dual(v, point, false)) {
      throw DualDomainError("ansatz_at_nodes: node " + std::to_string(q) + " outside the dual domain");
    }
    states.row(q) = point.state.transpose();
  }
  return states;
}

MomentMatrix reconstruct_moments(const DualMatrix& duals, const StochasticDiscretization& disc,
                                 const EntropyModel& model) {
  return disc.projector() * ansatz_at_nodes(duals, disc, model);
}

}  // namespace fipm
