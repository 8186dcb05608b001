#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fipm/dual_solver.hpp"
#include "fipm/realizability.hpp"

using namespace fipm;

namespace {

double fd_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

void check_derivatives(const DualMatrix& v, const MomentMatrix& u, const StochasticDiscretization& disc,
                       const EntropyModel& model, double eta) {
  const MomentMatrix grad = dual_gradient(v, u, disc, model, eta);
  const Eigen::MatrixXd hess = dual_hessian(v, disc, model, eta);
  const int rows = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd fd_grad(n);
  Eigen::MatrixXd fd_hess(n, n);
  for (int a = 0; a < n; ++a) {
    const int i = a % rows, k = a / rows;
    const double h = fd_step(v(i, k));
    DualMatrix plus = v, minus = v;
    plus(i, k) += h;
    minus(i, k) -= h;
    fd_grad[a] = (dual_objective(plus, u, disc, model, eta) - dual_objective(minus, u, disc, model, eta)) / (2 * h);
    const MomentMatrix dg = (dual_gradient(plus, u, disc, model, eta) - dual_gradient(minus, u, disc, model, eta)) /
                            (2 * h);
    fd_hess.col(a) = Eigen::Map<const Eigen::VectorXd>(dg.data(), n);
  }
  const Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(grad.data(), n);
  CHECK((fd_grad - g).norm() <= 1e-6 * std::max(1.0, g.norm()));
  CHECK((fd_hess - hess).norm() <= 1e-5 * std::max(1.0, hess.norm()));
}

DualMatrix euler_interior_dual(std::mt19937_64& rng, const StochasticDiscretization& disc, const EulerEntropy& model) {
  std::uniform_real_distribution<double> rho(0.2, 2.0), vel(-1.0, 1.0), p(0.1, 2.0), small(-0.05, 0.05);
  const double r = rho(rng), s = vel(rng), q = p(rng);
  State u(3);
  u << r, r * s, q / 0.4 + 0.5 * r * s * s;
  DualMatrix v = DualMatrix::Zero(disc.moments(), 3);
  v.row(0) = model.entropy_variables(u).transpose();
  for (int i = 1; i < disc.moments(); ++i) {
    for (int k = 0; k < 3; ++k) v(i, k) = small(rng) * std::abs(v(0, k));
  }
  return v;
}

}  // namespace

TEST_CASE("scalar dual derivatives at random points") {
  const StochasticDiscretization disc(4, 10);
  const LogEntropy model;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-0.5, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    DualMatrix v(5, 1);
    for (int i = 0; i < 5; ++i) v(i, 0) = coef(rng);
    MomentMatrix u = MomentMatrix::Random(5, 1);
    u(0, 0) = 1.0;
    check_derivatives(v, u, disc, model, trial % 2 ? 1e-3 : 0.0);
  }
}

TEST_CASE("Euler dual derivatives at random points") {
  const StochasticDiscretization disc(3, 8);
  const EulerEntropy model(1.4);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const DualMatrix v = euler_interior_dual(rng, disc, model);
    const MomentMatrix u = reconstruct_moments(v, disc, model) * 1.01;
    check_derivatives(v, u, disc, model, trial % 2 ? 1e-3 : 0.0);
  }
}

TEST_CASE("duality round trip") {
  DualSolverConfig config;
  config.tolerance = 1e-7;
  for (int degree = 1; degree <= 5; ++degree) {
    const StochasticDiscretization disc(degree, 2 * (degree + 1) + 4);
    const LogEntropy scalar;
    for (const MomentMatrix& u : sample_realizable(10, degree, 100 + degree, 1.0)) {
      const DualMatrix start = cold_start(u, disc, scalar);
      const DualSolution sol = solve_dual(u, start, config, disc, scalar);
      CHECK((reconstruct_moments(sol.duals, disc, scalar) - u).norm() <= 10 * config.tolerance);
    }
    const EulerEntropy euler(1.4);
    std::mt19937_64 rng(200 + degree);
    for (int trial = 0; trial < 10; ++trial) {
      const DualMatrix v = euler_interior_dual(rng, disc, euler);
      const MomentMatrix u = reconstruct_moments(v, disc, euler);
      const DualSolution sol = solve_dual(u, cold_start(u, disc, euler), config, disc, euler);
      CHECK((reconstruct_moments(sol.duals, disc, euler) - u).norm() <= 10 * config.tolerance);
      CHECK((sol.duals - v).norm() < 1e-4 * v.norm());
    }
  }
}

TEST_CASE("Newton objective decreases monotonically") {
  const StochasticDiscretization disc(5, 16);
  const EulerEntropy model(1.4);
  std::mt19937_64 rng(5);
  DualSolverConfig config;
  config.record_trace = true;
  const MomentMatrix u = reconstruct_moments(euler_interior_dual(rng, disc, model), disc, model);
  const DualSolution sol = solve_dual(u, cold_start(u, disc, model), config, disc, model);
  REQUIRE(sol.objective_trace.size() >= 2);
  for (std::size_t k = 1; k < sol.objective_trace.size(); ++k) {
    CHECK(sol.objective_trace[k] <= sol.objective_trace[k - 1] + 1e-14 * std::abs(sol.objective_trace[k - 1]));
  }
  CHECK(sol.gradient_norm <= config.tolerance);
}

TEST_CASE("nonrealizable moments need regularization") {
  const StochasticDiscretization disc(2, 6);
  const LogEntropy model;
  MomentMatrix u(3, 1);
  u << 1.0, 1.9, 0.0;  // |u1| beyond sqrt(3): no positive density has these moments
  DualSolverConfig plain;
  plain.max_iterations = 60;
  CHECK_THROWS_AS(solve_dual(u, cold_start(u, disc, model), plain, disc, model), DualSolveError);
  DualSolverConfig reg = plain;
  reg.regularization = 1e-2;
  reg.max_iterations = 200;
  const DualSolution sol = solve_dual(u, cold_start(u, disc, model), reg, disc, model);
  CHECK(dual_gradient(sol.duals, u, disc, model, 1e-2).norm() <= reg.tolerance);
}

TEST_CASE("constant moments give constant duals") {
  const StochasticDiscretization disc(4, 10);
  const EulerEntropy model(1.4);
  MomentMatrix u = MomentMatrix::Zero(5, 3);
  u.row(0) << 1.0, 0.0, 2.5;
  const DualSolution sol = solve_dual(u, cold_start(u, disc, model), DualSolverConfig{}, disc, model);
  CHECK(sol.duals.bottomRows(4).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(sol.iterations <= 1);
}

TEST_CASE("solver configuration validation") {
  DualSolverConfig c;
  c.tolerance = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = DualSolverConfig{};
  c.regularization = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
