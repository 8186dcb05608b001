#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fipm/conservation_law.hpp"
#include "fipm/dual_solver.hpp"
#include "fipm/entropy.hpp"
#include "fipm/euler.hpp"
#include "fipm/filters.hpp"
#include "fipm/gpc_basis.hpp"
#include "fipm/parallel.hpp"
#include "fipm/types.hpp"

namespace fipm {

enum class ClosureKind { SG, FilteredSG, IPM, RealizableFilteredIPM, RegularizedFilteredIPM };

ClosureKind parse_closure_kind(std::string_view name);
std::string_view to_string(ClosureKind kind);
/// True for the three entropy-based closures.
bool uses_duals(ClosureKind kind);

struct GridConfig {
  double domain_min = 0.0;
  double domain_max = 1.0;
  int cells = 100;
  double t_end = 0.1;
  double cfl = 0.5;

  double dx() const { return (domain_max - domain_min) / cells; }
  double center(int j) const { return domain_min + (j + 0.5) * dx(); }
  std::vector<double> centers() const;
  void validate() const;
};

/// Riemann data with random interface x0 + sigma xi, xi ~ U[-1, 1].
struct UncertainShockIC {
  PrimitiveState left{1.0, 0.0, 1.0};
  PrimitiveState right{0.125, 0.0, 0.1};
  double x0 = 0.5;
  double sigma = 0.05;

  void validate(const GridConfig& grid) const;
};

/// Moments of the uncertain step at point x: `left` for xi > (x - x0) / sigma,
/// `right` otherwise, integrated exactly in xi.
MomentMatrix project_step(double x, double x0, double sigma, const State& left, const State& right,
                          const BasisSet& basis);

/// Per-cell moment matrices plus the dual warm starts of the entropy closures.
struct MomentField {
  std::vector<MomentMatrix> moments;
  std::vector<DualMatrix> duals;

  int cells() const { return static_cast<int>(moments.size()); }
};

MomentField project_ic(const UncertainShockIC& ic, const GridConfig& grid, const BasisSet& basis, double gamma);

/// <phi f*(uL(xi), uR(xi))> from ansatz values at the quadrature nodes (N_q x m each).
MomentMatrix kinetic_flux_from_nodes(const Eigen::MatrixXd& left_nodes, const Eigen::MatrixXd& right_nodes,
                                     const StochasticDiscretization& disc, const FluxModel& flux);

/// G*(vL, vR) = <phi f*(s'_*(vL^T phi), s'_*(vR^T phi))>.
MomentMatrix kinetic_flux(const DualMatrix& left, const DualMatrix& right, const StochasticDiscretization& disc,
                          const EntropyModel& model, const FluxModel& flux);

/// The stochastic-Galerkin ansatz left the admissible set.
class SgBreakdownError : public std::runtime_error {
 public:
  SgBreakdownError(int cell, int node, int step);
  int cell() const { return cell_; }
  int node() const { return node_; }
  int step() const { return step_; }

 private:
  int cell_;
  int node_;
  int step_;
};

/// A cell's dual solve failed inside a time step.
class StepError : public std::runtime_error {
 public:
  StepError(const std::string& what, int cell, int step, double gradient_norm);
  int cell() const { return cell_; }
  int step() const { return step_; }
  double gradient_norm() const { return gradient_norm_; }

 private:
  int cell_;
  int step_;
  double gradient_norm_;
};

struct SolverSettings {
  ClosureKind closure = ClosureKind::IPM;
  FilterSpec filter;
  DualSolverConfig dual;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;

  /// Closure/filter/eta compatibility.
  void validate() const;
};

struct StepReport {
  double dt = 0.0;
  long total_newton_iterations = 0;
  int max_newton_iterations = 0;
  double max_gradient_norm = 0.0;
  double realized_cfl = 0.0;
  /// Sum over cells of the state the conservative update starts from
  /// (reconstructed moments for the realizable scheme, filtered moments otherwise).
  MomentMatrix base_total;
  /// G*_{N_x + 1/2} - G*_{1/2}.
  MomentMatrix boundary_flux_difference;
};

/// Forward-Euler finite-volume stepping of the moment system with Dirichlet
/// ghost cells frozen at their initial moments.
class MomentSolver {
 public:
  /// `model` may be null for SG/fSG.
  MomentSolver(const StochasticDiscretization& disc, const EntropyModel* model, const FluxModel& flux,
               SolverSettings settings, GridConfig grid, MomentMatrix ghost_left, MomentMatrix ghost_right);

  const SolverSettings& settings() const { return settings_; }
  const GridConfig& grid() const { return grid_; }
  const StochasticDiscretization& discretization() const { return disc_; }

  /// Solves the duals of the unfiltered initial moments (entropy closures).
  void initialize(MomentField& field);

  /// CFL * dx / max wavespeed over all ansatz nodes of the current field.
  double stable_dt(const MomentField& field, int step_index) const;

  /// Dispatches on the configured closure.
  StepReport step(MomentField& field, double dt, int step_index);

  /// Filter with F(lambda), eta = 0 dual solve, moment reconstruction, update.
  StepReport step_realizable(MomentField& field, double dt, int step_index);
  /// Filter with L(lambda), eta > 0 dual solve, update from the filtered moments.
  StepReport step_regularized(MomentField& field, double dt, int step_index);
  /// SG / fSG: polynomial ansatz of the (filtered) moments.
  StepReport step_sg(MomentField& field, double dt, int step_index);

 private:
  StepReport step_entropy(MomentField& field, double dt, int step_index, bool reconstruct);
  StepReport finish_step(MomentField& field, double dt);
  void check_sg_nodes(const Eigen::MatrixXd& nodes, int cell, int step_index) const;
  double max_speed(const Eigen::MatrixXd& nodes) const;

  const StochasticDiscretization& disc_;
  const EntropyModel* model_;
  const FluxModel& flux_;
  SolverSettings settings_;
  GridConfig grid_;
  MomentMatrix ghost_moments_[2];
  Eigen::MatrixXd ghost_nodes_[2];

  // Scratch, sized per step.
  std::vector<MomentMatrix> base_;
  std::vector<Eigen::MatrixXd> nodes_;
  std::vector<MomentMatrix> interface_flux_;
  std::vector<int> iterations_;
  std::vector<double> gradient_norms_;
};

struct TelemetryRow {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;
  long total_newton_iterations = 0;
  int max_newton_iterations = 0;
  double max_gradient_norm = 0.0;
};

struct Snapshot {
  double t = 0.0;
  std::vector<MomentMatrix> moments;
};

struct RunResult {
  MomentField field;
  double t = 0.0;
  std::vector<TelemetryRow> telemetry;
  std::vector<Snapshot> snapshots;
};

/// Steps from t = 0 to grid.t_end, landing exactly on every requested output
/// time (and on t_end, which is always a snapshot). `on_step`, when set, sees
/// every completed step.
RunResult advance(MomentSolver& solver, MomentField field, std::vector<double> output_times = {},
                  const std::function<void(const StepReport&, const MomentField&)>& on_step = {});

/// Everything needed for an uncertain 1D Euler shock-tube run.
struct ShockTubeSetup {
  GridConfig grid;
  UncertainShockIC ic;
  double gamma = 1.4;
  int degree = 5;
  int quad_points = 20;
  SolverSettings solver;
  std::vector<double> output_times;
};

RunResult run_shock_tube(const ShockTubeSetup& setup);

}  // namespace fipm
