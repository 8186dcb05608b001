#include "fipm/fv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fipm {

ClosureKind parse_closure_kind(std::string_view name) {
  if (name == "SG") return ClosureKind::SG;
  if (name == "fSG") return ClosureKind::FilteredSG;
  if (name == "IPM") return ClosureKind::IPM;
  if (name == "fIPM-realizable") return ClosureKind::RealizableFilteredIPM;
  if (name == "fIPM-regularized") return ClosureKind::RegularizedFilteredIPM;
  throw ConfigError("unknown closure '" + std::string(name) + "'");
}

std::string_view to_string(ClosureKind kind) {
  switch (kind) {
    case ClosureKind::SG: return "SG";
    case ClosureKind::FilteredSG: return "fSG";
    case ClosureKind::IPM: return "IPM";
    case ClosureKind::RealizableFilteredIPM: return "fIPM-realizable";
    case ClosureKind::RegularizedFilteredIPM: return "fIPM-regularized";
  }
  return "?";
}

bool uses_duals(ClosureKind kind) { return kind != ClosureKind::SG && kind != ClosureKind::FilteredSG; }

std::vector<double> GridConfig::centers() const {
  std::vector<double> xs(cells);
  for (int j = 0; j < cells; ++j) xs[j] = center(j);
  return xs;
}

void GridConfig::validate() const {
  if (cells < 3) throw ConfigError("grid needs at least 3 cells");
  if (!(domain_max > domain_min)) throw ConfigError("grid domain must satisfy a < b");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("CFL number must lie in (0, 1]");
}

void UncertainShockIC::validate(const GridConfig& grid) const {
  if (!(left.density > 0.0 && left.pressure > 0.0 && right.density > 0.0 && right.pressure > 0.0)) {
    throw ConfigError("initial states must have positive density and pressure");
  }
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  if (!(grid.domain_min < x0 - sigma && x0 + sigma < grid.domain_max)) {
    throw ConfigError("interface band x0 +- sigma must lie inside the domain");
  }
}

MomentMatrix project_step(double x, double x0, double sigma, const State& left, const State& right,
                          const BasisSet& basis) {
  double xi_star;
  if (sigma > 0.0) {
    xi_star = std::clamp((x - x0) / sigma, -1.0, 1.0);
  } else {
    xi_star = x < x0 ? -1.0 : 1.0;
  }
  // Probability mass of xi in [-1, xi*] against phi_i: the right state lives there.
  const int n1 = basis.size();
  MomentMatrix moments(n1, left.size());
  for (int i = 0; i < n1; ++i) {
    double lower_part;
    if (i == 0) {
      lower_part = 0.5 * (xi_star + 1.0);
    } else {
      // int_{-1}^{x} P_i = (P_{i+1}(x) - P_{i-1}(x)) / (2i + 1)
      lower_part = 0.5 * std::sqrt(2.0 * i + 1.0) * (legendre(i + 1, xi_star) - legendre(i - 1, xi_star)) /
                   (2.0 * i + 1.0);
    }
    const double upper_part = (i == 0 ? 1.0 : 0.0) - lower_part;
    moments.row(i) = (upper_part * left + lower_part * right).transpose();
  }
  return moments;
}

MomentField project_ic(const UncertainShockIC& ic, const GridConfig& grid, const BasisSet& basis, double gamma) {
  const State left = to_conserved(ic.left, gamma).to_state();
  const State right = to_conserved(ic.right, gamma).to_state();
  MomentField field;
  field.moments.reserve(grid.cells);
  for (int j = 0; j < grid.cells; ++j) {
    field.moments.push_back(project_step(grid.center(j), ic.x0, ic.sigma, left, right, basis));
  }
  return field;
}

MomentMatrix kinetic_flux_from_nodes(const Eigen::MatrixXd& left_nodes, const Eigen::MatrixXd& right_nodes,
                                     const StochasticDiscretization& disc, const FluxModel& flux) {
  const int nq = disc.nodes();
  Eigen::MatrixXd node_flux(nq, left_nodes.cols());
  State ul(left_nodes.cols());
  State ur(left_nodes.cols());
  for (int q = 0; q < nq; ++q) {
    ul = left_nodes.row(q).transpose();
    ur = right_nodes.row(q).transpose();
    node_flux.row(q) = flux.numerical_flux(ul, ur).transpose();
  }
  return disc.projector() * node_flux;
}

MomentMatrix kinetic_flux(const DualMatrix& left, const DualMatrix& right, const StochasticDiscretization& disc,
                          const EntropyModel& model, const FluxModel& flux) {
  return kinetic_flux_from_nodes(ansatz_at_nodes(left, disc, model), ansatz_at_nodes(right, disc, model), disc,
                                 flux);
}

namespace {

std::string sg_message(int cell, int node, int step) {
  std::ostringstream msg;
  msg << "SG breakdown: inadmissible ansatz (rho <= 0 or p <= 0) in cell " << cell << " at quadrature node "
      << node << " in step " << step;
  return msg.str();
}

}  // namespace

SgBreakdownError::SgBreakdownError(int cell, int node, int step)
    : std::runtime_error(sg_message(cell, node, step)), cell_(cell), node_(node), step_(step) {}

StepError::StepError(const std::string& what, int cell, int step, double gradient_norm)
    : std::runtime_error(what), cell_(cell), step_(step), gradient_norm_(gradient_norm) {}

void SolverSettings::validate() const {
  filter.validate();
  dual.validate();
  const bool filtered = filter.kind != FilterKind::None;
  switch (closure) {
    case ClosureKind::SG:
      if (filtered) throw ConfigError("closure SG takes no filter (use fSG)");
      break;
    case ClosureKind::FilteredSG:
      break;
    case ClosureKind::IPM:
      if (filtered) throw ConfigError("closure IPM takes no filter (use fIPM-realizable or fIPM-regularized)");
      if (dual.regularization != 0.0) throw ConfigError("closure IPM requires eta = 0 (use fIPM-regularized)");
      break;
    case ClosureKind::RealizableFilteredIPM:
      if (filter.kind != FilterKind::FokkerPlanck) {
        throw ConfigError("closure fIPM-realizable requires the fokker-planck filter");
      }
      if (dual.regularization != 0.0) throw ConfigError("closure fIPM-realizable requires eta = 0");
      break;
    case ClosureKind::RegularizedFilteredIPM:
      if (!(dual.regularization > 0.0)) throw ConfigError("closure fIPM-regularized requires eta > 0");
      break;
  }
}

MomentSolver::MomentSolver(const StochasticDiscretization& disc, const EntropyModel* model, const FluxModel& flux,
                           SolverSettings settings, GridConfig grid, MomentMatrix ghost_left,
                           MomentMatrix ghost_right)
    : disc_(disc), model_(model), flux_(flux), settings_(std::move(settings)), grid_(grid) {
  settings_.validate();
  grid_.validate();
  if (uses_duals(settings_.closure) && model_ == nullptr) {
    throw ConfigError("entropy closures need an entropy model");
  }
  if (model_ && model_->state_dim() != flux_.state_dim()) throw ConfigError("entropy/flux state dimensions differ");
  ghost_moments_[0] = std::move(ghost_left);
  ghost_moments_[1] = std::move(ghost_right);
  for (int side = 0; side < 2; ++side) {
    if (ghost_moments_[side].rows() != disc_.moments() || ghost_moments_[side].cols() != flux_.state_dim()) {
      throw ConfigError("ghost moments have the wrong shape");
    }
    if (uses_duals(settings_.closure)) {
      const DualMatrix start = cold_start(ghost_moments_[side], disc_, *model_);
      const DualSolution sol = solve_dual(ghost_moments_[side], start, settings_.dual, disc_, *model_);
      ghost_nodes_[side] = ansatz_at_nodes(sol.duals, disc_, *model_);
    } else {
      ghost_nodes_[side] = disc_.phi() * ghost_moments_[side];
      check_sg_nodes(ghost_nodes_[side], side == 0 ? -1 : grid_.cells, 0);
    }
  }
}

void MomentSolver::initialize(MomentField& field) {
  if (field.cells() != grid_.cells) throw ConfigError("field size does not match the grid");
  if (!uses_duals(settings_.closure)) {
    field.duals.clear();
    return;
  }
  field.duals.resize(field.cells());
  for_each_index(settings_.policy, field.cells(), [&](int j) {
    const DualMatrix& start = field.duals[j].size() ? field.duals[j] : cold_start(field.moments[j], disc_, *model_);
    try {
      field.duals[j] = solve_dual(field.moments[j], start, settings_.dual, disc_, *model_).duals;
    } catch (const DualSolveError& e) {
      throw StepError(std::string("initial dual solve failed in cell ") + std::to_string(j) + ": " + e.what(), j, 0,
                      e.gradient_norm());
    }
  });
}

void MomentSolver::check_sg_nodes(const Eigen::MatrixXd& nodes, int cell, int step_index) const {
  State u(nodes.cols());
  for (Eigen::Index q = 0; q < nodes.rows(); ++q) {
    u = nodes.row(q).transpose();
    if (!flux_.admissible(u)) throw SgBreakdownError(cell, static_cast<int>(q), step_index);
  }
}

double MomentSolver::max_speed(const Eigen::MatrixXd& nodes) const {
  double speed = 0.0;
  State u(nodes.cols());
  for (Eigen::Index q = 0; q < nodes.rows(); ++q) {
    u = nodes.row(q).transpose();
    speed = std::max(speed, flux_.max_wavespeed(u));
  }
  return speed;
}

double MomentSolver::stable_dt(const MomentField& field, int step_index) const {
  const int n = field.cells();
  std::vector<double> speeds(n);
  for_each_index(settings_.policy, n, [&](int j) {
    Eigen::MatrixXd nodes;
    if (uses_duals(settings_.closure)) {
      nodes = ansatz_at_nodes(field.duals.at(j), disc_, *model_);
    } else {
      nodes = disc_.phi() * field.moments[j];
      check_sg_nodes(nodes, j, step_index);
    }
    speeds[j] = max_speed(nodes);
  });
  double speed = std::max(max_speed(ghost_nodes_[0]), max_speed(ghost_nodes_[1]));
  for (double s : speeds) speed = std::max(speed, s);
  if (!(speed > 0.0)) throw StepError("stable_dt: zero maximal wave speed", -1, step_index, 0.0);
  return grid_.cfl * grid_.dx() / speed;
}

StepReport MomentSolver::step(MomentField& field, double dt, int step_index) {
  switch (settings_.closure) {
    case ClosureKind::SG:
    case ClosureKind::FilteredSG:
      return step_sg(field, dt, step_index);
    case ClosureKind::IPM:
    case ClosureKind::RealizableFilteredIPM:
      return step_realizable(field, dt, step_index);
    case ClosureKind::RegularizedFilteredIPM:
      return step_regularized(field, dt, step_index);
  }
  throw ConfigError("unknown closure");
}

StepReport MomentSolver::step_realizable(MomentField& field, double dt, int step_index) {
  return step_entropy(field, dt, step_index, true);
}

StepReport MomentSolver::step_regularized(MomentField& field, double dt, int step_index) {
  return step_entropy(field, dt, step_index, false);
}

StepReport MomentSolver::step_entropy(MomentField& field, double dt, int step_index, bool reconstruct) {
  if (!model_) throw ConfigError("entropy step without an entropy model");
  const int n = field.cells();
  if (static_cast<int>(field.duals.size()) != n) initialize(field);
  base_.resize(n);
  nodes_.resize(n);
  iterations_.assign(n, 0);
  gradient_norms_.assign(n, 0.0);
  const std::vector<double> gains = filter_gains(settings_.filter, disc_.basis().degree(), dt);
  const bool filtered = settings_.filter.kind != FilterKind::None;

  for_each_index(settings_.policy, n, [&](int j) {
    MomentMatrix filtered_moments = field.moments[j];
    if (filtered) apply_filter_in_place(gains, filtered_moments);
    DualSolution sol;
    try {
      sol = solve_dual(filtered_moments, field.duals[j], settings_.dual, disc_, *model_);
    } catch (const DualSolveError& e) {
      std::ostringstream msg;
      msg << "dual solve failed in cell " << j << " at step " << step_index << ": " << e.what();
      throw StepError(msg.str(), j, step_index, e.gradient_norm());
    }
    field.duals[j] = std::move(sol.duals);
    iterations_[j] = sol.iterations;
    gradient_norms_[j] = sol.gradient_norm;
    nodes_[j] = ansatz_at_nodes(field.duals[j], disc_, *model_);
    base_[j] = reconstruct ? MomentMatrix(disc_.projector() * nodes_[j]) : std::move(filtered_moments);
  });
  return finish_step(field, dt);
}

StepReport MomentSolver::step_sg(MomentField& field, double dt, int step_index) {
  const int n = field.cells();
  base_.resize(n);
  nodes_.resize(n);
  iterations_.assign(n, 0);
  gradient_norms_.assign(n, 0.0);
  const std::vector<double> gains = filter_gains(settings_.filter, disc_.basis().degree(), dt);
  const bool filtered = settings_.filter.kind != FilterKind::None;
  for_each_index(settings_.policy, n, [&](int j) {
    base_[j] = field.moments[j];
    if (filtered) apply_filter_in_place(gains, base_[j]);
    nodes_[j] = disc_.phi() * base_[j];
    check_sg_nodes(nodes_[j], j, step_index);
  });
  return finish_step(field, dt);
}

StepReport MomentSolver::finish_step(MomentField& field, double dt) {
  const int n = field.cells();
  interface_flux_.resize(n + 1);
  // Interface j sits between cells j - 1 and j; cells -1 and n are ghosts.
  for_each_index(settings_.policy, n + 1, [&](int j) {
    const Eigen::MatrixXd& left = j == 0 ? ghost_nodes_[0] : nodes_[j - 1];
    const Eigen::MatrixXd& right = j == n ? ghost_nodes_[1] : nodes_[j];
    interface_flux_[j] = kinetic_flux_from_nodes(left, right, disc_, flux_);
  });

  const double ratio = dt / grid_.dx();
  std::vector<double> speeds(n);
  for_each_index(settings_.policy, n, [&](int j) {
    field.moments[j] = base_[j] - ratio * (interface_flux_[j + 1] - interface_flux_[j]);
    speeds[j] = max_speed(nodes_[j]);
  });

  StepReport report;
  report.dt = dt;
  report.base_total = MomentMatrix::Zero(disc_.moments(), flux_.state_dim());
  double speed = std::max(max_speed(ghost_nodes_[0]), max_speed(ghost_nodes_[1]));
  for (int j = 0; j < n; ++j) {
    report.base_total += base_[j];
    report.total_newton_iterations += iterations_[j];
    report.max_newton_iterations = std::max(report.max_newton_iterations, iterations_[j]);
    report.max_gradient_norm = std::max(report.max_gradient_norm, gradient_norms_[j]);
    speed = std::max(speed, speeds[j]);
  }
  report.boundary_flux_difference = interface_flux_[n] - interface_flux_[0];
  report.realized_cfl = speed * ratio;
  return report;
}

RunResult advance(MomentSolver& solver, MomentField field, std::vector<double> output_times,
                  const std::function<void(const StepReport&, const MomentField&)>& on_step) {
  const double t_end = solver.grid().t_end;
  std::erase_if(output_times, [&](double t) { return !(t > 0.0 && t < t_end); });
  output_times.push_back(t_end);
  std::sort(output_times.begin(), output_times.end());
  output_times.erase(std::unique(output_times.begin(), output_times.end()), output_times.end());

  RunResult result;
  solver.initialize(field);
  double t = 0.0;
  int step = 0;
  std::size_t next_output = 0;
  if (t_end <= 0.0) {
    result.snapshots.push_back({0.0, field.moments});
    result.field = std::move(field);
    return result;
  }
  while (next_output < output_times.size()) {
    const double target = output_times[next_output];
    double dt = solver.stable_dt(field, step);
    bool lands = false;
    // Absorb a sliver below 1e-12 relative into this step rather than take a tiny extra one.
    if (t + dt >= target - 1e-12 * target) {
      dt = target - t;
      lands = true;
    }
    const StepReport report = solver.step(field, dt, step);
    if (report.realized_cfl > 1.0) {
      std::ostringstream msg;
      msg << "step " << step << " exceeded CFL 1 (realized " << report.realized_cfl << ")";
      throw StepError(msg.str(), -1, step, 0.0);
    }
    t = lands ? target : t + dt;
    result.telemetry.push_back({step, t, dt, report.total_newton_iterations, report.max_newton_iterations,
                                report.max_gradient_norm});
    if (on_step) on_step(report, field);
    ++step;
    if (lands) {
      result.snapshots.push_back({t, field.moments});
      ++next_output;
    }
  }
  result.t = t;
  result.field = std::move(field);
  return result;
}

RunResult run_shock_tube(const ShockTubeSetup& setup) {
  setup.grid.validate();
  setup.ic.validate(setup.grid);
  const StochasticDiscretization disc(setup.degree, setup.quad_points);
  const EulerEntropy entropy(setup.gamma);
  const EulerFlux flux(setup.gamma);
  const State left = to_conserved(setup.ic.left, setup.gamma).to_state();
  const State right = to_conserved(setup.ic.right, setup.gamma).to_state();
  const double dx = setup.grid.dx();
  MomentMatrix ghost_left =
      project_step(setup.grid.domain_min - 0.5 * dx, setup.ic.x0, setup.ic.sigma, left, right, disc.basis());
  MomentMatrix ghost_right =
      project_step(setup.grid.domain_max + 0.5 * dx, setup.ic.x0, setup.ic.sigma, left, right, disc.basis());
  MomentSolver solver(disc, &entropy, flux, setup.solver, setup.grid, std::move(ghost_left), std::move(ghost_right));
  return advance(solver, project_ic(setup.ic, setup.grid, disc.basis(), setup.gamma), setup.output_times);
}

}  // namespace fipm
