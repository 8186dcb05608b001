// Serial vs OpenMP cost of one moment-solver step on the desk-scale Sod setup.

#include <benchmark/benchmark.h>

#include "fipm/fv_solver.hpp"

using namespace fipm;

namespace {

ShockTubeSetup desk_setup(ClosureKind closure, ExecutionPolicy policy) {
  ShockTubeSetup s;
  s.grid.cells = 400;
  s.grid.t_end = 0.14;
  s.degree = 5;
  s.quad_points = 20;
  s.solver.closure = closure;
  s.solver.policy = policy;
  if (closure == ClosureKind::RealizableFilteredIPM) {
    s.solver.filter = {FilterKind::FokkerPlanck, 5e-5, 1.0, true};
  } else if (closure == ClosureKind::RegularizedFilteredIPM) {
    s.solver.filter = {FilterKind::Exponential, 2.0, 10.0, true};
    s.solver.dual.regularization = 1e-7;
  }
  return s;
}

void step(benchmark::State& state, ClosureKind closure, ExecutionPolicy policy) {
  const ShockTubeSetup s = desk_setup(closure, policy);
  const StochasticDiscretization disc(s.degree, s.quad_points);
  const EulerEntropy entropy(s.gamma);
  const EulerFlux flux(s.gamma);
  const State l = to_conserved(s.ic.left, s.gamma).to_state();
  const State r = to_conserved(s.ic.right, s.gamma).to_state();
  const double dx = s.grid.dx();
  MomentSolver solver(disc, &entropy, flux, s.solver, s.grid,
                      project_step(s.grid.domain_min - 0.5 * dx, s.ic.x0, s.ic.sigma, l, r, disc.basis()),
                      project_step(s.grid.domain_max + 0.5 * dx, s.ic.x0, s.ic.sigma, l, r, disc.basis()));
  const MomentField initial = [&] {
    MomentField f = project_ic(s.ic, s.grid, disc.basis(), s.gamma);
    solver.initialize(f);
    return f;
  }();
  const double dt = solver.stable_dt(initial, 0);
  for (auto _ : state) {
    state.PauseTiming();
    MomentField field = initial;
    state.ResumeTiming();
    solver.step(field, dt, 0);
    benchmark::DoNotOptimize(field.moments.data());
  }
  state.SetItemsProcessed(state.iterations() * s.grid.cells);
}

}  // namespace

BENCHMARK_CAPTURE(step, ipm_serial, ClosureKind::IPM, ExecutionPolicy::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(step, ipm_parallel, ClosureKind::IPM, ExecutionPolicy::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(step, realizable_serial, ClosureKind::RealizableFilteredIPM, ExecutionPolicy::Serial)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(step, realizable_parallel, ClosureKind::RealizableFilteredIPM, ExecutionPolicy::Parallel)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(step, regularized_serial, ClosureKind::RegularizedFilteredIPM, ExecutionPolicy::Serial)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(step, regularized_parallel, ClosureKind::RegularizedFilteredIPM, ExecutionPolicy::Parallel)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
