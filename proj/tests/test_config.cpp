#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "fipm/config.hpp"

using namespace fipm;

namespace {

const std::filesystem::path kPresets = FIPM_PRESET_DIR;

ExperimentConfig preset(const std::string& name) { return load_config(kPresets / (name + ".cfg")); }

std::string error_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const std::string kMinimal = "closure = IPM\ncells = 100\nt_end = 0.1\ndegree = 3\n";

}  // namespace

TEST_CASE("full-scale Sod preset") {
  const ExperimentConfig c = preset("sod-ipm");
  CHECK(c.name == "sod-ipm");
  CHECK(c.grid.domain_min == 0.0);
  CHECK(c.grid.domain_max == 1.0);
  CHECK(c.grid.cells == 2000);
  CHECK(c.grid.t_end == 0.14);
  CHECK(c.ic.x0 == 0.5);
  CHECK(c.ic.sigma == 0.05);
  CHECK(c.ic.left.density == 1.0);
  CHECK(c.ic.left.pressure == 1.0);
  CHECK(c.ic.right.density == 0.125);
  CHECK(c.ic.right.pressure == 0.1);
  CHECK(c.degree == 10);
  CHECK(c.resolved_quad_points() == 30);
  CHECK(c.tau == 1e-7);
  CHECK(c.gamma == 1.4);
  CHECK(c.closure == ClosureKind::IPM);
  CHECK(c.delta_region.lo == 0.7);
  CHECK(c.delta_region.hi == 0.8);
}

TEST_CASE("desk-scale and filtered presets") {
  const ExperimentConfig desk = preset("sod-ipm-desk");
  CHECK(desk.grid.cells == 400);
  CHECK(desk.degree == 5);
  CHECK(desk.resolved_quad_points() == 20);

  const ExperimentConfig exp = preset("sod-exp");
  CHECK(exp.closure == ClosureKind::RegularizedFilteredIPM);
  CHECK(exp.filter.kind == FilterKind::Exponential);
  CHECK(exp.filter.strength == 2.0);
  CHECK(exp.filter.order == 10.0);
  CHECK(exp.eta == 1e-7);

  const ExperimentConfig fp = preset("sod-fp");
  CHECK(fp.closure == ClosureKind::RealizableFilteredIPM);
  CHECK(fp.filter.kind == FilterKind::FokkerPlanck);
  CHECK(fp.filter.strength == 5e-5);
  CHECK(fp.eta == 0.0);

  CHECK(preset("sod-reg").eta == 1e-7);
  CHECK(preset("sod-sg").closure == ClosureKind::SG);
  CHECK(preset("sod-hd-exp").ic.right.density == 0.8);
  CHECK(preset("sod-hd-fp").ic.right.density == 0.8);
  CHECK(preset("sod-hd-fp").ic.right.pressure == 0.1);
  CHECK(preset("sod-hd-fp").filter.strength == 1e-5);

  const ExperimentConfig scan = preset("filter-scan");
  CHECK(scan.scan_resolution == 400);
  CHECK(scan.scan_exp_order == 7.0);
  CHECK(scan.scan_fp_strengths == std::vector<double>{0.05, 0.1, 0.2, 0.3});
}

TEST_CASE("every preset parses and round trips") {
  for (const auto& entry : std::filesystem::directory_iterator(kPresets)) {
    const ExperimentConfig c = load_config(entry.path());
    CHECK(to_text(parse_config(to_text(c))) == to_text(c));
  }
}

TEST_CASE("overrides") {
  const ExperimentConfig c = load_config(kPresets / "sod-ipm.cfg", {"cells=400", "degree = 5", "quad_points=20"});
  CHECK(c.grid.cells == 400);
  CHECK(c.degree == 5);
  CHECK(c.resolved_quad_points() == 20);
  CHECK(parse_config(kMinimal).resolved_quad_points() == 8);
}

TEST_CASE("errors name the key and line") {
  CHECK(error_of(kMinimal + "eta = -1\n").find("line 5: key 'eta'") != std::string::npos);
  const std::string incompatible = error_of(
      "closure = fIPM-realizable\ncells = 100\nt_end = 0.1\ndegree = 3\nfilter = exponential\n");
  CHECK(incompatible.find("key 'filter'") != std::string::npos);
  CHECK(incompatible.find("line 5") != std::string::npos);
  CHECK(error_of("closure = fIPM-regularized\ncells = 100\nt_end = 0.1\ndegree = 3\n").find("key 'eta'") !=
        std::string::npos);
  CHECK(error_of(kMinimal + "colour = red\n").find("unknown key 'colour'") != std::string::npos);
  CHECK(error_of(kMinimal + "cells = 5\n").find("duplicate key 'cells'") != std::string::npos);
  CHECK(error_of(kMinimal + "cfl = fast\n").find("line 5: key 'cfl': expected a number") != std::string::npos);
  CHECK(error_of(kMinimal + "just text\n").find("line 5") != std::string::npos);
  CHECK(error_of("cells = 100\nt_end = 0.1\ndegree = 3\n").find("missing required key 'closure'") !=
        std::string::npos);
  CHECK(error_of(kMinimal, {"sigma=0.6"}).find("--set sigma=0.6") == std::string::npos);
  CHECK(error_of(kMinimal, {"sigma=0.6"}).find("key 'x0'") != std::string::npos);
  CHECK(error_of(kMinimal, {"tau=0"}).find("--set tau=0: key 'tau'") != std::string::npos);
  CHECK(error_of(kMinimal + "closure = Collocation\n").find("closure") != std::string::npos);
}

TEST_CASE("comments and blank lines") {
  const ExperimentConfig c = parse_config("# header\n\n" + kMinimal + "  sigma = 0.02   # narrower\n");
  CHECK(c.ic.sigma == 0.02);
}

TEST_CASE("solver settings follow the config") {
  ExperimentConfig c = parse_config(kMinimal + "policy = serial\ntau = 1e-9\nmax_newton_iterations = 33\n");
  const SolverSettings s = c.solver_settings();
  CHECK(s.dual.tolerance == 1e-9);
  CHECK(s.dual.max_iterations == 33);
  CHECK(s.policy == ExecutionPolicy::Serial);
  CHECK(c.shock_tube().grid.cells == 100);
}
