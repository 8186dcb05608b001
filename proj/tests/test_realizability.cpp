#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fipm/filters.hpp"
#include "fipm/gpc_basis.hpp"
#include "fipm/realizability.hpp"

using namespace fipm;

TEST_CASE("monomial coordinates") {
  const MomentTriple t{1.0, 0.3, -0.2};
  const MomentTriple back = from_monomial(to_monomial(t));
  CHECK(back.u0 == doctest::Approx(t.u0));
  CHECK(back.u1 == doctest::Approx(t.u1));
  CHECK(back.u2 == doctest::Approx(t.u2));
  // Uniform density: <1> = 1, <xi> = 0, <xi^2> = 1/3.
  const MonomialMoments m = to_monomial({1.0, 0.0, 0.0});
  CHECK(m.m0 == 1.0);
  CHECK(m.m1 == 0.0);
  CHECK(m.m2 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("realizable set membership") {
  CHECK(is_realizable_n2({1.0, 0.0, 0.0}));
  CHECK_FALSE(is_realizable_n2({1.0, 1.8, 0.0}));
  CHECK_FALSE(is_realizable_n2({-1.0, 0.0, 0.0}));
  // Two-point measures sit on the boundary.
  const MomentTriple dirac = from_monomial({1.0, 0.5, 0.25});
  CHECK(std::abs(realizability_margin(dirac)) < 1e-14);
  CHECK_FALSE(is_realizable_n2(dirac));
  // Moments of strictly positive densities are inside.
  for (const MomentMatrix& u : sample_realizable(200, 2, 3)) CHECK(is_realizable_n2({u(0, 0), u(1, 0), u(2, 0)}));
}

TEST_CASE("positive density moments by direct quadrature") {
  const std::vector<double> c{0.2, -0.4, 0.3};
  const MomentMatrix u = exponential_density_moments(c);
  const BasisSet basis(2);
  const QuadratureRule rule = gauss_rule(80);
  for (int i = 0; i < 3; ++i) {
    double sum = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      const double x = rule.nodes[q];
      sum += rule.weights[q] * basis(i, x) * std::exp(c[0] * basis(0, x) + c[1] * basis(1, x) + c[2] * basis(2, x));
    }
    CHECK(u(i, 0) == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("Fokker-Planck filter keeps sampled moments realizable") {
  const auto samples = sample_realizable(1000, 2, 42);
  for (double lambda : {0.01, 0.1, 1.0}) {
    FilterSpec spec;
    spec.kind = FilterKind::FokkerPlanck;
    spec.strength = lambda;
    int lost = 0;
    for (const MomentMatrix& u : samples) {
      const MomentMatrix f = apply_filter(spec, u, 1.0);
      if (realizability_margin({f(0, 0), f(1, 0), f(2, 0)}) <= -1e-12) ++lost;
    }
    CHECK(lost == 0);
  }
}

TEST_CASE("sampling is deterministic") {
  const auto a = sample_realizable(5, 3, 9);
  const auto b = sample_realizable(5, 3, 9);
  for (int k = 0; k < 5; ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("filter-image scan dichotomy") {
  const ScanBox box = realizable_slice_box(120);
  CHECK(box.u1_max == doctest::Approx(std::sqrt(3.0)));
  CHECK(box.u2_min == doctest::Approx(-std::sqrt(5.0) / 2));
  CHECK(box.u2_max == doctest::Approx(std::sqrt(5.0)));

  FilterSpec exp_spec{FilterKind::Exponential, 0.2, 7.0, false};
  const ScanResult e = filter_image_scan(degree2_gains(exp_spec), box);
  CHECK(e.realizable_before > 0);
  CHECK(e.lost >= 1);

  for (double lambda : {0.05, 0.1, 0.2, 0.3}) {
    FilterSpec fp{FilterKind::FokkerPlanck, lambda, 1.0, false};
    const ScanResult r = filter_image_scan(degree2_gains(fp), box);
    CHECK(r.lost == 0);
    CHECK(r.realizable_before == e.realizable_before);
  }
  CHECK(e.points.size() == 120u * 120u);
}

TEST_CASE("scan policies agree") {
  const ScanBox box = realizable_slice_box(60);
  FilterSpec spec{FilterKind::Exponential, 0.1, 7.0, false};
  const ScanResult a = filter_image_scan(degree2_gains(spec), box, ExecutionPolicy::Serial);
  const ScanResult b = filter_image_scan(degree2_gains(spec), box, ExecutionPolicy::Parallel);
  CHECK(a.lost == b.lost);
  CHECK(a.realizable_before == b.realizable_before);
  for (std::size_t k = 0; k < a.points.size(); ++k) CHECK(a.points[k].inside_after == b.points[k].inside_after);
}
