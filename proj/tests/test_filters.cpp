#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "fipm/filters.hpp"

using namespace fipm;

namespace {

FilterSpec make(FilterKind kind, double strength, double order = 1.0, bool dt_coupled = true) {
  FilterSpec spec;
  spec.kind = kind;
  spec.strength = strength;
  spec.order = order;
  spec.dt_coupled = dt_coupled;
  return spec;
}

}  // namespace

TEST_CASE("filter kind names round trip") {
  for (auto kind : {FilterKind::None, FilterKind::L2, FilterKind::Exponential, FilterKind::Erfc,
                    FilterKind::FokkerPlanck}) {
    CHECK(parse_filter_kind(to_string(kind)) == kind);
  }
  CHECK(parse_filter_kind("fp") == FilterKind::FokkerPlanck);
  CHECK(parse_filter_kind("exp") == FilterKind::Exponential);
  CHECK_THROWS_AS(parse_filter_kind("lasso"), ConfigError);
}

TEST_CASE("gain values") {
  CHECK(filter_gain(make(FilterKind::L2, 3.7), 0, 5, 0.1) == 1.0);
  CHECK(filter_gain(make(FilterKind::L2, 1.0), 1, 5, 0.1) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(filter_gain(make(FilterKind::FokkerPlanck, 0.1), 2, 5, 0.1) ==
        doctest::Approx(std::exp(-0.6)).epsilon(1e-15));
  CHECK(std::exp(-0.6) == doctest::Approx(0.548812).epsilon(1e-6));
  const double eps = std::numeric_limits<double>::epsilon();
  CHECK(filter_gain(make(FilterKind::Exponential, 1.0, 4.0), 6, 6, 1.0) == doctest::Approx(eps).epsilon(1e-12));
  CHECK(filter_gain(make(FilterKind::Exponential, 2.0, 4.0), 6, 6, 0.5) == doctest::Approx(eps).epsilon(1e-12));
  CHECK(filter_gain(make(FilterKind::Exponential, 1.0, 4.0, false), 6, 6, 123.0) ==
        doctest::Approx(eps).epsilon(1e-12));
  CHECK(machine_log_epsilon() == doctest::Approx(std::log(eps)));
  CHECK(filter_gain(make(FilterKind::None, 5.0), 3, 5, 0.1) == 1.0);
}

TEST_CASE("exponential and erfc gains against direct formulas") {
  const double c = std::log(std::numeric_limits<double>::epsilon());
  const int n = 10;
  for (int i = 0; i <= n; ++i) {
    const double z = static_cast<double>(i) / n;
    const double exp_gain = std::pow(std::exp(c * std::pow(z, 10.0)), 2.0 * 0.003);
    CHECK(filter_gain(make(FilterKind::Exponential, 2.0, 10.0), i, n, 0.003) ==
          doctest::Approx(exp_gain).epsilon(1e-13));
    const double erfc_gain = std::pow(0.5 * std::erfc(2.0 * std::sqrt(3.0) * (z - 0.5)), 0.5 * 0.2);
    CHECK(filter_gain(make(FilterKind::Erfc, 0.5, 3.0), i, n, 0.2) == doctest::Approx(erfc_gain).epsilon(1e-13));
  }
  // erfc does not preserve the mean exactly
  CHECK(filter_gain(make(FilterKind::Erfc, 1.0, 3.0), 0, n, 1.0) < 1.0);
}

TEST_CASE("gains lie in (0, 1] and do not increase with the order") {
  for (auto kind : {FilterKind::L2, FilterKind::Exponential, FilterKind::Erfc, FilterKind::FokkerPlanck}) {
    for (double strength : {0.0, 0.01, 0.5, 2.0}) {
      for (double order : {1.0, 2.0, 7.0, 10.0}) {
        const auto gains = filter_gains(make(kind, strength, order), 10, 0.01);
        for (std::size_t i = 0; i < gains.size(); ++i) {
          CHECK(gains[i] > 0.0);
          CHECK(gains[i] <= 1.0);
          if (i) CHECK(gains[i] <= gains[i - 1]);
        }
      }
    }
  }
}

TEST_CASE("filter application scales rows identically across components") {
  MomentMatrix u(4, 3);
  u << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12;
  const FilterSpec fp = make(FilterKind::FokkerPlanck, 0.2);
  const MomentMatrix f = apply_filter(fp, u, 0.1);
  const auto gains = filter_gains(fp, 3, 0.1);
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 3; ++k) CHECK(f(i, k) == u(i, k) * gains[i]);
  }
  CHECK(f.row(0) == u.row(0));
  CHECK(apply_filter(make(FilterKind::None, 9.0), u, 0.1) == u);

  const MomentMatrix strong = apply_filter(make(FilterKind::FokkerPlanck, 1e3), u, 0.1);
  CHECK(strong.row(0) == u.row(0));
  CHECK(strong.bottomRows(3).cwiseAbs().maxCoeff() < 1e-300);
}

TEST_CASE("Fokker-Planck semigroup") {
  MomentMatrix u = MomentMatrix::Random(6, 2);
  const MomentMatrix twice =
      apply_filter(make(FilterKind::FokkerPlanck, 0.07), apply_filter(make(FilterKind::FokkerPlanck, 0.05), u, 1), 1);
  const MomentMatrix once = apply_filter(make(FilterKind::FokkerPlanck, 0.12), u, 1);
  CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("filter spec validation") {
  CHECK_THROWS_AS(make(FilterKind::L2, -1.0).validate(), ConfigError);
  CHECK_THROWS_AS(make(FilterKind::Exponential, 1.0, 0.5).validate(), ConfigError);
  CHECK_NOTHROW(make(FilterKind::FokkerPlanck, 0.0, 0.5).validate());
}
