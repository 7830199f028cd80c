#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spinbath/errors.hpp"
#include "spinbath/ising_exact.hpp"
#include "spinbath/spin_algebra.hpp"

using namespace spinbath;

namespace {

IsingParams exact_params(int n, int twice, double j, double t) {
  IsingParams p;
  p.n_spins = n;
  p.spin = HalfInteger::from_twice(twice);
  p.coupling_j = j;
  p.temperature = t;
  return p;
}

}  // namespace

TEST(ExactIsing, MatchesEnumeration) {
  const auto times = linear_grid(0.0, 12.0, 25);
  for (int twice = 1; twice <= 8; ++twice) {
    for (int n = 1;; ++n) {
      if (std::pow(twice + 1.0, n) > 6561.0) break;
      const auto p = exact_params(n, twice, 1.3, 2.0);
      const auto exact = g_exact(p, degeneracy_table(n, p.spin), times);
      const auto oracle =
          brute_force_ising_g(n, p.spin, p.coupling_j, p.coupling_j0, p.beta(), times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        EXPECT_NEAR(std::abs(exact.series.ratio12[k] - oracle.ratio12[k]), 0.0, 1e-12)
            << "N=" << n << " 2S=" << twice << " t=" << times[k];
      }
    }
  }
}

TEST(ExactIsing, DoubleSumAgrees) {
  const auto p = exact_params(12, 3, 1.0, 1.5);
  const auto table = degeneracy_table(12, p.spin);
  const std::vector<double> times{0.0, 0.9, 3.7, 11.0};
  const auto exact = g_exact(p, table, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_NEAR(std::abs(exact.series.ratio12[k] - g_exact_double_sum(p, table, times[k])), 0.0, 1e-12);
  }
}

TEST(ExactIsing, ModulusIsPeriodic) {
  const auto p = exact_params(10, 2, 1.0, 1.0);
  const double period = 2.0 * std::numbers::pi * std::sqrt(10.0);
  const std::vector<double> times{0.7, 3.1, 8.0};
  const std::vector<double> shifted{0.7 + period, 3.1 + period, 8.0 + 2.0 * period};
  const auto a = g_exact(p, times);
  const auto b = g_exact(p, shifted);
  EXPECT_NEAR(a.revival_period, period, 1e-12);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_NEAR(std::abs(a.series.ratio12[k]), std::abs(b.series.ratio12[k]), 1e-10);
  }
}

TEST(ExactIsing, HighTemperatureClosedForms) {
  const auto times = linear_grid(0.0, 30.0, 61);
  for (int twice : {1, 2}) {
    auto p = exact_params(20, twice, 1.0, 1e7);
    const auto g = g_exact(p, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      EXPECT_NEAR(std::abs(g.series.ratio12[k]), std::abs(g_high_temperature(p, times[k])), 1e-3);
    }
  }
  EXPECT_THROW(g_high_temperature(exact_params(5, 3, 1.0, 1.0), 1.0), InvalidArgument);
}

TEST(ExactIsing, LargeBathGaussianRates) {
  const auto times = linear_grid(0.0, 4.0, 161);
  for (int twice : {1, 2, 3}) {
    const auto p = exact_params(10000, twice, 1.0, 1e7);
    const auto g = g_exact(p, times);
    const double rate = high_temperature_rate(p.spin);
    EXPECT_NEAR(g.gaussian_fit_sigma / rate, 1.0, 0.02) << twice;
  }
  EXPECT_DOUBLE_EQ(high_temperature_rate_nominal(HalfInteger::from_twice(1)), 0.125);
  EXPECT_DOUBLE_EQ(high_temperature_rate(HalfInteger::from_twice(1)), 0.125);
  EXPECT_DOUBLE_EQ(high_temperature_rate(HalfInteger::from_twice(2)), 1.0 / 3.0);
}

TEST(ExactIsing, DecayIsFasterForLargerSpin) {
  const auto times = linear_grid(0.0, 3.0, 31);
  double previous = 0.0;
  for (int twice : {1, 2, 4, 6}) {
    const auto g = g_exact(exact_params(100, twice, 1.0, 1e6), times);
    EXPECT_GT(g.gaussian_fit_sigma, previous);
    previous = g.gaussian_fit_sigma;
  }
}

TEST(ExactIsing, Revivals) {
  const auto p = exact_params(10, 2, 1.0, 1.0);
  const double period = 2.0 * std::numbers::pi * std::sqrt(10.0);
  const auto times = linear_grid(0.0, 2.2 * period, 2201);
  const auto report = revival_diagnostics(g_exact(p, times));
  ASSERT_EQ(report.revivals.size(), 2u);
  const double step = times[1] - times[0];
  for (const auto& r : report.revivals) {
    EXPECT_NEAR(r.time, r.cycle * period, step);
    EXPECT_NEAR(r.amplitude, 1.0, 1e-3);
  }
  const auto short_grid = linear_grid(0.0, period, 50);
  EXPECT_THROW(revival_diagnostics(g_exact(p, short_grid)), InvalidArgument);
}

TEST(ExactIsing, RejectsUnsupportedInputs) {
  auto p = exact_params(10, 2, 1.0, 1.0);
  p.transverse_w = 0.1;
  const std::vector<double> t{1.0};
  EXPECT_THROW(g_exact(p, t), InvalidArgument);
  EXPECT_THROW(g_exact(exact_params(200001, 1, 1.0, 1.0), t), BudgetExceeded);
  EXPECT_THROW(g_exact(exact_params(10, 2, 1.0, 1.0), degeneracy_table(9, HalfInteger::from_twice(2)), t),
               InvalidArgument);
}

TEST(MeanFieldComparisonTest, FigureParameters) {
  auto p = exact_params(100, 2, 3.0, 3.8);
  const auto cmp = meanfield_vs_exact(p, linear_grid(0.0, 80.0, 801));
  EXPECT_GT(cmp.max_deviation, 0.2);
  EXPECT_GT(cmp.exact_revival, 0.9);
  EXPECT_TRUE(cmp.meanfield_monotone);
  EXPECT_NEAR(cmp.solution.order_parameter, 0.358, 1e-3);
  EXPECT_EQ(cmp.times.size(), cmp.exact_abs.size());
  EXPECT_EQ(cmp.times.size(), cmp.meanfield_finite_abs.size());
}

TEST(MeanFieldComparisonTest, Preconditions) {
  const auto times = linear_grid(0.0, 10.0, 11);
  EXPECT_THROW(meanfield_vs_exact(exact_params(100, 2, 3.0, 4.5), times), InvalidArgument);
  EXPECT_THROW(meanfield_vs_exact(exact_params(100, 1, 3.0, 1.0), times), InvalidArgument);
}
