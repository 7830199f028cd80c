#include <gtest/gtest.h>

#include <cmath>

#include "spinbath/errors.hpp"
#include "spinbath/hp_boson.hpp"

using namespace spinbath;

namespace {

BosonParams figure_params(int spin) {
  BosonParams p;
  p.spin = HalfInteger::integer(spin);
  p.g = 1.0;
  p.alpha = 0.5;
  p.mu = 3.0;
  p.beta = 0.01;
  return p;
}

double mean_abs(const CoherenceSeries& s) {
  double sum = 0.0;
  for (const auto& z : s.ratio12) sum += std::abs(z);
  return sum / static_cast<double>(s.size());
}

}  // namespace

TEST(Boson, Validation) {
  auto p = figure_params(5);
  p.beta = 0.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  p = figure_params(5);
  p.alpha = -1.0;
  EXPECT_THROW(p.validate(), InvalidArgument);
  EXPECT_THROW(propagator_factors(figure_params(5), -1, 0.0), InvalidArgument);
}

TEST(Boson, ExactlyOneAtTimeZero) {
  for (int s : {1, 5, 12}) {
    const std::vector<double> t{0.0};
    EXPECT_EQ(boson_coherence_series(figure_params(s), t).ratio12[0], std::complex<double>(1.0, 0.0));
  }
}

TEST(Boson, UncoupledLimitIsPurePhase) {
  auto p = figure_params(5);
  p.alpha = 0.0;
  const std::vector<double> times{0.3, 1.1, 7.0};
  const auto s = boson_coherence_series(p, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto expected = std::polar(1.0, -2.0 * (p.g * 5.0 - p.mu) * times[k]);
    EXPECT_NEAR(std::abs(s.ratio12[k] - expected), 0.0, 1e-10);
  }
}

TEST(Boson, PropagatorRowsAreUnitary) {
  for (double mu : {0.0, 5.0, 7.5}) {
    auto p = figure_params(5);
    p.mu = mu;
    for (std::int64_t n : {0, 1, 17, 400}) {
      for (double t : {0.0, 0.4, 3.3}) {
        const auto f = propagator_factors(p, n, t);
        EXPECT_NEAR(std::norm(f.u11) + f.u12_norm2, 1.0, 1e-12);
        EXPECT_LE(std::abs(f.u22), 1.0 + 1e-12);
        EXPECT_LT(f.m1, f.m2);
      }
    }
  }
}

TEST(Boson, ResonantGroundStateHasNoSplitting) {
  auto p = figure_params(5);
  p.mu = p.g * 5.0;
  const auto f = propagator_factors(p, 0, 2.0);
  EXPECT_EQ(f.m1, 0.0);
  EXPECT_NEAR(std::abs(f.u11), 1.0, 1e-15);
  EXPECT_EQ(f.u12_norm2, 0.0);
}

TEST(Boson, BoundedByOne) {
  const auto s = boson_coherence_series(figure_params(8), linear_grid(0.0, 40.0, 161));
  for (const auto& z : s.ratio12) EXPECT_LE(std::abs(z), 1.0 + 1e-12);
}

TEST(Boson, TruncationIsConverged) {
  auto p = figure_params(5);
  const auto times = linear_grid(0.0, 40.0, 41);
  const auto base = boson_coherence_series(p, times);
  p.n_max = 2 * thermal_truncation(p);
  const auto doubled = boson_coherence_series(p, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_LT(std::abs(base.ratio12[k] - doubled.ratio12[k]), 1e-10);
  }
}

TEST(Boson, TruncationRuleAndCap) {
  auto p = figure_params(5);
  const auto n = thermal_truncation(p);
  EXPECT_LT(std::exp(-2.0 * p.g * 5.0 * p.beta * static_cast<double>(n)), 1e-14);
  EXPECT_GE(std::exp(-2.0 * p.g * 5.0 * p.beta * static_cast<double>(n - 1)), 1e-14);
  p.n_max = n + 10;
  EXPECT_EQ(thermal_truncation(p), n + 10);
  p.beta = 1e-9;
  p.n_max = 0;
  EXPECT_THROW(thermal_truncation(p), BudgetExceeded);
}

TEST(Boson, Deterministic) {
  const auto times = linear_grid(0.0, 10.0, 21);
  const auto a = boson_coherence_series(figure_params(12), times);
  const auto b = boson_coherence_series(figure_params(12), times);
  EXPECT_EQ(a.ratio12, b.ratio12);
}

TEST(Boson, LongTimeFloorRisesWithSpin) {
  const auto times = linear_grid(10.0, 40.0, 301);
  double previous = 0.0;
  for (int s : {5, 8, 12}) {
    const auto series = boson_coherence_series(figure_params(s), times);
    const double floor = mean_abs(series);
    EXPECT_GT(floor, previous);
    previous = floor;
    double lo = 1.0, hi = 0.0;
    for (const auto& z : series.ratio12) {
      lo = std::min(lo, std::abs(z));
      hi = std::max(hi, std::abs(z));
    }
    EXPECT_GT(hi - lo, 0.02) << "oscillation should persist for S=" << s;
  }
}
