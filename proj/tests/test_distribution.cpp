#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "spinbath/distribution.hpp"
#include "spinbath/errors.hpp"

using namespace spinbath;

namespace {

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

JDistribution gaussian(int n, int twice) { return JDistribution(GaussianLaw{n, half(twice)}); }

}  // namespace

TEST(ExactPmf, RationalValues) {
  const auto t = degeneracy_table(3, half(2));
  EXPECT_EQ(exact_pmf_rational(t, half(4)), BigRational(10, 27));
  EXPECT_EQ(exact_pmf_rational(t, half(0)), BigRational(1, 27));
  EXPECT_EQ(exact_pmf_rational(t, half(2)), BigRational(9, 27));
  EXPECT_DOUBLE_EQ(exact_pmf(t, half(6)), 7.0 / 27.0);
  const auto half_spins = degeneracy_table(2, half(1));
  EXPECT_EQ(exact_pmf_rational(half_spins, half(0)), BigRational(1, 4));
  EXPECT_EQ(exact_pmf_rational(half_spins, half(2)), BigRational(3, 4));
}

TEST(ExactPmf, SumsToOneExactly) {
  for (int n : {1, 4, 9, 33}) {
    for (int twice : {1, 2, 5}) {
      const auto t = degeneracy_table(n, half(twice));
      BigRational total = 0;
      for (std::size_t k = 0; k < t.size(); ++k) total += exact_pmf_rational(t, t.j_at(k));
      EXPECT_EQ(total, BigRational(1));
    }
  }
}

TEST(ExactPmf, ExpectationOfSquaredJ) {
  // <J^2> = N S(S+1) exactly under the tracial state.
  const auto t = degeneracy_table(12, half(3));
  const JDistribution d(t);
  const double j2 = expectation(d, [](double j) { return j * (j + 1.0); }).value;
  EXPECT_NEAR(j2, 12.0 * 1.5 * 2.5, 1e-10);
  EXPECT_EQ(d.normalization(), 1.0);
}

TEST(GaussianLaw, DensityShape) {
  EXPECT_EQ(gaussian_pdf(100, half(1), 0.0), 0.0);
  EXPECT_EQ(gaussian_pdf(100, half(1), -1.0), 0.0);
  const double mode = std::sqrt(50.0);
  const double h = 1e-4;
  EXPECT_GT(gaussian_pdf(100, half(1), mode), gaussian_pdf(100, half(1), mode - h));
  EXPECT_GT(gaussian_pdf(100, half(1), mode), gaussian_pdf(100, half(1), mode + h));
  EXPECT_THROW(gaussian_pdf(0, half(1), 1.0), InvalidArgument);
}

TEST(GaussianLaw, NormalizedAndCdfConsistent) {
  for (int twice : {1, 2, 4, 7}) {
    const auto d = gaussian(200, twice);
    EXPECT_NEAR(d.normalization(), 1.0, 1e-10);
    const double x = 9.0;
    const double integral =
        expectation(d, [x](double j) { return j <= x ? 1.0 : 0.0; }).value;
    EXPECT_NEAR(integral, gaussian_cdf(200, half(twice), x), 1e-6);
  }
}

TEST(GaussianLaw, MomentsMatchQuadrature) {
  for (int n : {10, 1000}) {
    for (int twice : {1, 2, 3}) {
      const auto d = gaussian(n, twice);
      const Moments m = moments(n, half(twice));
      const double mean = expectation(d, [](double j) { return j; }).value;
      const double second = expectation(d, [](double j) { return j * j; }).value;
      EXPECT_NEAR(mean / m.mean, 1.0, 1e-8);
      EXPECT_NEAR((second - mean * mean) / m.variance, 1.0, 1e-8);
      EXPECT_NEAR(second / (n * half(twice).casimir()), 1.0, 1e-8);
    }
  }
}

TEST(GaussianLaw, ExponentialWeightDivergesAtThreshold) {
  const int n = 50;
  for (int twice : {1, 2, 4}) {
    const double c = half(twice).casimir();
    const double threshold = 3.0 / (2.0 * c);
    const auto d = gaussian(n, twice);
    for (double factor : {0.5, 0.9}) {
      const double jb = factor * threshold;
      const auto e = expectation(d, [&](double j) { return std::exp(jb * j * j / n); });
      EXPECT_NEAR(e.value, std::pow(1.0 - factor, -1.5), 1e-6 * e.value);
    }
    for (double factor : {1.0, 1.5}) {
      const double jb = factor * threshold;
      EXPECT_THROW(expectation(d, [&](double j) { return std::exp(jb * j * j / n); }), NumericalError);
    }
  }
}

TEST(Kolmogorov, DistanceShrinksWithN) {
  double previous = 1.0;
  for (int n : {8, 32, 128}) {
    const double d = kolmogorov_distance(degeneracy_table(n, half(1)));
    EXPECT_LT(d, previous);
    previous = d;
  }
  EXPECT_LT(previous, 0.05);
}

TEST(Kolmogorov, SingleSpinIsFarFromGaussian) {
  EXPECT_GT(kolmogorov_distance(degeneracy_table(1, half(1))), 0.2);
}
