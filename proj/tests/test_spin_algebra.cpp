#include <gtest/gtest.h>

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "spinbath/errors.hpp"
#include "spinbath/ising_mf.hpp"
#include "spinbath/spin_algebra.hpp"

using namespace spinbath;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

const Complex I(0.0, 1.0);

}  // namespace

TEST(SpinMatrices, SpinHalfIsDefiningRepresentation) {
  const auto s = build_spin_matrices(HalfInteger::from_twice(1));
  ASSERT_EQ(s.dimension(), 2);
  EXPECT_EQ(s.sz(0, 0), Complex(0.5, 0.0));
  EXPECT_EQ(s.sz(1, 1), Complex(-0.5, 0.0));
  EXPECT_EQ(s.sz(0, 1), Complex(0.0, 0.0));
}

TEST(SpinMatrices, SpinOneMatchesExplicitMatrices) {
  const auto s = build_spin_matrices(HalfInteger::integer(1));
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix sx(3, 3), sz(3, 3);
  sx << 0, r, 0, r, 0, r, 0, r, 0;
  sz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
  EXPECT_LT(max_abs(s.sx - sx), 1e-15);
  EXPECT_LT(max_abs(s.sz - sz), 1e-15);
}

TEST(SpinMatrices, SpinThreeHalvesTraceOfSzSquared) {
  const auto s = build_spin_matrices(HalfInteger::from_twice(3));
  EXPECT_NEAR((s.sz * s.sz).trace().real(), 5.0, 1e-14);
}

TEST(SpinMatrices, CommutatorsAndCasimirForAllSupportedSpins) {
  for (int twice = 1; twice <= 8; ++twice) {
    const HalfInteger spin = HalfInteger::from_twice(twice);
    const auto s = build_spin_matrices(spin);
    const auto id = ComplexMatrix::Identity(s.dimension(), s.dimension());
    EXPECT_LT(max_abs(s.sx * s.sy - s.sy * s.sx - I * s.sz), 1e-12) << twice;
    EXPECT_LT(max_abs(s.sy * s.sz - s.sz * s.sy - I * s.sx), 1e-12) << twice;
    EXPECT_LT(max_abs(s.sz * s.sx - s.sx * s.sz - I * s.sy), 1e-12) << twice;
    EXPECT_LT(max_abs(s.sx * s.sx + s.sy * s.sy + s.sz * s.sz - spin.casimir() * id), 1e-12);
    EXPECT_LT(max_abs(s.sx - s.sx.adjoint()), 1e-15);
    EXPECT_LT(max_abs(s.sy - s.sy.adjoint()), 1e-15);
    // sum of squared projections = (2S+1) S(S+1) / 3
    EXPECT_NEAR((s.sz * s.sz).trace().real(), (twice + 1) * spin.casimir() / 3.0, 1e-12);
  }
}

TEST(SpinMatrices, RejectsNonPositiveSpin) {
  EXPECT_THROW(build_spin_matrices(HalfInteger::from_twice(0)), InvalidArgument);
  EXPECT_THROW(build_spin_matrices(HalfInteger::from_twice(-2)), InvalidArgument);
}

TEST(MatrixExponential, AgreesWithIndependentImplementation) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.5);
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 2 + trial % 8;
    ComplexMatrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
    const ComplexMatrix ref = a.exp();
    EXPECT_LT(max_abs(matrix_exponential(a) - ref), 1e-12 * std::max(1.0, max_abs(ref)));
  }
}

TEST(MatrixExponential, UnitaryForHermitianGenerator) {
  const auto s = build_spin_matrices(HalfInteger::integer(4));
  const ComplexMatrix u = matrix_exponential(I * 3.7 * (s.sx + 0.4 * s.sz));
  EXPECT_LT(max_abs(u * u.adjoint() - ComplexMatrix::Identity(9, 9)), 1e-12);
}

TEST(SpinOneExponential, IdentityAtZeroKappa) {
  const Matrix3c e = spin1_exponential(0.0, 1.3, -0.4);
  EXPECT_LT((e - Matrix3c::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SpinOneExponential, DiagonalCase) {
  const Matrix3c e = spin1_exponential(1.0, 1.0, 0.0);
  EXPECT_NEAR(e(0, 0).real(), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(e(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(e(2, 2).real(), std::exp(1.0), 1e-14);
}

TEST(SpinOneExponential, MatchesDenseExponentialOnRandomDraws) {
  const auto s = build_spin_matrices(HalfInteger::integer(1));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Complex kappa(u(rng), u(rng));
    const Complex alpha(u(rng), u(rng));
    const Complex gamma(u(rng), u(rng));
    const ComplexMatrix dense = matrix_exponential(-kappa * (alpha * s.sz + gamma * s.sx));
    const ComplexMatrix closed = spin1_exponential(kappa, alpha, gamma);
    worst = std::max(worst, max_abs(closed - dense));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(SpinOneExponential, FixedDrawAgainstDense) {
  const auto s = build_spin_matrices(HalfInteger::integer(1));
  const ComplexMatrix dense = matrix_exponential(-0.5 * (s.sz + s.sx));
  EXPECT_LT(max_abs(ComplexMatrix(spin1_exponential(0.5, 1.0, 1.0)) - dense), 1e-12);
}

TEST(SpinOneExponential, NilpotentBranch) {
  // alpha^2 + gamma^2 = 0 with alpha = 1, gamma = i.
  const auto s = build_spin_matrices(HalfInteger::integer(1));
  const Complex kappa(0.7, -0.2);
  const ComplexMatrix dense = matrix_exponential(-kappa * (1.0 * s.sz + I * s.sx));
  EXPECT_LT(max_abs(ComplexMatrix(spin1_exponential(kappa, 1.0, I)) - dense), 1e-12);
}

TEST(SiteTraceOracle, TrivialLimits) {
  IsingParams p;
  p.n_spins = 100;
  p.spin = HalfInteger::integer(1);
  p.coupling_j = 2.0;
  p.transverse_w = 1.0;
  p.temperature = 2.52;
  p.coupling_j0 = 1.0;
  EXPECT_NEAR(std::abs(site_trace_oracle(p, 0.28, 0.0) - 1.0), 0.0, 1e-13);
  p.coupling_j0 = 0.0;
  for (double t : {0.5, 3.0, 20.0}) EXPECT_NEAR(std::abs(site_trace_oracle(p, 0.28, t) - 1.0), 0.0, 1e-12);
}

TEST(SiteTraceOracle, BoundedByOne) {
  IsingParams p;
  p.n_spins = 50;
  p.spin = HalfInteger::from_twice(3);
  p.coupling_j = 2.0;
  p.transverse_w = 0.5;
  p.temperature = 4.0;
  for (double t : {0.3, 1.0, 4.0, 9.0}) EXPECT_LE(std::abs(site_trace_oracle(p, 0.4, t)), 1.0 + 1e-12);
  p.spin = HalfInteger::from_twice(9);
  EXPECT_THROW(site_trace_oracle(p, 0.4, 1.0), InvalidArgument);
}

TEST(BruteForceIsing, UnityAtTimeZero) {
  const std::vector<double> t = {0.0};
  const auto g = brute_force_ising_g(4, HalfInteger::integer(1), 1.0, 1.0, 0.7, t);
  EXPECT_EQ(g.ratio12[0], Complex(1.0, 0.0));
}

TEST(BruteForceIsing, TwoSpinHalvesAtInfiniteTemperature) {
  std::vector<double> t;
  for (int k = 0; k <= 20; ++k) t.push_back(0.37 * k);
  const double j0 = 1.3;
  const auto g = brute_force_ising_g(2, HalfInteger::from_twice(1), 1.0, j0, 0.0, t);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double c = std::cos(j0 * t[k] / (2.0 * std::sqrt(2.0)));
    EXPECT_NEAR(std::abs(g.ratio12[k] - c * c), 0.0, 1e-14);
  }
}

TEST(BruteForceIsing, CouplingSignFlipConjugates) {
  const std::vector<double> t = {0.4, 1.9, 5.5};
  const auto a = brute_force_ising_g(5, HalfInteger::from_twice(3), 1.2, 0.8, 0.9, t);
  const auto b = brute_force_ising_g(5, HalfInteger::from_twice(3), 1.2, -0.8, 0.9, t);
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(std::abs(a.ratio12[k] - std::conj(b.ratio12[k])), 0.0, 1e-14);
}

TEST(BruteForceIsing, EnumerationBudget) {
  const std::vector<double> t = {1.0};
  EXPECT_THROW(brute_force_ising_g(13, HalfInteger::integer(1), 1.0, 1.0, 1.0, t), BudgetExceeded);
}

TEST(BruteForceMultiplicities, ThreeSpinOnes) {
  const auto nu = brute_force_multiplicities(3, HalfInteger::integer(1));
  const std::map<std::int64_t, std::int64_t> expected = {{0, 1}, {2, 3}, {4, 2}, {6, 1}};
  EXPECT_EQ(nu, expected);
}

TEST(LinearGrid, EndpointsAndErrors) {
  const auto g = linear_grid(-1.0, 2.0, 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.front(), -1.0);
  EXPECT_EQ(g.back(), 2.0);
  EXPECT_THROW(linear_grid(0.0, 1.0, 1), InvalidArgument);
  EXPECT_THROW(linear_grid(1.0, 0.0, 5), InvalidArgument);
}
