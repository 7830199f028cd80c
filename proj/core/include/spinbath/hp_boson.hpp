#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "spinbath/coherence_series.hpp"
#include "spinbath/half_integer.hpp"

namespace spinbath {

/// Jaynes-Cummings form of the XY model at large S. S enters only the couplings.
struct BosonParams {
  HalfInteger spin = HalfInteger::integer(5);
  double g = 1.0;
  double alpha = 1.0;
  double mu = 0.0;
  double beta = 1.0;
  std::int64_t n_max = 0;  // 0 selects the tail cut automatically

  void validate() const;
};

/// Diagonal propagator matrix elements on the Fock state |n>.
struct PropagatorFactors {
  double m1 = 0.0;  // sqrt((gS-mu)^2 + 8 alpha^2 S n)
  double m2 = 0.0;  // sqrt((gS-mu)^2 + 8 alpha^2 S (n+1))
  std::complex<double> u11;
  std::complex<double> u22;
  double u12_norm2 = 0.0;  // |<n|U12|n+1>|^2 = 8 alpha^2 S n sin^2(t M1) / M1^2
};

PropagatorFactors propagator_factors(const BosonParams& p, std::int64_t n, double t);

/// Smallest n_max with e^{-2 g S beta n_max} < 1e-14, or p.n_max if larger.
/// Throws BudgetExceeded above 10^7 terms.
std::int64_t thermal_truncation(const BosonParams& p);

/// rho12(t)/rho12(0) = e^{-4igSt} sum_n w_n u11(n,t) conj(u22(n,t)) / sum_n w_n,
/// w_n = e^{-2 g S beta n}. The truncated normalisation differs from 1/(1 - e^{-2gS beta})
/// by less than 1e-14 and makes t = 0 exact.
CoherenceSeries boson_coherence_series(const BosonParams& p, std::span<const double> times);

inline constexpr std::int64_t kBosonTermCap = 10'000'000;

}  // namespace spinbath
