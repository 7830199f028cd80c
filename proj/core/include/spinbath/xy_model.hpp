#pragma once

#include <Eigen/Dense>
#include <span>

#include "spinbath/coherence_series.hpp"
#include "spinbath/half_integer.hpp"

namespace spinbath {

/// Central qubit (H_S = mu sigma_z) coupled by Heisenberg-XY terms to N spin-S particles,
/// couplings rescaled by 1/sqrt(N) and 1/N. theta is the m^2 ~ theta j^2 surrogate.
struct XYParams {
  double mu = 0.0;
  double alpha = 1.0;
  double g = 1.0;
  double beta = 1.0;
  int n_spins = 1000;
  HalfInteger spin = HalfInteger::from_twice(1);
  double theta = 0.0;

  void validate() const;
};

/// Reduced qubit state; must be Hermitian, unit trace, positive semidefinite.
using QubitDensity = Eigen::Matrix2cd;

QubitDensity qubit_density(double rho11, std::complex<double> rho12);
void validate_qubit_density(const QubitDensity& rho);

/// [1 + 2S(S+1) g beta (1-theta) / 3]^{-3/2}.
double xy_partition_normalization(const XYParams& p);

/// P(j) e^{-g beta (1-theta) j^2 / N} / Z, the bath weight the qubit sees.
double xy_bath_weight(const XYParams& p, double j);

/// Upper j cut-off used by all XY integrals (mean + 12 sigma of P).
double xy_j_cutoff(const XYParams& p);

struct XYDiagnostics {
  double max_quadrature_error = 0.0;
  double worst_time = 0.0;
  int panel_evaluations = 0;
};

/// rho12(t)/rho12(0) and rho11(t) from the large-N integrals over P(j). The rho22(0)
/// term of rho11 uses alpha^2 (1-theta) j^2 / N in the numerator.
CoherenceSeries coherence_evolution(const XYParams& p, const QubitDensity& rho0,
                                    std::span<const double> times,
                                    XYDiagnostics* diagnostics = nullptr);

/// Long-time limit psi of rho12(t)/rho12(0) from quadrature of the time-averaged integrand.
double asymptotic_coherence(const XYParams& p);

/// psi in closed form, 1/2 - z^2 + sqrt(pi) z^3 erfcx(z) with
/// z^2 = (mu/alpha)^2 [beta g + 3/(2(1-theta)S(S+1))].
double asymptotic_coherence_closed_form(const XYParams& p);

/// Same closed form as a function of z.
double asymptotic_coherence_of_z(double z);

/// rho11(inf) = rho11(0)(1 - psi) + rho22(0) psi.
double asymptotic_population(const XYParams& p, const QubitDensity& rho0);

struct DecoherenceTime {
  double tau_d = 0.0;      // (1/alpha) sqrt(beta g + 3/(2S(S+1)))
  double tau_d_min = 0.0;  // (1/alpha) sqrt(beta g), the S -> infinity limit
  bool degenerate = false; // tau_d_min vanishes (beta = 0)
};

DecoherenceTime decoherence_time(const XYParams& p);

struct ShortTimeFit {
  double fitted_tau = 0.0;
  double tau_d = 0.0;
  double relative_deviation = 0.0;  // fitted_tau / tau_d - 1
  std::size_t points = 0;
};

/// Least-squares slope (through the origin) of ln|ratio12| against t^2 over t <= 0.2 tau_D.
/// Needs at least 20 grid points in [0, 0.2 tau_D].
ShortTimeFit short_time_check(const CoherenceSeries& series, const XYParams& p);

/// S -> infinity limit of psi: 1/2 - z^2 + sqrt(pi) z^3 erfcx(z), z = (mu/alpha) sqrt(beta g).
double large_spin_asymptote(double mu_over_alpha, double beta_g);

}  // namespace spinbath
