#pragma once

#include <complex>
#include <optional>
#include <span>

#include "spinbath/coherence_series.hpp"
#include "spinbath/half_integer.hpp"

namespace spinbath {

/// Qubit coupled through S^0_z J_z to a long-range transverse-field Ising bath.
/// Temperature is in energy units (k_B = 1).
struct IsingParams {
  int n_spins = 1;
  HalfInteger spin = HalfInteger::from_twice(2);
  double coupling_j = 1.0;   // intra-bath J > 0
  double coupling_j0 = 1.0;  // qubit-bath J0
  double transverse_w = 0.0; // w >= 0
  double temperature = 1.0;  // T > 0
  double mu = 0.0;           // qubit field; only a global phase of rho12

  double beta() const { return 1.0 / temperature; }
  void validate() const;
};

struct MeanFieldSolution {
  double order_parameter = 0.0;  // m
  double theta = 0.0;            // sqrt(w^2 + 4 J^2 m^2)
  double critical_temperature = 0.0;
  bool ordered = false;
  std::optional<bool> decay_valid;  // only for spins with a closed form (1, 3/2, 2)
  int bisection_iterations = 0;
  int roots_found = 0;
};

/// ln Z_N of the mean-field bath, Z_N = e^{-beta m^2 J N} [1 + 2 cosh((S+1)x/2) sinh(Sx/2)/sinh(x/2)]^N
/// with x = beta Theta; the bracket tends to 2S+1 as Theta -> 0.
double log_partition_function(const IsingParams& params, double order_parameter);

/// Single-site bracket of Z_N as a function of x = beta Theta (log-domain).
double log_site_partition(HalfInteger spin, double x);

/// T_c = 2 J S (S+1) / 3.
double critical_temperature(const IsingParams& params);

/// Right-hand side of Theta/J = [S sinh((S+1)x) - (S+1) sinh(Sx)] / [sinh(x/2) sinh((2S+1)x/2)],
/// x = beta Theta, evaluated in the overflow-free form (2S+1) coth((2S+1)x/2) - coth(x/2).
double self_consistency_rhs(HalfInteger spin, double x);

/// Solves the self-consistency equation on Theta in [w, 2JS] (256-point log scan plus
/// bisection to 1e-12) and keeps the largest root. Without a root above w, m = 0.
MeanFieldSolution solve_order_parameter(const IsingParams& params);

/// True when the closed-form mean-field g(t) exists for this spin (S = 1, 3/2, 2).
bool has_meanfield_closed_form(HalfInteger spin);

/// Gaussian-decay inequality Theta^2/J^2 < R_S(beta Theta) for S = 1, 3/2, 2 (strict).
bool gaussian_validity(const IsingParams& params, const MeanFieldSolution& solution);

/// Right-hand side R_S(x) of the decay inequality.
double gaussian_validity_bound(HalfInteger spin, double x);

/// Closed-form per-site factor whose N-th power is g(t) (S = 1, 3/2, 2).
std::complex<double> meanfield_site_factor(const IsingParams& params,
                                           const MeanFieldSolution& solution, double time);

/// Finite-N mean-field g(t) = (site factor)^N from the closed forms; mu is dropped.
CoherenceSeries g_meanfield(const IsingParams& params, const MeanFieldSolution& solution,
                            std::span<const double> times);

/// Same product evaluated with the dense per-site trace; works for any 2S <= 8.
CoherenceSeries g_meanfield_oracle(const IsingParams& params, const MeanFieldSolution& solution,
                                   std::span<const double> times);

/// N -> infinity limit of |g(t)|^2. When the decay inequality fails the exponent is
/// positive and the value exceeds one; that is returned unchanged.
double g_meanfield_limit(const IsingParams& params, const MeanFieldSolution& solution, double time);

}  // namespace spinbath
