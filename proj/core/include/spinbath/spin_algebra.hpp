#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <span>

#include "spinbath/coherence_series.hpp"
#include "spinbath/half_integer.hpp"

namespace spinbath {

struct IsingParams;

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix3c = Eigen::Matrix3cd;

/// Spin-S operators (hbar = 1) in the S_z eigenbasis ordered m = S, S-1, ..., -S.
struct SpinMatrices {
  HalfInteger spin;
  ComplexMatrix sx;
  ComplexMatrix sy;
  ComplexMatrix sz;

  Eigen::Index dimension() const { return sz.rows(); }
};

SpinMatrices build_spin_matrices(HalfInteger spin);

/// exp(A) by scaling and squaring with a diagonal [8/8] Pade approximant.
ComplexMatrix matrix_exponential(const ComplexMatrix& a);

/// exp(-kappa G) for the spin-1 operator G = alpha S_z + gamma S_x, using
/// G^3 = (alpha^2 + gamma^2) G. When alpha^2 + gamma^2 vanishes G is nilpotent and the
/// truncated series I - kappa G + kappa^2 G^2 / 2 is exact.
Matrix3c spin1_exponential(Complex kappa, Complex alpha, Complex gamma);

/// One site of the mean-field decoherence product:
///   tr[ e^{it((a+2Jm)Sz + wSx)} e^{beta(wSx + 2Jm Sz)} e^{it((a-2Jm)Sz - wSx)} ] / tr e^{beta(...)}
/// with a = J0 / (2 sqrt N), every exponential evaluated densely. Supports 2S <= 8.
Complex site_trace_oracle(const IsingParams& params, double order_parameter, double time);

/// Exact w = 0 decoherence function by enumerating all (2S+1)^N product states:
///   g(t) = sum exp(i J0 M t / sqrt N + beta J M^2 / N) / sum exp(beta J M^2 / N).
/// Throws BudgetExceeded beyond 10^6 states.
CoherenceSeries brute_force_ising_g(int n_spins, HalfInteger spin, double coupling_j,
                                    double coupling_j0, double beta, std::span<const double> times);

/// Multiplicities of total angular momentum obtained by diagonalising J^2 in the
/// lowest-|M| sector of the N-spin product space. Keys are 2j. Intended for
/// (2S+1)^N up to a few thousand.
std::map<std::int64_t, std::int64_t> brute_force_multiplicities(int n_spins, HalfInteger spin);

inline constexpr std::int64_t kEnumerationLimit = 1'000'000;

}  // namespace spinbath
