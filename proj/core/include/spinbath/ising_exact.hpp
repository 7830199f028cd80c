#pragma once

#include <span>
#include <vector>

#include "spinbath/coherence_series.hpp"
#include "spinbath/degeneracy.hpp"
#include "spinbath/ising_mf.hpp"

namespace spinbath {

struct ExactIsingResult {
  CoherenceSeries series;
  double revival_period = 0.0;       // 2 pi sqrt(N) / J0
  double gaussian_fit_sigma = 0.0;   // |g| ~ exp(-sigma t^2) at short times; NaN if unresolved
};

/// Exact w = 0 decoherence function
///   g(t) = sum_l dimF_l exp(i J0 l t / sqrt N + beta J l^2 / N) / sum_l dimF_l exp(beta J l^2 / N),
/// the l-resummed form of the double sum over nu(j) and l = -j..j. Accumulated in long double
/// with the weights shifted by their maximum. Requires NS <= 10^5.
ExactIsingResult g_exact(const IsingParams& params, const DegeneracyTable& table,
                         std::span<const double> times);

/// Same, building the table (through the disk cache when SPINBATH_CACHE_DIR is set).
ExactIsingResult g_exact(const IsingParams& params, std::span<const double> times);

/// Direct double sum over j and l; O((NS)^2) per time, kept as a cross-check.
std::complex<double> g_exact_double_sum(const IsingParams& params, const DegeneracyTable& table,
                                        double time);

/// beta -> 0 closed forms: cos^N(J0 t / 2 sqrt N) for S = 1/2, 3^{-N}[1 + 2 cos(J0 t / sqrt N)]^N
/// for S = 1.
double g_high_temperature(const IsingParams& params, double time);

/// Coefficient c of the large-N, beta -> 0 law |g| = exp(-c J0^2 t^2) nominal values: 1/8 (S = 1/2)
/// and 1/6 (S = 1).
double high_temperature_rate_nominal(HalfInteger spin);

/// The same coefficient from the single-site second moment, S(S+1)/6.
double high_temperature_rate(HalfInteger spin);

struct Revival {
  int cycle = 0;
  double time = 0.0;
  double amplitude = 0.0;
};

struct RevivalReport {
  double period = 0.0;
  std::vector<Revival> revivals;
};

/// Locates the maximum of |g| within a quarter period of each multiple of the period.
/// Needs a grid spanning at least two periods.
RevivalReport revival_diagnostics(const ExactIsingResult& result);

struct MeanFieldComparison {
  std::vector<double> times;
  std::vector<double> exact_abs;
  std::vector<double> meanfield_abs;         // sqrt of the N -> infinity |g|^2 law
  std::vector<double> meanfield_finite_abs;  // |closed form|^N at the given N
  double max_deviation = 0.0;                // max |exact - meanfield_abs|
  double exact_revival = 0.0;                // max |g_exact| within a quarter period of t = period
  bool meanfield_monotone = false;
  MeanFieldSolution solution;
};

/// Exact and mean-field |g| on a shared grid for S = 1, w = 0, T < Tc.
MeanFieldComparison meanfield_vs_exact(const IsingParams& params, std::span<const double> times);

inline constexpr double kExactTermBudget = 1e5;

}  // namespace spinbath
