#include "spinbath/ising_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

using Complex = std::complex<double>;
using Real = long double;

void require_exact(const IsingParams& params) {
  params.validate();
  if (params.transverse_w != 0.0) throw InvalidArgument("exact Ising solution needs w = 0");
  if (static_cast<double>(params.n_spins) * params.spin.value() > kExactTermBudget) {
    throw BudgetExceeded("exact Ising sum limited to NS <= 1e5");
  }
}

Real log_big(const BigInt& v) {
  if (v <= 0) throw InvalidArgument("log of non-positive multiplicity");
  const auto bits = static_cast<long>(boost::multiprecision::msb(v));
  if (bits < 60) return std::log(v.convert_to<Real>());
  const long shift = bits - 60;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<Real>()) + static_cast<Real>(shift) * std::numbers::ln2_v<Real>;
}

// Normalised weights dimF_l e^{beta J l^2 / N} over l = -NS..NS and the l values.
struct Weights {
  std::vector<Real> ell;
  std::vector<Real> weight;
  Real total = 0;
};

Weights resummed_weights(const IsingParams& params, const DegeneracyTable& table) {
  if (table.n_spins() != params.n_spins || table.spin() != params.spin) {
    throw InvalidArgument("degeneracy table does not match (N, S)");
  }
  const Real n = params.n_spins;
  const Real bj = static_cast<Real>(params.beta()) * params.coupling_j;
  // dimF_l for l >= 0 is the suffix sum of nu(j) over j >= l.
  std::vector<Real> log_dim(table.size());
  BigInt suffix = 0;
  for (std::size_t k = table.size(); k-- > 0;) {
    suffix += table.nu_at(k);
    log_dim[k] = log_big(suffix);
  }
  Weights w;
  std::vector<Real> log_w;
  for (std::size_t k = table.size(); k-- > 0;) {
    const Real l = -static_cast<Real>(table.j_at(k).value());
    w.ell.push_back(l);
    log_w.push_back(log_dim[k] + bj * l * l / n);
  }
  const std::size_t start = table.min_j().twice() == 0 ? 1 : 0;
  for (std::size_t k = start; k < table.size(); ++k) {
    const Real l = static_cast<Real>(table.j_at(k).value());
    w.ell.push_back(l);
    log_w.push_back(log_dim[k] + bj * l * l / n);
  }
  const Real shift = *std::max_element(log_w.begin(), log_w.end());
  w.weight.resize(log_w.size());
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    w.weight[i] = std::exp(log_w[i] - shift);
    w.total += w.weight[i];
  }
  return w;
}

double fit_gaussian_sigma(const CoherenceSeries& s, double period) {
  double sxx = 0.0;
  double sxy = 0.0;
  int used = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double t = s.times[k];
    const double a = std::abs(s.ratio12[k]);
    if (t <= 0.0 || t > 0.25 * period || a < 0.5) continue;
    sxx += t * t * t * t;
    sxy += t * t * std::log(a);
    ++used;
  }
  if (used < 3) return std::numeric_limits<double>::quiet_NaN();
  return -sxy / sxx;
}

}  // namespace

ExactIsingResult g_exact(const IsingParams& params, const DegeneracyTable& table,
                         std::span<const double> times) {
  require_exact(params);
  const Weights w = resummed_weights(params, table);
  const Real root_n = std::sqrt(static_cast<Real>(params.n_spins));
  ExactIsingResult out;
  out.series.times.assign(times.begin(), times.end());
  out.series.ratio12.reserve(times.size());
  for (double t : times) {
    const Real omega = static_cast<Real>(params.coupling_j0) * t / root_n;
    Real re = 0;
    Real im = 0;
    for (std::size_t i = 0; i < w.weight.size(); ++i) {
      const Real phase = omega * w.ell[i];
      re += w.weight[i] * std::cos(phase);
      im += w.weight[i] * std::sin(phase);
    }
    out.series.ratio12.emplace_back(static_cast<double>(re / w.total),
                                    static_cast<double>(im / w.total));
  }
  out.revival_period = params.coupling_j0 != 0.0
                           ? 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(params.n_spins)) /
                                 std::abs(params.coupling_j0)
                           : std::numeric_limits<double>::infinity();
  out.gaussian_fit_sigma = fit_gaussian_sigma(out.series, out.revival_period);
  return out;
}

ExactIsingResult g_exact(const IsingParams& params, std::span<const double> times) {
  require_exact(params);
  const auto dir = cache_dir_from_environment();
  const DegeneracyTable table = dir ? cached_degeneracy_table(params.n_spins, params.spin, *dir)
                                    : degeneracy_table(params.n_spins, params.spin);
  return g_exact(params, table, times);
}

std::complex<double> g_exact_double_sum(const IsingParams& params, const DegeneracyTable& table,
                                        double time) {
  require_exact(params);
  const Real n = params.n_spins;
  const Real bj = static_cast<Real>(params.beta()) * params.coupling_j;
  const Real omega = static_cast<Real>(params.coupling_j0) * time / std::sqrt(n);
  const Real shift = bj * static_cast<Real>(table.max_j().value() * table.max_j().value()) / n;
  Real re = 0;
  Real im = 0;
  Real den = 0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const Real nu = table.nu_at(k).convert_to<Real>();
    const std::int64_t tj = table.j_at(k).twice();
    for (std::int64_t tl = -tj; tl <= tj; tl += 2) {
      const Real l = static_cast<Real>(tl) / 2;
      const Real e = nu * std::exp(bj * l * l / n - shift);
      re += e * std::cos(omega * l);
      im += e * std::sin(omega * l);
      den += e;
    }
  }
  return {static_cast<double>(re / den), static_cast<double>(im / den)};
}

double g_high_temperature(const IsingParams& params, double time) {
  params.validate();
  const double n = static_cast<double>(params.n_spins);
  const double arg = params.coupling_j0 * time / std::sqrt(n);
  switch (params.spin.twice()) {
    case 1:
      return std::pow(std::cos(0.5 * arg), n);
    case 2:
      return std::pow((1.0 + 2.0 * std::cos(arg)) / 3.0, n);
    default:
      throw InvalidArgument("high-temperature closed form exists only for S = 1/2, 1");
  }
}

double high_temperature_rate_nominal(HalfInteger spin) {
  switch (spin.twice()) {
    case 1:
      return 1.0 / 8.0;
    case 2:
      return 1.0 / 6.0;
    default:
      throw InvalidArgument("nominal high-temperature law exists only for S = 1/2, 1");
  }
}

double high_temperature_rate(HalfInteger spin) {
  require_spin_magnitude(spin);
  return spin.casimir() / 6.0;
}

RevivalReport revival_diagnostics(const ExactIsingResult& result) {
  const auto& s = result.series;
  const double period = result.revival_period;
  if (s.size() < 2 || !std::isfinite(period) || s.times.back() - s.times.front() < 2.0 * period) {
    throw InvalidArgument("revival diagnostics need a grid spanning at least two periods");
  }
  RevivalReport report;
  report.period = period;
  const int cycles = static_cast<int>(std::floor(s.times.back() / period + 0.25));
  for (int c = 1; c <= cycles; ++c) {
    Revival best{c, 0.0, -1.0};
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (std::abs(s.times[k] - c * period) > 0.25 * period) continue;
      const double a = std::abs(s.ratio12[k]);
      if (a > best.amplitude) best = {c, s.times[k], a};
    }
    if (best.amplitude >= 0.0) report.revivals.push_back(best);
  }
  return report;
}

MeanFieldComparison meanfield_vs_exact(const IsingParams& params, std::span<const double> times) {
  if (params.spin.twice() != 2) throw InvalidArgument("mean-field comparison is defined for S = 1");
  require_exact(params);
  MeanFieldComparison cmp;
  cmp.solution = solve_order_parameter(params);
  if (!cmp.solution.ordered) {
    throw InvalidArgument("mean-field comparison needs T < Tc (no ordered solution)");
  }
  const ExactIsingResult exact = g_exact(params, times);
  const CoherenceSeries finite = g_meanfield(params, cmp.solution, times);
  cmp.times.assign(times.begin(), times.end());
  cmp.meanfield_monotone = true;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double e = std::abs(exact.series.ratio12[k]);
    const double mf = std::sqrt(g_meanfield_limit(params, cmp.solution, times[k]));
    cmp.exact_abs.push_back(e);
    cmp.meanfield_abs.push_back(mf);
    cmp.meanfield_finite_abs.push_back(std::abs(finite.ratio12[k]));
    cmp.max_deviation = std::max(cmp.max_deviation, std::abs(e - mf));
    if (k > 0 && mf > cmp.meanfield_abs[k - 1] * (1.0 + 1e-12)) cmp.meanfield_monotone = false;
    if (std::abs(times[k] - exact.revival_period) <= 0.25 * exact.revival_period) {
      cmp.exact_revival = std::max(cmp.exact_revival, e);
    }
  }
  return cmp;
}

}  // namespace spinbath
