#include "spinbath/hp_boson.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spinbath/errors.hpp"

namespace spinbath {

namespace {

using Complex = std::complex<double>;

constexpr std::int64_t kChunk = 4096;
constexpr double kTailWeight = 1e-14;

}  // namespace

void BosonParams::validate() const {
  require_spin_magnitude(spin);
  if (!(beta > 0.0)) throw InvalidArgument("beta must be > 0");
  if (!(g > 0.0)) throw InvalidArgument("g must be > 0 (beta g S > 0 keeps the thermal sum finite)");
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  if (n_max < 0) throw InvalidArgument("n_max must be >= 1 (or 0 for automatic)");
  if (!std::isfinite(mu)) throw InvalidArgument("mu must be finite");
}

PropagatorFactors propagator_factors(const BosonParams& p, std::int64_t n, double t) {
  if (n < 0) throw InvalidArgument("Fock index must be >= 0");
  const double s = p.spin.value();
  const double nd = static_cast<double>(n);
  const double detune = p.g * s - p.mu;
  const double a2 = 8.0 * p.alpha * p.alpha * s;
  PropagatorFactors f;
  f.m1 = std::sqrt(detune * detune + a2 * nd);
  f.m2 = std::sqrt(detune * detune + a2 * (nd + 1.0));

  const auto bracket = [&](double m, double sign) {
    if (m == 0.0) return Complex(1.0, sign * detune * t);  // sin(tM)/M -> t
    return Complex(std::cos(t * m), sign * detune / m * std::sin(t * m));
  };
  const Complex phase11 = std::polar(1.0, -4.0 * p.g * t * s * (nd - 0.5));
  const Complex phase22 = std::polar(1.0, -4.0 * p.g * t * s * (nd + 0.5));
  f.u11 = phase11 * bracket(f.m1, -1.0);
  f.u22 = phase22 * bracket(f.m2, +1.0);
  if (f.m1 > 0.0) {
    const double sn = std::sin(t * f.m1);
    f.u12_norm2 = a2 * nd * sn * sn / (f.m1 * f.m1);
  }
  return f;
}

std::int64_t thermal_truncation(const BosonParams& p) {
  p.validate();
  const double rate = 2.0 * p.g * p.spin.value() * p.beta;
  const double needed = std::ceil(-std::log(kTailWeight) / rate);
  if (!(needed <= static_cast<double>(kBosonTermCap)) || p.n_max > kBosonTermCap) {
    throw BudgetExceeded("bosonic thermal sum needs more than 10^7 terms; increase beta g S");
  }
  return std::max(p.n_max, static_cast<std::int64_t>(needed));
}

CoherenceSeries boson_coherence_series(const BosonParams& p, std::span<const double> times) {
  const std::int64_t n_max = thermal_truncation(p);
  const double rate = 2.0 * p.g * p.spin.value() * p.beta;
  const double s = p.spin.value();

  // Fixed chunks combined left to right keep the reduction order independent of scheduling.
  std::vector<double> weights(static_cast<std::size_t>(n_max + 1));
  for (std::int64_t n = 0; n <= n_max; ++n) weights[static_cast<std::size_t>(n)] = std::exp(-rate * n);
  double norm = 0.0;
  for (std::int64_t lo = 0; lo <= n_max; lo += kChunk) {
    double part = 0.0;
    for (std::int64_t n = lo; n <= std::min(n_max, lo + kChunk - 1); ++n) {
      part += weights[static_cast<std::size_t>(n)];
    }
    norm += part;
  }

  CoherenceSeries out;
  out.times.assign(times.begin(), times.end());
  out.ratio12.reserve(times.size());
  for (double t : times) {
    Complex sum = 0.0;
    for (std::int64_t lo = 0; lo <= n_max; lo += kChunk) {
      Complex part = 0.0;
      for (std::int64_t n = lo; n <= std::min(n_max, lo + kChunk - 1); ++n) {
        const PropagatorFactors f = propagator_factors(p, n, t);
        part += weights[static_cast<std::size_t>(n)] * (f.u11 * std::conj(f.u22));
      }
      sum += part;
    }
    out.ratio12.push_back(std::polar(1.0, -4.0 * p.g * s * t) * (sum / norm));
  }
  return out;
}

}  // namespace spinbath
