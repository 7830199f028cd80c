#include "spinbath/ising_mf.hpp"

#include <boost/math/tools/roots.hpp>
#include <array>
#include <cmath>
#include <vector>

#include "spinbath/errors.hpp"
#include "spinbath/special_functions.hpp"
#include "spinbath/spin_algebra.hpp"

namespace spinbath {

namespace {

using Complex = std::complex<double>;

constexpr int kScanPoints = 256;
constexpr double kRootTolerance = 1e-12;

// sum_k coeff[k] cosh(k x) scaled by e^{-K x} with K the largest k.
template <std::size_t K>
double scaled_cosh_sum(const std::array<double, K>& coeff, double x) {
  const double top = static_cast<double>(K - 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double kd = static_cast<double>(k);
    sum += coeff[k] * 0.5 * (std::exp((kd - top) * x) + std::exp((-kd - top) * x));
  }
  return sum;
}

void require_closed_form(HalfInteger spin) {
  if (!has_meanfield_closed_form(spin)) {
    throw InvalidArgument("mean-field closed form exists only for S = 1, 3/2, 2 (got S=" +
                          spin.to_string() + ")");
  }
}

double theta_of(const IsingParams& p, double m) {
  return std::hypot(p.transverse_w, 2.0 * p.coupling_j * m);
}

}  // namespace

void IsingParams::validate() const {
  if (n_spins < 1) throw InvalidArgument("N must be >= 1");
  require_spin_magnitude(spin);
  if (!(coupling_j > 0.0)) throw InvalidArgument("J must be > 0");
  if (!(temperature > 0.0)) throw InvalidArgument("T must be > 0");
  if (!(transverse_w >= 0.0)) throw InvalidArgument("w must be >= 0");
  if (!std::isfinite(coupling_j0)) throw InvalidArgument("J0 must be finite");
}

double log_site_partition(HalfInteger spin, double x) {
  x = std::abs(x);
  const double b = 0.5 * static_cast<double>(spin.twice() + 1);
  if (x < 1e-6) {
    // sinh(b x)/sinh(x/2) = 2b [1 + (b^2 - 1/4) x^2 / 6 + O(x^4)]
    return std::log(2.0 * b) + (b * b - 0.25) * x * x / 6.0;
  }
  return special::log_sinh(b * x) - special::log_sinh(0.5 * x);
}

double log_partition_function(const IsingParams& params, double order_parameter) {
  params.validate();
  if (order_parameter < 0.0) throw InvalidArgument("m must be >= 0");
  const double n = static_cast<double>(params.n_spins);
  const double x = params.beta() * theta_of(params, order_parameter);
  return -params.beta() * order_parameter * order_parameter * params.coupling_j * n +
         n * log_site_partition(params.spin, x);
}

double critical_temperature(const IsingParams& params) {
  return 2.0 * params.coupling_j * params.spin.casimir() / 3.0;
}

double self_consistency_rhs(HalfInteger spin, double x) {
  const double b = 0.5 * static_cast<double>(spin.twice() + 1);
  // (2S+1) coth(b x) - coth(x/2) with the 1/x poles cancelled.
  return 2.0 * b * special::coth_minus_inverse(b * x) - special::coth_minus_inverse(0.5 * x);
}

MeanFieldSolution solve_order_parameter(const IsingParams& params) {
  params.validate();
  MeanFieldSolution sol;
  sol.critical_temperature = critical_temperature(params);
  const double j = params.coupling_j;
  const double w = params.transverse_w;
  const double beta = params.beta();
  const double s = params.spin.value();
  const double hi = 2.0 * j * s;

  const auto f = [&](double theta) { return theta / j - self_consistency_rhs(params.spin, beta * theta); };

  sol.theta = w;
  if (w < hi) {
    const double lo = w > 0.0 ? w * (1.0 + 1e-12) + 1e-15 * hi : 1e-9 * hi;
    std::vector<double> grid(kScanPoints);
    // The top of the scan sits just above 2JS so a root at saturation is bracketed.
    const double top = hi * (1.0 + 1e-9);
    const double ratio = std::log(top / lo);
    for (int k = 0; k < kScanPoints; ++k) {
      grid[k] = lo * std::exp(ratio * k / (kScanPoints - 1));
    }
    int last = -1;
    double prev = f(grid[0]);
    for (int k = 0; k + 1 < kScanPoints; ++k) {
      const double next = f(grid[k + 1]);
      if ((prev < 0.0) != (next < 0.0) || prev == 0.0) {
        ++sol.roots_found;
        last = k;
      }
      prev = next;
    }
    if (last >= 0) {
      std::uintmax_t iterations = 200;
      const auto tol = [](double a, double b) {
        return std::abs(b - a) <= kRootTolerance * std::max(1.0, std::abs(a));
      };
      const auto bracket =
          boost::math::tools::bisect(f, grid[last], grid[last + 1], tol, iterations);
      if (iterations >= 200) {
        throw NumericalError("order-parameter bisection did not converge on [" +
                                 std::to_string(bracket.first) + ", " +
                                 std::to_string(bracket.second) + "]",
                             bracket.first, bracket.second - bracket.first);
      }
      sol.bisection_iterations = static_cast<int>(iterations);
      sol.theta = std::min(hi, 0.5 * (bracket.first + bracket.second));
      sol.order_parameter = std::sqrt(std::max(0.0, sol.theta * sol.theta - w * w)) / (2.0 * j);
    }
  }
  // Ordered phase requires w/J below the right-hand side at Theta = w.
  // At w -> 0 both sides vanish and the condition reduces to T < Tc.
  const bool w_condition = beta * w < 1e-8
                               ? params.temperature < sol.critical_temperature
                               : w / j < self_consistency_rhs(params.spin, beta * w);
  sol.ordered = w_condition && sol.order_parameter > 0.0;
  if (!sol.ordered) {
    sol.order_parameter = 0.0;
    sol.theta = w;
  }
  if (has_meanfield_closed_form(params.spin)) sol.decay_valid = gaussian_validity(params, sol);
  return sol;
}

bool has_meanfield_closed_form(HalfInteger spin) {
  return spin.twice() == 2 || spin.twice() == 3 || spin.twice() == 4;
}

double gaussian_validity_bound(HalfInteger spin, double x) {
  require_closed_form(spin);
  x = std::abs(x);
  switch (spin.twice()) {
    case 2:
      return scaled_cosh_sum<2>({1.0, 2.0}, x) / scaled_cosh_sum<2>({3.0, 2.0}, x);
    case 3:
      return scaled_cosh_sum<3>({3.0, 4.0, 3.0}, x) / scaled_cosh_sum<3>({11.0, 12.0, 3.0}, x);
    default:
      return scaled_cosh_sum<4>({5.0, 10.0, 6.0, 4.0}, x) /
             scaled_cosh_sum<4>({31.0, 42.0, 18.0, 4.0}, x);
  }
}

bool gaussian_validity(const IsingParams& params, const MeanFieldSolution& solution) {
  require_closed_form(params.spin);
  const double ratio = solution.theta / params.coupling_j;
  return ratio * ratio < gaussian_validity_bound(params.spin, params.beta() * solution.theta);
}

std::complex<double> meanfield_site_factor(const IsingParams& params,
                                           const MeanFieldSolution& solution, double time) {
  params.validate();
  require_closed_form(params.spin);
  const double theta = solution.theta;
  const double m = solution.order_parameter;
  if (m == 0.0 || theta == 0.0) return 1.0;
  const double n = static_cast<double>(params.n_spins);
  const double x = params.beta() * theta;
  const double phi = params.coupling_j * params.coupling_j0 * m * time / (theta * std::sqrt(n));
  const Complex z(std::cos(phi), theta / params.coupling_j * std::sin(phi));
  // Everything is scaled by e^{-S x}; ys = 2 cosh(x/2) e^{-x/2}.
  const double e1 = std::exp(-x);
  const double ys = 1.0 + e1;
  const Complex q2 = ys * ys * z * z;
  switch (params.spin.twice()) {
    case 2:
      return (q2 - e1) / (1.0 + e1 + e1 * e1);
    case 3:
      return 0.5 * ys * z * (q2 - 2.0 * e1) / (0.5 * (1.0 + e1 + e1 * e1 + e1 * e1 * e1));
    default:
      return (q2 * q2 - 3.0 * e1 * q2 + e1 * e1) /
             (1.0 + e1 + e1 * e1 + e1 * e1 * e1 + e1 * e1 * e1 * e1);
  }
}

namespace {

template <class SiteFn>
CoherenceSeries power_series(const IsingParams& params, std::span<const double> times, SiteFn site) {
  CoherenceSeries out;
  out.times.assign(times.begin(), times.end());
  out.ratio12.reserve(times.size());
  const double n = static_cast<double>(params.n_spins);
  for (double t : times) {
    const Complex f = site(t);
    if (f == Complex(0.0, 0.0)) {
      throw NumericalError("mean-field per-site factor vanishes at t=" + std::to_string(t));
    }
    out.ratio12.push_back(std::exp(n * std::log(f)));
  }
  return out;
}

}  // namespace

CoherenceSeries g_meanfield(const IsingParams& params, const MeanFieldSolution& solution,
                            std::span<const double> times) {
  params.validate();
  require_closed_form(params.spin);
  return power_series(params, times,
                      [&](double t) { return meanfield_site_factor(params, solution, t); });
}

CoherenceSeries g_meanfield_oracle(const IsingParams& params, const MeanFieldSolution& solution,
                                   std::span<const double> times) {
  params.validate();
  return power_series(params, times, [&](double t) {
    return site_trace_oracle(params, solution.order_parameter, t);
  });
}

double g_meanfield_limit(const IsingParams& params, const MeanFieldSolution& solution, double time) {
  params.validate();
  require_closed_form(params.spin);
  const double theta = solution.theta;
  const double m = solution.order_parameter;
  if (m == 0.0 || theta == 0.0) return 1.0;
  const double x = params.beta() * theta;
  const double jr2 = params.coupling_j * params.coupling_j / (theta * theta);
  const double base = m * m * params.coupling_j0 * params.coupling_j0 * time * time;
  // Each bracket is taken scaled by its leading exponential.
  const double ch2 = 0.25 * (1.0 + std::exp(-x)) * (1.0 + std::exp(-x));  // cosh^2(x/2) e^{-x}
  double exponent = 0.0;
  switch (params.spin.twice()) {
    case 2: {
      const double d = scaled_cosh_sum<2>({1.0, 2.0}, x);
      exponent = -8.0 * base * ch2 / (d * d) * (d * jr2 - scaled_cosh_sum<2>({3.0, 2.0}, x));
      break;
    }
    case 3: {
      const double c1 = 0.5 * (1.0 + std::exp(-2.0 * x));  // cosh(x) e^{-x}
      exponent = -base / (2.0 * c1 * c1) *
                 (scaled_cosh_sum<3>({3.0, 4.0, 3.0}, x) * jr2 -
                  scaled_cosh_sum<3>({11.0, 12.0, 3.0}, x));
      break;
    }
    default: {
      const double d = scaled_cosh_sum<3>({1.0, 2.0, 2.0}, x);
      exponent = -8.0 * base * ch2 / (d * d) *
                 (scaled_cosh_sum<4>({5.0, 10.0, 6.0, 4.0}, x) * jr2 -
                  scaled_cosh_sum<4>({31.0, 42.0, 18.0, 4.0}, x));
      break;
    }
  }
  return std::exp(exponent);
}

}  // namespace spinbath
