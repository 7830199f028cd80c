#include "spinbath/xy_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinbath/distribution.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/quadrature.hpp"
#include "spinbath/special_functions.hpp"

namespace spinbath {

namespace {

using Complex = std::complex<double>;

// Below this many oscillation periods across [0, cutoff] the integrand is smooth enough
// for adaptive Gauss-Kronrod.
constexpr double kSmoothPeriods = 2.0;

double effective_alpha2(const XYParams& p) { return p.alpha * p.alpha * (1.0 - p.theta); }

double decay_constant(const XYParams& p) {
  return p.beta * p.g + 3.0 / (2.0 * (1.0 - p.theta) * p.spin.casimir());
}

struct Pieces {
  double cos2 = 0.0;       // cos^2(t Omega)
  double mu_sin2 = 0.0;    // mu^2/Omega^2 sin^2(t Omega)
  double sin2t = 0.0;      // mu/Omega sin(2 t Omega)
  double coup_sin2 = 0.0;  // a^2/Omega^2 sin^2(t Omega)
};

Pieces pieces(const XYParams& p, double j, double t) {
  const double a2 = effective_alpha2(p) * j * j / static_cast<double>(p.n_spins);
  const double omega2 = p.mu * p.mu + a2;
  Pieces out;
  if (omega2 <= 0.0) {
    out.cos2 = 1.0;
    return out;
  }
  const double omega = std::sqrt(omega2);
  const double c = std::cos(t * omega);
  const double s = std::sin(t * omega);
  out.cos2 = c * c;
  out.mu_sin2 = p.mu * p.mu / omega2 * s * s;
  out.sin2t = p.mu / omega * 2.0 * s * c;
  out.coup_sin2 = a2 / omega2 * s * s;
  return out;
}

}  // namespace

void XYParams::validate() const {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be > 0");
  if (!(g > 0.0)) throw InvalidArgument("g must be > 0");
  if (!(beta >= 0.0)) throw InvalidArgument("beta must be >= 0");
  if (n_spins < 1) throw InvalidArgument("N must be >= 1");
  require_spin_magnitude(spin);
  if (!(theta >= 0.0 && theta < 1.0)) throw InvalidArgument("theta must lie in [0, 1)");
  if (!std::isfinite(mu)) throw InvalidArgument("mu must be finite");
}

QubitDensity qubit_density(double rho11, std::complex<double> rho12) {
  QubitDensity rho;
  rho << rho11, rho12, std::conj(rho12), 1.0 - rho11;
  return rho;
}

void validate_qubit_density(const QubitDensity& rho) {
  constexpr double tol = 1e-12;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw InvalidArgument("initial qubit state must be Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > tol) throw InvalidArgument("initial qubit state needs unit trace");
  const double r11 = rho(0, 0).real();
  const double r22 = rho(1, 1).real();
  if (r11 < -tol || r22 < -tol || std::norm(rho(0, 1)) > r11 * r22 + tol) {
    throw InvalidArgument("initial qubit state must be positive semidefinite");
  }
}

double xy_partition_normalization(const XYParams& p) {
  return std::pow(1.0 + 2.0 * p.spin.casimir() * p.g * p.beta * (1.0 - p.theta) / 3.0, -1.5);
}

double xy_bath_weight(const XYParams& p, double j) {
  const double n = static_cast<double>(p.n_spins);
  return gaussian_pdf(p.n_spins, p.spin, j) * std::exp(-p.g * p.beta * (1.0 - p.theta) * j * j / n) /
         xy_partition_normalization(p);
}

double xy_j_cutoff(const XYParams& p) {
  const Moments m = moments(p.n_spins, p.spin);
  return m.mean + 12.0 * std::sqrt(m.variance);
}

CoherenceSeries coherence_evolution(const XYParams& p, const QubitDensity& rho0,
                                    std::span<const double> times, XYDiagnostics* diagnostics) {
  p.validate();
  validate_qubit_density(rho0);
  const double r11 = rho0(0, 0).real();
  const double r22 = rho0(1, 1).real();
  const double cutoff = xy_j_cutoff(p);
  const double rate = std::sqrt(effective_alpha2(p) / static_cast<double>(p.n_spins));

  CoherenceSeries out;
  out.times.assign(times.begin(), times.end());
  out.ratio12.reserve(times.size());
  out.pop11.reserve(times.size());
  XYDiagnostics diag;

  for (double t : times) {
    // Oscillations of cos(2 t Omega(j)) have local wavenumber <= 2 t rate.
    const double periods = std::abs(t) * rate * cutoff / std::numbers::pi;
    Complex coherence;
    Complex populations;  // real: sum of mu_sin2, imag: coup_sin2
    double cos2 = 0.0;
    double err = 0.0;
    if (periods < kSmoothPeriods) {
      const quad::Tolerance tol{1e-11, 1e-14, 16};
      auto piece = [&](auto member) {
        return quad::adaptive(
            [&](double j) { return xy_bath_weight(p, j) * pieces(p, j, t).*member; }, 0.0, cutoff,
            tol);
      };
      const auto c2 = piece(&Pieces::cos2);
      const auto ms = piece(&Pieces::mu_sin2);
      const auto s2 = piece(&Pieces::sin2t);
      const auto cs = piece(&Pieces::coup_sin2);
      cos2 = c2.value;
      coherence = {c2.value - ms.value, s2.value};
      populations = {ms.value, cs.value};
      err = c2.error + ms.error + s2.error + cs.error;
    } else {
      const double width = std::numbers::pi / (4.0 * std::abs(t) * rate);
      const auto a = quad::panels(
          [&](double j) {
            const Pieces q = pieces(p, j, t);
            return xy_bath_weight(p, j) * Complex(q.cos2 - q.mu_sin2, q.sin2t);
          },
          0.0, cutoff, width);
      const auto b = quad::panels(
          [&](double j) {
            const Pieces q = pieces(p, j, t);
            return xy_bath_weight(p, j) * Complex(q.mu_sin2, q.coup_sin2);
          },
          0.0, cutoff, width);
      coherence = a.value;
      populations = b.value;
      cos2 = a.value.real() + b.value.real();
      err = a.error + b.error;
      diag.panel_evaluations += a.evaluations + b.evaluations;
    }
    if (err > 1e-8) {
      throw NumericalError("coherence_evolution: quadrature error " + std::to_string(err) +
                               " at t=" + std::to_string(t),
                           coherence.real(), err);
    }
    if (err > diag.max_quadrature_error) {
      diag.max_quadrature_error = err;
      diag.worst_time = t;
    }
    out.ratio12.push_back(coherence);
    out.pop11.push_back(r11 * (cos2 + populations.real()) + r22 * populations.imag());
  }
  if (diagnostics != nullptr) *diagnostics = diag;
  return out;
}

double asymptotic_coherence(const XYParams& p) {
  p.validate();
  const double n = static_cast<double>(p.n_spins);
  const double mu2 = p.mu * p.mu;
  const auto averaged = [&](double j) {
    const double a2 = effective_alpha2(p) * j * j / n;
    const double denom = mu2 + a2;
    const double fraction = denom > 0.0 ? a2 / (2.0 * denom) : 0.5;
    return xy_bath_weight(p, j) * fraction;
  };
  return quad::adaptive(averaged, 0.0, xy_j_cutoff(p), {1e-12, 1e-15, 18}).value;
}

double asymptotic_coherence_of_z(double z) {
  if (z < 0.0) throw InvalidArgument("z must be non-negative");
  if (z > 20.0) {
    // 1/2 - z^2 + sqrt(pi) z^3 erfcx(z) = sum_{k>=1} (-1)^{k+1} (2k+1)!! / (2^{k+1} z^{2k})
    const double inv = 1.0 / (z * z);
    double term = 0.75 * inv;
    double sum = 0.0;
    for (int k = 1; k < 30 && std::abs(term) > 1e-18 * std::abs(sum); ++k) {
      sum += term;
      term *= -static_cast<double>(2 * k + 3) * 0.5 * inv;
    }
    return sum;
  }
  return 0.5 - z * z + std::sqrt(std::numbers::pi) * z * z * z * special::erfcx(z);
}

double asymptotic_coherence_closed_form(const XYParams& p) {
  p.validate();
  const double ratio = p.mu / p.alpha;
  return asymptotic_coherence_of_z(std::abs(ratio) * std::sqrt(decay_constant(p) / (1.0 - p.theta)));
}

double asymptotic_population(const XYParams& p, const QubitDensity& rho0) {
  validate_qubit_density(rho0);
  const double psi = asymptotic_coherence(p);
  return rho0(0, 0).real() * (1.0 - psi) + rho0(1, 1).real() * psi;
}

DecoherenceTime decoherence_time(const XYParams& p) {
  p.validate();
  DecoherenceTime out;
  out.tau_d = std::sqrt(p.beta * p.g + 3.0 / (2.0 * p.spin.casimir())) / p.alpha;
  out.tau_d_min = std::sqrt(p.beta * p.g) / p.alpha;
  out.degenerate = out.tau_d_min == 0.0;
  return out;
}

ShortTimeFit short_time_check(const CoherenceSeries& series, const XYParams& p) {
  const double tau = decoherence_time(p).tau_d;
  const double window = 0.2 * tau;
  std::size_t in_window = 0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double t = series.times[k];
    if (t < 0.0 || t > window * (1.0 + 1e-12)) continue;
    ++in_window;
    const double x = t * t;
    const double y = std::log(std::abs(series.ratio12[k]));
    sxy += x * y;
    sxx += x * x;
  }
  if (in_window < 20 || sxx == 0.0) {
    throw InvalidArgument("short_time_check needs >= 20 grid points in [0, 0.2 tau_D] (have " +
                          std::to_string(in_window) + ")");
  }
  const double slope = sxy / sxx;
  if (!(slope < 0.0)) throw NumericalError("short_time_check: |ratio12| does not decay", slope);
  ShortTimeFit fit;
  fit.fitted_tau = 1.0 / std::sqrt(-slope);
  fit.tau_d = tau;
  fit.relative_deviation = fit.fitted_tau / tau - 1.0;
  fit.points = in_window;
  return fit;
}

double large_spin_asymptote(double mu_over_alpha, double beta_g) {
  if (!(beta_g > 0.0)) throw InvalidArgument("beta g must be > 0");
  return asymptotic_coherence_of_z(std::abs(mu_over_alpha) * std::sqrt(beta_g));
}

}  // namespace spinbath
