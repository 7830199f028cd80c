#include "spinbath/distribution.hpp"

#include <cmath>
#include <numbers>

#include "spinbath/errors.hpp"
#include "spinbath/quadrature.hpp"

namespace spinbath {

namespace {

constexpr int kMaxCutoffDoublings = 40;

double bath_casimir(int n_spins, HalfInteger spin) {
  return static_cast<double>(n_spins) * spin.casimir();
}

void require_law(int n_spins, HalfInteger spin) {
  if (n_spins < 1) throw InvalidArgument("N must be >= 1");
  require_spin_magnitude(spin);
}

}  // namespace

JDistribution::JDistribution(DegeneracyTable table) : kind_(std::move(table)) {
  normalization_ = 1.0;
}

JDistribution::JDistribution(GaussianLaw law) : kind_(law) {
  require_law(law.n_spins, law.spin);
  normalization_ = expectation(*this, [](double) { return 1.0; }).value;
}

int JDistribution::n_spins() const {
  return is_exact() ? table().n_spins() : std::get<GaussianLaw>(kind_).n_spins;
}

HalfInteger JDistribution::spin() const {
  return is_exact() ? table().spin() : std::get<GaussianLaw>(kind_).spin;
}

BigRational exact_pmf_rational(const DegeneracyTable& table, HalfInteger j) {
  const BigInt& nu = table.nu(j);
  return BigRational(BigInt(j.twice() + 1) * nu, table.hilbert_dimension());
}

double exact_pmf(const DegeneracyTable& table, HalfInteger j) {
  return static_cast<double>(exact_pmf_rational(table, j));
}

double gaussian_pdf(int n_spins, HalfInteger spin, double j) {
  require_law(n_spins, spin);
  if (j < 0.0) return 0.0;
  const double c = bath_casimir(n_spins, spin);
  return 6.0 * j * j / c * std::sqrt(3.0 / (2.0 * std::numbers::pi * c)) *
         std::exp(-3.0 * j * j / (2.0 * c));
}

double gaussian_cdf(int n_spins, HalfInteger spin, double j) {
  require_law(n_spins, spin);
  if (j <= 0.0) return 0.0;
  const double sigma = std::sqrt(bath_casimir(n_spins, spin) / 3.0);
  const double u = j / sigma;
  return std::erf(u / std::numbers::sqrt2) -
         std::sqrt(2.0 / std::numbers::pi) * u * std::exp(-0.5 * u * u);
}

Moments moments(int n_spins, HalfInteger spin) {
  require_law(n_spins, spin);
  const double c = bath_casimir(n_spins, spin);
  return {2.0 * std::sqrt(2.0 / (3.0 * std::numbers::pi)) * std::sqrt(c),
          (1.0 - 8.0 / (3.0 * std::numbers::pi)) * c};
}

Expectation expectation(const JDistribution& dist, const std::function<double(double)>& f) {
  if (dist.is_exact()) {
    const auto& t = dist.table();
    Expectation out;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const HalfInteger j = t.j_at(k);
      out.value += exact_pmf(t, j) * f(j.value());
    }
    out.upper = t.max_j().value();
    return out;
  }

  const int n = dist.n_spins();
  const HalfInteger s = dist.spin();
  const Moments mom = moments(n, s);
  // Where the density underflows the product is taken as zero so that a growing f cannot
  // turn it into 0 * inf.
  const quad::RealIntegrand integrand = [&](double j) {
    const double pdf = gaussian_pdf(n, s, j);
    return pdf == 0.0 ? 0.0 : pdf * f(j);
  };

  double upper = mom.mean + 12.0 * std::sqrt(mom.variance);
  quad::Tolerance tol{1e-10, 1e-300, 18};
  Expectation out;
  try {
    const auto body = quad::adaptive(integrand, 0.0, upper, tol);
    out.value = body.value;
    out.error = body.error;
    for (int k = 0; k < kMaxCutoffDoublings; ++k) {
      quad::Tolerance tail_tol{1e-6, 1e-14 * std::max(std::abs(out.value), 1e-300), 18};
      const auto tail = quad::adaptive(integrand, upper, 2.0 * upper, tail_tol);
      upper *= 2.0;
      out.value += tail.value;
      out.error += tail.error;
      const double previous_tail = out.tail_bound;
      out.tail_bound = std::abs(tail.value);
      out.upper = upper;
      if (k > 0 && out.tail_bound >= previous_tail && out.tail_bound > 1e-12 * std::abs(out.value)) {
        throw NumericalError("expectation diverges: tail does not shrink as the cut-off doubles (j=" +
                                 std::to_string(upper) + ")",
                             out.value, out.tail_bound);
      }
      if (out.tail_bound <= 1e-12 * std::abs(out.value)) {
        if (out.error > 1e-8 * std::max(std::abs(out.value), 1e-300)) {
          throw NumericalError("expectation: relative error above 1e-8", out.value, out.error);
        }
        return out;
      }
    }
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("expectation does not converge: ") + e.what(), out.value,
                         out.error);
  }
  throw NumericalError("expectation does not converge: tail keeps growing up to j=" +
                           std::to_string(upper),
                       out.value, out.tail_bound);
}

double kolmogorov_distance(const DegeneracyTable& table) {
  double cdf = 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const HalfInteger j = table.j_at(k);
    cdf += exact_pmf(table, j);
    const double model = gaussian_cdf(table.n_spins(), table.spin(), j.value() + 0.5);
    worst = std::max(worst, std::abs(cdf - model));
  }
  return worst;
}

}  // namespace spinbath
