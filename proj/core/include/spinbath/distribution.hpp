#pragma once

#include <functional>
#include <variant>

#include "spinbath/degeneracy.hpp"
#include "spinbath/half_integer.hpp"

namespace spinbath {

/// Large-N law of j: continuous density on [0, inf) for N spins of magnitude S.
struct GaussianLaw {
  int n_spins = 1;
  HalfInteger spin = HalfInteger::from_twice(1);
};

/// Probability law of the total angular momentum quantum number j under the tracial
/// (infinite temperature) bath state.
class JDistribution {
 public:
  explicit JDistribution(DegeneracyTable table);
  explicit JDistribution(GaussianLaw law);

  bool is_exact() const { return std::holds_alternative<DegeneracyTable>(kind_); }
  const DegeneracyTable& table() const { return std::get<DegeneracyTable>(kind_); }
  int n_spins() const;
  HalfInteger spin() const;

  /// Total probability: exactly 1 for the exact kind, quadrature for the Gaussian kind.
  double normalization() const { return normalization_; }

 private:
  std::variant<DegeneracyTable, GaussianLaw> kind_;
  double normalization_ = 1.0;
};

/// (2j+1) nu(j) / (2S+1)^N as an exact rational.
BigRational exact_pmf_rational(const DegeneracyTable& table, HalfInteger j);
double exact_pmf(const DegeneracyTable& table, HalfInteger j);

/// 6j^2/(NS(S+1)) sqrt(3/(2 pi N S(S+1))) exp(-3j^2/(2S(S+1)N)).
double gaussian_pdf(int n_spins, HalfInteger spin, double j);

/// Cumulative distribution of the Gaussian law (closed form).
double gaussian_cdf(int n_spins, HalfInteger spin, double j);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// <j> = 2 sqrt(2/(3 pi)) sqrt(NS(S+1)), (Delta j)^2 = (1 - 8/(3 pi)) NS(S+1).
Moments moments(int n_spins, HalfInteger spin);

struct Expectation {
  double value = 0.0;
  double error = 0.0;      // quadrature error estimate (0 for the exact kind)
  double upper = 0.0;      // final integration cut-off (Gaussian kind)
  double tail_bound = 0.0; // change seen on the last doubling of the cut-off
};

/// <f(j)>. Exact kind: weighted sum over the table. Gaussian kind: adaptive quadrature on
/// [0, mean + 12 sigma], the cut-off doubled until the tail changes the result by less
/// than the tolerance. Throws NumericalError when no cut-off converges (a divergent
/// expectation such as exp(J beta j^2 / N) above threshold).
Expectation expectation(const JDistribution& dist, const std::function<double(double)>& f);

/// Sup distance between the exact CDF and the Gaussian CDF, the latter sampled midway
/// between consecutive admissible j (continuity correction).
double kolmogorov_distance(const DegeneracyTable& table);

}  // namespace spinbath
