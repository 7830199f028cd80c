#include "spinbath/spin_algebra.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "spinbath/errors.hpp"
#include "spinbath/ising_mf.hpp"

namespace spinbath {

namespace {

constexpr int kPadeOrder = 8;

// c_k = (2q-k)! q! / ((2q)! k! (q-k)!)
std::array<double, kPadeOrder + 1> pade_coefficients() {
  std::array<double, kPadeOrder + 1> c{};
  c[0] = 1.0;
  for (int k = 1; k <= kPadeOrder; ++k) {
    c[k] = c[k - 1] * static_cast<double>(kPadeOrder - k + 1) /
           static_cast<double>(k * (2 * kPadeOrder - k + 1));
  }
  return c;
}

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) best = std::max(best, a.col(j).cwiseAbs().sum());
  return best;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / base) {
      return std::numeric_limits<std::int64_t>::max();
    }
    r *= base;
  }
  return r;
}

}  // namespace

std::vector<double> linear_grid(double t_min, double t_max, std::size_t points) {
  if (points < 2) throw InvalidArgument("grid needs at least 2 points");
  if (!(t_max > t_min)) throw InvalidArgument("grid requires t_max > t_min");
  std::vector<double> grid(points);
  const double step = (t_max - t_min) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = t_min + step * static_cast<double>(i);
  grid.back() = t_max;
  return grid;
}

SpinMatrices build_spin_matrices(HalfInteger spin) {
  require_spin_magnitude(spin);
  const auto dim = static_cast<Eigen::Index>(spin.twice() + 1);
  const double s = spin.value();
  ComplexMatrix raise = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix sz = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double m = s - static_cast<double>(k);
    sz(k, k) = m;
    // S+ |m> = sqrt(S(S+1) - m(m+1)) |m+1>, and |m+1> sits one row above.
    if (k > 0) raise(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix lower = raise.adjoint();
  SpinMatrices out{spin, 0.5 * (raise + lower), (raise - lower) / Complex(0.0, 2.0), sz};
  return out;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("matrix_exponential needs a square matrix");
  static const auto coeff = pade_coefficients();
  const double norm = one_norm(a);
  if (!std::isfinite(norm)) throw NumericalError("matrix_exponential: non-finite input");
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix x = a / std::ldexp(1.0, squarings);

  const auto n = a.rows();
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
  ComplexMatrix power = identity;
  ComplexMatrix numer = coeff[0] * identity;
  ComplexMatrix denom = coeff[0] * identity;
  for (int k = 1; k <= kPadeOrder; ++k) {
    power = power * x;
    numer += coeff[k] * power;
    denom += ((k % 2 == 0) ? coeff[k] : -coeff[k]) * power;
  }
  ComplexMatrix result = denom.partialPivLu().solve(numer);
  for (int i = 0; i < squarings; ++i) result = result * result;
  if (!result.allFinite()) throw NumericalError("matrix_exponential overflowed");
  return result;
}

Matrix3c spin1_exponential(Complex kappa, Complex alpha, Complex gamma) {
  static const SpinMatrices s1 = build_spin_matrices(HalfInteger::integer(1));
  const Matrix3c sz = s1.sz;
  const Matrix3c sx = s1.sx;
  const Matrix3c g = alpha * sz + gamma * sx;
  const Matrix3c g2 = g * g;
  const Complex lambda2 = alpha * alpha + gamma * gamma;
  const Matrix3c identity = Matrix3c::Identity();

  const Complex z2 = kappa * kappa * lambda2;
  if (std::abs(z2) < 1e-8) {
    // Series in z^2 = kappa^2 lambda^2: (cosh z - 1)/lambda^2 and sinh z / lambda.
    const Complex c2 = kappa * kappa * (0.5 + z2 / 24.0 + z2 * z2 / 720.0);
    const Complex c1 = kappa * (1.0 + z2 / 6.0 + z2 * z2 / 120.0);
    return identity + c2 * g2 - c1 * g;
  }
  const Complex lambda = std::sqrt(lambda2);
  const Complex z = kappa * lambda;
  return identity + ((std::cosh(z) - 1.0) / lambda2) * g2 - (std::sinh(z) / lambda) * g;
}

Complex site_trace_oracle(const IsingParams& params, double order_parameter, double time) {
  params.validate();
  if (params.spin.twice() > 8) throw InvalidArgument("site_trace_oracle supports 2S <= 8");
  if (order_parameter < 0.0) throw InvalidArgument("order parameter must be non-negative");
  const SpinMatrices s = build_spin_matrices(params.spin);
  const double a = params.coupling_j0 / (2.0 * std::sqrt(static_cast<double>(params.n_spins)));
  const double field = 2.0 * params.coupling_j * order_parameter;
  const double w = params.transverse_w;
  const Complex it(0.0, time);

  const ComplexMatrix forward = matrix_exponential(it * ((a + field) * s.sz + w * s.sx));
  const ComplexMatrix thermal = matrix_exponential(params.beta() * (w * s.sx + field * s.sz));
  const ComplexMatrix backward = matrix_exponential(it * ((a - field) * s.sz - w * s.sx));

  const Complex numer = (forward * thermal * backward).trace();
  const Complex denom = thermal.trace();
  return numer / denom;
}

CoherenceSeries brute_force_ising_g(int n_spins, HalfInteger spin, double coupling_j,
                                    double coupling_j0, double beta,
                                    std::span<const double> times) {
  require_spin_magnitude(spin);
  if (n_spins < 1) throw InvalidArgument("N must be >= 1");
  const int digits = static_cast<int>(spin.twice()) + 1;
  const std::int64_t states = ipow(digits, n_spins);
  if (states > kEnumerationLimit) {
    throw BudgetExceeded("enumeration of " + std::to_string(digits) + "^" +
                         std::to_string(n_spins) + " states exceeds the 10^6 limit");
  }

  // Histogram of 2M over all product states, odometer over site projections.
  const std::int64_t twice_ns = spin.twice() * n_spins;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(2 * twice_ns + 1), 0);
  std::vector<int> config(static_cast<std::size_t>(n_spins), 0);
  for (std::int64_t state = 0; state < states; ++state) {
    std::int64_t twice_m = 0;
    for (int d : config) twice_m += spin.twice() - 2 * d;
    counts[static_cast<std::size_t>(twice_m + twice_ns)] += 1;
    for (auto& d : config) {
      if (++d < digits) break;
      d = 0;
    }
  }

  const double n = static_cast<double>(n_spins);
  const double root_n = std::sqrt(n);
  std::vector<double> log_weight;
  std::vector<double> total_m;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const double m = 0.5 * static_cast<double>(static_cast<std::int64_t>(k) - twice_ns);
    total_m.push_back(m);
    log_weight.push_back(std::log(static_cast<double>(counts[k])) + beta * coupling_j * m * m / n);
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (double lw : log_weight) shift = std::max(shift, lw);

  CoherenceSeries out;
  out.times.assign(times.begin(), times.end());
  out.ratio12.reserve(times.size());
  for (double t : times) {
    Complex numer = 0.0;
    double denom = 0.0;
    for (std::size_t k = 0; k < total_m.size(); ++k) {
      const double w = std::exp(log_weight[k] - shift);
      numer += w * std::polar(1.0, coupling_j0 * total_m[k] * t / root_n);
      denom += w;
    }
    out.ratio12.push_back(numer / denom);
  }
  return out;
}

std::map<std::int64_t, std::int64_t> brute_force_multiplicities(int n_spins, HalfInteger spin) {
  require_spin_magnitude(spin);
  if (n_spins < 1) throw InvalidArgument("N must be >= 1");
  const int digits = static_cast<int>(spin.twice()) + 1;
  const std::int64_t states = ipow(digits, n_spins);
  if (states > kEnumerationLimit) throw BudgetExceeded("brute-force J^2 limited to 10^6 states");

  const std::int64_t twice_ns = spin.twice() * n_spins;
  const std::int64_t low = twice_ns % 2;  // 2M of the lowest non-negative sector
  const double s = spin.value();

  // Collect product states in sectors 2M = low and low + 2; a state is a base-(2S+1) code.
  std::vector<std::int64_t> sector_low;
  std::vector<std::int64_t> sector_high;
  std::map<std::int64_t, Eigen::Index> high_index;
  std::vector<int> config(static_cast<std::size_t>(n_spins), 0);
  for (std::int64_t code = 0; code < states; ++code) {
    std::int64_t twice_m = 0;
    for (int d : config) twice_m += spin.twice() - 2 * d;
    if (twice_m == low) sector_low.push_back(code);
    if (twice_m == low + 2) {
      high_index[code] = static_cast<Eigen::Index>(sector_high.size());
      sector_high.push_back(code);
    }
    for (auto& d : config) {
      if (++d < digits) break;
      d = 0;
    }
  }

  // J+ restricted to the low sector; J^2 = J-J+ + Jz^2 + Jz there.
  const auto rows = static_cast<Eigen::Index>(sector_high.size());
  const auto cols = static_cast<Eigen::Index>(sector_low.size());
  Eigen::MatrixXd raise = Eigen::MatrixXd::Zero(rows, cols);
  std::vector<std::int64_t> place(static_cast<std::size_t>(n_spins));
  for (int i = 0; i < n_spins; ++i) place[static_cast<std::size_t>(i)] = ipow(digits, i);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const std::int64_t code = sector_low[static_cast<std::size_t>(c)];
    for (int i = 0; i < n_spins; ++i) {
      const std::int64_t p = place[static_cast<std::size_t>(i)];
      const int d = static_cast<int>((code / p) % digits);
      if (d == 0) continue;  // already m = S
      const double m = s - d;
      const std::int64_t raised = code - p;
      raise(high_index.at(raised), c) += std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
  }
  const double m0 = 0.5 * static_cast<double>(low);
  Eigen::MatrixXd casimir = raise.transpose() * raise;
  casimir.diagonal().array() += m0 * m0 + m0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(casimir, Eigen::EigenvaluesOnly);
  std::map<std::int64_t, std::int64_t> result;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double lambda = solver.eigenvalues()(k);
    const double j = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * std::max(lambda, 0.0)));
    result[static_cast<std::int64_t>(std::llround(2.0 * j))] += 1;
  }
  return result;
}

}  // namespace spinbath
