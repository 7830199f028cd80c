#include "spinbath/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>
#include <vector>

#include "spinbath/errors.hpp"

namespace spinbath::quad {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

// One 7/15 Gauss-Kronrod panel. Node tables come from boost; abscissa()[0] = 0 and the
// even-indexed Kronrod nodes are the Gauss nodes.
Segment kronrod15(const RealIntegrand& f, double a, double b) {
  using kronrod = gauss_kronrod<double, 15>;
  using gauss7 = gauss<double, 7>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss7::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double k = f0 * wk[0];
  double g = f0 * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = f(mid + half * x[i]) + f(mid - half * x[i]);
    k += pair * wk[i];
    if (i % 2 == 0) g += pair * wg[i / 2];
  }
  const double err = std::max(std::abs(k - g) * half, std::abs(k * half) * 4e-16);
  return {a, b, k * half, err};
}

template <typename Value, typename F>
void panel_sums(const F& f, double a, double b, double max_width, int min_panels, Value& fine,
                Value& coarse, int& evals) {
  const double length = b - a;
  const auto needed = static_cast<long>(std::ceil(length / max_width));
  const long count = std::max<long>(min_panels, std::max<long>(needed, 1));
  const double h = length / static_cast<double>(count);
  fine = Value{};
  coarse = Value{};
  for (long k = 0; k < count; ++k) {
    const double lo = a + h * static_cast<double>(k);
    const double hi = (k + 1 == count) ? b : lo + h;
    fine += gauss<double, 20>::integrate(f, lo, hi);
    coarse += gauss<double, 10>::integrate(f, lo, hi);
  }
  evals = static_cast<int>(count * 30);
}

}  // namespace

Result adaptive(const RealIntegrand& f, double a, double b, const Tolerance& tol) {
  if (!(b > a)) return {};
  const std::size_t max_segments = std::size_t{1} << std::min(tol.max_depth, 20u);
  std::priority_queue<Segment> work;
  work.push(kronrod15(f, a, b));
  double total = work.top().value;
  double total_error = work.top().error;
  int evals = 15;

  auto converged = [&] {
    return total_error <= std::max(tol.relative * std::abs(total), tol.absolute);
  };
  while (!converged() && work.size() < max_segments) {
    const Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    work.push(left);
    work.push(right);
    if (!std::isfinite(total)) break;
  }
  // Re-sum to shed the drift of the running updates.
  double value = 0.0;
  double error = 0.0;
  while (!work.empty()) {
    value += work.top().value;
    error += work.top().error;
    work.pop();
  }
  if (!std::isfinite(value)) {
    throw NumericalError("quadrature produced a non-finite value", value, error);
  }
  if (error > std::max(tol.relative * std::abs(value), tol.absolute)) {
    throw NumericalError("adaptive quadrature did not converge (relative error " +
                             std::to_string(error / std::max(std::abs(value), 1e-300)) + ")",
                         value, error);
  }
  return {value, error, evals};
}

Result panels(const RealIntegrand& f, double a, double b, double max_panel_width, int min_panels) {
  if (!(b > a)) return {};
  double fine = 0.0;
  double coarse = 0.0;
  int evals = 0;
  panel_sums(f, a, b, max_panel_width, min_panels, fine, coarse, evals);
  if (!std::isfinite(fine)) throw NumericalError("panel quadrature produced a non-finite value");
  return {fine, std::abs(fine - coarse), evals};
}

ComplexResult panels(const ComplexIntegrand& f, double a, double b, double max_panel_width,
                     int min_panels) {
  if (!(b > a)) return {};
  std::complex<double> fine;
  std::complex<double> coarse;
  int evals = 0;
  panel_sums(f, a, b, max_panel_width, min_panels, fine, coarse, evals);
  if (!std::isfinite(fine.real()) || !std::isfinite(fine.imag())) {
    throw NumericalError("panel quadrature produced a non-finite value");
  }
  return {fine, std::abs(fine - coarse), evals};
}

}  // namespace spinbath::quad
