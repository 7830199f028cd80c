#include "spinbath/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace spinbath::special {

namespace {

// Continued fraction for erfc(x) exp(x^2) sqrt(pi), evaluated backwards; x >= 4.
double erfcx_continued_fraction(double x) {
  double tail = 0.0;
  for (int k = 60; k >= 1; --k) {
    tail = 0.5 * k / (x + tail);
  }
  return 1.0 / ((x + tail) * std::sqrt(std::numbers::pi));
}

}  // namespace

double erfcx(double x) {
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x < 4.0) return std::exp(x * x) * std::erfc(x);
  return erfcx_continued_fraction(x);
}

double log_sinh(double x) {
  if (x < 20.0) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double coth_minus_inverse(double y) {
  const double a = std::abs(y);
  if (a < 0.05) {
    const double y2 = y * y;
    // y/3 - y^3/45 + 2y^5/945 - y^7/4725
    return y * (1.0 / 3.0 + y2 * (-1.0 / 45.0 + y2 * (2.0 / 945.0 - y2 / 4725.0)));
  }
  if (a > 20.0) return std::copysign(1.0, y) - 1.0 / y;
  return 1.0 / std::tanh(y) - 1.0 / y;
}

}  // namespace spinbath::special
