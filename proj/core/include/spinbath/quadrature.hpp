#pragma once

#include <complex>
#include <functional>

namespace spinbath::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

struct ComplexResult {
  std::complex<double> value;
  double error = 0.0;
  int evaluations = 0;
};

struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;
  unsigned max_depth = 18;
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Adaptive 7/15-point Gauss-Kronrod on [a, b].
/// Throws NumericalError when the error estimate exceeds max(relative*|I|, absolute).
Result adaptive(const RealIntegrand& f, double a, double b, const Tolerance& tol = {});

/// Fixed 20-point Gauss-Legendre panels of width <= max_panel_width; the error is
/// estimated against a 10-point rule on the same panels.
Result panels(const RealIntegrand& f, double a, double b, double max_panel_width,
              int min_panels = 64);
ComplexResult panels(const ComplexIntegrand& f, double a, double b, double max_panel_width,
                     int min_panels = 64);

}  // namespace spinbath::quad
