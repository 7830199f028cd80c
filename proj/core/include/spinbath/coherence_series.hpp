#pragma once

#include <complex>
#include <vector>

namespace spinbath {

/// Time grid with the normalised coherence rho12(t)/rho12(0) and, when the model
/// tracks it, the upper population rho11(t).
struct CoherenceSeries {
  std::vector<double> times;
  std::vector<std::complex<double>> ratio12;
  std::vector<double> pop11;  // empty when the model does not evolve populations

  std::size_t size() const { return times.size(); }
};

/// Uniform grid of `points` values spanning [t_min, t_max].
std::vector<double> linear_grid(double t_min, double t_max, std::size_t points);

}  // namespace spinbath
