#pragma once

namespace spinbath::special {

/// Scaled complementary error function exp(x^2) erfc(x), finite for all x >= -26.
double erfcx(double x);

/// log(sinh(x)) for x > 0 without overflow.
double log_sinh(double x);

/// log(cosh(x)) without overflow.
double log_cosh(double x);

/// coth(y) - 1/y, accurate near y = 0 (odd in y).
double coth_minus_inverse(double y);

}  // namespace spinbath::special
