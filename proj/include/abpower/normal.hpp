#pragma once

namespace abpower {

// Standard normal CDF. Absolute error below 1e-15 over the whole line.
double normal_cdf(double z);

// Inverse of normal_cdf on (0, 1). Rational initial guess refined with
// Halley steps against normal_cdf; absolute error below 1e-12.
double normal_quantile(double p);

// Upper-tail critical value: the z solving 1 - Phi(z) = alpha.
// |residual| < 1e-9. Throws std::invalid_argument unless 0 < alpha < 1.
double z_critical(double alpha);

}  // namespace abpower
