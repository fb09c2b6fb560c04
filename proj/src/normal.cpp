#include "abpower/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace abpower {

double normal_cdf(double z) {
  // erfc keeps full relative accuracy in the lower tail, where
  // 1 - 0.5*erfc would cancel.
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace {

// Peter Acklam's rational approximation to the normal quantile.
// Relative error of the raw approximation is below 1.15e-9; the Halley
// refinement in normal_quantile pushes it to the accuracy of normal_cdf.
double acklam(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;

  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  }
  double x = acklam(p);
  // Two Halley steps against normal_cdf.
  for (int i = 0; i < 2; ++i) {
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double z_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("z_critical: alpha must lie in (0, 1)");
  }
  double z = normal_quantile(1.0 - alpha);
  // Bisection polish on the residual 1 - Phi(z) - alpha.
  double residual = 1.0 - normal_cdf(z) - alpha;
  if (std::abs(residual) > 1e-12) {
    double lo = z - 1e-6, hi = z + 1e-6;
    while ((1.0 - normal_cdf(lo)) < alpha) lo -= 1e-6;
    while ((1.0 - normal_cdf(hi)) > alpha) hi += 1e-6;
    for (int i = 0; i < 80; ++i) {
      double mid = 0.5 * (lo + hi);
      if ((1.0 - normal_cdf(mid)) > alpha) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    z = 0.5 * (lo + hi);
  }
  return z;
}

}  // namespace abpower
