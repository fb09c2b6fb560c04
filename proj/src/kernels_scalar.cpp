#include "abpower/kernels.hpp"

namespace abpower::kernels {

namespace {

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double masked_sum_scalar(const double* x, const std::uint8_t* mask, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) acc += x[i];
  }
  return acc;
}

double flip_mass_scalar(const double* p, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += p[i] * (1.0 - p[i]);
  return acc;
}

std::size_t count_less_scalar(const double* u, const double* p, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += (u[i] < p[i]) ? 1 : 0;
  return count;
}

}  // namespace

const Ops& scalar() {
  static const Ops ops{sum_scalar, masked_sum_scalar, flip_mass_scalar,
                       count_less_scalar};
  return ops;
}

}  // namespace abpower::kernels
