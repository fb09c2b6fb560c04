#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel reduction kernels used by the Monte Carlo inner loops.
// Every kernel exists as a scalar reference implementation and, where the
// target supports it, a SIMD variant (AVX2 on x86-64, NEON on aarch64).
// The variant is selected once at startup from CPU features; the scalar
// table stays reachable so the two can be equivalence-tested and so
// ABPOWER_NO_SIMD=1 can pin the reference path.
namespace abpower::kernels {

struct Ops {
  // Sum of x[0..n).
  double (*sum)(const double* x, std::size_t n);
  // Sum of x[i] over indices with mask[i] != 0.
  double (*masked_sum)(const double* x, const std::uint8_t* mask, std::size_t n);
  // Sum of p[i] * (1 - p[i]).
  double (*flip_mass)(const double* p, std::size_t n);
  // Count of indices with u[i] < p[i].
  std::size_t (*count_less)(const double* u, const double* p, std::size_t n);
};

const Ops& scalar();
const Ops& active();
const char* active_name();

// Test hook: force the scalar table regardless of CPU features.
void force_scalar(bool on);

}  // namespace abpower::kernels
