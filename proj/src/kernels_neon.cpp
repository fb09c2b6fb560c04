#include <arm_neon.h>

#include "abpower/kernels.hpp"

namespace abpower::kernels {

namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(x + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(x + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double masked_sum_neon(const double* x, const std::uint8_t* mask, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t m = {mask[i] ? ~0ull : 0ull, mask[i + 1] ? ~0ull : 0ull};
    float64x2_t v = vreinterpretq_f64_u64(
        vandq_u64(vreinterpretq_u64_f64(vld1q_f64(x + i)), m));
    acc = vaddq_f64(acc, v);
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) {
    if (mask[i]) out += x[i];
  }
  return out;
}

double flip_mass_neon(const double* p, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vld1q_f64(p + i);
    acc = vfmaq_f64(acc, v, vsubq_f64(one, v));
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += p[i] * (1.0 - p[i]);
  return out;
}

std::size_t count_less_neon(const double* u, const double* p, std::size_t n) {
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t cmp = vcltq_f64(vld1q_f64(u + i), vld1q_f64(p + i));
    count += (vgetq_lane_u64(cmp, 0) & 1) + (vgetq_lane_u64(cmp, 1) & 1);
  }
  for (; i < n; ++i) count += (u[i] < p[i]) ? 1 : 0;
  return count;
}

}  // namespace

const Ops& neon() {
  static const Ops ops{sum_neon, masked_sum_neon, flip_mass_neon,
                       count_less_neon};
  return ops;
}

}  // namespace abpower::kernels
