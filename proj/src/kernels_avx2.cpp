#include <immintrin.h>

#include "abpower/kernels.hpp"

namespace abpower::kernels {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i];
  return acc;
}

double masked_sum_avx2(const double* x, const std::uint8_t* mask, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Widen 4 mask bytes to 64-bit lanes; nonzero byte -> all-ones lane.
    __m256i m = _mm256_setr_epi64x(mask[i] ? -1 : 0, mask[i + 1] ? -1 : 0,
                                   mask[i + 2] ? -1 : 0, mask[i + 3] ? -1 : 0);
    __m256d v = _mm256_and_pd(_mm256_loadu_pd(x + i), _mm256_castsi256_pd(m));
    acc = _mm256_add_pd(acc, v);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    if (mask[i]) out += x[i];
  }
  return out;
}

double flip_mass_avx2(const double* p, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(p + i);
    acc = _mm256_fmadd_pd(v, _mm256_sub_pd(one, v), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += p[i] * (1.0 - p[i]);
  return out;
}

std::size_t count_less_avx2(const double* u, const double* p, std::size_t n) {
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d cmp = _mm256_cmp_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(p + i),
                                _CMP_LT_OQ);
    count += static_cast<std::size_t>(__builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_pd(cmp))));
  }
  for (; i < n; ++i) count += (u[i] < p[i]) ? 1 : 0;
  return count;
}

}  // namespace

const Ops& avx2() {
  static const Ops ops{sum_avx2, masked_sum_avx2, flip_mass_avx2,
                       count_less_avx2};
  return ops;
}

}  // namespace abpower::kernels
