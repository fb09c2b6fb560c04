#include "abpower/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace abpower::kernels {

#if defined(ABPOWER_HAVE_AVX2_SOURCES)
const Ops& avx2();
#endif
#if defined(ABPOWER_HAVE_NEON_SOURCES)
const Ops& neon();
#endif

namespace {

std::atomic<bool> g_force_scalar{false};

const Ops* detect() {
  if (const char* env = std::getenv("ABPOWER_NO_SIMD");
      env && env[0] && env[0] != '0') {
    return &scalar();
  }
#if defined(ABPOWER_HAVE_AVX2_SOURCES)
  if (__builtin_cpu_supports("avx2")) return &avx2();
#endif
#if defined(ABPOWER_HAVE_NEON_SOURCES)
  return &neon();  // NEON is baseline on aarch64
#endif
  return &scalar();
}

const Ops* detected() {
  static const Ops* ops = detect();
  return ops;
}

}  // namespace

const Ops& active() {
  return g_force_scalar.load(std::memory_order_relaxed) ? scalar() : *detected();
}

const char* active_name() {
  if (&active() == &scalar()) return "scalar";
#if defined(ABPOWER_HAVE_AVX2_SOURCES)
  if (&active() == &avx2()) return "avx2";
#endif
#if defined(ABPOWER_HAVE_NEON_SOURCES)
  if (&active() == &neon()) return "neon";
#endif
  return "unknown";
}

void force_scalar(bool on) {
  g_force_scalar.store(on, std::memory_order_relaxed);
}

}  // namespace abpower::kernels
