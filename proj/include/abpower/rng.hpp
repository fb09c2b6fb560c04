#pragma once

#include <cstdint>
#include <cstddef>

namespace abpower {

// Counter-based splittable random stream. A stream is identified by a
// master seed plus up to two substream indices; mixing is the SplitMix64
// finalizer, so substreams are cheap to construct and independent of the
// order in which they are consumed. This keeps Monte Carlo results
// invariant under the parallelism degree: trial k always draws from
// Stream(seed, k) no matter which thread runs it.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(mix(seed ^ kPhi)) {}
  Stream(std::uint64_t master, std::uint64_t index)
      : state_(mix(mix(master ^ kPhi) + index * kPhi)) {}
  Stream(std::uint64_t master, std::uint64_t index, std::uint64_t sub)
      : state_(mix(mix(mix(master ^ kPhi) + index * kPhi) + sub * kGamma)) {}

  std::uint64_t next_u64() {
    state_ += kPhi;
    return mix(state_);
  }

  // Uniform on the open interval (0, 1); never returns an endpoint, so the
  // value is safe to feed through an inverse CDF.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) { return next_uniform() < p; }

  // Unbiased integer in [0, bound) via rejection.
  std::uint64_t next_below(std::uint64_t bound);

  // Standard normal draw by inverse transform (see normal_quantile).
  double next_normal();

 private:
  static constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kGamma = 0xBF58476D1CE4E5B9ull;

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace abpower
