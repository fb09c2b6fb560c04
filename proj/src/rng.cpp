#include "abpower/rng.hpp"

#include "abpower/normal.hpp"

namespace abpower {

std::uint64_t Stream::next_below(std::uint64_t bound) {
  // Rejection sampling over the largest multiple of bound.
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Stream::next_normal() { return normal_quantile(next_uniform()); }

}  // namespace abpower
