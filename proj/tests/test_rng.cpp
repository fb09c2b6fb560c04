#include <doctest.h>

#include <cmath>
#include <set>

#include "abpower/rng.hpp"

using abpower::Stream;

TEST_CASE("same seed reproduces the sequence") {
  Stream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("substreams are distinct and order-independent") {
  Stream s0(7, 0), s1(7, 1), s2(7, 2);
  CHECK(s0.next_u64() != s1.next_u64());
  // Constructing substream 2 does not depend on having consumed 0 or 1.
  Stream s2_again(7, 2);
  CHECK(s2.next_u64() == s2_again.next_u64());
}

TEST_CASE("uniforms lie strictly inside (0, 1)") {
  Stream s(1);
  for (int i = 0; i < 10000; ++i) {
    double u = s.next_uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("next_below respects the bound and hits all residues") {
  Stream s(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t v = s.next_below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("normal draws have roughly standard moments") {
  Stream s(11);
  double sum = 0, sumsq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double z = s.next_normal();
    sum += z;
    sumsq += z * z;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
