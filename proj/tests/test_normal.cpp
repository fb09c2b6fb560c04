#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "abpower/normal.hpp"

using abpower::normal_cdf;
using abpower::normal_quantile;
using abpower::z_critical;

TEST_CASE("cdf reference values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::abs(normal_cdf(1.0) - 0.8413447460685429) < 1e-15);
  CHECK(std::abs(normal_cdf(-2.0) - 0.022750131948179195) < 1e-15);
  CHECK(std::abs(normal_cdf(3.0) - 0.9986501019683699) < 1e-15);
  CHECK(std::abs(normal_cdf(1.959963984540054) - 0.975) < 1e-15);
  CHECK(normal_cdf(-37.0) > 0.0);  // deep tail stays positive
  CHECK(normal_cdf(9.0) < 1.0 + 1e-15);
}

TEST_CASE("cdf symmetry") {
  for (double z : {0.1, 0.7, 1.3, 2.9, 5.0}) {
    CHECK(std::abs(normal_cdf(z) + normal_cdf(-z) - 1.0) < 1e-14);
  }
}

TEST_CASE("quantile inverts the cdf") {
  for (double p : {1e-8, 1e-4, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.9999}) {
    CHECK(std::abs(normal_cdf(normal_quantile(p)) - p) < 1e-12);
  }
  CHECK(std::abs(normal_quantile(0.5)) < 1e-12);
  CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("critical values") {
  CHECK(std::abs(z_critical(0.5)) < 1e-12);
  CHECK(std::abs(z_critical(0.05) - 1.6449) < 1e-3);
  CHECK(std::abs(z_critical(0.025) - 1.959963984540054) < 1e-9);
  for (double a : {0.2, 0.1, 0.05, 0.01, 0.001}) {
    CHECK(std::abs(1.0 - normal_cdf(z_critical(a)) - a) < 1e-9);
  }
  CHECK_THROWS_AS(z_critical(0.0), std::invalid_argument);
  CHECK_THROWS_AS(z_critical(1.0), std::invalid_argument);
  CHECK_THROWS_AS(z_critical(-0.3), std::invalid_argument);
}
