#include <doctest.h>

#include <cmath>
#include <sstream>

#include "abpower/normal.hpp"
#include "abpower/power.hpp"
#include "abpower/rng.hpp"

using namespace abpower;

namespace {

constexpr Label A = Label::A;
constexpr Label B = Label::B;

ClassLabels labels(std::vector<Label> ls) {
  ClassLabels c;
  c.labels = std::move(ls);
  return c;
}

TestConfig normal_cfg(double delta, double sigma, double alpha) {
  return TestConfig{alpha, NormalModel{delta, 0.0, sigma}};
}

}  // namespace

TEST_CASE("normal power, no interference") {
  CHECK(power_normal(100, 100, 1.0, 1.0, 0.05) ==
        doctest::Approx(0.9996033849954737).epsilon(1e-10));
}

TEST_CASE("normal power collapses to alpha at gap zero") {
  for (double alpha : {0.01, 0.05, 0.2}) {
    CHECK(std::abs(power_normal(100, 0.0, 1.0, 1.0, alpha) - alpha) < 1e-12);
  }
}

TEST_CASE("normal power equals the textbook value at gap = n") {
  for (std::size_t n : {50, 200, 1000}) {
    double delta = 0.4, sigma = 1.3, alpha = 0.05;
    double textbook = 1.0 - normal_cdf(z_critical(alpha) -
                                       delta * std::sqrt(double(n)) / (2.0 * sigma));
    CHECK(power_normal(n, double(n), delta, sigma, alpha) ==
          doctest::Approx(textbook).epsilon(1e-14));
  }
}

TEST_CASE("normal power input validation") {
  CHECK_THROWS_AS(power_normal(100, 0, -1.0, 1.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(power_normal(100, 0, 1.0, 0.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(power_normal(100, 150, 1.0, 1.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(power_normal(1, 0, 1.0, 1.0, 0.05), std::invalid_argument);
}

TEST_CASE("bernoulli power, no interference") {
  CHECK(power_bernoulli(200, 200, 100, 100, 0.6, 0.4, 0.05) ==
        doctest::Approx(0.8928628490967578).epsilon(1e-10));
}

TEST_CASE("bernoulli power collapses to alpha at gap zero") {
  // Balanced classes and equal variances make sigma_AB^2 = 2/n exactly.
  CHECK(std::abs(power_bernoulli(200, 0, 100, 100, 0.6, 0.4, 0.05) - 0.05) < 1e-12);
  CHECK(std::abs(power_bernoulli(500, 0, 250, 250, 0.55, 0.45, 0.01) - 0.01) < 1e-12);
}

TEST_CASE("bernoulli power approaches alpha as delta vanishes") {
  double beta = power_bernoulli(200, 200, 100, 100, 0.5 + 5e-10, 0.5 - 5e-10, 0.05);
  CHECK(std::abs(beta - 0.05) < 1e-6);
}

TEST_CASE("bernoulli power reduces to the two-proportion power when balanced") {
  const std::size_t n = 400;
  double mu_a = 0.55, mu_b = 0.45, alpha = 0.05;
  double va = mu_a * (1 - mu_a), vb = mu_b * (1 - mu_b);
  double textbook = 1.0 - normal_cdf(z_critical(alpha) -
                                     (mu_a - mu_b) /
                                         std::sqrt(2.0 * (va + vb) / double(n)));
  CHECK(power_bernoulli(n, double(n), n / 2.0, n / 2.0, mu_a, mu_b, alpha) ==
        doctest::Approx(textbook).epsilon(1e-12));
}

TEST_CASE("paper-literal form divides by sigma_AB and inflates the critical term") {
  double corrected = power_bernoulli(200, 0, 100, 100, 0.6, 0.4, 0.05, false);
  double literal = power_bernoulli(200, 0, 100, 100, 0.6, 0.4, 0.05, true);
  CHECK(std::abs(corrected - 0.05) < 1e-12);
  CHECK(literal < corrected);  // sigma_AB < 1 at this n
}

TEST_CASE("bernoulli power input validation") {
  CHECK_THROWS_AS(power_bernoulli(200, 0, 100, 100, 0.4, 0.6, 0.05),
                  std::invalid_argument);  // mu_A <= mu_B
  CHECK_THROWS_AS(power_bernoulli(200, 0, 100, 100, 1.0, 0.4, 0.05),
                  std::invalid_argument);  // degenerate variance
  CHECK_THROWS_AS(power_bernoulli(200, 0, 150, 100, 0.6, 0.4, 0.05),
                  std::invalid_argument);  // sizes do not sum to n
  CHECK_THROWS_AS(power_bernoulli(200, 0, 200, 0, 0.6, 0.4, 0.05),
                  std::invalid_argument);  // empty class
}

TEST_CASE("power is monotone in gap and delta (finite differences)") {
  Stream rng(12);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 100 + 20 * t;
    double gap = (rng.next_uniform() * 1.8 - 0.9) * double(n);
    double delta = 0.1 + rng.next_uniform();
    double h = 1.0;
    CHECK(power_normal(n, gap + h, delta, 1.0, 0.05) >=
          power_normal(n, gap, delta, 1.0, 0.05));
    if (gap >= 0.0) {
      // Monotone in delta only when the realized gap is nonnegative.
      CHECK(power_normal(n, gap, delta + 0.01, 1.0, 0.05) >=
            power_normal(n, gap, delta, 1.0, 0.05));
    }
    double mu_b = 0.3 + 0.2 * rng.next_uniform();
    CHECK(power_bernoulli(n, gap + h, n / 2.0, n / 2.0, mu_b + delta * 0.1, mu_b,
                          0.05) >=
          power_bernoulli(n, gap, n / 2.0, n / 2.0, mu_b + delta * 0.1, mu_b, 0.05));
  }
}

TEST_CASE("estimate_power on an empty graph is the no-interference power") {
  auto g = Graph::from_edges(50, {}, false);
  auto c = assign_labels(50, 0.5, 3);
  auto e = estimate_power(g, c, normal_cfg(1.0, 1.0, 0.05));
  CHECK(e.beta == doctest::Approx(power_normal(50, 50, 1.0, 1.0, 0.05)).epsilon(1e-14));
  CHECK(e.gap == 50.0);
  CHECK(e.assumption_flags.empty());
}

TEST_CASE("estimate_power on K2 with opposite labels") {
  auto g = Graph::from_edges(2, {{0, 1}}, false);
  auto e = estimate_power(g, labels({A, B}), normal_cfg(1.0, 1.0, 0.05));
  CHECK(e.gap == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(e.beta == doctest::Approx(0.009337381267600642).epsilon(1e-6));
}

TEST_CASE("estimate_power on the triangle") {
  auto g = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}}, false);
  auto e = estimate_power(g, labels({A, B, B}), normal_cfg(1.0, 1.0, 0.05));
  CHECK(e.gap == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e.beta == doctest::Approx(0.026585546748522426).epsilon(1e-6));
  CHECK(e.assumption_flags == std::vector<std::string>{"unbalanced-classes"});
}

TEST_CASE("estimate_power is invariant under node relabeling") {
  auto g = preferential_attachment(40, 2, 6);
  auto c = assign_labels(40, 0.4, 8);
  auto base = estimate_power(g, c, normal_cfg(0.5, 1.0, 0.05));

  // Apply the permutation i -> (i + 13) mod 40 to nodes and labels.
  const std::size_t n = g.node_count();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(static_cast<std::uint32_t>((u + 13) % n),
                       static_cast<std::uint32_t>((v + 13) % n));
  }
  auto g2 = Graph::from_edges(n, std::move(edges), false);
  ClassLabels c2;
  c2.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) c2.labels[(i + 13) % n] = c.labels[i];
  auto mapped = estimate_power(g2, c2, normal_cfg(0.5, 1.0, 0.05));
  CHECK(mapped.beta == doctest::Approx(base.beta).epsilon(1e-14));
  CHECK(mapped.gap == doctest::Approx(base.gap).epsilon(1e-12));
}

TEST_CASE("fixed-gap surface rows equal the direct formula") {
  SurfaceSource src;
  src.kind = SurfaceSource::Kind::fixed_gap;
  src.n = 100;
  src.gap = 100;
  std::vector<SweepAxis> axes{{"delta", {0.1, 0.3, 0.5, 0.7, 1.0}}};
  auto r = power_surface(axes, normal_cfg(1.0, 1.0, 0.05), src, 1);
  REQUIRE(r.rows.size() == 5);
  for (const auto& row : r.rows) {
    CHECK(row.beta ==
          doctest::Approx(power_normal(100, 100, row.point[0], 1.0, 0.05))
              .epsilon(1e-14));
  }
}

TEST_CASE("uniform-p surface with p = 0.5 pins beta at alpha") {
  SurfaceSource src;
  src.kind = SurfaceSource::Kind::uniform_p;
  src.n = 200;
  src.switch_prob = 0.5;
  src.p_A = 0.5;
  std::vector<SweepAxis> axes{{"delta", {0.2, 0.5, 1.0}}};
  auto r = power_surface(axes, normal_cfg(1.0, 1.0, 0.05), src, 1);
  for (const auto& row : r.rows) {
    CHECK(std::abs(row.beta - 0.05) < 1e-12);
  }
}

TEST_CASE("graph surface is deterministic and thread-count independent") {
  auto g = preferential_attachment(120, 2, 14);
  SurfaceSource src;
  src.kind = SurfaceSource::Kind::graph;
  src.graph = &g;
  src.label_draws = 5;
  std::vector<SweepAxis> axes{{"delta", {0.3, 0.6}}, {"p_A", {0.2, 0.4}}};
  auto r1 = power_surface(axes, normal_cfg(0.5, 1.0, 0.05), src, 77, 1);
  auto r2 = power_surface(axes, normal_cfg(0.5, 1.0, 0.05), src, 77, 4);
  REQUIRE(r1.rows.size() == 4);
  for (std::size_t i = 0; i < r1.rows.size(); ++i) {
    CHECK(r1.rows[i].beta == r2.rows[i].beta);
    CHECK(r1.rows[i].point == r2.rows[i].point);
  }
  auto r3 = power_surface(axes, normal_cfg(0.5, 1.0, 0.05), src, 78, 1);
  bool any_diff = false;
  for (std::size_t i = 0; i < r1.rows.size(); ++i) {
    any_diff = any_diff || r1.rows[i].beta != r3.rows[i].beta;
  }
  CHECK(any_diff);
}

TEST_CASE("surface validation") {
  SurfaceSource src;
  src.kind = SurfaceSource::Kind::fixed_gap;
  src.n = 100;
  CHECK_THROWS_AS(power_surface({}, normal_cfg(1, 1, 0.05), src, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      power_surface({{"delta", {}}}, normal_cfg(1, 1, 0.05), src, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      power_surface({{"p_A", {0.2}}}, normal_cfg(1, 1, 0.05), src, 1),
      std::invalid_argument);
  CHECK_THROWS_AS(
      power_surface({{"bogus", {1.0}}}, normal_cfg(1, 1, 0.05), src, 1),
      std::invalid_argument);
}

TEST_CASE("surface csv round-trips at 12 significant digits") {
  SurfaceSource src;
  src.kind = SurfaceSource::Kind::fixed_gap;
  src.n = 100;
  src.gap = 60;
  auto r = power_surface({{"delta", {0.37, 0.91}}}, normal_cfg(1, 1, 0.05), src, 1);
  std::ostringstream out;
  write_surface_csv(out, r);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "delta,beta,assumption_flags");
  for (const auto& row : r.rows) {
    std::string line;
    REQUIRE(std::getline(in, line));
    auto comma1 = line.find(',');
    auto comma2 = line.find(',', comma1 + 1);
    double d = std::stod(line.substr(0, comma1));
    double b = std::stod(line.substr(comma1 + 1, comma2 - comma1 - 1));
    CHECK(std::abs(d - row.point[0]) <= 1e-11 * std::abs(row.point[0]));
    CHECK(std::abs(b - row.beta) <= 1e-11 * std::abs(row.beta));
  }
}
