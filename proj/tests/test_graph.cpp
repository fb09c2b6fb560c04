#include <doctest.h>

#include <cmath>
#include <sstream>

#include "abpower/graph.hpp"

using namespace abpower;

namespace {

ParsedGraph parse(const std::string& text, bool directed,
                  std::optional<std::size_t> n = {}) {
  std::istringstream in(text);
  return parse_edge_list(in, directed, n);
}

}  // namespace

TEST_CASE("parses a simple path") {
  auto pg = parse("0 1\n1 2\n", false);
  CHECK(pg.graph.node_count() == 3);
  CHECK(pg.graph.edge_count() == 2);
}

TEST_CASE("dedupes reversed duplicates and drops self-loops") {
  auto pg = parse("0 1\n1 0\n# c\n0 0\n", false);
  CHECK(pg.graph.node_count() == 2);
  CHECK(pg.graph.edge_count() == 1);
}

TEST_CASE("directed duplicates are distinct edges") {
  auto pg = parse("0 1\n1 0\n", true);
  CHECK(pg.graph.edge_count() == 2);
}

TEST_CASE("ids are compacted in first-appearance order") {
  auto pg = parse("42 7\n7 100\n", false);
  CHECK(pg.graph.node_count() == 3);
  CHECK(pg.original_ids == std::vector<std::uint64_t>{42, 7, 100});
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse("0 1\n1 x\n", false), doctest::Contains("line 2"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse("0 1 2\n", false), doctest::Contains("line 1"),
                       ParseError);
  CHECK_THROWS_AS(parse("", false), ParseError);
  CHECK_THROWS_AS(parse("# only comments\n", false), ParseError);
}

TEST_CASE("declared n permits isolated nodes") {
  auto pg = parse("0 1\n", false, 5);
  CHECK(pg.graph.node_count() == 5);
  CHECK(pg.graph.neighbors(4).empty());
  CHECK_THROWS_AS(parse("0 1\n1 2\n", false, 2), ParseError);
}

TEST_CASE("neighborhoods") {
  auto tri = parse("0 1\n0 2\n1 2\n", false).graph;
  auto n0 = tri.neighbors(0);
  CHECK(std::vector<std::uint32_t>(n0.begin(), n0.end()) ==
        std::vector<std::uint32_t>{1, 2});

  auto dir = parse("0 1\n", true).graph;
  CHECK(dir.neighbors(0).size() == 1);
  CHECK(dir.neighbors(1).empty());  // 1 follows no one

  CHECK_THROWS_AS(tri.neighbors(3), std::out_of_range);
}

TEST_CASE("star center has all leaves as neighbors") {
  std::ostringstream text;
  for (int l = 1; l <= 6; ++l) text << "0 " << l << "\n";
  auto star = parse(text.str(), false).graph;
  CHECK(star.neighbors(0).size() == 6);
  CHECK(star.neighbors(3).size() == 1);
}

TEST_CASE("degree distributions") {
  auto tri = parse("0 1\n0 2\n1 2\n", false).graph;
  auto d = degree_distribution(tri, DegreeMode::undirected);
  REQUIRE(d.entries.size() == 1);
  CHECK(d.entries[0].first == 2);
  CHECK(d.entries[0].second == 1.0);

  auto path = parse("0 1\n1 2\n", false).graph;
  auto dp = degree_distribution(path, DegreeMode::undirected);
  REQUIRE(dp.entries.size() == 2);
  CHECK(dp.entries[0] == std::pair<std::size_t, double>(1, 2.0 / 3.0));
  CHECK(dp.entries[1] == std::pair<std::size_t, double>(2, 1.0 / 3.0));

  CHECK_THROWS_AS(degree_distribution(tri, DegreeMode::in), std::invalid_argument);
  auto dir = parse("0 1\n", true).graph;
  CHECK_THROWS_AS(degree_distribution(dir, DegreeMode::undirected),
                  std::invalid_argument);
}

TEST_CASE("degree probabilities sum to one") {
  auto g = preferential_attachment(500, 3, 9);
  auto d = degree_distribution(g, DegreeMode::undirected);
  double total = 0;
  std::size_t prev = 0;
  bool first = true;
  for (auto [deg, p] : d.entries) {
    CHECK(p > 0.0);
    if (!first) CHECK(deg > prev);
    prev = deg;
    first = false;
    total += p;
  }
  CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("degree sum identities") {
  auto g = erdos_renyi(60, 0.1, 4);
  std::size_t sum = 0;
  for (std::uint32_t i = 0; i < g.node_count(); ++i) sum += g.neighbors(i).size();
  CHECK(sum == 2 * g.edge_count());

  auto dg = parse("0 1\n1 2\n2 0\n0 2\n", true).graph;
  std::size_t out = 0, in = 0;
  for (std::uint32_t i = 0; i < dg.node_count(); ++i) {
    out += dg.out_degree(i);
    in += dg.in_degree(i);
  }
  CHECK(out == dg.edge_count());
  CHECK(in == dg.edge_count());
}

TEST_CASE("generators: edge counts and reproducibility") {
  CHECK(erdos_renyi(5, 1.0, 0).edge_count() == 10);  // K5
  CHECK(erdos_renyi(100, 0.0, 0).edge_count() == 0);
  CHECK(preferential_attachment(100, 2, 1).edge_count() == 3 + 97 * 2);

  auto a = preferential_attachment(200, 3, 77);
  auto b = preferential_attachment(200, 3, 77);
  CHECK(a.edges() == b.edges());
  auto c = preferential_attachment(200, 3, 78);
  CHECK(a.edges() != c.edges());

  CHECK_THROWS_AS(erdos_renyi(1, 0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(erdos_renyi(10, 1.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(preferential_attachment(10, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(preferential_attachment(10, 10, 0), std::invalid_argument);
}

TEST_CASE("serialize then parse round-trips the edge set") {
  auto g = preferential_attachment(80, 2, 5);
  std::ostringstream out;
  write_edge_list(out, g);
  auto pg = parse(out.str(), false);
  CHECK(pg.graph.node_count() == g.node_count());
  CHECK(pg.graph.edges() == g.edges());
}

TEST_CASE("scale-free tail slope in the expected regime") {
  // Least-squares fit of log probability against log degree, restricted to
  // degrees >= m, on a preferential-attachment graph.
  const std::size_t m = 3;
  auto g = preferential_attachment(2000, m, 31);
  auto d = degree_distribution(g, DegreeMode::undirected);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  for (auto [deg, p] : d.entries) {
    if (deg < m) continue;
    double x = std::log(static_cast<double>(deg));
    double y = std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  double slope = (static_cast<double>(cnt) * sxy - sx * sy) /
                 (static_cast<double>(cnt) * sxx - sx * sx);
  CHECK(slope > -3.5);
  CHECK(slope < -1.5);
}
