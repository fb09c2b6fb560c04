#include "abpower/graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "abpower/rng.hpp"

namespace abpower {

Graph Graph::from_edges(std::size_t n,
                        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                        bool directed) {
  Graph g;
  g.n_ = n;
  g.directed_ = directed;

  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (!directed && u > v) std::swap(u, v);
  }
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges_ = std::move(edges);

  // CSR over out-neighbors (both directions for undirected graphs).
  std::vector<std::size_t> deg(n, 0);
  g.in_degree_.assign(directed ? n : 0, 0);
  for (const auto& [u, v] : g.edges_) {
    ++deg[u];
    if (directed) {
      ++g.in_degree_[v];
    } else {
      ++deg[v];
    }
  }
  g.adj_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.adj_offsets_[i + 1] = g.adj_offsets_[i] + deg[i];
  g.adj_.resize(g.adj_offsets_[n]);
  std::vector<std::size_t> cursor(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
  for (const auto& [u, v] : g.edges_) {
    g.adj_[cursor[u]++] = v;
    if (!directed) g.adj_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.adj_offsets_[i]),
              g.adj_.begin() + static_cast<std::ptrdiff_t>(g.adj_offsets_[i + 1]));
  }
  return g;
}

std::span<const std::uint32_t> Graph::neighbors(std::uint32_t i) const {
  if (i >= n_) throw std::out_of_range("node index out of range");
  return {adj_.data() + adj_offsets_[i], adj_offsets_[i + 1] - adj_offsets_[i]};
}

std::size_t Graph::in_degree(std::uint32_t i) const {
  if (i >= n_) throw std::out_of_range("node index out of range");
  return directed_ ? in_degree_[i] : neighbors(i).size();
}

ParsedGraph parse_edge_list(std::istream& in, bool directed,
                            std::optional<std::size_t> declared_n) {
  std::unordered_map<std::uint64_t, std::uint32_t> compact;
  std::vector<std::uint64_t> original_ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  // A "# nodes N" header (as written by write_edge_list) means the ids are
  // already dense 0..N-1; keep them as-is so a serialized graph reparses to
  // the identical edge set. Foreign files get first-appearance compaction.
  std::optional<std::size_t> header_n;

  auto intern = [&](std::uint64_t id, std::size_t line_no) -> std::uint32_t {
    if (header_n) {
      if (id >= *header_n) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": node id exceeds declared node count");
      }
      return static_cast<std::uint32_t>(id);
    }
    auto [it, inserted] =
        compact.try_emplace(id, static_cast<std::uint32_t>(original_ids.size()));
    if (inserted) original_ids.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') {
      if (!saw_data) {
        std::istringstream hs(line.substr(start + 1));
        std::string key;
        std::size_t value;
        if (hs >> key >> value && key == "nodes") header_n = value;
      }
      continue;
    }
    std::istringstream ls(line);
    std::uint64_t a, b;
    if (!(ls >> a >> b)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected two integer node ids");
    }
    std::string extra;
    if (ls >> extra) {
      throw ParseError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
    }
    saw_data = true;
    // Sequence the interning: evaluation order inside an argument list is
    // unspecified, and first-appearance numbering depends on it.
    std::uint32_t ia = intern(a, line_no);
    std::uint32_t ib = intern(b, line_no);
    edges.emplace_back(ia, ib);
  }
  if (!saw_data && !header_n) throw ParseError("empty edge list");

  std::size_t n = header_n ? *header_n : original_ids.size();
  if (declared_n) {
    if (*declared_n < n) {
      throw ParseError("declared node count " + std::to_string(*declared_n) +
                       " below number of distinct ids " + std::to_string(n));
    }
    n = *declared_n;
  }
  if (header_n) {
    original_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) original_ids[i] = i;
  }
  return ParsedGraph{Graph::from_edges(n, std::move(edges), directed),
                     std::move(original_ids)};
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << "\n";
  out << "# directed " << (g.directed() ? 1 : 0) << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

DegreeDistribution degree_distribution(const Graph& g, DegreeMode mode) {
  if (mode == DegreeMode::undirected && g.directed()) {
    throw std::invalid_argument("undirected degree mode on a directed graph");
  }
  if (mode != DegreeMode::undirected && !g.directed()) {
    throw std::invalid_argument("in/out degree mode on an undirected graph");
  }
  const std::size_t n = g.node_count();
  std::unordered_map<std::size_t, std::size_t> counts;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::size_t d = (mode == DegreeMode::in) ? g.in_degree(i) : g.out_degree(i);
    ++counts[d];
  }
  DegreeDistribution dist;
  dist.entries.reserve(counts.size());
  for (const auto& [d, c] : counts) {
    dist.entries.emplace_back(d, static_cast<double>(c) / static_cast<double>(n));
  }
  std::sort(dist.entries.begin(), dist.entries.end());
  return dist;
}

Graph erdos_renyi(std::size_t n, double edge_prob, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("erdos_renyi: n must be >= 2");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw std::invalid_argument("erdos_renyi: edge_prob must lie in [0, 1]");
  }
  Stream rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t u = 0; u + 1 < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (edge_prob >= 1.0 || rng.next_bernoulli(edge_prob)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, std::move(edges), false);
}

Graph preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 || m < 1 || m >= n) {
    throw std::invalid_argument("preferential_attachment: need n >= 2 and 1 <= m < n");
  }
  Stream rng(seed);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  // Endpoint pool where each node appears once per unit of degree; sampling
  // uniformly from it is degree-proportional attachment.
  std::vector<std::uint32_t> pool;

  std::size_t clique = m + 1;
  for (std::uint32_t u = 0; u < clique; ++u) {
    for (std::uint32_t v = u + 1; v < clique; ++v) {
      edges.emplace_back(u, v);
      pool.push_back(u);
      pool.push_back(v);
    }
  }
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t w = static_cast<std::uint32_t>(clique); w < n; ++w) {
    chosen.clear();
    while (chosen.size() < m) {
      std::uint32_t t = pool[rng.next_below(pool.size())];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
        chosen.push_back(t);
      }
    }
    for (std::uint32_t t : chosen) {
      edges.emplace_back(t, w);
      pool.push_back(t);
      pool.push_back(w);
    }
  }
  return Graph::from_edges(n, std::move(edges), false);
}

}  // namespace abpower
