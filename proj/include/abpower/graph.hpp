#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abpower {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable graph over nodes 0..n-1. Undirected edges are stored once in
// canonical (min, max) order; adjacency is CSR, so neighbor lookups are
// cheap and the structure is safe to share across threads.
class Graph {
 public:
  // Deduplicates, drops self-loops, canonicalizes undirected edges, and
  // validates endpoints against n.
  static Graph from_edges(std::size_t n,
                          std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                          bool directed);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool directed() const { return directed_; }

  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const {
    return edges_;
  }

  // Undirected: all adjacent nodes. Directed: out-neighbors of i, i.e. the
  // nodes that i points to (the accounts i follows).
  std::span<const std::uint32_t> neighbors(std::uint32_t i) const;

  std::size_t in_degree(std::uint32_t i) const;
  std::size_t out_degree(std::uint32_t i) const { return neighbors(i).size(); }

 private:
  Graph() = default;

  std::size_t n_ = 0;
  bool directed_ = false;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::size_t> adj_offsets_;  // CSR over out-neighbors
  std::vector<std::uint32_t> adj_;
  std::vector<std::size_t> in_degree_;  // directed only
};

struct ParsedGraph {
  Graph graph;
  // original_ids[k] is the identifier in the input file that was compacted
  // to node k (first-appearance order).
  std::vector<std::uint64_t> original_ids;
};

// Whitespace-separated "u v" lines; '#' starts a comment line. Node ids are
// compacted to 0..n-1 in first-appearance order. declared_n, when given,
// permits isolated nodes beyond those seen in edges.
ParsedGraph parse_edge_list(std::istream& in, bool directed,
                            std::optional<std::size_t> declared_n = {});

// Same format back out, with '#' header lines recording n and directedness.
void write_edge_list(std::ostream& out, const Graph& g);

struct DegreeDistribution {
  // (degree, probability) with degrees strictly increasing and only
  // nonzero probabilities present.
  std::vector<std::pair<std::size_t, double>> entries;
};

enum class DegreeMode { undirected, in, out };

DegreeDistribution degree_distribution(const Graph& g, DegreeMode mode);

// Undirected G(n, p). Deterministic for a fixed seed.
Graph erdos_renyi(std::size_t n, double edge_prob, std::uint64_t seed);

// Undirected preferential attachment: an (m+1)-clique seed, then each new
// node attaches m distinct edges with probability proportional to current
// degree. Deterministic for a fixed seed.
Graph preferential_attachment(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace abpower
