#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "abpower/graph.hpp"

namespace abpower {

enum class Label : std::uint8_t { A = 0, B = 1 };

inline char label_char(Label l) { return l == Label::A ? 'A' : 'B'; }

struct ClassLabels {
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }
  std::size_t count(Label l) const;
};

// Exactly ceil(n * p_A) nodes get label A, at uniformly random positions;
// the rest get B. Deterministic for a fixed seed.
ClassLabels assign_labels(std::size_t n, double p_A, std::uint64_t seed);

// p_i = fraction of i's neighbors with the opposite label; 0 for nodes with
// no neighbors.
struct SwitchProbs {
  std::vector<double> p;
  std::size_t size() const { return p.size(); }
};

SwitchProbs neighborhood_switch_probs(const Graph& g, const ClassLabels& c);

// One 'A' or 'B' per line.
void write_labels(std::ostream& out, const ClassLabels& c);
ClassLabels read_labels(std::istream& in);

// CSV with header node_id,p.
void write_switch_probs_csv(std::ostream& out, const SwitchProbs& p);

}  // namespace abpower
