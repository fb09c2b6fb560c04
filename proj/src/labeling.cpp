#include "abpower/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "abpower/rng.hpp"

namespace abpower {

std::size_t ClassLabels::count(Label l) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

ClassLabels assign_labels(std::size_t n, double p_A, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("assign_labels: n must be >= 2");
  if (!(p_A >= 0.0 && p_A <= 1.0)) {
    throw std::invalid_argument("assign_labels: p_A must lie in [0, 1]");
  }
  const auto n_A = static_cast<std::size_t>(
      std::ceil(p_A * static_cast<double>(n) - 1e-12));

  // Partial Fisher-Yates: the first n_A slots of a permutation get A.
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
  Stream rng(seed);
  ClassLabels c;
  c.labels.assign(n, Label::B);
  for (std::size_t i = 0; i < n_A; ++i) {
    std::size_t j = i + rng.next_below(n - i);
    std::swap(perm[i], perm[j]);
    c.labels[perm[i]] = Label::A;
  }
  return c;
}

SwitchProbs neighborhood_switch_probs(const Graph& g, const ClassLabels& c) {
  if (c.size() != g.node_count()) {
    throw std::invalid_argument("label vector length does not match graph");
  }
  SwitchProbs out;
  out.p.resize(g.node_count());
  for (std::uint32_t i = 0; i < g.node_count(); ++i) {
    auto nbrs = g.neighbors(i);
    if (nbrs.empty()) {
      out.p[i] = 0.0;
      continue;
    }
    std::size_t opposite = 0;
    for (std::uint32_t u : nbrs) {
      if (c.labels[u] != c.labels[i]) ++opposite;
    }
    out.p[i] = static_cast<double>(opposite) / static_cast<double>(nbrs.size());
  }
  return out;
}

void write_labels(std::ostream& out, const ClassLabels& c) {
  for (Label l : c.labels) out << label_char(l) << "\n";
}

ClassLabels read_labels(std::istream& in) {
  ClassLabels c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "A") {
      c.labels.push_back(Label::A);
    } else if (line == "B") {
      c.labels.push_back(Label::B);
    } else {
      throw ParseError("labels line " + std::to_string(line_no) +
                       ": expected 'A' or 'B', got '" + line + "'");
    }
  }
  if (c.labels.empty()) throw ParseError("empty label file");
  return c;
}

void write_switch_probs_csv(std::ostream& out, const SwitchProbs& p) {
  out << "node_id,p\n";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", p.p[i]);
    out << i << "," << buf << "\n";
  }
}

}  // namespace abpower
