#include "abpower/interference.hpp"

#include <cmath>

#include "abpower/kernels.hpp"
#include "abpower/rng.hpp"

namespace abpower {

SwitchMoments switch_moments(const SwitchProbs& p, const ClassLabels& c) {
  if (p.size() != c.size()) {
    throw std::invalid_argument("switch probability and label lengths differ");
  }
  const std::size_t n = p.size();
  const auto& k = kernels::active();

  double sum_p = k.sum(p.p.data(), n);
  double s_n_sq = k.flip_mass(p.p.data(), n);

  // E[n~_A] = sum_{c_j=A} (1 - p_j) + sum_{c_j=B} p_j.
  std::vector<std::uint8_t> mask_a(n);
  for (std::size_t j = 0; j < n; ++j) mask_a[j] = c.labels[j] == Label::A;
  double sum_p_a = k.masked_sum(p.p.data(), mask_a.data(), n);
  double sum_p_b = sum_p - sum_p_a;
  double n_a = static_cast<double>(c.count(Label::A));

  SwitchMoments m;
  m.mu_p = static_cast<double>(n) - 2.0 * sum_p;
  m.s_n_sq = s_n_sq;
  m.exp_nA = (n_a - sum_p_a) + sum_p_b;
  m.exp_nB = static_cast<double>(n) - m.exp_nA;
  return m;
}

std::pair<ClassLabels, SwitchSummary> sample_switch(const SwitchProbs& p,
                                                    const ClassLabels& c,
                                                    std::uint64_t seed) {
  if (p.size() != c.size()) {
    throw std::invalid_argument("switch probability and label lengths differ");
  }
  Stream rng(seed);
  ClassLabels d;
  d.labels.resize(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    bool flip = rng.next_bernoulli(p.p[j]);
    Label l = c.labels[j];
    d.labels[j] = flip ? (l == Label::A ? Label::B : Label::A) : l;
  }
  return {d, summarize_switch(c, d)};
}

SwitchSummary summarize_switch(const ClassLabels& c, const ClassLabels& d) {
  if (c.size() != d.size()) {
    throw std::invalid_argument("label vector lengths differ");
  }
  SwitchSummary s{};
  for (std::size_t j = 0; j < c.size(); ++j) {
    bool ca = c.labels[j] == Label::A;
    bool da = d.labels[j] == Label::A;
    if (ca && da) ++s.n_AA;
    else if (ca && !da) ++s.n_AB;
    else if (!ca && da) ++s.n_BA;
    else ++s.n_BB;
  }
  s.n_S = s.n_AA + s.n_BB;
  s.n_D = s.n_AB + s.n_BA;
  s.nA_tilde = s.n_AA + s.n_BA;
  s.nB_tilde = s.n_BB + s.n_AB;
  return s;
}

double standardized_gap(const SwitchSummary& s, const SwitchMoments& m) {
  if (!(m.s_n_sq > 0.0)) {
    throw DegenerateMechanismError(
        "standardized_gap: s_n^2 = 0, switching mechanism is deterministic");
  }
  double gap = static_cast<double>(s.n_S) - static_cast<double>(s.n_D);
  return (gap - m.mu_p) / (2.0 * std::sqrt(m.s_n_sq));
}

void to_json(nlohmann::json& j, const SwitchMoments& m) {
  j = {{"mu_p", m.mu_p},
       {"s_n_sq", m.s_n_sq},
       {"exp_nA", m.exp_nA},
       {"exp_nB", m.exp_nB}};
}

void to_json(nlohmann::json& j, const SwitchSummary& s) {
  j = {{"n_S", s.n_S},       {"n_D", s.n_D},           {"n_AA", s.n_AA},
       {"n_AB", s.n_AB},     {"n_BA", s.n_BA},         {"n_BB", s.n_BB},
       {"nA_tilde", s.nA_tilde}, {"nB_tilde", s.nB_tilde}};
}

}  // namespace abpower
