#pragma once

#include <cstdint>
#include <utility>

#include <json.hpp>

#include "abpower/labeling.hpp"

namespace abpower {

// Thrown when the switching mechanism is deterministic (s_n = 0) and the
// standardized statistic is undefined.
class DegenerateMechanismError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Analytic moments of Bernoulli switching: mu_p = n - 2*sum(p_i) is the
// expected n_S - n_D, s_n_sq = sum(p_i (1 - p_i)), and exp_nA/exp_nB are
// the expected class sizes after switching.
struct SwitchMoments {
  double mu_p;
  double s_n_sq;
  double exp_nA;
  double exp_nB;
};

// Realized counts for one switching draw: n_S/n_D split by intended label,
// plus the class sizes under the realized labels d.
struct SwitchSummary {
  std::size_t n_S;
  std::size_t n_D;
  std::size_t n_AA;
  std::size_t n_AB;
  std::size_t n_BA;
  std::size_t n_BB;
  std::size_t nA_tilde;
  std::size_t nB_tilde;
};

SwitchMoments switch_moments(const SwitchProbs& p, const ClassLabels& c);

// Each node independently flips its label with probability p_i.
// Deterministic for a fixed seed.
std::pair<ClassLabels, SwitchSummary> sample_switch(const SwitchProbs& p,
                                                    const ClassLabels& c,
                                                    std::uint64_t seed);

SwitchSummary summarize_switch(const ClassLabels& c, const ClassLabels& d);

// (n_S - n_D - mu_p) / (2 s_n); asymptotically standard normal.
// Throws DegenerateMechanismError when s_n_sq == 0.
double standardized_gap(const SwitchSummary& s, const SwitchMoments& m);

void to_json(nlohmann::json& j, const SwitchMoments& m);
void to_json(nlohmann::json& j, const SwitchSummary& s);

}  // namespace abpower
