#pragma once

#include <cstdint>

#include <json.hpp>

#include "abpower/interference.hpp"
#include "abpower/labeling.hpp"
#include "abpower/power.hpp"
#include "abpower/rng.hpp"

namespace abpower {

// Brute-force Monte Carlo of the full experiment: the independent check on
// every closed-form power expression. Draws are made unit by unit from the
// measurement model; no normal approximation is used for Bernoulli
// outcomes.
struct MCEstimate {
  double estimate;
  double std_error;  // sqrt(estimate * (1 - estimate) / trials)
  std::size_t trials;
  std::uint64_t seed;
};

void to_json(nlohmann::json& j, const MCEstimate& e);

// One experiment: draw x_j from cfg.model under realized label d_j, form
// the z statistic with group means taken under the intended labels c, and
// report whether T exceeds the critical value.
bool simulate_trial(const ClassLabels& c, const ClassLabels& d,
                    const TestConfig& cfg, Stream& rng);

// Rejection rate over independent trials; trial k draws from the substream
// (seed, k), so the estimate does not depend on the thread count.
MCEstimate empirical_power(const ClassLabels& c, const ClassLabels& d,
                           const TestConfig& cfg, std::size_t trials,
                           std::uint64_t seed, unsigned threads = 1);

// Same, but under the null (requires mu_A == mu_B).
MCEstimate empirical_type_one(const ClassLabels& c, const ClassLabels& d,
                              const TestConfig& cfg, std::size_t trials,
                              std::uint64_t seed, unsigned threads = 1);

// Each trial first samples realized labels d by Bernoulli switching, then
// runs the experiment: estimates E_d[beta].
MCEstimate empirical_expected_power(const SwitchProbs& p, const ClassLabels& c,
                                    const TestConfig& cfg, std::size_t trials,
                                    std::uint64_t seed, unsigned threads = 1);

struct CltDiagnostics {
  double mean;
  double sd;
  double ks_distance;  // to the standard normal
  std::size_t replicates;
};

void to_json(nlohmann::json& j, const CltDiagnostics& d);

// Distribution of the standardized gap over switching replicates.
CltDiagnostics clt_diagnostics(const SwitchProbs& p, const ClassLabels& c,
                               std::size_t replicates, std::uint64_t seed,
                               unsigned threads = 1);

}  // namespace abpower
