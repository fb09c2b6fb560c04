#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "abpower/graph.hpp"
#include "abpower/interference.hpp"
#include "abpower/labeling.hpp"

namespace abpower {

struct NormalModel {
  double mu_A;
  double mu_B;
  double sigma;
};

struct BernoulliModel {
  double mu_A;
  double mu_B;
};

struct TestConfig {
  double alpha;
  std::variant<NormalModel, BernoulliModel> model;

  double delta() const;
  void validate_for_power() const;  // requires delta > 0 and proper variances
  bool is_normal() const { return std::holds_alternative<NormalModel>(model); }
};

// Power of the one-sided z-test of means under misspecification:
// 1 - Phi(Z_alpha - gap * delta / (2 sigma sqrt(n))), gap = n_S - n_D.
double power_normal(std::size_t n, double gap, double delta, double sigma,
                    double alpha);

// Power of the one-sided two-proportion test under misspecification, with
// realized class sizes nA_tilde/nB_tilde entering the variance term.
// The default form multiplies the critical term by sigma_AB, which reduces
// to alpha at gap 0 and to the standard two-proportion power at gap n.
// paper_literal = true instead divides by sigma_AB (the published
// expression); see README for the discrepancy note.
double power_bernoulli(std::size_t n, double gap, double nA_tilde,
                       double nB_tilde, double mu_A, double mu_B, double alpha,
                       bool paper_literal = false);

struct PowerEstimate {
  double beta;
  std::size_t n;
  double gap;  // plug-in n_S - n_D (mu_p)
  double exp_nA;
  double exp_nB;
  double alpha;
  std::string model;  // "normal" | "bernoulli"
  std::vector<std::string> assumption_flags;
};

// Plug-in power estimate from a graph and intended labels: compute the
// neighborhood switch probabilities, take the expected gap mu_p and the
// expected class sizes, and evaluate the closed-form power.
PowerEstimate estimate_power(const Graph& g, const ClassLabels& c,
                             const TestConfig& cfg);

void to_json(nlohmann::json& j, const PowerEstimate& e);

// ---- Grid sweeps ----

struct SweepAxis {
  std::string name;  // one of "n", "delta", "p_A", "switch_prob"
  std::vector<double> values;
};

struct SurfaceSource {
  enum class Kind { graph, uniform_p, fixed_gap };
  Kind kind = Kind::fixed_gap;

  const Graph* graph = nullptr;  // kind == graph
  double gap = 0.0;              // kind == fixed_gap
  double switch_prob = 0.0;      // kind == uniform_p (unless swept)
  double p_A = 0.5;              // default label split (unless swept)
  std::size_t n = 0;             // sample size for non-graph sources (unless swept)
  std::size_t label_draws = 25;  // per-point label redraws for graph sources
};

struct SurfaceRow {
  std::vector<double> point;
  double beta;
  std::vector<std::string> assumption_flags;
};

struct SurfaceResult {
  std::vector<std::string> columns;  // grid columns, in axis order
  std::vector<SurfaceRow> rows;
};

// Cartesian sweep; one row per grid point, deterministic for a fixed seed
// and independent of the thread count.
SurfaceResult power_surface(const std::vector<SweepAxis>& axes,
                            const TestConfig& base, const SurfaceSource& source,
                            std::uint64_t seed, unsigned threads = 1);

void write_surface_csv(std::ostream& out, const SurfaceResult& r);

}  // namespace abpower
