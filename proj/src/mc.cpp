#include "abpower/mc.hpp"

#include <algorithm>
#include <cmath>

#include "abpower/kernels.hpp"
#include "abpower/normal.hpp"
#include "abpower/parallel.hpp"

namespace abpower {

namespace {

struct TrialSetup {
  std::vector<std::uint8_t> mask_a;  // c_j == A
  double n_a = 0, n_b = 0;
  double z_alpha = 0;
  double se = 0;
  bool normal = false;
  double sigma = 1;
  double mu_a = 0, mu_b = 0;

  // Normal model: contribution of the means to each group sum.
  double mu_sum_a = 0, mu_sum_b = 0;
  // Bernoulli model: success probability per unit, and the same restricted
  // to intended-A units (zero elsewhere, so count_less skips them).
  std::vector<double> mu_d;
  std::vector<double> mu_d_a;
};

TrialSetup make_setup(const ClassLabels& c, const ClassLabels& d,
                      const TestConfig& cfg) {
  if (c.size() != d.size()) {
    throw std::invalid_argument("intended and realized label lengths differ");
  }
  const std::size_t n = c.size();
  TrialSetup s;
  s.mask_a.resize(n);
  for (std::size_t j = 0; j < n; ++j) s.mask_a[j] = c.labels[j] == Label::A;
  s.n_a = static_cast<double>(c.count(Label::A));
  s.n_b = static_cast<double>(n) - s.n_a;
  if (s.n_a == 0 || s.n_b == 0) {
    throw std::invalid_argument("both classes must be nonempty under c");
  }
  s.z_alpha = z_critical(cfg.alpha);
  s.normal = cfg.is_normal();
  if (const auto* nm = std::get_if<NormalModel>(&cfg.model)) {
    s.sigma = nm->sigma;
    s.mu_a = nm->mu_A;
    s.mu_b = nm->mu_B;
    if (!(s.sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    s.se = s.sigma * std::sqrt(1.0 / s.n_a + 1.0 / s.n_b);
    for (std::size_t j = 0; j < n; ++j) {
      double mu = d.labels[j] == Label::A ? s.mu_a : s.mu_b;
      (s.mask_a[j] ? s.mu_sum_a : s.mu_sum_b) += mu;
    }
  } else {
    const auto& bm = std::get<BernoulliModel>(cfg.model);
    s.mu_a = bm.mu_A;
    s.mu_b = bm.mu_B;
    if (!(s.mu_a > 0.0 && s.mu_a < 1.0 && s.mu_b > 0.0 && s.mu_b < 1.0)) {
      throw std::invalid_argument("Bernoulli means must lie in (0, 1)");
    }
    double var_a = s.mu_a * (1.0 - s.mu_a);
    double var_b = s.mu_b * (1.0 - s.mu_b);
    s.se = std::sqrt(2.0 * (var_a + var_b) / static_cast<double>(n));
    s.mu_d.resize(n);
    s.mu_d_a.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      double mu = d.labels[j] == Label::A ? s.mu_a : s.mu_b;
      s.mu_d[j] = mu;
      s.mu_d_a[j] = s.mask_a[j] ? mu : 0.0;  // uniforms are in (0,1), so 0 never hits
    }
  }
  return s;
}

bool run_trial(const TrialSetup& s, Stream& rng, std::vector<double>& scratch) {
  const std::size_t n = s.mask_a.size();
  scratch.resize(n);
  const auto& k = kernels::active();
  double diff;
  if (s.normal) {
    for (std::size_t j = 0; j < n; ++j) scratch[j] = rng.next_normal();
    double z_a = k.masked_sum(scratch.data(), s.mask_a.data(), n);
    double z_b = k.sum(scratch.data(), n) - z_a;
    diff = (s.mu_sum_a + s.sigma * z_a) / s.n_a -
           (s.mu_sum_b + s.sigma * z_b) / s.n_b;
  } else {
    for (std::size_t j = 0; j < n; ++j) scratch[j] = rng.next_uniform();
    auto succ_a = static_cast<double>(k.count_less(scratch.data(), s.mu_d_a.data(), n));
    auto succ_all = static_cast<double>(k.count_less(scratch.data(), s.mu_d.data(), n));
    diff = succ_a / s.n_a - (succ_all - succ_a) / s.n_b;
  }
  return diff / s.se > s.z_alpha;
}

MCEstimate reduce(const std::vector<std::uint8_t>& rejections, std::size_t trials,
                  std::uint64_t seed) {
  std::size_t hits = 0;
  for (std::uint8_t r : rejections) hits += r;
  double est = static_cast<double>(hits) / static_cast<double>(trials);
  MCEstimate e;
  e.estimate = est;
  e.std_error = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
  e.trials = trials;
  e.seed = seed;
  return e;
}

}  // namespace

bool simulate_trial(const ClassLabels& c, const ClassLabels& d,
                    const TestConfig& cfg, Stream& rng) {
  TrialSetup s = make_setup(c, d, cfg);
  std::vector<double> scratch;
  return run_trial(s, rng, scratch);
}

MCEstimate empirical_power(const ClassLabels& c, const ClassLabels& d,
                           const TestConfig& cfg, std::size_t trials,
                           std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(cfg.delta() > 0.0)) {
    throw std::invalid_argument("empirical_power requires delta > 0");
  }
  TrialSetup s = make_setup(c, d, cfg);
  std::vector<std::uint8_t> rejections(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    thread_local std::vector<double> scratch;
    Stream rng(seed, k);
    rejections[k] = run_trial(s, rng, scratch);
  });
  return reduce(rejections, trials, seed);
}

MCEstimate empirical_type_one(const ClassLabels& c, const ClassLabels& d,
                              const TestConfig& cfg, std::size_t trials,
                              std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.delta() != 0.0) {
    throw std::invalid_argument("empirical_type_one requires mu_A == mu_B");
  }
  TrialSetup s = make_setup(c, d, cfg);
  std::vector<std::uint8_t> rejections(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    thread_local std::vector<double> scratch;
    Stream rng(seed, k);
    rejections[k] = run_trial(s, rng, scratch);
  });
  return reduce(rejections, trials, seed);
}

MCEstimate empirical_expected_power(const SwitchProbs& p, const ClassLabels& c,
                                    const TestConfig& cfg, std::size_t trials,
                                    std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(cfg.delta() > 0.0)) {
    throw std::invalid_argument("empirical_expected_power requires delta > 0");
  }
  if (p.size() != c.size()) {
    throw std::invalid_argument("switch probability and label lengths differ");
  }
  std::vector<std::uint8_t> rejections(trials);
  parallel_for(trials, threads, [&](std::size_t k) {
    thread_local std::vector<double> scratch;
    thread_local ClassLabels d;
    Stream rng(seed, k);
    d.labels.resize(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      bool flip = rng.next_bernoulli(p.p[j]);
      Label l = c.labels[j];
      d.labels[j] = flip ? (l == Label::A ? Label::B : Label::A) : l;
    }
    // Labels change every trial, so the per-(c,d) precomputation path does
    // not amortize; run the trial with fresh setup.
    TrialSetup s = make_setup(c, d, cfg);
    rejections[k] = run_trial(s, rng, scratch);
  });
  return reduce(rejections, trials, seed);
}

CltDiagnostics clt_diagnostics(const SwitchProbs& p, const ClassLabels& c,
                               std::size_t replicates, std::uint64_t seed,
                               unsigned threads) {
  if (replicates < 100) {
    throw std::invalid_argument("clt_diagnostics: need at least 100 replicates");
  }
  SwitchMoments m = switch_moments(p, c);
  if (!(m.s_n_sq > 0.0)) {
    throw DegenerateMechanismError("clt_diagnostics: s_n^2 = 0");
  }
  const std::size_t n = p.size();
  const double two_sn = 2.0 * std::sqrt(m.s_n_sq);

  std::vector<double> vals(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    thread_local std::vector<double> u;
    u.resize(n);
    Stream rng(seed, r);
    for (std::size_t j = 0; j < n; ++j) u[j] = rng.next_uniform();
    auto n_d = static_cast<double>(
        kernels::active().count_less(u.data(), p.p.data(), n));
    double gap = static_cast<double>(n) - 2.0 * n_d;
    vals[r] = (gap - m.mu_p) / two_sn;
  });

  double mean = kernels::active().sum(vals.data(), replicates) /
                static_cast<double>(replicates);
  double ss = 0.0;
  for (double v : vals) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(replicates - 1));

  std::sort(vals.begin(), vals.end());
  double ks = 0.0;
  const double r_inv = 1.0 / static_cast<double>(replicates);
  for (std::size_t i = 0; i < replicates; ++i) {
    double phi = normal_cdf(vals[i]);
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) * r_inv - phi));
    ks = std::max(ks, std::abs(static_cast<double>(i) * r_inv - phi));
  }

  return CltDiagnostics{mean, sd, ks, replicates};
}

void to_json(nlohmann::json& j, const MCEstimate& e) {
  j = {{"estimate", e.estimate},
       {"std_error", e.std_error},
       {"trials", e.trials},
       {"seed", e.seed}};
}

void to_json(nlohmann::json& j, const CltDiagnostics& d) {
  j = {{"mean", d.mean},
       {"sd", d.sd},
       {"ks_distance", d.ks_distance},
       {"replicates", d.replicates}};
}

}  // namespace abpower
