#include "abpower/power.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "abpower/normal.hpp"
#include "abpower/parallel.hpp"
#include "abpower/rng.hpp"

namespace abpower {

double TestConfig::delta() const {
  return std::visit([](const auto& m) { return m.mu_A - m.mu_B; }, model);
}

void TestConfig::validate_for_power() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (const auto* nm = std::get_if<NormalModel>(&model)) {
    if (!(nm->sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  } else {
    const auto& bm = std::get<BernoulliModel>(model);
    if (!(bm.mu_A > 0.0 && bm.mu_A < 1.0 && bm.mu_B > 0.0 && bm.mu_B < 1.0)) {
      throw std::invalid_argument("Bernoulli means must lie in (0, 1)");
    }
  }
  if (!(delta() > 0.0)) {
    throw std::invalid_argument("power requires delta = mu_A - mu_B > 0");
  }
}

double power_normal(std::size_t n, double gap, double delta, double sigma,
                    double alpha) {
  if (n < 2) throw std::invalid_argument("power_normal: n must be >= 2");
  double dn = static_cast<double>(n);
  if (!(gap >= -dn && gap <= dn)) {
    throw std::invalid_argument("power_normal: gap must lie in [-n, n]");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("power_normal: delta must be > 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("power_normal: sigma must be > 0");
  double za = z_critical(alpha);
  return 1.0 - normal_cdf(za - gap * delta / (2.0 * sigma * std::sqrt(dn)));
}

double power_bernoulli(std::size_t n, double gap, double nA_tilde,
                       double nB_tilde, double mu_A, double mu_B, double alpha,
                       bool paper_literal) {
  if (n < 2) throw std::invalid_argument("power_bernoulli: n must be >= 2");
  double dn = static_cast<double>(n);
  if (!(nA_tilde > 0.0 && nB_tilde > 0.0)) {
    throw std::invalid_argument("power_bernoulli: realized class sizes must be > 0");
  }
  if (std::abs(nA_tilde + nB_tilde - dn) > 1e-9 * dn) {
    throw std::invalid_argument("power_bernoulli: nA_tilde + nB_tilde must equal n");
  }
  if (!(mu_A > 0.0 && mu_A < 1.0 && mu_B > 0.0 && mu_B < 1.0)) {
    throw std::invalid_argument("power_bernoulli: means must lie in (0, 1)");
  }
  if (!(mu_A > mu_B)) {
    throw std::invalid_argument("power_bernoulli: requires mu_A > mu_B");
  }
  double delta = mu_A - mu_B;
  double var_a = mu_A * (1.0 - mu_A);
  double var_b = mu_B * (1.0 - mu_B);
  double pooled = nA_tilde * var_a + nB_tilde * var_b;
  double sigma_ab = std::sqrt((var_a + var_b) / pooled);
  double za = z_critical(alpha);
  double crit = paper_literal ? std::sqrt(dn / 2.0) * za / sigma_ab
                              : std::sqrt(dn / 2.0) * za * sigma_ab;
  return 1.0 - normal_cdf(crit - gap * delta / (2.0 * std::sqrt(pooled)));
}

PowerEstimate estimate_power(const Graph& g, const ClassLabels& c,
                             const TestConfig& cfg) {
  cfg.validate_for_power();
  if (c.size() != g.node_count()) {
    throw std::invalid_argument("label vector length does not match graph");
  }
  SwitchProbs p = neighborhood_switch_probs(g, c);
  SwitchMoments m = switch_moments(p, c);
  const std::size_t n = g.node_count();

  PowerEstimate e;
  e.n = n;
  e.gap = m.mu_p;
  e.exp_nA = m.exp_nA;
  e.exp_nB = m.exp_nB;
  e.alpha = cfg.alpha;
  if (const auto* nm = std::get_if<NormalModel>(&cfg.model)) {
    e.model = "normal";
    e.beta = power_normal(n, m.mu_p, cfg.delta(), nm->sigma, cfg.alpha);
  } else {
    const auto& bm = std::get<BernoulliModel>(cfg.model);
    e.model = "bernoulli";
    e.beta = power_bernoulli(n, m.mu_p, m.exp_nA, m.exp_nB, bm.mu_A, bm.mu_B,
                             cfg.alpha);
  }
  if (c.count(Label::A) != c.count(Label::B)) {
    e.assumption_flags.push_back("unbalanced-classes");
  }
  return e;
}

void to_json(nlohmann::json& j, const PowerEstimate& e) {
  j = {{"beta", e.beta},       {"n", e.n},
       {"gap", e.gap},         {"exp_nA", e.exp_nA},
       {"exp_nB", e.exp_nB},   {"alpha", e.alpha},
       {"model", e.model},     {"assumption_flags", e.assumption_flags}};
}

namespace {

TestConfig with_delta(const TestConfig& base, double delta) {
  TestConfig cfg = base;
  if (auto* nm = std::get_if<NormalModel>(&cfg.model)) {
    nm->mu_A = nm->mu_B + delta;
  } else {
    auto& bm = std::get<BernoulliModel>(cfg.model);
    bm.mu_A = bm.mu_B + delta;
  }
  return cfg;
}

double closed_form(const TestConfig& cfg, std::size_t n, double gap,
                   double nA_tilde, double nB_tilde) {
  if (const auto* nm = std::get_if<NormalModel>(&cfg.model)) {
    return power_normal(n, gap, cfg.delta(), nm->sigma, cfg.alpha);
  }
  const auto& bm = std::get<BernoulliModel>(cfg.model);
  return power_bernoulli(n, gap, nA_tilde, nB_tilde, bm.mu_A, bm.mu_B, cfg.alpha);
}

}  // namespace

SurfaceResult power_surface(const std::vector<SweepAxis>& axes,
                            const TestConfig& base, const SurfaceSource& source,
                            std::uint64_t seed, unsigned threads) {
  if (axes.empty()) throw std::invalid_argument("power_surface: empty grid");
  std::size_t total = 1;
  for (const auto& ax : axes) {
    if (ax.values.empty()) throw std::invalid_argument("power_surface: empty axis");
    if (ax.name != "n" && ax.name != "delta" && ax.name != "p_A" &&
        ax.name != "switch_prob") {
      throw std::invalid_argument("power_surface: unknown axis '" + ax.name + "'");
    }
    if (ax.name == "switch_prob" && source.kind != SurfaceSource::Kind::uniform_p) {
      throw std::invalid_argument("switch_prob axis requires the uniform-p source");
    }
    if (ax.name == "p_A" && source.kind == SurfaceSource::Kind::fixed_gap) {
      throw std::invalid_argument("p_A axis is meaningless for a fixed-gap source");
    }
    if (ax.name == "n" && source.kind == SurfaceSource::Kind::graph) {
      throw std::invalid_argument("n axis conflicts with a graph source");
    }
    total *= ax.values.size();
  }
  if (source.kind == SurfaceSource::Kind::graph) {
    if (source.graph == nullptr) {
      throw std::invalid_argument("graph source requires a graph");
    }
    if (source.label_draws == 0) {
      throw std::invalid_argument("graph source requires label_draws >= 1");
    }
  }

  SurfaceResult result;
  for (const auto& ax : axes) result.columns.push_back(ax.name);
  result.rows.resize(total);

  parallel_for(total, threads, [&](std::size_t idx) {
    // Decode idx into one value per axis (last axis varies fastest).
    std::vector<double> point(axes.size());
    std::size_t rem = idx;
    for (std::size_t a = axes.size(); a-- > 0;) {
      point[a] = axes[a].values[rem % axes[a].values.size()];
      rem /= axes[a].values.size();
    }

    std::size_t n = source.kind == SurfaceSource::Kind::graph
                        ? source.graph->node_count()
                        : source.n;
    double delta = base.delta();
    double p_a = source.p_A;
    double switch_prob = source.switch_prob;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (axes[a].name == "n") n = static_cast<std::size_t>(point[a]);
      else if (axes[a].name == "delta") delta = point[a];
      else if (axes[a].name == "p_A") p_a = point[a];
      else switch_prob = point[a];
    }
    TestConfig cfg = with_delta(base, delta);
    cfg.validate_for_power();

    SurfaceRow& row = result.rows[idx];
    row.point = std::move(point);

    switch (source.kind) {
      case SurfaceSource::Kind::fixed_gap: {
        double half = static_cast<double>(n) / 2.0;
        row.beta = closed_form(cfg, n, source.gap, half, half);
        break;
      }
      case SurfaceSource::Kind::uniform_p: {
        auto n_a = static_cast<double>(static_cast<std::size_t>(
            std::ceil(p_a * static_cast<double>(n) - 1e-12)));
        double n_b = static_cast<double>(n) - n_a;
        double mu_p = static_cast<double>(n) * (1.0 - 2.0 * switch_prob);
        double exp_na = n_a * (1.0 - switch_prob) + n_b * switch_prob;
        row.beta = closed_form(cfg, n, mu_p, exp_na,
                               static_cast<double>(n) - exp_na);
        if (n_a != n_b) row.assumption_flags.push_back("unbalanced-classes");
        break;
      }
      case SurfaceSource::Kind::graph: {
        double acc = 0.0;
        for (std::size_t r = 0; r < source.label_draws; ++r) {
          std::uint64_t draw_seed = Stream(seed, idx, r).next_u64();
          ClassLabels c = assign_labels(n, p_a, draw_seed);
          PowerEstimate e = estimate_power(*source.graph, c, cfg);
          acc += e.beta;
          if (r == 0) row.assumption_flags = e.assumption_flags;
        }
        row.beta = acc / static_cast<double>(source.label_draws);
        break;
      }
    }
  });
  return result;
}

void write_surface_csv(std::ostream& out, const SurfaceResult& r) {
  for (const auto& col : r.columns) out << col << ",";
  out << "beta,assumption_flags\n";
  char buf[32];
  for (const auto& row : r.rows) {
    for (double v : row.point) {
      std::snprintf(buf, sizeof buf, "%.12g", v);
      out << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.12g", row.beta);
    out << buf << ",";
    for (std::size_t i = 0; i < row.assumption_flags.size(); ++i) {
      if (i) out << ";";
      out << row.assumption_flags[i];
    }
    out << "\n";
  }
}

}  // namespace abpower
