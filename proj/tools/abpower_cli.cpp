// abpower: power analysis for two-sample A/B tests whose treatment labels
// are corrupted by network interference. Subcommands cover the closed-form
// power formulas, graph-driven plug-in estimation, grid sweeps, and the
// brute-force Monte Carlo checks.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "abpower/graph.hpp"
#include "abpower/interference.hpp"
#include "abpower/labeling.hpp"
#include "abpower/mc.hpp"
#include "abpower/normal.hpp"
#include "abpower/power.hpp"
#include "abpower/rng.hpp"

using nlohmann::json;
using namespace abpower;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ABPOWER_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  out << content;
  if (!out) throw std::ios_base::failure("failed writing: " + path);
}

// Every file-producing run gets a sidecar echoing the resolved
// configuration and seed.
void write_sidecar(const std::string& out_path, const json& config) {
  write_text_file(out_path + ".config.json", config.dump(2) + "\n");
}

void emit(const std::optional<std::string>& out_path, const std::string& content,
          const json& config) {
  if (out_path) {
    write_text_file(*out_path, content);
    write_sidecar(*out_path, config);
  } else {
    std::cout << content;
  }
}

struct ModelFlags {
  std::string model = "normal";
  double delta = 0.0;
  double sigma = 1.0;
  double mu_a = std::nan("");
  double mu_b = std::nan("");
  double alpha = 0.05;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model, "Measurement model: normal|bernoulli")
        ->check(CLI::IsMember({"normal", "bernoulli"}));
    cmd->add_option("--delta", delta, "Effect size mu_A - mu_B (normal model)");
    cmd->add_option("--sigma", sigma, "Known standard deviation (normal model)");
    cmd->add_option("--mu-a", mu_a, "Class A mean");
    cmd->add_option("--mu-b", mu_b, "Class B mean");
    cmd->add_option("--alpha", alpha, "Significance level");
  }

  TestConfig config() const {
    TestConfig cfg;
    cfg.alpha = alpha;
    if (model == "normal") {
      double a = std::isnan(mu_a) ? delta : mu_a;
      double b = std::isnan(mu_b) ? 0.0 : mu_b;
      if (std::isnan(mu_a) && !std::isnan(mu_b)) a = b + delta;
      cfg.model = NormalModel{a, b, sigma};
    } else {
      if (std::isnan(mu_a) || std::isnan(mu_b)) {
        throw CLI::ValidationError("--mu-a and --mu-b are required for the bernoulli model");
      }
      cfg.model = BernoulliModel{mu_a, mu_b};
    }
    return cfg;
  }

  json echo() const {
    json j{{"model", model}, {"alpha", alpha}};
    if (model == "normal") {
      j["delta"] = delta;
      j["sigma"] = sigma;
    }
    if (!std::isnan(mu_a)) j["mu_a"] = mu_a;
    if (!std::isnan(mu_b)) j["mu_b"] = mu_b;
    return j;
  }
};

ParsedGraph load_graph(const std::string& path, bool directed,
                       std::optional<std::size_t> declared_n) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open graph file: " + path);
  return parse_edge_list(in, directed, declared_n);
}

ClassLabels parse_label_list(const std::string& csv) {
  ClassLabels c;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "A") c.labels.push_back(Label::A);
    else if (tok == "B") c.labels.push_back(Label::B);
    else throw CLI::ValidationError("--labels entries must be A or B");
  }
  if (c.labels.empty()) throw CLI::ValidationError("--labels must be nonempty");
  return c;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  return vals;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"A/B test power analysis under network interference"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed_flag;
  unsigned threads = 1;
  std::optional<std::string> out_path;
  app.add_option("--seed", seed_flag,
                 "Master seed (default: ABPOWER_SEED env var, else 0)");
  app.add_option("--threads", threads, "Max worker threads (never changes results)");
  app.add_option("--out", out_path, "Write primary output to this file");

  // ---- power ----
  auto* cmd_power = app.add_subcommand("power", "Closed-form power of a misspecified test");
  ModelFlags power_model;
  power_model.attach(cmd_power);
  std::size_t p_n = 0;
  double p_gap = 0, p_na = -1, p_nb = -1;
  bool paper_literal = false;
  cmd_power->add_option("--n", p_n, "Sample size")->required();
  cmd_power->add_option("--gap", p_gap, "n_S - n_D")->required();
  cmd_power->add_option("--na", p_na, "Realized class A size (bernoulli)");
  cmd_power->add_option("--nb", p_nb, "Realized class B size (bernoulli)");
  cmd_power->add_flag("--paper-literal", paper_literal,
                      "Use the published form of the proportion-test power");

  // ---- estimate ----
  auto* cmd_estimate = app.add_subcommand(
      "estimate", "Plug-in power estimate from a graph and labels");
  ModelFlags est_model;
  est_model.attach(cmd_estimate);
  std::string est_graph;
  bool est_directed = false;
  std::optional<std::size_t> est_declared_n;
  double est_pa = 0.5;
  std::string est_labels;
  cmd_estimate->add_option("--graph", est_graph, "Edge-list file")->required();
  cmd_estimate->add_flag("--directed", est_directed, "Treat edges as directed");
  cmd_estimate->add_option("--n", est_declared_n,
                           "Declared node count (permits isolated nodes)");
  cmd_estimate->add_option("--p-a", est_pa, "Fraction assigned label A");
  cmd_estimate->add_option("--labels", est_labels,
                           "Fixed labels, e.g. A,B,B (overrides --p-a)");

  // ---- surface ----
  auto* cmd_surface = app.add_subcommand("surface", "Power over a parameter grid (CSV)");
  ModelFlags surf_model;
  surf_model.attach(cmd_surface);
  std::string surf_source = "fixed-gap";
  std::string surf_graph, surf_gen;
  bool surf_directed = false;
  double surf_gap = 0, surf_switch_prob = 0, surf_pa = 0.5;
  std::size_t surf_n = 0, surf_label_draws = 25;
  std::string sweep_n, sweep_delta, sweep_pa, sweep_sp;
  cmd_surface->add_option("--source", surf_source, "graph|uniform-p|fixed-gap")
      ->check(CLI::IsMember({"graph", "uniform-p", "fixed-gap"}));
  cmd_surface->add_option("--graph", surf_graph, "Edge-list file (graph source)");
  cmd_surface->add_flag("--directed", surf_directed, "Treat edges as directed");
  cmd_surface->add_option("--gen", surf_gen,
                          "Generate a graph instead: pa:n,m or er:n,prob");
  cmd_surface->add_option("--gap", surf_gap, "Fixed n_S - n_D (fixed-gap source)");
  cmd_surface->add_option("--switch-prob", surf_switch_prob,
                          "Uniform switch probability (uniform-p source)");
  cmd_surface->add_option("--p-a", surf_pa, "Label A fraction when not swept");
  cmd_surface->add_option("--n", surf_n, "Sample size for non-graph sources");
  cmd_surface->add_option("--label-draws", surf_label_draws,
                          "Label redraws averaged per grid point (graph source)");
  cmd_surface->add_option("--sweep-n", sweep_n, "Comma list of n values");
  cmd_surface->add_option("--sweep-delta", sweep_delta, "Comma list of delta values");
  cmd_surface->add_option("--sweep-p-a", sweep_pa, "Comma list of p_A values");
  cmd_surface->add_option("--sweep-switch-prob", sweep_sp,
                          "Comma list of switch probabilities");

  // ---- simulate ----
  auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo oracle runs (JSON)");
  ModelFlags sim_model;
  sim_model.attach(cmd_simulate);
  std::string sim_mode;
  std::size_t sim_n = 0, sim_nd = 0, sim_trials = 10000, sim_replicates = 10000;
  double sim_pa = 0.5, sim_switch_prob = std::nan("");
  bool sim_random_p = false;
  std::string sim_graph;
  bool sim_directed = false;
  cmd_simulate->add_option("--mode", sim_mode, "power|type1|expected|clt")
      ->required()
      ->check(CLI::IsMember({"power", "type1", "expected", "clt"}));
  cmd_simulate->add_option("--n", sim_n, "Number of units");
  cmd_simulate->add_option("--n-d", sim_nd,
                           "Misspecified labels, at seeded random positions");
  cmd_simulate->add_option("--p-a", sim_pa, "Fraction assigned label A");
  cmd_simulate->add_option("--switch-prob", sim_switch_prob,
                           "Uniform per-node switch probability");
  cmd_simulate->add_flag("--random-p", sim_random_p,
                         "Draw each p_i uniformly on (0,1)");
  cmd_simulate->add_option("--graph", sim_graph,
                           "Derive p_i from this graph's neighborhoods");
  cmd_simulate->add_flag("--directed", sim_directed, "Treat edges as directed");
  cmd_simulate->add_option("--trials", sim_trials, "Monte Carlo trials");
  cmd_simulate->add_option("--replicates", sim_replicates, "CLT replicates");

  // ---- degree-dist ----
  auto* cmd_degree = app.add_subcommand("degree-dist", "Empirical degree distribution (CSV)");
  std::string deg_graph, deg_mode = "undirected";
  bool deg_directed = false;
  std::optional<std::size_t> deg_declared_n;
  cmd_degree->add_option("--graph", deg_graph, "Edge-list file")->required();
  cmd_degree->add_flag("--directed", deg_directed, "Treat edges as directed");
  cmd_degree->add_option("--n", deg_declared_n, "Declared node count");
  cmd_degree->add_option("--mode", deg_mode, "undirected|in|out")
      ->check(CLI::IsMember({"undirected", "in", "out"}));

  // ---- generate ----
  auto* cmd_generate = app.add_subcommand("generate", "Write a synthetic graph edge list");
  std::string gen_spec;
  cmd_generate->add_option("--gen", gen_spec, "pa:n,m or er:n,prob")->required();

  // Let --seed/--threads/--out appear after the subcommand too.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::uint64_t seed = resolve_seed(seed_flag);

  auto generate_from_spec = [&](const std::string& spec) -> Graph {
    auto colon = spec.find(':');
    auto comma = spec.find(',', colon);
    if (colon == std::string::npos || comma == std::string::npos) {
      throw CLI::ValidationError("--gen expects pa:n,m or er:n,prob");
    }
    std::string kind = spec.substr(0, colon);
    std::size_t n = std::stoull(spec.substr(colon + 1, comma - colon - 1));
    if (kind == "pa") {
      return preferential_attachment(n, std::stoull(spec.substr(comma + 1)), seed);
    }
    if (kind == "er") {
      return erdos_renyi(n, std::stod(spec.substr(comma + 1)), seed);
    }
    throw CLI::ValidationError("--gen kind must be pa or er");
  };

  try {
    if (cmd_power->parsed()) {
      TestConfig cfg = power_model.config();
      double beta;
      if (cfg.is_normal()) {
        beta = power_normal(p_n, p_gap, cfg.delta(),
                            std::get<NormalModel>(cfg.model).sigma, cfg.alpha);
      } else {
        const auto& bm = std::get<BernoulliModel>(cfg.model);
        double na = p_na >= 0 ? p_na : static_cast<double>(p_n) / 2.0;
        double nb = p_nb >= 0 ? p_nb : static_cast<double>(p_n) / 2.0;
        beta = power_bernoulli(p_n, p_gap, na, nb, bm.mu_A, bm.mu_B, cfg.alpha,
                               paper_literal);
      }
      json config = power_model.echo();
      config["command"] = "power";
      config["n"] = p_n;
      config["gap"] = p_gap;
      config["seed"] = seed;
      emit(out_path, fmt12(beta) + "\n", config);
      return kExitOk;
    }

    if (cmd_estimate->parsed()) {
      ParsedGraph pg = load_graph(est_graph, est_directed, est_declared_n);
      TestConfig cfg = est_model.config();
      ClassLabels c = est_labels.empty()
                          ? assign_labels(pg.graph.node_count(), est_pa, seed)
                          : parse_label_list(est_labels);
      PowerEstimate e = estimate_power(pg.graph, c, cfg);
      json config = est_model.echo();
      config["command"] = "estimate";
      config["graph"] = est_graph;
      config["directed"] = est_directed;
      config["p_a"] = est_pa;
      config["seed"] = seed;
      json j = e;
      j["config"] = config;
      emit(out_path, j.dump(2) + "\n", config);
      return kExitOk;
    }

    if (cmd_surface->parsed()) {
      TestConfig cfg = surf_model.config();
      SurfaceSource source;
      Graph g = Graph::from_edges(2, {}, false);
      std::optional<ParsedGraph> pg;
      if (surf_source == "graph") {
        source.kind = SurfaceSource::Kind::graph;
        if (!surf_gen.empty()) {
          g = generate_from_spec(surf_gen);
        } else if (!surf_graph.empty()) {
          pg = load_graph(surf_graph, surf_directed, {});
          g = pg->graph;
        } else {
          throw CLI::ValidationError("graph source needs --graph or --gen");
        }
        source.graph = &g;
      } else if (surf_source == "uniform-p") {
        source.kind = SurfaceSource::Kind::uniform_p;
      } else {
        source.kind = SurfaceSource::Kind::fixed_gap;
      }
      source.gap = surf_gap;
      source.switch_prob = surf_switch_prob;
      source.p_A = surf_pa;
      source.n = surf_n;
      source.label_draws = surf_label_draws;

      std::vector<SweepAxis> axes;
      if (!sweep_n.empty()) axes.push_back({"n", parse_grid(sweep_n)});
      if (!sweep_delta.empty()) axes.push_back({"delta", parse_grid(sweep_delta)});
      if (!sweep_pa.empty()) axes.push_back({"p_A", parse_grid(sweep_pa)});
      if (!sweep_sp.empty()) axes.push_back({"switch_prob", parse_grid(sweep_sp)});
      if (axes.empty()) throw CLI::ValidationError("surface needs at least one --sweep-* axis");

      SurfaceResult r = power_surface(axes, cfg, source, seed, threads);
      std::ostringstream csv;
      write_surface_csv(csv, r);

      json config = surf_model.echo();
      config["command"] = "surface";
      config["source"] = surf_source;
      config["seed"] = seed;
      config["label_draws"] = surf_label_draws;
      for (const auto& ax : axes) config["sweep"][ax.name] = ax.values;
      emit(out_path, csv.str(), config);
      return kExitOk;
    }

    if (cmd_simulate->parsed()) {
      TestConfig cfg = sim_model.config();
      json config = sim_model.echo();
      config["command"] = "simulate";
      config["mode"] = sim_mode;
      config["seed"] = seed;
      json j;

      // Switch probabilities from graph, constant, or random per node.
      auto build_probs = [&](const ClassLabels& c) -> SwitchProbs {
        if (!sim_graph.empty()) {
          ParsedGraph pg = load_graph(sim_graph, sim_directed, {});
          if (pg.graph.node_count() != c.size()) {
            throw std::invalid_argument("graph size does not match --n");
          }
          return neighborhood_switch_probs(pg.graph, c);
        }
        SwitchProbs p;
        p.p.resize(c.size());
        if (sim_random_p) {
          Stream rng(seed, 0xA11CE);
          for (auto& v : p.p) v = rng.next_uniform();
        } else if (!std::isnan(sim_switch_prob)) {
          std::fill(p.p.begin(), p.p.end(), sim_switch_prob);
        } else {
          throw CLI::ValidationError("need --switch-prob, --random-p, or --graph");
        }
        return p;
      };

      std::size_t n = sim_n;
      if (n == 0 && !sim_graph.empty()) {
        ParsedGraph pg = load_graph(sim_graph, sim_directed, {});
        n = pg.graph.node_count();
      }
      if (n == 0) throw CLI::ValidationError("--n is required");
      ClassLabels c = assign_labels(n, sim_pa, Stream(seed, 0xC).next_u64());

      if (sim_mode == "power" || sim_mode == "type1") {
        // Flip n_D seeded random positions to build d.
        ClassLabels d = c;
        if (sim_nd > 0) {
          if (sim_nd > n) throw CLI::ValidationError("--n-d cannot exceed --n");
          std::vector<std::uint32_t> perm(n);
          for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
          Stream rng(seed, 0xD);
          for (std::size_t i = 0; i < sim_nd; ++i) {
            std::size_t k = i + rng.next_below(n - i);
            std::swap(perm[i], perm[k]);
            Label& l = d.labels[perm[i]];
            l = l == Label::A ? Label::B : Label::A;
          }
        }
        config["n"] = n;
        config["n_d"] = sim_nd;
        config["trials"] = sim_trials;
        MCEstimate e = sim_mode == "power"
                           ? empirical_power(c, d, cfg, sim_trials, seed, threads)
                           : empirical_type_one(c, d, cfg, sim_trials, seed, threads);
        j = e;
      } else if (sim_mode == "expected") {
        SwitchProbs p = build_probs(c);
        config["n"] = n;
        config["trials"] = sim_trials;
        j = empirical_expected_power(p, c, cfg, sim_trials, seed, threads);
      } else {  // clt
        SwitchProbs p = build_probs(c);
        config["n"] = n;
        config["replicates"] = sim_replicates;
        j = clt_diagnostics(p, c, sim_replicates, seed, threads);
      }
      j["config"] = config;
      emit(out_path, j.dump(2) + "\n", config);
      return kExitOk;
    }

    if (cmd_degree->parsed()) {
      ParsedGraph pg = load_graph(deg_graph, deg_directed, deg_declared_n);
      DegreeMode mode = deg_mode == "in"    ? DegreeMode::in
                        : deg_mode == "out" ? DegreeMode::out
                                            : DegreeMode::undirected;
      DegreeDistribution dist = degree_distribution(pg.graph, mode);
      std::ostringstream csv;
      csv << "degree,probability,log_degree,log_probability\n";
      for (const auto& [d, prob] : dist.entries) {
        csv << d << "," << fmt12(prob) << ",";
        // degree 0 has no log; probability 0 never appears by construction
        if (d > 0) csv << fmt12(std::log(static_cast<double>(d)));
        csv << "," << fmt12(std::log(prob)) << "\n";
      }
      json config{{"command", "degree-dist"},
                  {"graph", deg_graph},
                  {"directed", deg_directed},
                  {"mode", deg_mode},
                  {"n", pg.graph.node_count()},
                  {"edges", pg.graph.edge_count()},
                  {"seed", seed}};
      emit(out_path, csv.str(), config);
      return kExitOk;
    }

    if (cmd_generate->parsed()) {
      Graph g = generate_from_spec(gen_spec);
      std::ostringstream txt;
      write_edge_list(txt, g);
      json config{{"command", "generate"}, {"gen", gen_spec}, {"seed", seed}};
      emit(out_path, txt.str(), config);
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
