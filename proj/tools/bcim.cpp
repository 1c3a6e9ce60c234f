#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "bcim/experiment.hpp"
#include "bcim/mic.hpp"

using namespace bcim;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string output;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string fmt(double x, int precision = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

std::vector<NodeId> resolve_labels(const MultilayerNetwork& net, const std::vector<std::string>& labels) {
  std::unordered_map<std::string, NodeId> index;
  for (NodeId v = 0; v < net.num_nodes(); ++v) index.emplace(net.label(v), v);
  std::vector<NodeId> out;
  for (const auto& l : labels) {
    const auto it = index.find(l);
    if (it == index.end()) throw std::invalid_argument("unknown node label '" + l + "'");
    out.push_back(it->second);
  }
  return out;
}

std::string join_labels(const MultilayerNetwork& net, const SeedSet& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ' ';
    out += net.label(seeds[i]);
  }
  return out;
}

struct GenerateArgs {
  std::string model = "ER";
  GeneratorSpec spec;
};

void add_generator_flags(CLI::App* cmd, GeneratorSpec& spec) {
  cmd->add_option("--nodes", spec.num_nodes, "Nodes per layer")->capture_default_str();
  cmd->add_option("--layers", spec.num_layers, "Number of layers")->capture_default_str();
  cmd->add_option("--er-p", spec.er_edge_prob, "ER edge probability")->capture_default_str();
  cmd->add_option("--ws-k", spec.ws_neighbors, "WS ring neighbors (even)")->capture_default_str();
  cmd->add_option("--ws-p", spec.ws_rewire_prob, "WS rewiring probability")->capture_default_str();
  cmd->add_option("--ba-m", spec.ba_edges_per_node, "BA edges per new node")->capture_default_str();
}

// `ER`, `WS`, `BA` build a network from the generator flags; anything else is a file.
MultilayerNetwork open_network(const std::string& token, GeneratorSpec gen, const Globals& g) {
  if (g.seed) gen.rng_seed = *g.seed;
  return NetworkSource::parse(token, gen).load();
}

int run_generate(const GenerateArgs& a, const Globals& g) {
  if (g.output.empty()) throw std::invalid_argument("generate needs --output");
  GeneratorSpec spec = a.spec;
  spec.model = parse_generator_model(a.model);
  if (g.seed) spec.rng_seed = *g.seed;
  const auto net = generate(spec);
  save_network(net, g.output);
  std::cout << spec.name() << ": " << net.num_nodes() << " nodes";
  for (std::size_t m = 0; m < net.num_layers(); ++m) std::cout << ", layer " << m << " " << net.num_edges(m) << " edges";
  std::cout << '\n';
  return 0;
}

int run_stats(const std::string& network, const GeneratorSpec& gen, const Globals& g) {
  const auto net = open_network(network, gen, g);
  const auto stats = compute_stats(net);
  Output out(g.output);
  auto& os = out.stream();
  os << "layer,active_nodes,edges,average_degree,average_shortest_path,diameter,clustering,density\n";
  for (std::size_t m = 0; m < stats.layers.size(); ++m) {
    const auto& s = stats.layers[m];
    os << m << ',' << s.active_nodes << ',' << s.edges << ',' << fmt(s.average_degree) << ','
       << fmt(s.average_shortest_path) << ',' << s.diameter << ',' << fmt(s.clustering) << ',' << fmt(s.density, 6)
       << '\n';
  }
  return 0;
}

struct SimulateArgs {
  std::string network;
  std::vector<std::string> seeds;
  double p = 0.1;
  std::int64_t sims = 10000;
  std::string mode = "attempt";
  std::string histogram;
};

int run_simulate(const SimulateArgs& a, const GeneratorSpec& gen, const Globals& g) {
  const auto net = open_network(a.network, gen, g);
  const auto seeds = resolve_labels(net, a.seeds);
  if (a.mode != "attempt" && a.mode != "live") throw std::invalid_argument("--mode must be attempt or live");
  const auto mode = a.mode == "live" ? CascadeMode::live_edge : CascadeMode::attempt;
  const std::uint64_t seed = g.seed.value_or(1);
  const auto est = estimate_influence(net, seeds, a.p, a.sims, seed, mode);
  Output out(g.output);
  out.stream() << "mean," << fmt(est.mean_spread) << "\nstd_error," << fmt(est.std_error) << "\nsims,"
               << est.num_simulations << '\n';
  if (!a.histogram.empty()) {
    std::ofstream hist(a.histogram);
    if (!hist) throw std::runtime_error("cannot write " + a.histogram);
    hist << "step,mean_new_active\n";
    const auto profile = activation_profile(net, seeds, a.p, a.sims, seed);
    for (std::size_t t = 0; t < profile.size(); ++t) hist << t << ',' << fmt(profile[t]) << '\n';
  }
  return 0;
}

struct SolveArgs {
  std::string algorithm = "mmga";
  std::string network;
  Cost budget = 600;
  std::size_t capacity = 20;
  double p = 0.1;
  std::string config;
  std::string trace;
  std::int64_t final_sims = 1000;
};

int run_solve(const SolveArgs& a, GeneratorSpec gen, const Globals& g) {
  SolverSettings settings;
  if (!a.config.empty()) {
    const auto cfg = load_config(a.config);
    settings = cfg.sweep.settings;
    gen = cfg.generator;
  }
  const auto spec = AlgorithmSpec::parse(a.algorithm);
  const auto net = open_network(a.network, gen, g);
  const std::uint64_t seed = g.seed.value_or(1);

  const auto start = std::chrono::steady_clock::now();
  const auto outcome = run_solver(spec, net, a.capacity, a.budget, a.p, seed, settings);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto est = evaluate_seed_set(net, outcome.seeds, a.p, a.final_sims, derive_seed(seed, 3));

  Output out(g.output);
  auto& os = out.stream();
  os << "algorithm: " << spec.name() << '\n';
  os << "seeds: " << join_labels(net, outcome.seeds) << '\n';
  os << "cost: " << outcome.cost << " / " << a.budget << '\n';
  os << "spread: " << fmt(est.mean_spread) << " +- " << fmt(est.std_error) << " (" << est.num_simulations
     << " sims)\n";
  os << "seconds: " << fmt(seconds, 3) << '\n';

  if (!a.trace.empty()) {
    std::ofstream trace(a.trace);
    if (!trace) throw std::runtime_error("cannot write " + a.trace);
    trace << "generation,k,best_fitness,mean_fitness\n";
    for (const auto& r : outcome.trace) {
      trace << r.generation << ',' << r.k << ',' << fmt(r.best_fitness, 6) << ',' << fmt(r.mean_fitness, 6) << '\n';
    }
  }
  return 0;
}

int run_sweep_cmd(const std::string& config, const Globals& g) {
  auto cfg = load_config(config);
  auto& spec = cfg.sweep;
  if (g.seed) spec.master_seed = *g.seed;
  if (g.threads > 0 && spec.workers == 0) spec.workers = static_cast<std::size_t>(g.threads);
  Output out(g.output);
  const auto records = run_sweep(spec, &out.stream());
  std::size_t failed = 0;
  for (const auto& r : records) {
    if (r.error) {
      ++failed;
      std::cerr << "cell failed: " << r.network << ' ' << r.algorithm << " K=" << r.K << " B=" << r.B
                << " p=" << r.p << ": " << *r.error << '\n';
    }
  }
  std::cerr << records.size() << " rows, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

int run_auc(const std::string& input, const Globals& g) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  const auto entries = compute_auc(read_csv(in));
  Output out(g.output);
  auto& os = out.stream();
  os << "network,K,p,variant,area,share\n";
  for (const auto& e : entries) {
    os << e.network << ',' << e.K << ',' << e.p << ',' << e.variant << ',' << fmt(e.area) << ',' << fmt(e.share, 6)
       << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget- and capacity-constrained influence maximization on multilayer networks"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master RNG seed");
  app.add_option("--threads", g.threads, "OpenMP threads (0 = runtime default)");
  app.add_option("--output", g.output, "Output file (default stdout)");

  GenerateArgs gen_args;
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic multiplex edge list");
  generate_cmd->add_option("--model", gen_args.model, "ER, WS or BA")->capture_default_str();
  add_generator_flags(generate_cmd, gen_args.spec);

  std::string stats_network;
  GeneratorSpec stats_gen;
  auto* stats_cmd = app.add_subcommand("stats", "Per-layer topology statistics");
  stats_cmd->add_option("--network", stats_network, "Edge list path or ER/WS/BA")->required();
  add_generator_flags(stats_cmd, stats_gen);

  SimulateArgs sim_args;
  GeneratorSpec sim_gen;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo spread of a seed set");
  simulate_cmd->add_option("--network", sim_args.network, "Edge list path or ER/WS/BA")->required();
  simulate_cmd->add_option("--seeds", sim_args.seeds, "Seed node labels")->required()->delimiter(',');
  simulate_cmd->add_option("--p", sim_args.p, "Spread probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  simulate_cmd->add_option("--sims", sim_args.sims, "Simulations")->check(CLI::PositiveNumber)->capture_default_str();
  simulate_cmd->add_option("--mode", sim_args.mode, "attempt or live")->capture_default_str();
  simulate_cmd->add_option("--histogram", sim_args.histogram, "Per-step activation CSV");
  add_generator_flags(simulate_cmd, sim_gen);

  SolveArgs solve_args;
  GeneratorSpec solve_gen;
  auto* solve_cmd = app.add_subcommand("solve", "Pick a seed set under budget and capacity");
  solve_cmd->add_option("--algorithm", solve_args.algorithm, "mmga[:init], dpso, greedy, acd, degree, combim")
      ->capture_default_str();
  solve_cmd->add_option("--network", solve_args.network, "Edge list path or ER/WS/BA")->required();
  solve_cmd->add_option("--budget", solve_args.budget, "Budget B")->required();
  solve_cmd->add_option("--capacity", solve_args.capacity, "Seed-set size limit K")->required();
  solve_cmd->add_option("--p", solve_args.p, "Spread probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  solve_cmd->add_option("--config", solve_args.config, "Config file with solver settings");
  solve_cmd->add_option("--trace", solve_args.trace, "Per-generation elite CSV (mmga)");
  solve_cmd->add_option("--final-sims", solve_args.final_sims, "Simulations for the reported spread")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_generator_flags(solve_cmd, solve_gen);

  std::string sweep_config;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a budget/capacity/probability grid to CSV");
  sweep_cmd->add_option("--config", sweep_config, "Sweep config file")->required();

  std::string auc_input;
  auto* auc_cmd = app.add_subcommand("auc", "Normalized area under spread-vs-budget curves");
  auc_cmd->add_option("--input", auc_input, "Sweep CSV")->required();

  for (auto* cmd : {generate_cmd, stats_cmd, simulate_cmd, solve_cmd, sweep_cmd, auc_cmd}) cmd->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (*generate_cmd) return run_generate(gen_args, g);
    if (*stats_cmd) return run_stats(stats_network, stats_gen, g);
    if (*simulate_cmd) return run_simulate(sim_args, sim_gen, g);
    if (*solve_cmd) return run_solve(solve_args, solve_gen, g);
    if (*sweep_cmd) return run_sweep_cmd(sweep_config, g);
    if (*auc_cmd) return run_auc(auc_input, g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
