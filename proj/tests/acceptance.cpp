// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "bcim/baselines.hpp"
#include "bcim/experiment.hpp"
#include "bcim/generators.hpp"
#include "bcim/mic.hpp"
#include "bcim/mmga.hpp"
#include "fixtures.hpp"

using namespace bcim;
namespace fx = bcim::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double x, int precision = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

// Collects failures; the first few are echoed in the summary line.
struct Verdict {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  bool passed() const { return failures.empty(); }
};

GeneratorSpec table1(GeneratorModel model, std::uint64_t seed = 1) {
  GeneratorSpec spec;
  spec.model = model;
  spec.rng_seed = seed;
  return spec;
}

bool distinct(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

std::vector<NodeId> merged(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  std::vector<NodeId> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string strip_seconds(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  std::string line;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

// --- 1 -----------------------------------------------------------------------

Verdict oracle_equivalence() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto toys = fx::oracle_toys();
  double worst = 0.0;
  std::uint64_t stream = 0;
  for (std::size_t i = 0; i < toys.size(); ++i) {
    const auto& net = toys[i];
    std::size_t incidences = 0;
    for (std::size_t m = 0; m < net.num_layers(); ++m) incidences += net.num_edges(m);
    v.expect(incidences <= 24, "toy " + std::to_string(i) + " has " + std::to_string(incidences) + " edges");
    const std::vector<std::vector<NodeId>> seed_sets{{0}, {static_cast<NodeId>(net.num_nodes() - 1), 1}};
    for (const auto& seeds : seed_sets) {
      for (double p : {0.1, 0.5, 0.9}) {
        const double exact = exact_influence(net, seeds, p);
        const auto est = estimate_influence(net, seeds, p, 100000, derive_seed(11, ++stream));
        const double z = est.std_error > 0 ? std::abs(est.mean_spread - exact) / est.std_error
                                           : (est.mean_spread == exact ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        v.expect(z <= 4.0, "toy " + std::to_string(i) + " p=" + num(p, 1) + " off by " + num(z, 2) + " SE");
      }
    }
  }
  const double seconds = since(t0);
  v.expect(seconds < 30.0, "took " + num(seconds, 1) + " s");
  v.note = std::to_string(toys.size()) + " toys, max |z| " + num(worst, 2) + ", " + num(seconds, 1) + " s";
  return v;
}

// --- 2 -----------------------------------------------------------------------

Verdict worked_example() {
  Verdict v;
  const auto net = fx::worked_example_network();
  const auto script = fx::worked_example_script();
  const NodeId seeds[] = {2};
  const auto out = simulate_with(net, seeds, [&](NodeId s, NodeId t, std::size_t layer) {
    return script.count({s, t, layer}) != 0;
  });
  std::vector<std::set<std::string>> frontiers;
  std::size_t at = 0;
  for (std::size_t size : out.frontier_sizes) {
    std::set<std::string> f;
    for (std::size_t i = 0; i < size; ++i) f.insert(net.label(out.activated[at + i]));
    frontiers.push_back(f);
    at += size;
  }
  const std::vector<std::set<std::string>> expected{{"v3"}, {"v4", "v5"}, {"v2", "v6"}, {"v1", "v7", "v8"}};
  v.expect(frontiers == expected, "frontiers differ from S1={v4,v5} S2={v2,v6} S3={v1,v7,v8}");
  v.note = "frontier sizes";
  for (std::size_t s : out.frontier_sizes) v.note += " " + std::to_string(s);
  return v;
}

// --- 3 -----------------------------------------------------------------------

Verdict degenerate_spreads() {
  Verdict v;
  std::vector<std::pair<std::string, MultilayerNetwork>> nets;
  std::size_t idx = 0;
  for (auto& toy : fx::oracle_toys()) nets.emplace_back("toy" + std::to_string(idx++), std::move(toy));
  nets.emplace_back("budget_toy", fx::budget_toy());
  for (auto model : {GeneratorModel::ER, GeneratorModel::WS, GeneratorModel::BA}) {
    nets.emplace_back(std::string(to_string(model)), generate(table1(model)));
  }
  SplitMix64 rng(5);
  std::size_t cases = 0;
  for (const auto& [name, net] : nets) {
    for (std::size_t size : {std::size_t{1}, std::size_t{3}}) {
      if (size > net.num_nodes()) continue;
      const auto seeds = random_subset(net.num_nodes(), size, rng);
      const double reach = static_cast<double>(union_reachable_count(net, seeds));
      for (auto mode : {CascadeMode::attempt, CascadeMode::live_edge}) {
        const auto zero = estimate_influence(net, seeds, 0.0, 200, 1, mode);
        const auto one = estimate_influence(net, seeds, 1.0, 200, 1, mode);
        v.expect(zero.mean_spread == static_cast<double>(size), name + " p=0 gave " + num(zero.mean_spread));
        v.expect(one.mean_spread == reach, name + " p=1 gave " + num(one.mean_spread) + " vs " + num(reach, 0));
        ++cases;
      }
    }
  }
  v.note = std::to_string(nets.size()) + " networks, " + std::to_string(cases) + " seed-set/mode cases";
  return v;
}

// --- 4 -----------------------------------------------------------------------

Verdict generator_fidelity() {
  Verdict v;
  double degree_sum = 0.0;
  double worst_er = 0.0;
  std::size_t er_layers = 0;
  double c_lo = 1.0;
  double c_hi = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto er = generate(table1(GeneratorModel::ER, seed));
    for (std::size_t m = 0; m < er.num_layers(); ++m) {
      const double avg = 2.0 * static_cast<double>(er.num_edges(m)) / static_cast<double>(er.num_nodes());
      degree_sum += avg;
      worst_er = std::max(worst_er, std::abs(avg - 4.0) / 4.0);
      ++er_layers;
      v.expect(std::abs(avg - 4.0) <= 0.4, "ER seed " + std::to_string(seed) + " average degree " + num(avg));
    }
    if (seed <= 5) {
      const auto ws = generate(table1(GeneratorModel::WS, seed));
      const auto ba = generate(table1(GeneratorModel::BA, seed));
      for (std::size_t m = 0; m < ws.num_layers(); ++m) {
        v.expect(ws.num_edges(m) == 2000, "WS layer has " + std::to_string(ws.num_edges(m)) + " edges");
        v.expect(ba.num_edges(m) == 1996, "BA layer has " + std::to_string(ba.num_edges(m)) + " edges");
      }
      for (const auto& layer : compute_stats(ws).layers) {
        c_lo = std::min(c_lo, layer.clustering);
        c_hi = std::max(c_hi, layer.clustering);
        v.expect(layer.clustering >= 0.13 && layer.clustering <= 0.25, "WS clustering " + num(layer.clustering));
      }
    }
  }
  const double mean_degree = degree_sum / static_cast<double>(er_layers);
  v.expect(std::abs(mean_degree - 4.0) <= 0.4, "ER mean degree " + num(mean_degree));
  v.note = "ER mean degree " + num(mean_degree) + " (worst layer off " + num(100 * worst_er, 1) +
           "%), WS clustering " + num(c_lo) + ".." + num(c_hi);
  return v;
}

// --- 5 -----------------------------------------------------------------------

Verdict constraint_soundness() {
  Verdict v;
  const auto t0 = Clock::now();
  GeneratorSpec gen = table1(GeneratorModel::WS);
  gen.num_nodes = 200;
  SweepSpec spec;  // default grids and algorithms
  spec.networks = {NetworkSource::generated(gen)};
  spec.final_sims = 200;
  spec.settings.mmga.generations = 30;
  spec.settings.mmga.fitness_sims = 50;
  spec.settings.mmga.icr_sims = 100;
  spec.settings.dpso.iterations = 30;
  spec.settings.dpso.fitness_sims = 50;
  spec.settings.dpso.icr_sims = 100;
  spec.settings.greedy.sims = 50;
  std::ostringstream csv;
  run_sweep(spec, &csv);

  std::istringstream in(csv.str());
  std::vector<ExperimentRecord> rows;
  try {
    rows = read_csv(in);
  } catch (const std::exception& e) {
    v.expect(false, std::string("CSV re-parse failed: ") + e.what());
  }
  std::size_t ok = 0;
  std::size_t errors = 0;
  for (const auto& r : rows) {
    if (r.error) {
      ++errors;
      continue;
    }
    const bool fine = r.cost <= r.B && r.seed_set.size() <= r.K;
    ok += fine;
    v.expect(fine, r.algorithm + " K=" + std::to_string(r.K) + " B=" + std::to_string(r.B) + " violates");
  }
  v.expect(errors == 0, std::to_string(errors) + " error rows");
  v.expect(rows.size() == spec.num_cells(), "row count " + std::to_string(rows.size()));
  v.note = std::to_string(ok) + "/" + std::to_string(rows.size()) + " rows within constraints, " +
           num(since(t0), 1) + " s";
  return v;
}

// --- 6 -----------------------------------------------------------------------

Verdict operator_properties() {
  Verdict v;
  SplitMix64 rng(2024);
  std::vector<MultilayerNetwork> nets;
  for (std::uint64_t s = 1; s <= 4; ++s) {
    GeneratorSpec spec = table1(static_cast<GeneratorModel>(s % 3), s);
    spec.num_nodes = 60;
    spec.er_edge_prob = 0.06;
    nets.push_back(generate(spec));
  }
  std::vector<IcrTable> tables;
  for (const auto& net : nets) tables.push_back(compute_icr_table(net, 0.1, 20, 1));

  const int trials = 10000;
  std::size_t swapped = 0;
  std::size_t infeasible = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto& net = nets[trial % nets.size()];
    const auto& icr = tables[trial % nets.size()];
    const std::size_t n = net.num_nodes();
    const std::size_t k = 1 + static_cast<std::size_t>(uniform_below(rng, 25));

    // crossover on a random mask and through the population operator
    const auto a = make_individual(net, random_subset(n, k, rng));
    const auto b = make_individual(net, random_subset(n, k, rng));
    const double q = uniform01(rng);
    const auto [c, d] = crossover_pair(a, b, [&](std::size_t) { return uniform01(rng) < q; });
    swapped += c.genes != a.genes;
    v.expect(merged(c.genes, d.genes) == merged(a.genes, b.genes), "crossover changed the gene multiset");
    v.expect(distinct(c.genes) && distinct(d.genes), "crossover duplicated a gene");
    v.expect(c.genes.size() == k && d.genes.size() == k, "crossover changed length");

    Population pop;
    pop.k = k;
    for (int i = 0; i < 3; ++i) pop.individuals.push_back(make_individual(net, random_subset(n, k, rng)));
    auto offspring = crossover(pop, 0.8, 1, rng);
    bool parents_found = false;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        parents_found |= i != j && merged(pop.individuals[i].genes, pop.individuals[j].genes) ==
                                       merged(offspring[0].genes, offspring[1].genes);
      }
    }
    v.expect(parents_found, "population crossover changed the gene multiset");

    // mutation
    mutate(offspring, uniform01(rng), net, rng);
    for (const auto& x : offspring) {
      v.expect(x.genes.size() == k && distinct(x.genes), "mutation broke length or uniqueness");
      v.expect(x.cost == net.cost_of(x.genes), "mutation left a stale cost");
    }

    // repair
    const Cost floor = cheapest_k_cost(net, k);
    const auto budget = static_cast<Cost>(uniform_below(rng, static_cast<std::uint64_t>(3 * floor + 10)));
    const auto fixed = repair(offspring[0], net, budget, icr);
    if (fixed) {
      v.expect(fixed->cost <= budget && fixed->cost == net.cost_of(fixed->genes), "repair exceeded the budget");
      v.expect(fixed->genes.size() == k && distinct(fixed->genes), "repair broke the set");
    } else {
      ++infeasible;
      v.expect(floor > budget, "repair flagged a feasible instance");
    }
  }
  v.note = std::to_string(trials) + " trials (" + std::to_string(swapped) + " with swaps, " +
           std::to_string(infeasible) + " infeasible repairs)";
  return v;
}

// --- 7 -----------------------------------------------------------------------

Verdict elite_monotonicity() {
  Verdict v;
  GeneratorSpec gen = table1(GeneratorModel::ER);
  gen.num_nodes = 300;
  gen.er_edge_prob = 0.015;
  const auto net = generate(gen);
  std::size_t records = 0;
  std::size_t populations = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    MmgaConfig config;
    config.capacity = 10;
    config.budget = 120;
    config.generations = 60;
    config.rng_seed = seed;
    const auto result = solve_bcim(net, config);
    std::map<std::size_t, double> last;
    for (const auto& r : result.trace) {
      const auto it = last.find(r.k);
      if (it != last.end()) {
        v.expect(r.best_fitness >= it->second, "seed " + std::to_string(seed) + " k=" + std::to_string(r.k) +
                                                    " dropped at generation " + std::to_string(r.generation));
      }
      last[r.k] = r.best_fitness;
      ++records;
    }
    populations += last.size();
  }
  v.note = "20 runs, " + std::to_string(populations) + " populations, " + std::to_string(records) + " records";
  return v;
}

// --- 8 -----------------------------------------------------------------------

Verdict small_instance_optimality() {
  Verdict v;
  const auto net = fx::budget_toy();
  const double p = 0.3;
  const Cost B = 6;
  SeedSet best;
  double best_value = -1.0;
  for (NodeId a = 0; a < net.num_nodes(); ++a) {
    for (NodeId b = a; b < net.num_nodes(); ++b) {
      const SeedSet s = a == b ? SeedSet{a} : SeedSet{a, b};
      if (net.cost_of(s) > B) continue;
      const double value = exact_influence(net, s, p);
      if (value > best_value + 1e-12) {
        best_value = value;
        best = s;
      }
    }
  }
  MmgaConfig config;
  config.capacity = 2;
  config.budget = B;
  config.spread_prob = p;
  config.population_size = 12;
  config.crossover_pairs = 6;
  config.generations = 50;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    config.rng_seed = seed;
    auto got = solve_bcim(net, config).seeds;
    std::sort(got.begin(), got.end());
    hits += got == best;
  }
  v.expect(hits >= 18, std::to_string(hits) + "/20 optimal");
  std::string label;
  for (NodeId x : best) label += (label.empty() ? "" : ",") + net.label(x);
  v.note = "optimum {" + label + "} sigma=" + num(best_value, 4) + ", hit in " + std::to_string(hits) + "/20 runs";
  return v;
}

// --- 9 -----------------------------------------------------------------------

Verdict desk_scale_comparison() {
  Verdict v;
  const auto t0 = Clock::now();
  const SolverSettings settings;  // defaults: T = 150, n = 30
  bool margin = false;
  std::string note;
  for (auto model : {GeneratorModel::ER, GeneratorModel::WS, GeneratorModel::BA}) {
    const auto net = generate(table1(model));
    const std::uint64_t eval = evaluation_seed(1, static_cast<std::size_t>(model), 0, 20, 600, 0);
    const auto mmga = run_solver(AlgorithmSpec::parse("mmga"), net, 20, 600, 0.1, 1, settings);
    const auto degree = run_solver(AlgorithmSpec::parse("degree"), net, 20, 600, 0.1, 1, settings);
    const double a = evaluate_seed_set(net, mmga.seeds, 0.1, 1000, eval).mean_spread;
    const double b = evaluate_seed_set(net, degree.seeds, 0.1, 1000, eval).mean_spread;
    v.expect(mmga.cost <= 600 && mmga.seeds.size() <= 20, "MMGA infeasible");
    v.expect(a >= b, std::string(to_string(model)) + ": MMGA " + num(a, 1) + " < Degree " + num(b, 1));
    margin |= a >= 1.05 * b;
    note += std::string(note.empty() ? "" : ", ") + std::string(to_string(model)) + " " + num(a, 1) + " vs " +
            num(b, 1) + " (" + (b > 0 ? num(100.0 * (a / b - 1.0), 1) : "inf") + "%)";
  }
  const double seconds = since(t0);
  v.expect(margin, "no network with a 5% margin");
  {
    // informational: the same comparison under truncation selection
    SolverSettings truncation;
    truncation.mmga.selection = SelectionMode::truncation;
    std::string info;
    for (auto model : {GeneratorModel::ER, GeneratorModel::WS, GeneratorModel::BA}) {
      const auto net = generate(table1(model));
      const std::uint64_t eval = evaluation_seed(1, static_cast<std::size_t>(model), 0, 20, 600, 0);
      const auto mmga = run_solver(AlgorithmSpec::parse("mmga"), net, 20, 600, 0.1, 1, truncation);
      const auto degree = run_solver(AlgorithmSpec::parse("degree"), net, 20, 600, 0.1, 1, truncation);
      const double a = evaluate_seed_set(net, mmga.seeds, 0.1, 1000, eval).mean_spread;
      const double b = evaluate_seed_set(net, degree.seeds, 0.1, 1000, eval).mean_spread;
      info += std::string(info.empty() ? "" : ", ") + std::string(to_string(model)) + " " +
              num(100.0 * (a / b - 1.0), 1) + "%";
    }
    note += "; truncation selection (not scored): " + info;
  }
  v.expect(seconds <= 1800.0, "took " + num(seconds, 0) + " s");
  v.note = "MMGA vs Degree: " + note + "; " + num(seconds, 1) + " s";
  return v;
}

// --- 10 ----------------------------------------------------------------------

Verdict high_p_saturation() {
  Verdict v;
  const auto net = generate(table1(GeneratorModel::WS));
  const SolverSettings settings;
  const std::uint64_t eval = evaluation_seed(1, 0, 2, 20, 600, 0);
  double lowest = 1e9;
  std::string note;
  for (const auto& alg : all_algorithms()) {
    const auto out = run_solver(alg, net, 20, 600, 0.5, 1, settings);
    const double s = evaluate_seed_set(net, out.seeds, 0.5, 1000, eval).mean_spread;
    lowest = std::min(lowest, s);
    v.expect(s >= 985.0, alg.name() + " reached " + num(s, 1));
    note += (note.empty() ? "" : ", ") + alg.name() + " " + num(s, 1);
  }
  v.note = note;
  return v;
}

// --- 11 ----------------------------------------------------------------------

Verdict auc_tooling() {
  Verdict v;
  SplitMix64 rng(9);
  double worst = 0.0;
  for (std::size_t m = 1; m <= 8; ++m) {
    std::vector<ExperimentRecord> rows;
    const double level = 1.0 + 500.0 * uniform01(rng);
    for (std::size_t i = 0; i < m; ++i) {
      for (Cost B : default_budgets()) {
        ExperimentRecord r;
        r.network = "net";
        r.algorithm = "variant" + std::to_string(i);
        r.K = 10;
        r.B = B;
        r.p = 0.1;
        r.spread_mean = level;
        rows.push_back(r);
      }
    }
    for (const auto& e : compute_auc(rows)) {
      worst = std::max(worst, std::abs(e.share - 1.0 / static_cast<double>(m)));
      v.expect(std::abs(e.share - 1.0 / static_cast<double>(m)) <= 1e-9, "constant curves not symmetric");
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ExperimentRecord> rows;
    const std::size_t m = 2 + uniform_below(rng, 5);
    for (std::size_t i = 0; i < m; ++i) {
      for (Cost B : {200, 300, 450, 600}) {
        ExperimentRecord r;
        r.network = "net";
        r.algorithm = "v" + std::to_string(i);
        r.K = 10;
        r.B = B;
        r.spread_mean = 1000.0 * uniform01(rng);
        rows.push_back(r);
      }
    }
    double total = 0.0;
    for (const auto& e : compute_auc(rows)) total += e.share;
    v.expect(std::abs(total - 1.0) <= 1e-9, "shares sum to " + num(total, 12));
  }
  v.note = "max symmetric deviation " + std::to_string(worst) + ", 200 random groups sum to 1";
  return v;
}

// --- 12 ----------------------------------------------------------------------

Verdict determinism() {
  Verdict v;
  GeneratorSpec gen = table1(GeneratorModel::BA);
  gen.num_nodes = 300;
  const auto net = generate(gen);
  SolverSettings settings;
  settings.mmga.generations = 40;
  settings.dpso.iterations = 40;
  const int saved = omp_get_max_threads();
  for (const auto& alg : all_algorithms()) {
    std::vector<SeedSet> seeds;
    std::vector<double> spreads;
    for (int threads : {1, 2, 4, 1}) {
      omp_set_num_threads(threads);
      const auto out = run_solver(alg, net, 10, 200, 0.1, 7, settings);
      seeds.push_back(out.seeds);
      spreads.push_back(evaluate_seed_set(net, out.seeds, 0.1, 500, 3).mean_spread);
    }
    for (std::size_t i = 1; i < seeds.size(); ++i) {
      v.expect(seeds[i] == seeds[0] && spreads[i] == spreads[0], alg.name() + " differs across thread counts");
    }
  }

  SweepSpec spec;
  gen.num_nodes = 150;
  spec.networks = {NetworkSource::generated(gen)};
  spec.budgets = {100, 200};
  spec.capacities = {5, 10};
  spec.probabilities = {0.1, 0.3};
  spec.final_sims = 200;
  spec.settings = settings;
  spec.settings.mmga.generations = 15;
  spec.settings.dpso.iterations = 15;
  std::vector<std::string> outputs;
  for (std::size_t workers : {1, 2, 4}) {
    omp_set_num_threads(static_cast<int>(workers));
    spec.workers = workers;
    std::ostringstream csv;
    run_sweep(spec, &csv);
    outputs.push_back(strip_seconds(csv.str()));
  }
  omp_set_num_threads(saved);
  v.expect(outputs[0] == outputs[1] && outputs[0] == outputs[2], "sweep CSV differs across worker counts");
  v.note = "6 solvers x threads {1,2,4,1}; sweep of " + std::to_string(spec.num_cells()) + " cells x workers {1,2,4}";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(static_cast<std::size_t>(std::atoi(argv[i])));
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"worked cascade frontiers", worked_example},
      {"degenerate spreads at p=0 and p=1", degenerate_spreads},
      {"generator fidelity", generator_fidelity},
      {"constraint soundness over a default sweep", constraint_soundness},
      {"genetic operator properties", operator_properties},
      {"elite monotonicity", elite_monotonicity},
      {"small-instance optimality", small_instance_optimality},
      {"desk-scale MMGA vs Degree", desk_scale_comparison},
      {"high-p saturation on WS", high_p_saturation},
      {"AUC symmetry and normalization", auc_tooling},
      {"determinism across thread counts", determinism},
  };
  int failed = 0;
  std::size_t ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    ++ran;
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    failed += !v.passed();
    std::cout << (v.passed() ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << v.note;
    if (!v.passed()) {
      std::cout << " | " << v.failures.size() << "/" << v.checks << " checks failed:";
      for (std::size_t f = 0; f < std::min<std::size_t>(3, v.failures.size()); ++f) std::cout << " " << v.failures[f] << ";";
    }
    std::cout << " (" << num(since(t0), 1) << " s)" << std::endl;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
