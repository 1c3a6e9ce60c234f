#include "bcim/mmga.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

namespace bcim {
namespace {

constexpr std::size_t kRegenerationAttempts = 100;

bool contains(const std::vector<NodeId>& genes, NodeId v) {
  return std::find(genes.begin(), genes.end(), v) != genes.end();
}

void check_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument(std::string(name) + " must be in [0,1]");
}

// Higher fitness first, then lower cost, then lexicographically smaller genes.
bool fitter(const Individual& a, const Individual& b) {
  const double fa = a.fitness.value_or(-1.0);
  const double fb = b.fitness.value_or(-1.0);
  if (fa != fb) return fa > fb;
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.genes < b.genes;
}

const Individual& best_of(const std::vector<Individual>& xs) {
  return *std::min_element(xs.begin(), xs.end(), fitter);
}

// Pads `picked` with the lowest-id nodes not yet chosen.
void pad_with_lowest(std::vector<NodeId>& picked, std::size_t k, std::size_t num_nodes) {
  for (NodeId v = 0; picked.size() < k && v < num_nodes; ++v) {
    if (!contains(picked, v)) picked.push_back(v);
  }
}

}  // namespace

std::vector<NodeId> Individual::key() const {
  std::vector<NodeId> sorted = genes;
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

Individual make_individual(const MultilayerNetwork& net, std::vector<NodeId> genes) {
  Individual x;
  x.cost = net.cost_of(genes);
  x.genes = std::move(genes);
  return x;
}

SelectionMode parse_selection_mode(std::string_view name) {
  if (name == "roulette") return SelectionMode::roulette;
  if (name == "truncation") return SelectionMode::truncation;
  throw std::invalid_argument("unknown selection mode '" + std::string(name) + "'");
}

InitMode parse_init_mode(std::string_view name) {
  if (name == "mixed") return InitMode::mixed;
  if (name == "degree") return InitMode::degree;
  if (name == "icr") return InitMode::icr;
  if (name == "random") return InitMode::random;
  throw std::invalid_argument("unknown init mode '" + std::string(name) + "'");
}

std::string_view to_string(SelectionMode mode) { return mode == SelectionMode::roulette ? "roulette" : "truncation"; }

std::string_view to_string(InitMode mode) {
  switch (mode) {
    case InitMode::mixed: return "mixed";
    case InitMode::degree: return "degree";
    case InitMode::icr: return "icr";
    case InitMode::random: return "random";
  }
  return "?";
}

void MmgaConfig::validate() const {
  if (capacity < 1) throw std::invalid_argument("mmga: capacity must be >= 1");
  if (budget < 0) throw std::invalid_argument("mmga: budget must be >= 0");
  if (population_size < 3) throw std::invalid_argument("mmga: population size must be >= 3");
  check_probability(init_perturb_prob, "mmga: beta");
  check_probability(crossover_prob, "mmga: p_c");
  check_probability(mutation_prob, "mmga: p_m");
  check_probability(spread_prob, "mmga: spread probability");
  if (fitness_sims < 1 || final_sims < 1 || icr_sims < 1) throw std::invalid_argument("mmga: simulation counts must be >= 1");
}

Cost cheapest_k_cost(const MultilayerNetwork& net, std::size_t k) {
  if (k > net.num_nodes()) throw std::invalid_argument("k exceeds the number of nodes");
  std::vector<Cost> costs(net.costs().begin(), net.costs().end());
  std::partial_sort(costs.begin(), costs.begin() + static_cast<std::ptrdiff_t>(k), costs.end());
  return std::accumulate(costs.begin(), costs.begin() + static_cast<std::ptrdiff_t>(k), Cost{0});
}

std::vector<NodeId> top_k_by_degree(const MultilayerNetwork& net, std::size_t k) {
  if (k > net.num_nodes()) throw std::invalid_argument("k exceeds the number of nodes");
  std::vector<NodeId> order;
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    if (net.cost(v) > 0) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return net.total_degree(a) > net.total_degree(b); });
  if (order.size() > k) order.resize(k);
  pad_with_lowest(order, k, net.num_nodes());
  return order;
}

std::vector<NodeId> top_k_by_icr(const MultilayerNetwork& net, const IcrTable& icr, std::size_t k) {
  if (k > net.num_nodes()) throw std::invalid_argument("k exceeds the number of nodes");
  std::vector<NodeId> order(icr.ranking.begin(), icr.ranking.begin() + static_cast<std::ptrdiff_t>(std::min(k, icr.ranking.size())));
  pad_with_lowest(order, k, net.num_nodes());
  return order;
}

std::vector<NodeId> random_subset(std::size_t num_nodes, std::size_t k, SplitMix64& rng) {
  if (k > num_nodes) throw std::invalid_argument("k exceeds the number of nodes");
  std::vector<NodeId> pool(num_nodes);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, num_nodes - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::optional<NodeId> random_outside(std::size_t num_nodes, const std::vector<NodeId>& genes, SplitMix64& rng) {
  if (genes.size() >= num_nodes) return std::nullopt;
  if (2 * genes.size() <= num_nodes) {
    for (;;) {
      const auto v = static_cast<NodeId>(uniform_below(rng, num_nodes));
      if (!contains(genes, v)) return v;
    }
  }
  std::vector<char> in(num_nodes, 0);
  for (NodeId g : genes) in[g] = 1;
  std::uint64_t pick = uniform_below(rng, num_nodes - genes.size());
  for (NodeId v = 0;; ++v) {
    if (in[v]) continue;
    if (pick-- == 0) return v;
  }
}

void perturb(std::vector<NodeId>& genes, double prob, std::size_t num_nodes, SplitMix64& rng) {
  const BernoulliThreshold coin(prob);
  for (auto& g : genes) {
    if (!coin(rng)) continue;
    if (auto r = random_outside(num_nodes, genes, rng)) g = *r;
  }
}

std::optional<Individual> repair(Individual x, const MultilayerNetwork& net, Cost budget, const IcrTable& icr) {
  x.cost = net.cost_of(x.genes);
  if (x.cost <= budget) return x;
  if (cheapest_k_cost(net, x.genes.size()) > budget) return std::nullopt;
  x.fitness.reset();

  const std::size_t n = net.num_nodes();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // zero-cost genes never cause an overrun, so they are never removed
  auto score = [&](NodeId v) { return icr.rankable(v) ? icr.ratio[v] : kInf; };
  auto replace = [&](std::size_t pos, NodeId with) {
    x.cost += net.cost(with) - net.cost(x.genes[pos]);
    x.genes[pos] = with;
  };
  std::vector<char> in_x(n, 0);
  for (NodeId g : x.genes) in_x[g] = 1;

  // Pass 1: lowest-ICR gene out, best untried outsider in.
  std::vector<char> tried(n, 0);
  std::size_t cursor = 0;
  while (x.cost > budget) {
    while (cursor < icr.ranking.size() && (in_x[icr.ranking[cursor]] || tried[icr.ranking[cursor]])) ++cursor;
    if (cursor == icr.ranking.size()) break;
    std::size_t worst = 0;
    for (std::size_t j = 1; j < x.genes.size(); ++j) {
      const double a = score(x.genes[j]);
      const double b = score(x.genes[worst]);
      if (a < b || (a == b && x.genes[j] < x.genes[worst])) worst = j;
    }
    const NodeId in = icr.ranking[cursor];
    const NodeId out = x.genes[worst];
    tried[in] = tried[out] = 1;
    in_x[out] = 0;
    in_x[in] = 1;
    replace(worst, in);
  }

  // Pass 2: every swap strictly lowers the cost, so this terminates; it only
  // stalls once x holds k cheapest nodes, which the check above rules out.
  while (x.cost > budget) {
    std::vector<std::size_t> order(x.genes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double sa = score(x.genes[a]);
      const double sb = score(x.genes[b]);
      return sa != sb ? sa < sb : x.genes[a] < x.genes[b];
    });
    bool swapped = false;
    for (std::size_t pos : order) {
      const Cost limit = net.cost(x.genes[pos]);
      if (limit == 0) continue;
      std::optional<NodeId> pick;
      for (NodeId c : icr.ranking) {
        if (!in_x[c] && net.cost(c) < limit) {
          pick = c;
          break;
        }
      }
      for (NodeId c = 0; !pick && c < n; ++c) {
        if (!in_x[c] && net.cost(c) == 0) pick = c;
      }
      if (!pick) continue;
      in_x[x.genes[pos]] = 0;
      in_x[*pick] = 1;
      replace(pos, *pick);
      swapped = true;
      break;
    }
    if (!swapped) return std::nullopt;
  }
  return x;
}

Population initialize_population(const MultilayerNetwork& net, std::size_t k, std::size_t n, double beta,
                                 Cost budget, const IcrTable& icr, SplitMix64& rng, InitMode mode) {
  if (k < 1 || k > net.num_nodes()) throw std::invalid_argument("population gene length must be in [1, N]");
  if (n < 3) throw std::invalid_argument("population size must be >= 3");
  const std::size_t third = (n + 2) / 3;
  std::size_t n_degree = 0;
  std::size_t n_icr = 0;
  switch (mode) {
    case InitMode::mixed: n_degree = n_icr = third; break;
    case InitMode::degree: n_degree = n; break;
    case InitMode::icr: n_icr = n; break;
    case InitMode::random: break;
  }
  const auto by_degree = top_k_by_degree(net, k);
  const auto by_icr = top_k_by_icr(net, icr, k);

  Population pop;
  pop.k = k;
  pop.individuals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<NodeId> genes;
    if (i < n_degree) {
      genes = by_degree;
      perturb(genes, beta, net.num_nodes(), rng);
    } else if (i < n_degree + n_icr) {
      genes = by_icr;
      perturb(genes, beta, net.num_nodes(), rng);
    } else {
      genes = random_subset(net.num_nodes(), k, rng);
    }
    auto fixed = repair(make_individual(net, std::move(genes)), net, budget, icr);
    if (!fixed) throw InfeasibleProblem("no " + std::to_string(k) + "-node set fits the budget");
    pop.individuals.push_back(std::move(*fixed));
  }
  return pop;
}

std::pair<Individual, Individual> crossover_pair(const Individual& a, const Individual& b,
                                                 const std::function<bool(std::size_t)>& swap_here) {
  if (a.genes.size() != b.genes.size()) throw std::invalid_argument("crossover parents differ in length");
  Individual x = a;
  Individual y = b;
  x.fitness.reset();
  y.fitness.reset();
  for (std::size_t j = 0; j < x.genes.size(); ++j) {
    if (!swap_here(j)) continue;
    const NodeId gx = x.genes[j];
    const NodeId gy = y.genes[j];
    if (gx == gy || contains(x.genes, gy) || contains(y.genes, gx)) continue;
    std::swap(x.genes[j], y.genes[j]);
  }
  // costs are refreshed by repair
  return {std::move(x), std::move(y)};
}

std::vector<Individual> crossover(const Population& pop, double p_c, std::size_t pairs, SplitMix64& rng) {
  const std::size_t n = pop.individuals.size();
  if (n < 2) throw std::invalid_argument("crossover needs at least two parents");
  const BernoulliThreshold coin(p_c);
  std::vector<Individual> offspring;
  offspring.reserve(2 * pairs);
  for (std::size_t r = 0; r < pairs; ++r) {
    const auto i = static_cast<std::size_t>(uniform_below(rng, n));
    auto j = static_cast<std::size_t>(uniform_below(rng, n - 1));
    if (j >= i) ++j;
    auto [x, y] = crossover_pair(pop.individuals[i], pop.individuals[j], [&](std::size_t) { return coin(rng); });
    offspring.push_back(std::move(x));
    offspring.push_back(std::move(y));
  }
  return offspring;
}

void mutate(std::vector<Individual>& offspring, double p_m, const MultilayerNetwork& net, SplitMix64& rng) {
  const BernoulliThreshold coin(p_m);
  for (auto& x : offspring) {
    bool changed = false;
    for (auto& g : x.genes) {
      if (!coin(rng)) continue;
      if (auto r = random_outside(net.num_nodes(), x.genes, rng)) {
        g = *r;
        changed = true;
      }
    }
    if (changed) x.fitness.reset();
    x.cost = net.cost_of(x.genes);
  }
}

std::vector<Individual> select(std::vector<Individual> candidates, std::size_t n, SelectionMode mode,
                               SplitMix64& rng) {
  if (n > candidates.size()) throw std::invalid_argument("cannot select more individuals than candidates");
  for (const auto& c : candidates) {
    if (!c.fitness) throw std::invalid_argument("select: candidate without fitness");
  }
  if (mode == SelectionMode::truncation) {
    std::stable_sort(candidates.begin(), candidates.end(), fitter);
    candidates.resize(n);
    return candidates;
  }
  std::vector<Individual> chosen;
  chosen.reserve(n);
  while (chosen.size() < n) {
    double total = 0.0;
    for (const auto& c : candidates) total += *c.fitness;
    std::size_t pick = candidates.size() - 1;
    if (total > 0.0) {
      double r = uniform01(rng) * total;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        r -= *candidates[i].fitness;
        if (r < 0.0) {
          pick = i;
          break;
        }
      }
      // rounding can leave r >= 0 at the end; take the last positive weight
      while (pick > 0 && *candidates[pick].fitness <= 0.0) --pick;
    } else {
      pick = static_cast<std::size_t>(uniform_below(rng, candidates.size()));
    }
    chosen.push_back(std::move(candidates[pick]));
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return chosen;
}

double FitnessCache::operator()(Individual& x) {
  if (x.fitness) return *x.fitness;
  auto key = x.key();
  auto it = memo_.find(key);
  if (it == memo_.end()) it = memo_.emplace(std::move(key), sample_->mean_spread(x.genes)).first;
  x.fitness = it->second;
  return it->second;
}

Individual evolve_population(const EvolutionContext& ctx, std::size_t k, const MmgaConfig& config, SplitMix64& rng,
                             std::vector<GenerationRecord>* trace) {
  const auto& net = ctx.net;
  auto pop = initialize_population(net, k, config.population_size, config.init_perturb_prob, config.budget, ctx.icr,
                                   rng, config.init);
  FitnessCache fitness(ctx.fitness_sample);
  FitnessCache final_value(ctx.final_sample);
  for (auto& x : pop.individuals) fitness(x);

  // initial elite: best of the population on the final sample
  std::vector<Individual> probes = pop.individuals;
  for (auto& x : probes) {
    x.fitness.reset();
    final_value(x);
  }
  const auto first = static_cast<std::size_t>(&best_of(probes) - probes.data());
  auto elite = pop.individuals[first];
  double elite_value = *probes[first].fitness;

  auto record = [&](std::size_t generation) {
    if (!trace) return;
    double mean = 0.0;
    for (const auto& x : pop.individuals) mean += *x.fitness;
    mean /= static_cast<double>(pop.individuals.size());
    trace->push_back({generation, k, elite_value, mean});
  };
  record(0);

  for (std::size_t t = 1; t <= config.generations; ++t) {
    auto offspring = crossover(pop, config.crossover_prob, config.crossover_pairs, rng);
    mutate(offspring, config.mutation_prob, net, rng);
    for (auto& x : offspring) {
      auto fixed = repair(std::move(x), net, config.budget, ctx.icr);
      for (std::size_t attempt = 0; !fixed && attempt < kRegenerationAttempts; ++attempt) {
        fixed = repair(make_individual(net, random_subset(net.num_nodes(), k, rng)), net, config.budget, ctx.icr);
      }
      if (!fixed) throw InfeasibleProblem("no " + std::to_string(k) + "-node set fits the budget");
      x = std::move(*fixed);
      fitness(x);
    }

    std::vector<Individual> candidates = std::move(pop.individuals);
    candidates.insert(candidates.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
    for (const auto& x : candidates) {
      if (x.cost > config.budget || x.genes.size() != k) throw std::logic_error("infeasible individual in selection");
    }

    const auto& challenger = best_of(candidates);
    if (challenger.key() != elite.key()) {
      auto probe = challenger;
      probe.fitness.reset();
      const double value = final_value(probe);
      if (value > elite_value) {
        elite = challenger;
        elite_value = value;
      }
    }
    pop.individuals = select(std::move(candidates), config.population_size, config.selection, rng);
    record(t);
  }
  pop.best_so_far = elite;
  return elite;
}

MmgaResult solve_bcim(const MultilayerNetwork& net, const MmgaConfig& config) {
  config.validate();
  if (config.capacity > net.num_nodes()) throw std::invalid_argument("capacity exceeds the number of nodes");
  std::size_t max_k = 0;
  while (max_k < config.capacity && cheapest_k_cost(net, max_k + 1) <= config.budget) ++max_k;
  if (max_k == 0) throw InfeasibleProblem("budget is below the cheapest node cost");

  const auto icr = IcrCache::global().get(net, config.spread_prob, config.icr_sims, config.icr_seed);
  const LiveEdgeSample fitness_sample(net, config.spread_prob, config.fitness_sims, derive_seed(config.rng_seed, 1));
  const LiveEdgeSample final_sample(net, config.spread_prob, config.final_sims, derive_seed(config.rng_seed, 2));
  const EvolutionContext ctx{net, *icr, fitness_sample, final_sample};

  std::vector<Individual> elites(max_k);
  std::vector<std::vector<GenerationRecord>> traces(max_k);
  std::exception_ptr failure;
  const auto populations = static_cast<std::int64_t>(max_k);
  // larger k first: those populations are the slowest
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = populations - 1; i >= 0; --i) {
    const auto k = static_cast<std::size_t>(i) + 1;
    try {
      SplitMix64 rng(derive_seed(config.rng_seed, 0, k));
      elites[k - 1] = evolve_population(ctx, k, config, rng, &traces[k - 1]);
    } catch (...) {
#pragma omp critical(bcim_mmga_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  MmgaResult result;
  std::optional<std::size_t> best;
  std::vector<SpreadEstimate> estimates(max_k);
  for (std::size_t i = 0; i < max_k; ++i) {
    estimates[i] = final_sample.estimate(elites[i].genes);
    if (!best || estimates[i].mean_spread > estimates[*best].mean_spread ||
        (estimates[i].mean_spread == estimates[*best].mean_spread && elites[i].cost < elites[*best].cost)) {
      best = i;
    }
  }
  result.seeds = elites[*best].genes;
  result.cost = elites[*best].cost;
  result.estimate = estimates[*best];
  for (auto& t : traces) result.trace.insert(result.trace.end(), t.begin(), t.end());
  result.elites = std::move(elites);
  return result;
}

}  // namespace bcim
