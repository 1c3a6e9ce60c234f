#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "bcim/graph.hpp"
#include "bcim/mic.hpp"
#include "bcim/rng.hpp"

namespace bcim {

/// Raised when no seed set of any allowed size fits the budget.
class InfeasibleProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Individual {
  std::vector<NodeId> genes;  // distinct, fixed length within a population
  std::optional<double> fitness;
  Cost cost = 0;

  /// Sorted genes; two individuals encode the same seed set iff keys match.
  std::vector<NodeId> key() const;
};

Individual make_individual(const MultilayerNetwork& net, std::vector<NodeId> genes);

struct Population {
  std::size_t k = 0;
  std::vector<Individual> individuals;
  Individual best_so_far;
};

enum class SelectionMode { roulette, truncation };
/// mixed: thirds seeded by degree, ICR and uniform draws.
enum class InitMode { mixed, degree, icr, random };

SelectionMode parse_selection_mode(std::string_view name);
InitMode parse_init_mode(std::string_view name);
std::string_view to_string(SelectionMode mode);
std::string_view to_string(InitMode mode);

struct MmgaConfig {
  std::size_t capacity = 20;
  Cost budget = 600;
  std::size_t population_size = 30;
  std::size_t crossover_pairs = 15;
  double init_perturb_prob = 0.1;
  double crossover_prob = 0.8;
  double mutation_prob = 0.005;
  std::size_t generations = 150;
  std::int64_t fitness_sims = 100;
  std::int64_t final_sims = 1000;
  double spread_prob = 0.1;
  std::uint64_t rng_seed = 1;
  SelectionMode selection = SelectionMode::roulette;
  InitMode init = InitMode::mixed;
  // The ICR table does not depend on rng_seed so repeated runs share it.
  std::int64_t icr_sims = 500;
  std::uint64_t icr_seed = 1;

  void validate() const;
};

struct GenerationRecord {
  std::size_t generation = 0;  // 0 = initial population
  std::size_t k = 0;
  double best_fitness = 0.0;  // elite's recorded (final_sims) estimate
  double mean_fitness = 0.0;  // population mean of fitness_sims estimates
};

struct MmgaResult {
  SeedSet seeds;
  Cost cost = 0;
  SpreadEstimate estimate;
  std::vector<Individual> elites;  // one per feasible k, ascending
  std::vector<GenerationRecord> trace;
};

// --- building blocks ---------------------------------------------------------

/// Smallest total cost of any k distinct nodes.
Cost cheapest_k_cost(const MultilayerNetwork& net, std::size_t k);

/// Positive-cost nodes by summed degree (descending, ties to lower id), padded
/// with zero-cost nodes when fewer than k exist.
std::vector<NodeId> top_k_by_degree(const MultilayerNetwork& net, std::size_t k);
std::vector<NodeId> top_k_by_icr(const MultilayerNetwork& net, const IcrTable& icr, std::size_t k);

/// k distinct nodes drawn uniformly.
std::vector<NodeId> random_subset(std::size_t num_nodes, std::size_t k, SplitMix64& rng);

/// Uniform node outside `genes`; nullopt when `genes` covers every node.
std::optional<NodeId> random_outside(std::size_t num_nodes, const std::vector<NodeId>& genes, SplitMix64& rng);

/// Replaces each gene with probability `prob` by a uniform node outside the set.
void perturb(std::vector<NodeId>& genes, double prob, std::size_t num_nodes, SplitMix64& rng);

/// Brings x within budget by swapping its lowest-ICR genes for high-ICR
/// outsiders, then for strictly cheaper outsiders. Returns nullopt only when
/// no k-node set fits the budget. In-budget input is returned unchanged.
std::optional<Individual> repair(Individual x, const MultilayerNetwork& net, Cost budget, const IcrTable& icr);

Population initialize_population(const MultilayerNetwork& net, std::size_t k, std::size_t n, double beta,
                                 Cost budget, const IcrTable& icr, SplitMix64& rng,
                                 InitMode mode = InitMode::mixed);

/// Position-wise exchange; `swap_here(j)` decides whether position j is tried.
/// A swap is skipped when either gene already sits in the receiving offspring.
std::pair<Individual, Individual> crossover_pair(const Individual& a, const Individual& b,
                                                 const std::function<bool(std::size_t)>& swap_here);

/// R pairs of distinct parents drawn uniformly; 2R offspring.
std::vector<Individual> crossover(const Population& pop, double p_c, std::size_t pairs, SplitMix64& rng);

void mutate(std::vector<Individual>& offspring, double p_m, const MultilayerNetwork& net, SplitMix64& rng);

/// Candidates must carry fitness values.
std::vector<Individual> select(std::vector<Individual> candidates, std::size_t n, SelectionMode mode,
                               SplitMix64& rng);

/// Memoized fitness over a fixed live-edge sample (common random numbers).
class FitnessCache {
 public:
  explicit FitnessCache(const LiveEdgeSample& sample) : sample_(&sample) {}
  double operator()(Individual& x);
  std::size_t size() const { return memo_.size(); }

 private:
  const LiveEdgeSample* sample_;
  std::map<std::vector<NodeId>, double> memo_;
};

struct EvolutionContext {
  const MultilayerNetwork& net;
  const IcrTable& icr;
  const LiveEdgeSample& fitness_sample;
  const LiveEdgeSample& final_sample;
};

/// Evolves the size-k population and returns its elite.
Individual evolve_population(const EvolutionContext& ctx, std::size_t k, const MmgaConfig& config, SplitMix64& rng,
                             std::vector<GenerationRecord>* trace = nullptr);

MmgaResult solve_bcim(const MultilayerNetwork& net, const MmgaConfig& config);

}  // namespace bcim
