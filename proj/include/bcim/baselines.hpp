#pragma once

#include <cstdint>
#include <vector>

#include "bcim/graph.hpp"
#include "bcim/mic.hpp"

namespace bcim {

// --- DPSO --------------------------------------------------------------------

struct DpsoConfig {
  std::size_t swarm_size = 30;
  double inertia = 0.8;
  // With zero initial velocity a learn factor of 2 never crosses the
  // threshold of 2, so the swarm would not move.
  double learn_personal = 2.5;
  double learn_global = 2.5;
  std::size_t iterations = 150;
  std::int64_t fitness_sims = 100;
  double turbulence = 0.5;  // per-gene replacement chance when seeding particles
  std::uint64_t rng_seed = 1;
  std::int64_t icr_sims = 500;
  std::uint64_t icr_seed = 1;

  void validate() const;
};

struct DpsoResult {
  SeedSet seeds;
  Cost cost = 0;
  double fitness = 0.0;
  std::vector<double> gbest_trace;  // gbest fitness after each iteration (index 0 = initial)
};

/// Velocity threshold: 0 if q < 2, else 1.
inline int dpso_threshold(double q) { return q < 2.0 ? 0 : 1; }

/// 0 at positions whose gene appears in `reference`, 1 elsewhere.
std::vector<std::uint8_t> overlap_indicator(const std::vector<NodeId>& x, const std::vector<NodeId>& reference);

/// Particles hold the largest feasible set size k <= K. Throws
/// InfeasibleProblem when no single node fits the budget.
DpsoResult dpso_solve(const MultilayerNetwork& net, std::size_t K, Cost B, double p, const DpsoConfig& config);

// --- Greedy ------------------------------------------------------------------

struct GreedyResult {
  SeedSet seeds;
  Cost cost = 0;
  std::vector<double> round_spread;  // estimate of sigma(S) after each round
};

/// Marginal gains are scored on one live-edge sample shared by all candidates
/// and rounds.
GreedyResult greedy_solve(const MultilayerNetwork& net, std::size_t K, Cost B, double p, std::int64_t sims,
                          std::uint64_t seed);

// --- degree heuristics -------------------------------------------------------

/// Distinct neighbors of v over all layers, sorted.
std::vector<NodeId> distinct_neighbors(const MultilayerNetwork& net, NodeId v);

SeedSet acd_solve(const MultilayerNetwork& net, std::size_t K, Cost B);
SeedSet degree_solve(const MultilayerNetwork& net, std::size_t K, Cost B);

// --- ComBim ------------------------------------------------------------------

/// Sum of 1/d_z over common neighbors z of i and j in `layer`.
double similarity(const MultilayerNetwork& net, std::size_t layer, NodeId i, NodeId j);

struct CommunityPartition {
  std::vector<std::vector<NodeId>> communities;  // ordered by smallest member
  std::vector<std::size_t> membership;           // node -> community index
  std::vector<std::vector<std::size_t>> links;   // layer-union edges between communities
};

/// Label propagation (in-place sweeps in node order) on the layer-union graph,
/// weighted by the sum over layers of (adjacency + similarity).
CommunityPartition detect_communities(const MultilayerNetwork& net, std::size_t max_rounds = 100);

/// Largest-remainder split of B proportional to `sizes`; sums to B.
std::vector<Cost> allocate_budget(const std::vector<std::size_t>& sizes, Cost B);

SeedSet combim_solve(const MultilayerNetwork& net, std::size_t K, Cost B);
SeedSet combim_solve(const MultilayerNetwork& net, const CommunityPartition& partition, std::size_t K, Cost B);

}  // namespace bcim
