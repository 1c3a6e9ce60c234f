#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcim/graph.hpp"
#include "bcim/rng.hpp"

namespace bcim {

/// Seed nodes in selection order; duplicates are rejected wherever a seed set
/// is consumed.
using SeedSet = std::vector<NodeId>;

struct CascadeOutcome {
  std::vector<NodeId> activated;            // seeds first, then in activation order
  std::vector<std::size_t> frontier_sizes;  // |S_0|, |S_1|, ... (newly active per step)
  int steps = 0;                            // steps in which at least one attempt was made
};

struct SpreadEstimate {
  double mean_spread = 0.0;
  double std_error = 0.0;
  std::int64_t num_simulations = 0;
};

/// attempt: one Bernoulli draw per activation attempt, in cascade order.
/// live_edge: one coin per (layer, edge), hashed from the simulation seed, so
/// different seed sets see the same realization (common random numbers).
enum class CascadeMode { attempt, live_edge };

/// Throws if `seeds` is empty, holds an invalid id, or repeats a node.
void validate_seeds(const MultilayerNetwork& net, std::span<const NodeId> seeds);

/// Cascade driven by an arbitrary decision rule
/// `bool decide(NodeId source, NodeId target, std::size_t layer)`.
/// All attempts at step t see the activation state at the end of step t-1.
template <class Decide>
CascadeOutcome simulate_with(const MultilayerNetwork& net, std::span<const NodeId> seeds, Decide&& decide);

CascadeOutcome simulate_once(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p, SplitMix64& rng);

/// Coin of edge `edge` in the live-edge realization keyed by `sim_seed`.
inline bool live_edge_coin(std::uint64_t sim_seed, EdgeId edge, const BernoulliThreshold& coin) {
  return coin.accept(SplitMix64::mix(sim_seed + (static_cast<std::uint64_t>(edge) + 1) * SplitMix64::kGamma));
}

/// Materialized live-edge realization; identical to the lazy coins used by
/// CascadeMode::live_edge for the same seed.
class LiveEdgeRealization {
 public:
  static LiveEdgeRealization draw(const MultilayerNetwork& net, double p, std::uint64_t sim_seed);
  bool live(EdgeId e) const { return live_[e] != 0; }
  std::size_t live_count() const;

 private:
  std::vector<std::uint8_t> live_;
};

CascadeOutcome simulate_live_edge(const MultilayerNetwork& net, std::span<const NodeId> seeds,
                                  const LiveEdgeRealization& realization);

/// Monte Carlo spread estimate. Simulation i uses substream i of `seed`, so the
/// result does not depend on the number of OpenMP threads.
SpreadEstimate estimate_influence(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p,
                                  std::int64_t num_sims, std::uint64_t seed,
                                  CascadeMode mode = CascadeMode::attempt);

/// Single-threaded reference for estimate_influence.
SpreadEstimate estimate_influence_serial(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p,
                                         std::int64_t num_sims, std::uint64_t seed,
                                         CascadeMode mode = CascadeMode::attempt);

/// Mean number of newly activated nodes per step (index 0 = seeds).
std::vector<double> activation_profile(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p,
                                       std::int64_t num_sims, std::uint64_t seed);

/// Connected components of `num_sims` live-edge realizations, realization i
/// keyed by substream i of `seed` exactly as in estimate_influence with
/// CascadeMode::live_edge. A cascade reaches the union of its seeds'
/// components, so any seed set is scored without re-running it.
class LiveEdgeSample {
 public:
  LiveEdgeSample(const MultilayerNetwork& net, double p, std::int64_t num_sims, std::uint64_t seed);

  std::int64_t num_simulations() const { return sims_; }
  std::size_t num_nodes() const { return n_; }

  /// Checked; equal to estimate_influence(net, seeds, p, num_sims, seed, CascadeMode::live_edge).
  SpreadEstimate estimate(std::span<const NodeId> seeds) const;
  /// Unchecked mean for distinct, in-range seeds. Empty set gives 0.
  double mean_spread(std::span<const NodeId> seeds) const;
  /// sigma({v}) for every node.
  std::vector<double> singleton_spreads() const;

  std::uint32_t component(std::size_t sim, NodeId v) const { return comp_[sim * n_ + v]; }
  std::uint32_t component_size(std::size_t sim, std::uint32_t c) const { return sizes_[sim][c]; }
  std::size_t num_components(std::size_t sim) const { return sizes_[sim].size(); }

 private:
  template <class F>
  void for_each_spread(std::span<const NodeId> seeds, F&& f) const;

  std::size_t n_ = 0;
  std::int64_t sims_ = 0;
  std::vector<std::uint32_t> comp_;
  std::vector<std::vector<std::uint32_t>> sizes_;
};

inline constexpr std::size_t kExactEdgeLimit = 24;

/// Exact expected spread by enumerating every live-edge realization. Limited
/// to kExactEdgeLimit edges in total across layers and 64 nodes.
double exact_influence(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p);

/// Number of nodes reachable from `seeds` in the union of all layers.
std::size_t union_reachable_count(const MultilayerNetwork& net, std::span<const NodeId> seeds);

// --- influence-cost ratio ------------------------------------------------------

/// sigma({v}) / cost(v); nullopt for zero-cost nodes.
std::optional<double> influence_cost_ratio(const MultilayerNetwork& net, NodeId v, double p, std::int64_t num_sims,
                                           std::uint64_t seed);

struct IcrTable {
  std::vector<double> spread;  // sigma({v}) per node
  std::vector<double> ratio;   // spread / cost, NaN where cost == 0
  std::vector<NodeId> ranking; // positive-cost nodes by ratio, descending; ties to lower id

  bool rankable(NodeId v) const { return ratio[v] == ratio[v]; }
  static IcrTable from_spreads(const MultilayerNetwork& net, std::vector<double> spread);
};

/// Node v is estimated on substream v of `seed`.
IcrTable compute_icr_table(const MultilayerNetwork& net, double p, std::int64_t num_sims, std::uint64_t seed);
IcrTable compute_icr_table_serial(const MultilayerNetwork& net, double p, std::int64_t num_sims, std::uint64_t seed);

/// Process-wide memo of ICR tables keyed by (network fingerprint, p, sims,
/// seed), optionally mirrored to CSV files in a cache directory
/// (BCIM_CACHE_DIR by default).
class IcrCache {
 public:
  explicit IcrCache(std::filesystem::path directory = {});

  std::shared_ptr<const IcrTable> get(const MultilayerNetwork& net, double p, std::int64_t num_sims,
                                      std::uint64_t seed);
  std::filesystem::path sidecar_path(const MultilayerNetwork& net, double p, std::int64_t num_sims,
                                     std::uint64_t seed) const;
  const std::filesystem::path& directory() const { return directory_; }

  static IcrCache& global();

 private:
  std::filesystem::path directory_;
  std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const IcrTable>> tables_;
};

}  // namespace bcim

#include "bcim/detail/cascade.hpp"
