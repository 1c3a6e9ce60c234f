#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "bcim/baselines.hpp"

namespace bcim {

GreedyResult greedy_solve(const MultilayerNetwork& net, std::size_t K, Cost B, double p, std::int64_t sims,
                          std::uint64_t seed) {
  if (sims < 1) throw std::invalid_argument("greedy: sims must be >= 1");
  const LiveEdgeSample sample(net, p, sims, seed);
  const std::size_t n = net.num_nodes();
  const auto r_count = static_cast<std::size_t>(sims);
  // covered[r * n + c]: component c of realization r already reached
  std::vector<std::uint8_t> covered(r_count * n, 0);
  std::vector<std::uint8_t> chosen(n, 0);
  std::vector<std::uint64_t> gain(n);

  GreedyResult result;
  std::uint64_t reached = 0;
  while (result.seeds.size() < K) {
    const Cost left = B - result.cost;
    const auto nodes = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < nodes; ++i) {
      const auto v = static_cast<NodeId>(i);
      std::uint64_t g = 0;
      if (!chosen[v] && net.cost(v) <= left) {
        for (std::size_t r = 0; r < r_count; ++r) {
          const std::uint32_t c = sample.component(r, v);
          if (!covered[r * n + c]) g += sample.component_size(r, c);
        }
      }
      gain[v] = g;
    }
    std::optional<NodeId> best;
    for (NodeId v = 0; v < n; ++v) {
      if (chosen[v] || net.cost(v) > left) continue;
      if (!best || gain[v] > gain[*best]) best = v;
    }
    if (!best) break;
    chosen[*best] = 1;
    for (std::size_t r = 0; r < r_count; ++r) covered[r * n + sample.component(r, *best)] = 1;
    reached += gain[*best];
    result.seeds.push_back(*best);
    result.cost += net.cost(*best);
    result.round_spread.push_back(static_cast<double>(reached) / static_cast<double>(sims));
  }
  return result;
}

std::vector<NodeId> distinct_neighbors(const MultilayerNetwork& net, NodeId v) {
  auto out = neighbor_multiset(net, v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SeedSet acd_solve(const MultilayerNetwork& net, std::size_t K, Cost B) {
  const std::size_t n = net.num_nodes();
  std::vector<double> score(n);
  std::vector<int> adjacent_seeds(n, 0);
  std::vector<std::uint8_t> chosen(n, 0);
  for (NodeId v = 0; v < n; ++v) score[v] = static_cast<double>(distinct_neighbors(net, v).size());

  SeedSet seeds;
  Cost spent = 0;
  while (seeds.size() < K) {
    std::optional<NodeId> best;
    for (NodeId v = 0; v < n; ++v) {
      if (chosen[v] || spent + net.cost(v) > B) continue;
      if (!best || score[v] > score[*best]) best = v;
    }
    if (!best) break;
    chosen[*best] = 1;
    seeds.push_back(*best);
    spent += net.cost(*best);
    for (NodeId q : distinct_neighbors(net, *best)) {
      if (chosen[q]) continue;
      ++adjacent_seeds[q];
      score[q] -= std::exp(static_cast<double>(adjacent_seeds[q]));
    }
  }
  return seeds;
}

SeedSet degree_solve(const MultilayerNetwork& net, std::size_t K, Cost B) {
  std::vector<NodeId> order(net.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return net.total_degree(a) > net.total_degree(b); });
  SeedSet seeds;
  Cost spent = 0;
  for (NodeId v : order) {
    if (seeds.size() == K) break;
    if (spent + net.cost(v) > B) continue;
    seeds.push_back(v);
    spent += net.cost(v);
  }
  return seeds;
}

}  // namespace bcim
