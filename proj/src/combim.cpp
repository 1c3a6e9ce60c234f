#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "bcim/baselines.hpp"

namespace bcim {
namespace {

struct WeightedEdge {
  NodeId target;
  double weight;
};

double layer_similarity(const MultilayerNetwork& net, std::size_t layer, NodeId i, NodeId j) {
  const auto a = net.neighbors(layer, i);
  const auto b = net.neighbors(layer, j);
  double sim = 0.0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x < *y) {
      ++x;
    } else if (*y < *x) {
      ++y;
    } else {
      sim += 1.0 / static_cast<double>(net.degree(layer, *x));
      ++x;
      ++y;
    }
  }
  return sim;
}

// Layer-union adjacency with weight sum_m (A^m_ij + Sim^m_ij).
std::vector<std::vector<WeightedEdge>> weighted_union_graph(const MultilayerNetwork& net) {
  std::map<std::pair<NodeId, NodeId>, double> weight;
  for (std::size_t m = 0; m < net.num_layers(); ++m) {
    for (const Edge& e : net.edges(m)) weight[{e.u, e.v}] += 1.0;
  }
  std::vector<std::vector<WeightedEdge>> adj(net.num_nodes());
  for (auto& [pair, w] : weight) {
    for (std::size_t m = 0; m < net.num_layers(); ++m) w += layer_similarity(net, m, pair.first, pair.second);
    adj[pair.first].push_back({pair.second, w});
    adj[pair.second].push_back({pair.first, w});
  }
  return adj;
}

}  // namespace

double similarity(const MultilayerNetwork& net, std::size_t layer, NodeId i, NodeId j) {
  net.check_node(i);
  net.check_node(j);
  if (layer >= net.num_layers()) throw std::out_of_range("layer index out of range");
  return layer_similarity(net, layer, i, j);
}

CommunityPartition detect_communities(const MultilayerNetwork& net, std::size_t max_rounds) {
  const std::size_t n = net.num_nodes();
  const auto adj = weighted_union_graph(net);
  std::vector<NodeId> label(n);
  std::iota(label.begin(), label.end(), NodeId{0});
  std::map<NodeId, double> tally;
  // In-place sweeps in node order; synchronous rounds oscillate on bipartite
  // and near-bipartite structure.
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (NodeId v = 0; v < n; ++v) {
      if (adj[v].empty()) continue;
      tally.clear();
      for (const auto& e : adj[v]) tally[label[e.target]] += e.weight;
      // map order: the first maximum is the lowest label
      auto best = tally.begin();
      for (auto it = tally.begin(); it != tally.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      if (best->first != label[v]) {
        label[v] = best->first;
        changed = true;
      }
    }
    if (!changed) break;
  }

  CommunityPartition part;
  part.membership.assign(n, 0);
  std::map<NodeId, std::size_t> index;
  for (NodeId v = 0; v < n; ++v) {
    auto [it, fresh] = index.try_emplace(label[v], part.communities.size());
    if (fresh) part.communities.emplace_back();
    part.communities[it->second].push_back(v);
    part.membership[v] = it->second;
  }
  const std::size_t c = part.communities.size();
  part.links.assign(c, std::vector<std::size_t>(c, 0));
  for (NodeId v = 0; v < n; ++v) {
    for (const auto& e : adj[v]) {
      const std::size_t a = part.membership[v];
      const std::size_t b = part.membership[e.target];
      if (v < e.target && a != b) {
        ++part.links[a][b];
        ++part.links[b][a];
      }
    }
  }
  return part;
}

std::vector<Cost> allocate_budget(const std::vector<std::size_t>& sizes, Cost B) {
  if (B < 0) throw std::invalid_argument("budget must be >= 0");
  const auto total = static_cast<__int128>(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}));
  std::vector<Cost> share(sizes.size(), 0);
  if (total == 0) return share;
  std::vector<__int128> remainder(sizes.size());
  Cost assigned = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const __int128 scaled = static_cast<__int128>(B) * static_cast<__int128>(sizes[i]);
    share[i] = static_cast<Cost>(scaled / total);
    remainder[i] = scaled % total;
    assigned += share[i];
  }
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < B; ++i, ++assigned) ++share[order[i]];
  return share;
}

SeedSet combim_solve(const MultilayerNetwork& net, const CommunityPartition& partition, std::size_t K, Cost B) {
  const auto& comms = partition.communities;
  std::vector<std::size_t> sizes;
  for (const auto& c : comms) sizes.push_back(c.size());
  auto budget = allocate_budget(sizes, B);

  std::vector<std::size_t> visit(comms.size());
  std::iota(visit.begin(), visit.end(), std::size_t{0});
  std::stable_sort(visit.begin(), visit.end(), [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });
  std::vector<std::uint8_t> visited(comms.size(), 0);

  SeedSet seeds;
  for (std::size_t c : visit) {
    visited[c] = 1;
    auto members = comms[c];
    std::stable_sort(members.begin(), members.end(),
                     [&](NodeId a, NodeId b) { return net.total_degree(a) > net.total_degree(b); });
    Cost left = budget[c];
    for (NodeId v : members) {
      if (seeds.size() == K) break;
      if (net.cost(v) > left) continue;
      seeds.push_back(v);
      left -= net.cost(v);
    }
    if (seeds.size() == K) break;
    std::optional<std::size_t> heir;
    for (std::size_t d = 0; d < comms.size(); ++d) {
      if (visited[d]) continue;
      if (!heir) {
        heir = d;
        continue;
      }
      const auto ld = partition.links[c][d];
      const auto lh = partition.links[c][*heir];
      if (ld > lh || (ld == lh && sizes[d] > sizes[*heir])) heir = d;
    }
    if (heir) budget[*heir] += left;
  }
  return seeds;
}

SeedSet combim_solve(const MultilayerNetwork& net, std::size_t K, Cost B) {
  return combim_solve(net, detect_communities(net), K, B);
}

}  // namespace bcim
