#include <algorithm>
#include <cstdint>
#include <queue>

#include "bcim/graph.hpp"

namespace bcim {
namespace {

std::vector<NodeId> largest_component(const MultilayerNetwork& net, std::size_t layer) {
  const std::size_t n = net.num_nodes();
  std::vector<int> comp(n, -1);
  std::vector<NodeId> best;
  std::vector<NodeId> members;
  int next = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] >= 0 || net.degree(layer, s) == 0) continue;
    members.clear();
    members.push_back(s);
    comp[s] = next;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (NodeId w : net.neighbors(layer, members[head])) {
        if (comp[w] < 0) {
          comp[w] = next;
          members.push_back(w);
        }
      }
    }
    if (members.size() > best.size()) best = members;
    ++next;
  }
  return best;
}

double local_clustering(const MultilayerNetwork& net, std::size_t layer, NodeId v) {
  const auto nbrs = net.neighbors(layer, v);
  const std::size_t d = nbrs.size();
  if (d < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto other = net.neighbors(layer, nbrs[i]);
    // both lists are sorted
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::binary_search(other.begin(), other.end(), nbrs[j])) ++links;
    }
  }
  return 2.0 * static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1));
}

}  // namespace

TopologyStats compute_stats(const MultilayerNetwork& net) {
  TopologyStats stats;
  const std::size_t n = net.num_nodes();
  for (std::size_t m = 0; m < net.num_layers(); ++m) {
    LayerStats s;
    s.edges = net.num_edges(m);
    double clustering_sum = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (net.degree(m, v) == 0) continue;
      ++s.active_nodes;
      clustering_sum += local_clustering(net, m, v);
    }
    if (s.active_nodes > 0) {
      s.average_degree = 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.active_nodes);
      s.clustering = clustering_sum / static_cast<double>(s.active_nodes);
    }
    if (s.active_nodes > 1) {
      const double na = static_cast<double>(s.active_nodes);
      s.density = 2.0 * static_cast<double>(s.edges) / (na * (na - 1.0));
    }

    const std::vector<NodeId> lcc = largest_component(net, m);
    std::uint64_t distance_sum = 0;
    std::uint64_t pairs = 0;
    std::size_t diameter = 0;
    const auto sources = static_cast<std::int64_t>(lcc.size());
#pragma omp parallel
    {
      std::vector<std::int32_t> dist(n, -1);
      std::vector<NodeId> queue;
      queue.reserve(lcc.size());
#pragma omp for schedule(dynamic, 16) reduction(+ : distance_sum, pairs) reduction(max : diameter)
      for (std::int64_t i = 0; i < sources; ++i) {
        queue.clear();
        queue.push_back(lcc[static_cast<std::size_t>(i)]);
        dist[queue.front()] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
          const NodeId u = queue[head];
          for (NodeId w : net.neighbors(m, u)) {
            if (dist[w] < 0) {
              dist[w] = dist[u] + 1;
              queue.push_back(w);
            }
          }
        }
        for (NodeId v : queue) {
          distance_sum += static_cast<std::uint64_t>(dist[v]);
          diameter = std::max(diameter, static_cast<std::size_t>(dist[v]));
          dist[v] = -1;
        }
        pairs += queue.size() - 1;
      }
    }
    if (pairs > 0) s.average_shortest_path = static_cast<double>(distance_sum) / static_cast<double>(pairs);
    s.diameter = diameter;
    stats.layers.push_back(s);
  }
  return stats;
}

}  // namespace bcim
