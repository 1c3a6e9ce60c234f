#include "bcim/generators.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "bcim/rng.hpp"

namespace bcim {

GeneratorModel parse_generator_model(std::string_view name) {
  if (name == "ER" || name == "er") return GeneratorModel::ER;
  if (name == "WS" || name == "ws") return GeneratorModel::WS;
  if (name == "BA" || name == "ba") return GeneratorModel::BA;
  throw std::invalid_argument("unknown generator model '" + std::string(name) + "' (expected ER, WS or BA)");
}

std::string_view to_string(GeneratorModel model) {
  switch (model) {
    case GeneratorModel::ER: return "ER";
    case GeneratorModel::WS: return "WS";
    case GeneratorModel::BA: return "BA";
  }
  return "?";
}

void GeneratorSpec::validate() const {
  if (num_nodes < 1) throw std::invalid_argument("generator: num_nodes must be >= 1");
  if (num_layers < 1) throw std::invalid_argument("generator: num_layers must be >= 1");
  auto probability = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string("generator: ") + what + " must be in [0,1]");
  };
  switch (model) {
    case GeneratorModel::ER:
      probability(er_edge_prob, "er_edge_prob");
      break;
    case GeneratorModel::WS:
      probability(ws_rewire_prob, "ws_rewire_prob");
      if (ws_neighbors % 2 != 0 || ws_neighbors >= num_nodes) {
        throw std::invalid_argument("generator: ws_neighbors must be even and smaller than num_nodes");
      }
      break;
    case GeneratorModel::BA:
      if (num_nodes < 3) throw std::invalid_argument("generator: BA needs at least 3 nodes");
      if (ba_edges_per_node < 1) throw std::invalid_argument("generator: ba_edges_per_node must be >= 1");
      break;
  }
}

std::string GeneratorSpec::name() const {
  return std::string(to_string(model)) + "-n" + std::to_string(num_nodes) + "-m" + std::to_string(num_layers) + "-s" +
         std::to_string(rng_seed);
}

std::vector<Edge> erdos_renyi_layer(std::size_t n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const BernoulliThreshold coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return edges;
}

std::vector<Edge> watts_strogatz_layer(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::vector<NodeId>> adj(n);
  auto connected = [&adj](NodeId a, NodeId b) { return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end(); };
  auto unlink = [&adj](NodeId a, NodeId b) {
    adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
    adj[b].erase(std::find(adj[b].begin(), adj[b].end(), a));
  };
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= k / 2; ++j) {
      const auto v = static_cast<NodeId>((u + j) % n);
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  }
  // Rewire the clockwise endpoint of each ring edge, one neighbor distance at a time.
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      const auto v = static_cast<NodeId>((u + j) % n);
      if (uniform01(rng) >= p) continue;
      if (adj[u].size() >= n - 1) continue;
      NodeId w = 0;
      do {
        w = static_cast<NodeId>(uniform_below(rng, n));
      } while (w == u || connected(u, w));
      unlink(u, v);
      adj[u].push_back(w);
      adj[w].push_back(u);
    }
  }
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId w : adj[u]) {
      if (u < w) edges.push_back({u, w});
    }
  }
  return edges;
}

std::vector<Edge> barabasi_albert_layer(std::size_t n, std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> edges{{0, 1}, {1, 2}};
  // Every node appears once per unit of attachment weight, max(degree, 1).
  std::vector<NodeId> pool{0, 1, 1, 2};
  std::vector<NodeId> targets;
  for (NodeId t = 3; t < n; ++t) {
    const std::size_t want = std::min<std::size_t>(m, t);
    targets.clear();
    while (targets.size() < want) {
      const NodeId c = pool[uniform_below(rng, pool.size())];
      if (std::find(targets.begin(), targets.end(), c) == targets.end()) targets.push_back(c);
    }
    for (NodeId c : targets) {
      edges.push_back({c, t});
      pool.push_back(c);
      pool.push_back(t);
    }
    if (targets.empty()) pool.push_back(t);
  }
  return edges;
}

MultilayerNetwork generate(const GeneratorSpec& spec) {
  spec.validate();
  std::vector<std::vector<Edge>> layers(spec.num_layers);
  const auto count = static_cast<std::int64_t>(spec.num_layers);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t m = 0; m < count; ++m) {
    const std::uint64_t seed = derive_seed(spec.rng_seed, static_cast<std::uint64_t>(m));
    auto& out = layers[static_cast<std::size_t>(m)];
    switch (spec.model) {
      case GeneratorModel::ER:
        out = erdos_renyi_layer(spec.num_nodes, spec.er_edge_prob, seed);
        break;
      case GeneratorModel::WS:
        out = watts_strogatz_layer(spec.num_nodes, spec.ws_neighbors, spec.ws_rewire_prob, seed);
        break;
      case GeneratorModel::BA:
        out = barabasi_albert_layer(spec.num_nodes, spec.ba_edges_per_node, seed);
        break;
    }
  }
  return MultilayerNetwork(spec.num_nodes, std::move(layers));
}

}  // namespace bcim
