#include "bcim/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bcim {

NormalizeReport normalize_edges(std::vector<Edge>& edges) {
  NormalizeReport report;
  auto kept = std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return e.u == e.v; });
  report.self_loops = static_cast<std::size_t>(edges.end() - kept);
  edges.erase(kept, edges.end());
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  report.duplicates = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  return report;
}

MultilayerNetwork::MultilayerNetwork(std::size_t num_nodes, std::vector<std::vector<Edge>> layers,
                                     std::vector<std::string> labels)
    : num_nodes_(num_nodes), labels_(std::move(labels)) {
  build(std::move(layers));
  costs_.resize(num_nodes_);
  for (NodeId v = 0; v < num_nodes_; ++v) costs_[v] = static_cast<Cost>(total_degree(v));
}

MultilayerNetwork::MultilayerNetwork(std::size_t num_nodes, std::vector<std::vector<Edge>> layers,
                                     std::vector<std::string> labels, std::vector<Cost> costs)
    : num_nodes_(num_nodes), costs_(std::move(costs)), labels_(std::move(labels)) {
  build(std::move(layers));
  if (costs_.size() != num_nodes_) throw std::invalid_argument("cost vector size does not match node count");
  for (Cost c : costs_) {
    if (c < 0) throw std::invalid_argument("node costs must be non-negative");
  }
}

void MultilayerNetwork::build(std::vector<std::vector<Edge>> layers) {
  if (num_nodes_ == 0) throw std::invalid_argument("network needs at least one node");
  if (layers.empty()) throw std::invalid_argument("network needs at least one layer");
  if (num_nodes_ >= std::numeric_limits<NodeId>::max()) throw std::invalid_argument("too many nodes");
  if (labels_.empty()) {
    labels_.reserve(num_nodes_);
    for (std::size_t v = 0; v < num_nodes_; ++v) labels_.push_back(std::to_string(v));
  } else if (labels_.size() != num_nodes_) {
    throw std::invalid_argument("label vector size does not match node count");
  }

  layers_.resize(layers.size());
  edge_layer_offsets_.assign(1, 0);
  for (std::size_t m = 0; m < layers.size(); ++m) {
    auto& edges = layers[m];
    normalize_edges(edges);
    for (const auto& e : edges) {
      if (e.v >= num_nodes_) throw std::invalid_argument("edge endpoint out of range");
    }
    Layer& layer = layers_[m];
    layer.offsets.assign(num_nodes_ + 1, 0);
    for (const auto& e : edges) {
      ++layer.offsets[e.u + 1];
      ++layer.offsets[e.v + 1];
    }
    std::partial_sum(layer.offsets.begin(), layer.offsets.end(), layer.offsets.begin());
    layer.adjacency.resize(2 * edges.size());
    std::vector<std::uint32_t> cursor(layer.offsets.begin(), layer.offsets.end() - 1);
    for (const auto& e : edges) {
      layer.adjacency[cursor[e.u]++] = e.v;
      layer.adjacency[cursor[e.v]++] = e.u;
    }
    for (NodeId v = 0; v < num_nodes_; ++v) {
      std::sort(layer.adjacency.begin() + layer.offsets[v], layer.adjacency.begin() + layer.offsets[v + 1]);
    }
    layer.edges = std::move(edges);
    edge_layer_offsets_.push_back(edge_layer_offsets_.back() + layer.edges.size());
  }
  if (edge_layer_offsets_.back() >= std::numeric_limits<EdgeId>::max()) throw std::invalid_argument("too many edges");

  // Cross-layer incidence lists with global edge ids.
  incidence_offsets_.assign(num_nodes_ + 1, 0);
  for (NodeId v = 0; v < num_nodes_; ++v) {
    std::size_t total = 0;
    for (const auto& layer : layers_) total += layer.offsets[v + 1] - layer.offsets[v];
    incidence_offsets_[v + 1] = incidence_offsets_[v] + static_cast<std::uint32_t>(total);
  }
  incidences_.resize(incidence_offsets_.back());
  std::vector<std::uint32_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
  for (std::size_t m = 0; m < layers_.size(); ++m) {
    const auto& layer = layers_[m];
    const auto base = static_cast<EdgeId>(edge_layer_offsets_[m]);
    std::vector<std::vector<Incidence>> per_node(num_nodes_);
    for (std::size_t i = 0; i < layer.edges.size(); ++i) {
      const Edge& e = layer.edges[i];
      const EdgeId id = base + static_cast<EdgeId>(i);
      per_node[e.u].push_back({e.v, id});
      per_node[e.v].push_back({e.u, id});
    }
    for (NodeId v = 0; v < num_nodes_; ++v) {
      auto& list = per_node[v];
      std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.target < b.target; });
      for (const auto& inc : list) incidences_[cursor[v]++] = inc;
    }
  }
}

std::span<const NodeId> MultilayerNetwork::neighbors(std::size_t layer, NodeId v) const {
  check_node(v);
  const Layer& l = layers_.at(layer);
  return {l.adjacency.data() + l.offsets[v], l.adjacency.data() + l.offsets[v + 1]};
}

std::size_t MultilayerNetwork::degree(std::size_t layer, NodeId v) const {
  check_node(v);
  const Layer& l = layers_.at(layer);
  return l.offsets[v + 1] - l.offsets[v];
}

std::size_t MultilayerNetwork::total_degree(NodeId v) const {
  check_node(v);
  return incidence_offsets_[v + 1] - incidence_offsets_[v];
}

std::size_t MultilayerNetwork::layer_of_edge(EdgeId e) const {
  if (e >= total_edges()) throw std::out_of_range("edge id out of range");
  auto it = std::upper_bound(edge_layer_offsets_.begin(), edge_layer_offsets_.end(), static_cast<std::size_t>(e));
  return static_cast<std::size_t>(it - edge_layer_offsets_.begin()) - 1;
}

const Edge& MultilayerNetwork::edge(EdgeId e) const {
  const std::size_t m = layer_of_edge(e);
  return layers_[m].edges[e - edge_layer_offsets_[m]];
}

Cost MultilayerNetwork::cost(NodeId v) const {
  check_node(v);
  return costs_[v];
}

Cost MultilayerNetwork::cost_of(std::span<const NodeId> nodes) const {
  Cost total = 0;
  for (NodeId v : nodes) total += cost(v);
  return total;
}

void MultilayerNetwork::check_node(NodeId v) const {
  if (v >= num_nodes_) throw std::out_of_range("node id " + std::to_string(v) + " out of range");
}

std::uint64_t MultilayerNetwork::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  };
  feed(num_nodes_);
  feed(layers_.size());
  for (const auto& layer : layers_) {
    feed(layer.edges.size());
    for (const auto& e : layer.edges) {
      feed(e.u);
      feed(e.v);
    }
  }
  for (Cost c : costs_) feed(static_cast<std::uint64_t>(c));
  return h;
}

bool operator==(const MultilayerNetwork& a, const MultilayerNetwork& b) {
  if (a.num_nodes_ != b.num_nodes_ || a.layers_.size() != b.layers_.size()) return false;
  for (std::size_t m = 0; m < a.layers_.size(); ++m) {
    if (a.layers_[m].edges != b.layers_[m].edges) return false;
  }
  return a.costs_ == b.costs_ && a.labels_ == b.labels_;
}

std::vector<NodeId> neighbor_multiset(const MultilayerNetwork& net, NodeId v) {
  net.check_node(v);
  std::vector<NodeId> out;
  for (const auto& inc : net.incidences(v)) out.push_back(inc.target);
  return out;
}

Cost node_cost(const MultilayerNetwork& net, NodeId v) { return net.cost(v); }

}  // namespace bcim
