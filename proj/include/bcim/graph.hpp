#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcim {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Cost = std::int64_t;

/// Undirected edge within one layer, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// One entry of a node's cross-layer neighbor multiset.
struct Incidence {
  NodeId target = 0;
  EdgeId edge = 0;  // global id: layer edges are numbered contiguously, layer by layer
};

enum class CostRule { degree_sum, explicit_costs };

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Counts of raw edges dropped while normalizing a layer.
struct NormalizeReport {
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

/// Orients every edge as u < v, sorts, and drops self-loops and duplicates.
NormalizeReport normalize_edges(std::vector<Edge>& edges);

/// M-layer undirected graph over a shared node set of size N, with a cost per
/// node. Immutable once built; safe to share between threads.
class MultilayerNetwork {
 public:
  /// Costs follow the degree-sum rule. Edges are normalized; labels default to
  /// the decimal node index.
  MultilayerNetwork(std::size_t num_nodes, std::vector<std::vector<Edge>> layers,
                    std::vector<std::string> labels = {});

  /// Explicit per-node costs.
  MultilayerNetwork(std::size_t num_nodes, std::vector<std::vector<Edge>> layers,
                    std::vector<std::string> labels, std::vector<Cost> costs);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_layers() const noexcept { return layers_.size(); }

  std::span<const NodeId> neighbors(std::size_t layer, NodeId v) const;
  std::size_t degree(std::size_t layer, NodeId v) const;
  /// Degree summed over layers (equals the default cost).
  std::size_t total_degree(NodeId v) const;
  /// Neighbor multiset across all layers, layer-major, sorted within a layer.
  std::span<const Incidence> incidences(NodeId v) const {
    return {incidences_.data() + incidence_offsets_[v], incidences_.data() + incidence_offsets_[v + 1]};
  }

  std::span<const Edge> edges(std::size_t layer) const { return layers_.at(layer).edges; }
  std::size_t num_edges(std::size_t layer) const { return layers_.at(layer).edges.size(); }
  std::size_t total_edges() const noexcept { return edge_layer_offsets_.back(); }
  std::size_t layer_of_edge(EdgeId e) const;
  const Edge& edge(EdgeId e) const;

  Cost cost(NodeId v) const;
  std::span<const Cost> costs() const noexcept { return costs_; }
  Cost cost_of(std::span<const NodeId> nodes) const;

  const std::string& label(NodeId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  bool valid(NodeId v) const noexcept { return v < num_nodes_; }
  void check_node(NodeId v) const;

  /// Stable 64-bit fingerprint of topology and costs (FNV-1a).
  std::uint64_t fingerprint() const;

  friend bool operator==(const MultilayerNetwork& a, const MultilayerNetwork& b);

 private:
  struct Layer {
    std::vector<Edge> edges;
    std::vector<std::uint32_t> offsets;
    std::vector<NodeId> adjacency;
  };

  void build(std::vector<std::vector<Edge>> layers);

  std::size_t num_nodes_;
  std::vector<Layer> layers_;
  std::vector<std::size_t> edge_layer_offsets_;
  std::vector<std::uint32_t> incidence_offsets_;
  std::vector<Incidence> incidences_;
  std::vector<Cost> costs_;
  std::vector<std::string> labels_;
};

/// Neighbor ids of v over every layer, repeated once per layer the edge is in.
std::vector<NodeId> neighbor_multiset(const MultilayerNetwork& net, NodeId v);

/// Same as net.cost(v) but validates v.
Cost node_cost(const MultilayerNetwork& net, NodeId v);

// --- edge-list I/O -----------------------------------------------------------

struct LoadOptions {
  CostRule cost_rule = CostRule::degree_sum;
  std::filesystem::path costs_path;     // `label,cost` CSV, required for explicit_costs
  std::filesystem::path node_map_path;  // `label,node_id` CSV; fixes ids, keeps isolated nodes
  bool auto_node_map = true;            // use `<path>.nodes.csv` when it exists
};

struct LoadResult {
  MultilayerNetwork network;
  NormalizeReport dropped;
};

LoadResult parse_multiplex_edgelist(std::istream& in, const LoadOptions& options = {},
                                    std::istream* node_map = nullptr, std::istream* costs = nullptr);

LoadResult load_multiplex_edgelist(const std::filesystem::path& path, const LoadOptions& options = {});

void write_multiplex_edgelist(const MultilayerNetwork& net, std::ostream& out);
void write_node_map(const MultilayerNetwork& net, std::ostream& out);

/// Writes `path` and the `<path>.nodes.csv` sidecar.
void save_network(const MultilayerNetwork& net, const std::filesystem::path& path);

std::filesystem::path node_map_sidecar(const std::filesystem::path& path);

// --- topology statistics -----------------------------------------------------

struct LayerStats {
  std::size_t active_nodes = 0;  // degree > 0
  std::size_t edges = 0;
  double average_degree = 0.0;
  double average_shortest_path = 0.0;  // over the largest connected component
  std::size_t diameter = 0;
  double clustering = 0.0;  // mean local clustering over active nodes
  double density = 0.0;
};

struct TopologyStats {
  std::vector<LayerStats> layers;
};

TopologyStats compute_stats(const MultilayerNetwork& net);

}  // namespace bcim
