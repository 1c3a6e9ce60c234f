#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bcim/graph.hpp"

namespace bcim {

enum class GeneratorModel { ER, WS, BA };

GeneratorModel parse_generator_model(std::string_view name);
std::string_view to_string(GeneratorModel model);

/// Synthetic multilayer network recipe. Defaults are the N=1000, three-layer
/// settings used for the synthetic benchmarks.
struct GeneratorSpec {
  GeneratorModel model = GeneratorModel::ER;
  std::size_t num_nodes = 1000;
  std::size_t num_layers = 3;
  double er_edge_prob = 0.004;
  std::size_t ws_neighbors = 4;
  double ws_rewire_prob = 0.3;
  std::size_t ba_edges_per_node = 2;
  std::uint64_t rng_seed = 1;

  void validate() const;
  /// Short identifier such as `ER-n1000-m3-s1`, used in sweep output.
  std::string name() const;
};

/// Builds `num_layers` independent layers; layer m draws from substream m of
/// rng_seed, so the result does not depend on generation order.
MultilayerNetwork generate(const GeneratorSpec& spec);

// Single-layer builders, exposed for tests.
std::vector<Edge> erdos_renyi_layer(std::size_t n, double p, std::uint64_t seed);
std::vector<Edge> watts_strogatz_layer(std::size_t n, std::size_t k, double p, std::uint64_t seed);
/// Starts from a 3-node path (2 edges); each new node attaches to m distinct
/// existing nodes chosen proportionally to max(degree, 1).
std::vector<Edge> barabasi_albert_layer(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace bcim
