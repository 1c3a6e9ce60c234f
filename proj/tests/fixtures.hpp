#pragma once

#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "bcim/graph.hpp"

namespace bcim::testing {

/// Builds a network from `layer a b` text (labels are arbitrary tokens).
inline MultilayerNetwork parse_net(const std::string& text) {
  std::istringstream in(text);
  return parse_multiplex_edgelist(in).network;
}

/// Three-layer, eight-node toy (v1..v8 -> ids 0..7). v3 has layer degrees
/// 4, 4, 3 and neighbor multiset {v1, v2 x3, v4 x2, v5 x3, v6, v7}.
inline MultilayerNetwork worked_example_network() {
  auto id = [](int k) { return static_cast<NodeId>(k - 1); };
  std::vector<std::vector<Edge>> layers(3);
  layers[0] = {{id(3), id(1)}, {id(3), id(2)}, {id(3), id(4)}, {id(3), id(5)}, {id(4), id(2)}, {id(6), id(7)}};
  layers[1] = {{id(3), id(2)}, {id(3), id(4)}, {id(3), id(5)}, {id(3), id(6)}, {id(2), id(1)}, {id(6), id(8)}};
  layers[2] = {{id(3), id(2)}, {id(3), id(5)}, {id(3), id(7)}, {id(5), id(6)}, {id(2), id(8)}};
  std::vector<std::string> labels;
  for (int k = 1; k <= 8; ++k) labels.push_back("v" + std::to_string(k));
  return MultilayerNetwork(8, std::move(layers), std::move(labels));
}

/// Accepted (source, target, layer) attempts reproducing the worked cascade:
/// S1 = {v4, v5}, S2 = {v2, v6}, S3 = {v1, v7, v8}.
inline std::set<std::tuple<NodeId, NodeId, std::size_t>> worked_example_script() {
  auto id = [](int k) { return static_cast<NodeId>(k - 1); };
  return {
      {id(3), id(4), 0}, {id(3), id(5), 1},                     // t = 1
      {id(4), id(2), 0}, {id(5), id(6), 2},                     // t = 2
      {id(2), id(1), 1}, {id(6), id(7), 0}, {id(2), id(8), 2},  // t = 3
  };
}

/// Path a - b - c in a single layer.
inline MultilayerNetwork path3() { return MultilayerNetwork(3, {{{0, 1}, {1, 2}}}); }

/// Toy networks within the exact-enumeration limit.
inline std::vector<MultilayerNetwork> oracle_toys() {
  std::vector<MultilayerNetwork> nets;
  nets.push_back(path3());
  // duplicated edge across two layers plus a tail
  nets.push_back(MultilayerNetwork(4, {{{0, 1}, {1, 2}}, {{0, 1}, {2, 3}}}));
  // triangle + pendant in one layer, star in another
  nets.push_back(MultilayerNetwork(6, {{{0, 1}, {1, 2}, {0, 2}, {2, 3}}, {{4, 0}, {4, 1}, {4, 5}, {4, 3}}}));
  // two-layer ring/chord over 8 nodes (14 edges)
  nets.push_back(MultilayerNetwork(
      8, {{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 0}}, {{0, 4}, {1, 5}, {2, 6}, {3, 7}, {0, 2}, {5, 7}}}));
  // three layers, 10 nodes, 24 edges: the enumeration limit
  nets.push_back(MultilayerNetwork(10, {{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 9}},
                                        {{0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}, {0, 9}, {2, 5}},
                                        {{0, 3}, {3, 6}, {6, 9}, {1, 4}, {4, 7}, {2, 8}, {5, 8}, {1, 9}}}));
  // worked-example network (17 edges)
  nets.push_back(worked_example_network());
  return nets;
}

/// Two-layer, six-node toy for constrained selection. At p = 0.3 with B = 6 and
/// K = 2 the best feasible pair is {3, 4} (exact spread 4.3814, runner-up
/// 4.0741); the unconstrained best pair {1, 3} costs 7.
inline MultilayerNetwork budget_toy() {
  return MultilayerNetwork(6, {{{0, 1}, {0, 4}, {1, 2}, {1, 5}, {2, 4}, {2, 5}},
                               {{1, 2}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 5}}});
}

}  // namespace bcim::testing
