#pragma once

// Cascade kernel shared by every simulation mode.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bcim/graph.hpp"

namespace bcim::detail {

inline constexpr std::int32_t kInactive = std::numeric_limits<std::int32_t>::max();

/// Per-thread scratch space. `step` is reset lazily through `touched`.
struct CascadeWorkspace {
  explicit CascadeWorkspace(std::size_t num_nodes) : step(num_nodes, kInactive) {}

  std::vector<std::int32_t> step;
  std::vector<NodeId> touched;
  std::vector<NodeId> frontier;
  std::vector<NodeId> next;

  void reset() {
    for (NodeId v : touched) step[v] = kInactive;
    touched.clear();
  }
};

struct CascadeCounts {
  std::size_t activated = 0;
  int steps = 0;
};

/// Runs one cascade. `attempt(source, incidence)` returns whether the
/// activation attempt succeeds; `on_step(t, newly_active)` observes each
/// frontier (t = 0 is the seed set). Leaves the activated nodes in ws.touched.
template <class Attempt, class OnStep>
CascadeCounts run_cascade(const MultilayerNetwork& net, std::span<const NodeId> seeds, CascadeWorkspace& ws,
                          Attempt&& attempt, OnStep&& on_step) {
  ws.reset();
  ws.frontier.clear();
  for (NodeId s : seeds) {
    if (ws.step[s] == kInactive) {
      ws.step[s] = 0;
      ws.touched.push_back(s);
      ws.frontier.push_back(s);
    }
  }
  on_step(0, std::span<const NodeId>(ws.frontier));

  CascadeCounts counts;
  std::int32_t t = 0;
  while (!ws.frontier.empty()) {
    ++t;
    ws.next.clear();
    bool attempted = false;
    for (NodeId u : ws.frontier) {
      for (const Incidence& inc : net.incidences(u)) {
        const std::int32_t s = ws.step[inc.target];
        if (s < t) continue;  // already active before this step
        attempted = true;
        if (attempt(u, inc) && s == kInactive) {
          ws.step[inc.target] = t;
          ws.touched.push_back(inc.target);
          ws.next.push_back(inc.target);
        }
      }
    }
    if (attempted) counts.steps = t;
    std::swap(ws.frontier, ws.next);
    if (!ws.frontier.empty()) on_step(t, std::span<const NodeId>(ws.frontier));
  }
  counts.activated = ws.touched.size();
  return counts;
}

}  // namespace bcim::detail

namespace bcim {

template <class Decide>
CascadeOutcome simulate_with(const MultilayerNetwork& net, std::span<const NodeId> seeds, Decide&& decide) {
  validate_seeds(net, seeds);
  detail::CascadeWorkspace ws(net.num_nodes());
  CascadeOutcome out;
  const auto counts = detail::run_cascade(
      net, seeds, ws,
      [&](NodeId source, const Incidence& inc) { return decide(source, inc.target, net.layer_of_edge(inc.edge)); },
      [&](std::int32_t, std::span<const NodeId> frontier) { out.frontier_sizes.push_back(frontier.size()); });
  out.activated = ws.touched;
  out.steps = counts.steps;
  return out;
}

}  // namespace bcim
