#include <doctest.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "bcim/generators.hpp"
#include "bcim/mic.hpp"
#include "fixtures.hpp"

using namespace bcim;
using bcim::testing::path3;
using bcim::testing::worked_example_network;

namespace {

std::set<NodeId> as_set(const std::vector<NodeId>& v) { return {v.begin(), v.end()}; }

MultilayerNetwork small_er(std::uint64_t seed, std::size_t n = 120, double p = 0.03) {
  GeneratorSpec spec;
  spec.num_nodes = n;
  spec.er_edge_prob = p;
  spec.rng_seed = seed;
  return generate(spec);
}

}  // namespace

TEST_CASE("p = 0 activates only the seeds") {
  const auto net = worked_example_network();
  SplitMix64 rng(1);
  const NodeId seeds[] = {2, 6};
  const auto out = simulate_once(net, seeds, 0.0, rng);
  CHECK(as_set(out.activated) == std::set<NodeId>{2, 6});
  CHECK(out.steps == 1);  // one exhausted frontier

  const MultilayerNetwork lonely(3, {{{0, 1}}});
  const NodeId isolated[] = {2};
  CHECK(simulate_once(lonely, isolated, 0.5, rng).steps == 0);

  CHECK(estimate_influence(net, seeds, 0.0, 50, 3).mean_spread == 2.0);
}

TEST_CASE("p = 1 activates the union-graph reachable set") {
  const MultilayerNetwork net(7, {{{0, 1}, {2, 3}}, {{1, 2}, {4, 5}}});
  SplitMix64 rng(5);
  const NodeId seeds[] = {0};
  const auto out = simulate_once(net, seeds, 1.0, rng);
  CHECK(as_set(out.activated) == std::set<NodeId>{0, 1, 2, 3});
  CHECK(union_reachable_count(net, seeds) == 4);
  CHECK(estimate_influence(net, seeds, 1.0, 20, 1).mean_spread == 4.0);
}

TEST_CASE("scripted attempts reproduce the worked cascade frontiers") {
  const auto net = worked_example_network();
  const auto script = bcim::testing::worked_example_script();
  std::vector<std::vector<NodeId>> frontiers;
  const NodeId seeds[] = {2};
  const auto out = simulate_with(net, seeds, [&](NodeId s, NodeId t, std::size_t layer) {
    return script.count({s, t, layer}) != 0;
  });
  REQUIRE(out.frontier_sizes == std::vector<std::size_t>{1, 2, 2, 3});
  std::vector<NodeId> order = out.activated;
  const auto v = [](int k) { return static_cast<NodeId>(k - 1); };
  CHECK(order[0] == v(3));
  CHECK(as_set({order[1], order[2]}) == std::set<NodeId>{v(4), v(5)});
  CHECK(as_set({order[3], order[4]}) == std::set<NodeId>{v(2), v(6)});
  CHECK(as_set({order[5], order[6], order[7]}) == std::set<NodeId>{v(1), v(7), v(8)});
  CHECK(out.steps == 3);
}

TEST_CASE("each (source, target, layer) attempt happens at most once") {
  const auto net = small_er(3, 80, 0.06);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SplitMix64 rng(seed);
    const BernoulliThreshold coin(0.4);
    std::map<std::tuple<NodeId, NodeId, std::size_t>, int> attempts;
    const NodeId seeds[] = {static_cast<NodeId>(seed), static_cast<NodeId>(seed + 30)};
    const auto out = simulate_with(net, seeds, [&](NodeId s, NodeId t, std::size_t layer) {
      ++attempts[{s, t, layer}];
      return coin(rng);
    });
    for (const auto& [key, count] : attempts) CHECK(count == 1);
    CHECK(out.activated.size() >= 2);
    CHECK(out.activated.size() <= net.num_nodes());
  }
}

TEST_CASE("path a-b-c from b averages two active nodes") {
  const auto net = path3();
  const NodeId seeds[] = {1};
  CHECK(exact_influence(net, seeds, 0.5) == doctest::Approx(2.0));
  const auto est = estimate_influence(net, seeds, 0.5, 20000, 17);
  CHECK(std::abs(est.mean_spread - 2.0) <= 3.0 * est.std_error);
  CHECK(est.num_simulations == 20000);
}

TEST_CASE("exact oracle on hand-derived cases") {
  const MultilayerNetwork dup(2, {{{0, 1}}, {{0, 1}}});
  const NodeId a[] = {0};
  CHECK(exact_influence(dup, a, 0.5) == doctest::Approx(1.75));
  for (const auto& net : bcim::testing::oracle_toys()) {
    const NodeId s[] = {0};
    CHECK(exact_influence(net, s, 1.0) == doctest::Approx(static_cast<double>(union_reachable_count(net, s))));
    CHECK(exact_influence(net, s, 0.0) == doctest::Approx(1.0));
  }
  const auto big = small_er(1, 60, 0.2);
  CHECK_THROWS_AS(exact_influence(big, a, 0.5), std::invalid_argument);
}

TEST_CASE("Monte Carlo agrees with exact enumeration on small toys") {
  const auto toys = bcim::testing::oracle_toys();
  for (std::size_t i = 0; i < 3; ++i) {
    for (double p : {0.2, 0.6}) {
      const NodeId seeds[] = {0};
      const double exact = exact_influence(toys[i], seeds, p);
      const auto est = estimate_influence(toys[i], seeds, p, 20000, 100 + i);
      CHECK(std::abs(est.mean_spread - exact) <= 4.0 * est.std_error);
    }
  }
}

TEST_CASE("attempt and live-edge modes agree in distribution") {
  const auto net = small_er(8, 150, 0.01);
  const NodeId seeds[] = {0, 1, 2};
  for (double p : {0.1, 0.3}) {
    const auto a = estimate_influence(net, seeds, p, 20000, 1, CascadeMode::attempt);
    const auto b = estimate_influence(net, seeds, p, 20000, 2, CascadeMode::live_edge);
    const double se = std::hypot(a.std_error, b.std_error);
    CHECK(std::abs(a.mean_spread - b.mean_spread) <= 4.0 * se);
  }
}

TEST_CASE("live-edge cascades are monotone in the seed set") {
  const auto net = small_er(21, 150, 0.012);
  SplitMix64 pick(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto realization = LiveEdgeRealization::draw(net, 0.3, static_cast<std::uint64_t>(trial));
    std::vector<NodeId> small_set;
    while (small_set.size() < 3) {
      const auto v = static_cast<NodeId>(uniform_below(pick, net.num_nodes()));
      if (std::find(small_set.begin(), small_set.end(), v) == small_set.end()) small_set.push_back(v);
    }
    std::vector<NodeId> large_set = small_set;
    while (large_set.size() < 8) {
      const auto v = static_cast<NodeId>(uniform_below(pick, net.num_nodes()));
      if (std::find(large_set.begin(), large_set.end(), v) == large_set.end()) large_set.push_back(v);
    }
    const auto small_out = as_set(simulate_live_edge(net, small_set, realization).activated);
    const auto large_out = as_set(simulate_live_edge(net, large_set, realization).activated);
    CHECK(std::includes(large_out.begin(), large_out.end(), small_out.begin(), small_out.end()));
  }
}

TEST_CASE("materialized and lazy live-edge realizations coincide") {
  const auto net = small_er(4, 100, 0.03);
  const NodeId seeds[] = {5, 9};
  const BernoulliThreshold coin(0.25);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto realization = LiveEdgeRealization::draw(net, 0.25, s);
    const auto direct = simulate_live_edge(net, seeds, realization);
    const auto lazy = simulate_with(net, seeds, [&](NodeId a, NodeId b, std::size_t layer) {
      // find the edge id through the incidence list
      for (const auto& inc : net.incidences(a)) {
        if (inc.target == b && net.layer_of_edge(inc.edge) == layer) return live_edge_coin(s, inc.edge, coin);
      }
      return false;
    });
    CHECK(as_set(direct.activated) == as_set(lazy.activated));
  }
}

TEST_CASE("estimates are identical across thread counts and match the serial reference") {
  const auto net = small_er(2, 200, 0.02);
  const NodeId seeds[] = {3, 50, 100};
  const int saved = omp_get_max_threads();
  for (auto mode : {CascadeMode::attempt, CascadeMode::live_edge}) {
    const auto ref = estimate_influence_serial(net, seeds, 0.2, 500, 99, mode);
    for (int threads : {1, 2, 4}) {
      omp_set_num_threads(threads);
      const auto est = estimate_influence(net, seeds, 0.2, 500, 99, mode);
      CHECK(est.mean_spread == ref.mean_spread);
      CHECK(est.std_error == ref.std_error);
    }
  }
  omp_set_num_threads(saved);
}

TEST_CASE("spread estimates respect |S| <= sigma <= N and reject bad input") {
  const auto net = small_er(6);
  const NodeId seeds[] = {1, 2, 3, 4};
  for (double p : {0.0, 0.05, 0.5, 1.0}) {
    const auto est = estimate_influence(net, seeds, p, 100, 1);
    CHECK(est.mean_spread >= 4.0);
    CHECK(est.mean_spread <= static_cast<double>(net.num_nodes()));
    CHECK(est.std_error >= 0.0);
  }
  CHECK_THROWS_AS(estimate_influence(net, std::span<const NodeId>{}, 0.1, 10, 1), std::invalid_argument);
  const NodeId dup[] = {1, 1};
  CHECK_THROWS_AS(estimate_influence(net, dup, 0.1, 10, 1), std::invalid_argument);
  const NodeId bad[] = {static_cast<NodeId>(net.num_nodes())};
  CHECK_THROWS_AS(estimate_influence(net, bad, 0.1, 10, 1), std::out_of_range);
  CHECK_THROWS_AS(estimate_influence(net, seeds, 1.5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_influence(net, seeds, 0.1, 0, 1), std::invalid_argument);
}

TEST_CASE("same seed gives the same cascade") {
  const auto net = small_er(7);
  const NodeId seeds[] = {0};
  SplitMix64 a(5);
  SplitMix64 b(5);
  for (int i = 0; i < 10; ++i) CHECK(simulate_once(net, seeds, 0.3, a).activated == simulate_once(net, seeds, 0.3, b).activated);
}

TEST_CASE("activation profile sums to the mean spread") {
  const auto net = small_er(9);
  const NodeId seeds[] = {0, 10};
  const auto profile = activation_profile(net, seeds, 0.2, 400, 5);
  REQUIRE(!profile.empty());
  CHECK(profile[0] == 2.0);
  double total = 0.0;
  for (double x : profile) total += x;
  CHECK(total == doctest::Approx(estimate_influence(net, seeds, 0.2, 400, 5).mean_spread));
}

TEST_CASE("WS top-degree seeds saturate the network at p = 0.5") {
  GeneratorSpec spec;
  spec.model = GeneratorModel::WS;
  const auto net = generate(spec);
  std::vector<NodeId> order(net.num_nodes());
  for (NodeId v = 0; v < order.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return net.cost(a) > net.cost(b); });
  order.resize(20);
  CHECK(estimate_influence(net, order, 0.5, 200, 1).mean_spread >= 990.0);
}

TEST_CASE("influence-cost ratio") {
  const MultilayerNetwork net(4, {{{0, 1}, {1, 2}}});
  CHECK_FALSE(influence_cost_ratio(net, 3, 0.3, 100, 1).has_value());
  const auto ratio = influence_cost_ratio(net, 1, 0.3, 1000, 1);
  REQUIRE(ratio.has_value());
  const NodeId seeds[] = {1};
  const double sigma = estimate_influence_serial(net, seeds, 0.3, 1000, derive_seed(1, 1)).mean_spread;
  CHECK(*ratio == doctest::Approx(sigma / 2.0));

  const auto table = compute_icr_table(net, 0.3, 1000, 1);
  CHECK(table.ratio[1] == doctest::Approx(*ratio));
  CHECK_FALSE(table.rankable(3));
  CHECK(table.ranking.size() == 3);
  const auto serial = compute_icr_table_serial(net, 0.3, 1000, 1);
  CHECK(serial.spread == table.spread);
  CHECK(serial.ranking == table.ranking);
}

TEST_CASE("ICR cache persists tables to its directory") {
  const auto dir = std::filesystem::temp_directory_path() / "bcim-icr-cache-test";
  std::filesystem::remove_all(dir);
  const auto net = small_er(12, 60, 0.05);
  IcrCache first(dir);
  const auto table = first.get(net, 0.2, 50, 7);
  CHECK(first.get(net, 0.2, 50, 7) == table);  // memoized
  CHECK(std::filesystem::exists(first.sidecar_path(net, 0.2, 50, 7)));
  IcrCache second(dir);
  const auto reloaded = second.get(net, 0.2, 50, 7);
  CHECK(reloaded->spread == table->spread);
  CHECK(reloaded->ranking == table->ranking);
  std::filesystem::remove_all(dir);
}

TEST_CASE("live-edge sample scores seed sets exactly like the live-edge estimator") {
  const auto net = small_er(31, 200, 0.015);
  const LiveEdgeSample sample(net, 0.25, 300, 44);
  const std::vector<std::vector<NodeId>> sets{{0}, {1, 2, 3}, {10, 20, 30, 40, 50, 60}, {199, 0}};
  for (const auto& s : sets) {
    const auto direct = estimate_influence_serial(net, s, 0.25, 300, 44, CascadeMode::live_edge);
    const auto fast = sample.estimate(s);
    CHECK(fast.mean_spread == direct.mean_spread);
    CHECK(fast.std_error == direct.std_error);
    CHECK(sample.mean_spread(s) == direct.mean_spread);
  }
  const auto singles = sample.singleton_spreads();
  for (NodeId v : {0u, 7u, 150u}) {
    const NodeId s[] = {v};
    CHECK(singles[v] == sample.mean_spread(s));
  }
  CHECK(sample.mean_spread(std::span<const NodeId>{}) == 0.0);
  const NodeId dup[] = {4, 4};
  CHECK_THROWS_AS(sample.estimate(dup), std::invalid_argument);
}

TEST_CASE("live-edge sample components partition the nodes") {
  const auto net = worked_example_network();
  const LiveEdgeSample sample(net, 1.0, 3, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sample.num_components(i) == 1);
    CHECK(sample.component_size(i, 0) == 8);
  }
  const LiveEdgeSample none(net, 0.0, 2, 1);
  CHECK(none.num_components(1) == 8);
}
