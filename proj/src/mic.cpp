#include "bcim/mic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bcim {
namespace {

struct SpreadSums {
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
};

SpreadEstimate finish(const SpreadSums& s, std::int64_t n) {
  SpreadEstimate est;
  est.num_simulations = n;
  const auto count = static_cast<unsigned __int128>(n);
  est.mean_spread = static_cast<double>(s.sum) / static_cast<double>(n);
  if (n > 1) {
    // n * sum_sq - sum^2 is exact in 128 bits
    const unsigned __int128 scaled = count * s.sum_sq - static_cast<unsigned __int128>(s.sum) * s.sum;
    const double variance = static_cast<double>(scaled) / (static_cast<double>(n) * static_cast<double>(n - 1));
    est.std_error = std::sqrt(variance / static_cast<double>(n));
  }
  return est;
}

void check_estimate_args(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p, std::int64_t sims) {
  validate_seeds(net, seeds);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("spread probability must be in [0,1]");
  if (sims < 1) throw std::invalid_argument("number of simulations must be >= 1");
}

// One simulation on substream `sim_seed`; returns the activated count.
std::size_t run_one(const MultilayerNetwork& net, std::span<const NodeId> seeds, const BernoulliThreshold& coin,
                    std::uint64_t sim_seed, CascadeMode mode, detail::CascadeWorkspace& ws) {
  auto ignore = [](std::int32_t, std::span<const NodeId>) {};
  if (mode == CascadeMode::attempt) {
    SplitMix64 rng(sim_seed);
    return detail::run_cascade(net, seeds, ws, [&](NodeId, const Incidence&) { return coin(rng); }, ignore).activated;
  }
  return detail::run_cascade(
             net, seeds, ws,
             [&](NodeId, const Incidence& inc) { return live_edge_coin(sim_seed, inc.edge, coin); }, ignore)
      .activated;
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void check_seed_ids(std::size_t num_nodes, std::span<const NodeId> seeds) {
  if (seeds.empty()) throw std::invalid_argument("seed set must not be empty");
  std::vector<NodeId> sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= num_nodes) {
    throw std::out_of_range("seed node id " + std::to_string(sorted.back()) + " out of range");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("seed set contains duplicate nodes");
  }
}

}  // namespace

void validate_seeds(const MultilayerNetwork& net, std::span<const NodeId> seeds) {
  check_seed_ids(net.num_nodes(), seeds);
}

CascadeOutcome simulate_once(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p, SplitMix64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("spread probability must be in [0,1]");
  const BernoulliThreshold coin(p);
  return simulate_with(net, seeds, [&](NodeId, NodeId, std::size_t) { return coin(rng); });
}

LiveEdgeRealization LiveEdgeRealization::draw(const MultilayerNetwork& net, double p, std::uint64_t sim_seed) {
  const BernoulliThreshold coin(p);
  LiveEdgeRealization r;
  r.live_.resize(net.total_edges());
  for (EdgeId e = 0; e < r.live_.size(); ++e) r.live_[e] = live_edge_coin(sim_seed, e, coin) ? 1 : 0;
  return r;
}

std::size_t LiveEdgeRealization::live_count() const {
  return static_cast<std::size_t>(std::count(live_.begin(), live_.end(), std::uint8_t{1}));
}

CascadeOutcome simulate_live_edge(const MultilayerNetwork& net, std::span<const NodeId> seeds,
                                  const LiveEdgeRealization& realization) {
  validate_seeds(net, seeds);
  detail::CascadeWorkspace ws(net.num_nodes());
  CascadeOutcome out;
  const auto counts = detail::run_cascade(
      net, seeds, ws, [&](NodeId, const Incidence& inc) { return realization.live(inc.edge); },
      [&](std::int32_t, std::span<const NodeId> frontier) { out.frontier_sizes.push_back(frontier.size()); });
  out.activated = ws.touched;
  out.steps = counts.steps;
  return out;
}

SpreadEstimate estimate_influence_serial(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p,
                                         std::int64_t num_sims, std::uint64_t seed, CascadeMode mode) {
  check_estimate_args(net, seeds, p, num_sims);
  const BernoulliThreshold coin(p);
  detail::CascadeWorkspace ws(net.num_nodes());
  SpreadSums sums;
  for (std::int64_t i = 0; i < num_sims; ++i) {
    const std::uint64_t a =
        run_one(net, seeds, coin, derive_seed(seed, static_cast<std::uint64_t>(i)), mode, ws);
    sums.sum += a;
    sums.sum_sq += a * a;
  }
  return finish(sums, num_sims);
}

SpreadEstimate estimate_influence(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p,
                                  std::int64_t num_sims, std::uint64_t seed, CascadeMode mode) {
  check_estimate_args(net, seeds, p, num_sims);
  const BernoulliThreshold coin(p);
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
#pragma omp parallel reduction(+ : sum, sum_sq)
  {
    detail::CascadeWorkspace ws(net.num_nodes());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < num_sims; ++i) {
      const std::uint64_t a =
          run_one(net, seeds, coin, derive_seed(seed, static_cast<std::uint64_t>(i)), mode, ws);
      sum += a;
      sum_sq += a * a;
    }
  }
  return finish({sum, sum_sq}, num_sims);
}

std::vector<double> activation_profile(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p,
                                       std::int64_t num_sims, std::uint64_t seed) {
  check_estimate_args(net, seeds, p, num_sims);
  const BernoulliThreshold coin(p);
  std::vector<std::uint64_t> totals;
#pragma omp parallel
  {
    detail::CascadeWorkspace ws(net.num_nodes());
    std::vector<std::uint64_t> local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < num_sims; ++i) {
      SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
      detail::run_cascade(
          net, seeds, ws, [&](NodeId, const Incidence&) { return coin(rng); },
          [&](std::int32_t t, std::span<const NodeId> frontier) {
            const auto step = static_cast<std::size_t>(t);
            if (local.size() <= step) local.resize(step + 1, 0);
            local[step] += frontier.size();
          });
    }
#pragma omp critical
    {
      if (totals.size() < local.size()) totals.resize(local.size(), 0);
      for (std::size_t t = 0; t < local.size(); ++t) totals[t] += local[t];
    }
  }
  std::vector<double> profile(totals.size());
  for (std::size_t t = 0; t < totals.size(); ++t) {
    profile[t] = static_cast<double>(totals[t]) / static_cast<double>(num_sims);
  }
  return profile;
}

LiveEdgeSample::LiveEdgeSample(const MultilayerNetwork& net, double p, std::int64_t num_sims, std::uint64_t seed)
    : n_(net.num_nodes()), sims_(num_sims) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("spread probability must be in [0,1]");
  if (num_sims < 1) throw std::invalid_argument("number of simulations must be >= 1");
  const BernoulliThreshold coin(p);
  const auto edges = static_cast<EdgeId>(net.total_edges());
  comp_.resize(static_cast<std::size_t>(num_sims) * n_);
  sizes_.resize(static_cast<std::size_t>(num_sims));
#pragma omp parallel
  {
    std::vector<NodeId> parent(n_);
    auto find = [&](NodeId v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
      }
      return v;
    };
    std::vector<std::uint32_t> label(n_);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < num_sims; ++i) {
      const std::uint64_t sim_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
      for (NodeId v = 0; v < n_; ++v) parent[v] = v;
      for (EdgeId e = 0; e < edges; ++e) {
        if (!live_edge_coin(sim_seed, e, coin)) continue;
        const NodeId a = find(net.edge(e).u);
        const NodeId b = find(net.edge(e).v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
      auto& sizes = sizes_[static_cast<std::size_t>(i)];
      std::uint32_t* comp = comp_.data() + static_cast<std::size_t>(i) * n_;
      for (NodeId v = 0; v < n_; ++v) {
        const NodeId r = find(v);
        // roots are the smallest member, so they are labelled before use
        if (r == v) {
          label[v] = static_cast<std::uint32_t>(sizes.size());
          sizes.push_back(0);
        }
        comp[v] = label[r];
        ++sizes[label[r]];
      }
    }
  }
}

template <class F>
void LiveEdgeSample::for_each_spread(std::span<const NodeId> seeds, F&& f) const {
  std::vector<std::uint32_t> ids(seeds.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(sims_); ++i) {
    const std::uint32_t* comp = comp_.data() + i * n_;
    std::uint64_t total = 0;
    std::size_t distinct = 0;
    for (NodeId s : seeds) {
      const std::uint32_t c = comp[s];
      if (std::find(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(distinct), c) !=
          ids.begin() + static_cast<std::ptrdiff_t>(distinct)) {
        continue;
      }
      ids[distinct++] = c;
      total += sizes_[i][c];
    }
    f(total);
  }
}

SpreadEstimate LiveEdgeSample::estimate(std::span<const NodeId> seeds) const {
  check_seed_ids(n_, seeds);
  SpreadSums sums;
  for_each_spread(seeds, [&](std::uint64_t a) {
    sums.sum += a;
    sums.sum_sq += a * a;
  });
  return finish(sums, sims_);
}

double LiveEdgeSample::mean_spread(std::span<const NodeId> seeds) const {
  std::uint64_t sum = 0;
  for_each_spread(seeds, [&](std::uint64_t a) { sum += a; });
  return static_cast<double>(sum) / static_cast<double>(sims_);
}

std::vector<double> LiveEdgeSample::singleton_spreads() const {
  std::vector<std::uint64_t> sum(n_, 0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(sims_); ++i) {
    const std::uint32_t* comp = comp_.data() + i * n_;
    for (NodeId v = 0; v < n_; ++v) sum[v] += sizes_[i][comp[v]];
  }
  std::vector<double> out(n_);
  for (NodeId v = 0; v < n_; ++v) out[v] = static_cast<double>(sum[v]) / static_cast<double>(sims_);
  return out;
}

double exact_influence(const MultilayerNetwork& net, std::span<const NodeId> seeds, double p) {
  validate_seeds(net, seeds);
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("spread probability must be in [0,1]");
  const std::size_t edge_count = net.total_edges();
  if (edge_count > kExactEdgeLimit) {
    throw std::invalid_argument("exact_influence: " + std::to_string(edge_count) + " edges exceeds the limit of " +
                                std::to_string(kExactEdgeLimit));
  }
  if (net.num_nodes() > 64) throw std::invalid_argument("exact_influence: at most 64 nodes");

  std::vector<std::pair<std::uint64_t, std::uint64_t>> ends(edge_count);
  for (EdgeId e = 0; e < edge_count; ++e) {
    const Edge& ed = net.edge(e);
    ends[e] = {std::uint64_t{1} << ed.u, std::uint64_t{1} << ed.v};
  }
  std::uint64_t seed_mask = 0;
  for (NodeId s : seeds) seed_mask |= std::uint64_t{1} << s;

  std::vector<double> weight(edge_count + 1);
  for (std::size_t live = 0; live <= edge_count; ++live) {
    weight[live] = std::pow(p, static_cast<double>(live)) * std::pow(1.0 - p, static_cast<double>(edge_count - live));
  }

  const std::uint64_t realizations = std::uint64_t{1} << edge_count;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < realizations; ++mask) {
    std::uint64_t reach = seed_mask;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
        const auto& [a, b] = ends[static_cast<std::size_t>(__builtin_ctzll(bits))];
        const bool has_a = (reach & a) != 0;
        const bool has_b = (reach & b) != 0;
        if (has_a != has_b) {
          reach |= a | b;
          changed = true;
        }
      }
    }
    total += weight[static_cast<std::size_t>(__builtin_popcountll(mask))] * __builtin_popcountll(reach);
  }
  return total;
}

std::size_t union_reachable_count(const MultilayerNetwork& net, std::span<const NodeId> seeds) {
  validate_seeds(net, seeds);
  detail::CascadeWorkspace ws(net.num_nodes());
  return detail::run_cascade(
             net, seeds, ws, [](NodeId, const Incidence&) { return true; },
             [](std::int32_t, std::span<const NodeId>) {})
      .activated;
}

std::optional<double> influence_cost_ratio(const MultilayerNetwork& net, NodeId v, double p, std::int64_t num_sims,
                                           std::uint64_t seed) {
  const Cost c = net.cost(v);
  if (c == 0) return std::nullopt;
  const NodeId seeds[] = {v};
  return estimate_influence_serial(net, seeds, p, num_sims, derive_seed(seed, v)).mean_spread /
         static_cast<double>(c);
}

IcrTable IcrTable::from_spreads(const MultilayerNetwork& net, std::vector<double> spread) {
  if (spread.size() != net.num_nodes()) throw std::invalid_argument("ICR spread vector size mismatch");
  IcrTable table;
  table.spread = std::move(spread);
  table.ratio.resize(net.num_nodes());
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    const Cost c = net.cost(v);
    table.ratio[v] = c > 0 ? table.spread[v] / static_cast<double>(c) : std::nan("");
    if (c > 0) table.ranking.push_back(v);
  }
  std::stable_sort(table.ranking.begin(), table.ranking.end(),
                   [&](NodeId a, NodeId b) { return table.ratio[a] > table.ratio[b]; });
  return table;
}

IcrTable compute_icr_table_serial(const MultilayerNetwork& net, double p, std::int64_t num_sims, std::uint64_t seed) {
  std::vector<double> spread(net.num_nodes());
  for (NodeId v = 0; v < net.num_nodes(); ++v) {
    const NodeId seeds[] = {v};
    spread[v] = estimate_influence_serial(net, seeds, p, num_sims, derive_seed(seed, v)).mean_spread;
  }
  return IcrTable::from_spreads(net, std::move(spread));
}

IcrTable compute_icr_table(const MultilayerNetwork& net, double p, std::int64_t num_sims, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("spread probability must be in [0,1]");
  if (num_sims < 1) throw std::invalid_argument("number of simulations must be >= 1");
  std::vector<double> spread(net.num_nodes());
  const auto n = static_cast<std::int64_t>(net.num_nodes());
  const BernoulliThreshold coin(p);
#pragma omp parallel
  {
    detail::CascadeWorkspace ws(net.num_nodes());
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto v = static_cast<NodeId>(i);
      const NodeId seeds[] = {v};
      const std::uint64_t node_seed = derive_seed(seed, v);
      std::uint64_t sum = 0;
      for (std::int64_t s = 0; s < num_sims; ++s) {
        sum += run_one(net, seeds, coin, derive_seed(node_seed, static_cast<std::uint64_t>(s)), CascadeMode::attempt,
                       ws);
      }
      spread[v] = static_cast<double>(sum) / static_cast<double>(num_sims);
    }
  }
  return IcrTable::from_spreads(net, std::move(spread));
}

IcrCache::IcrCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

IcrCache& IcrCache::global() {
  static IcrCache cache([] {
    const char* dir = std::getenv("BCIM_CACHE_DIR");
    return dir ? std::filesystem::path(dir) : std::filesystem::path();
  }());
  return cache;
}

std::filesystem::path IcrCache::sidecar_path(const MultilayerNetwork& net, double p, std::int64_t num_sims,
                                             std::uint64_t seed) const {
  std::ostringstream name;
  name << "icr-" << std::hex << net.fingerprint() << std::dec << "-p" << format_double(p) << "-n" << num_sims << "-s"
       << seed << ".csv";
  return directory_ / name.str();
}

std::shared_ptr<const IcrTable> IcrCache::get(const MultilayerNetwork& net, double p, std::int64_t num_sims,
                                              std::uint64_t seed) {
  std::ostringstream key;
  key << net.fingerprint() << '/' << format_double(p) << '/' << num_sims << '/' << seed;
  // Held across the computation so concurrent callers never compute twice.
  std::lock_guard lock(mutex_);
  if (auto it = tables_.find(key.str()); it != tables_.end()) return it->second;

  std::shared_ptr<const IcrTable> table;
  const auto path = directory_.empty() ? std::filesystem::path() : sidecar_path(net, p, num_sims, seed);
  if (!path.empty() && std::filesystem::exists(path)) {
    std::ifstream in(path);
    std::vector<double> spread(net.num_nodes(), -1.0);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      const auto v = static_cast<std::size_t>(std::stoull(line.substr(0, comma)));
      if (v < spread.size()) spread[v] = std::stod(line.substr(comma + 1));
    }
    if (std::none_of(spread.begin(), spread.end(), [](double s) { return s < 0.0; })) {
      table = std::make_shared<const IcrTable>(IcrTable::from_spreads(net, std::move(spread)));
    }
  }
  if (!table) {
    table = std::make_shared<const IcrTable>(compute_icr_table(net, p, num_sims, seed));
    if (!path.empty()) {
      std::filesystem::create_directories(directory_);
      std::ofstream out(path);
      out << "node_id,spread\n";
      for (NodeId v = 0; v < net.num_nodes(); ++v) out << v << ',' << format_double(table->spread[v]) << '\n';
    }
  }
  tables_.emplace(key.str(), table);
  return table;
}

}  // namespace bcim
