#include <algorithm>

#include "bcim/baselines.hpp"
#include "bcim/mmga.hpp"

namespace bcim {

void DpsoConfig::validate() const {
  if (swarm_size < 2) throw std::invalid_argument("dpso: swarm size must be >= 2");
  if (fitness_sims < 1 || icr_sims < 1) throw std::invalid_argument("dpso: simulation counts must be >= 1");
  if (!(turbulence >= 0.0 && turbulence <= 1.0)) throw std::invalid_argument("dpso: turbulence must be in [0,1]");
}

std::vector<std::uint8_t> overlap_indicator(const std::vector<NodeId>& x, const std::vector<NodeId>& reference) {
  std::vector<std::uint8_t> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = std::find(reference.begin(), reference.end(), x[j]) == reference.end() ? 1 : 0;
  }
  return out;
}

DpsoResult dpso_solve(const MultilayerNetwork& net, std::size_t K, Cost B, double p, const DpsoConfig& config) {
  config.validate();
  std::size_t k = 0;
  while (k < std::min(K, net.num_nodes()) && cheapest_k_cost(net, k + 1) <= B) ++k;
  if (k == 0) throw InfeasibleProblem("budget is below the cheapest node cost");

  const auto icr = IcrCache::global().get(net, p, config.icr_sims, config.icr_seed);
  const LiveEdgeSample sample(net, p, config.fitness_sims, derive_seed(config.rng_seed, 1));
  FitnessCache fitness(sample);
  SplitMix64 rng(derive_seed(config.rng_seed, 0));

  struct Particle {
    Individual x;
    std::vector<std::uint8_t> velocity;
    Individual best;
  };
  auto must_repair = [&](Individual x) {
    auto fixed = repair(std::move(x), net, B, *icr);
    if (!fixed) throw InfeasibleProblem("no " + std::to_string(k) + "-node set fits the budget");
    fitness(*fixed);
    return std::move(*fixed);
  };

  const auto start = top_k_by_degree(net, k);
  std::vector<Particle> swarm(config.swarm_size);
  for (std::size_t i = 0; i < swarm.size(); ++i) {
    auto genes = start;
    if (i > 0) perturb(genes, config.turbulence, net.num_nodes(), rng);
    swarm[i].x = must_repair(make_individual(net, std::move(genes)));
    swarm[i].velocity.assign(k, 0);
    swarm[i].best = swarm[i].x;
  }
  auto gbest = swarm[0].best;
  for (const auto& s : swarm) {
    if (*s.best.fitness > *gbest.fitness) gbest = s.best;
  }

  DpsoResult result;
  result.gbest_trace.push_back(*gbest.fitness);
  for (std::size_t t = 0; t < config.iterations; ++t) {
    for (auto& s : swarm) {
      const double j1 = uniform01(rng);
      const double j2 = uniform01(rng);
      const auto to_personal = overlap_indicator(s.x.genes, s.best.genes);
      const auto to_global = overlap_indicator(s.x.genes, gbest.genes);
      for (std::size_t j = 0; j < k; ++j) {
        const double q = config.inertia * s.velocity[j] + config.learn_personal * j1 * to_personal[j] +
                         config.learn_global * j2 * to_global[j];
        s.velocity[j] = static_cast<std::uint8_t>(dpso_threshold(q));
      }
      auto genes = s.x.genes;
      for (std::size_t j = 0; j < k; ++j) {
        if (!s.velocity[j]) continue;
        if (auto r = random_outside(net.num_nodes(), genes, rng)) genes[j] = *r;
      }
      s.x = must_repair(make_individual(net, std::move(genes)));
      if (*s.x.fitness > *s.best.fitness) s.best = s.x;
    }
    for (const auto& s : swarm) {
      if (*s.best.fitness > *gbest.fitness) gbest = s.best;
    }
    result.gbest_trace.push_back(*gbest.fitness);
  }
  result.seeds = gbest.genes;
  result.cost = gbest.cost;
  result.fitness = *gbest.fitness;
  return result;
}

}  // namespace bcim
