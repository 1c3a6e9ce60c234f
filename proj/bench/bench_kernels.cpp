// Serial reference vs OpenMP kernels. Args: {network model, threads}.
#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>

#include "bcim/generators.hpp"
#include "bcim/mic.hpp"

using namespace bcim;

namespace {

const MultilayerNetwork& network(int model) {
  static std::map<int, MultilayerNetwork> nets;
  auto it = nets.find(model);
  if (it == nets.end()) {
    GeneratorSpec spec;
    spec.model = static_cast<GeneratorModel>(model);
    it = nets.emplace(model, generate(spec)).first;
  }
  return it->second;
}

SeedSet top_seeds(const MultilayerNetwork& net, std::size_t k) {
  SeedSet s;
  for (NodeId v = 0; v < k; ++v) s.push_back(v * 37 % static_cast<NodeId>(net.num_nodes()));
  return s;
}

void BM_EstimateSerial(benchmark::State& state) {
  const auto& net = network(static_cast<int>(state.range(0)));
  const auto seeds = top_seeds(net, 20);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_influence_serial(net, seeds, 0.1, 2000, 7));
}

void BM_EstimateParallel(benchmark::State& state) {
  const auto& net = network(static_cast<int>(state.range(0)));
  const auto seeds = top_seeds(net, 20);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_influence(net, seeds, 0.1, 2000, 7));
}

void BM_IcrSerial(benchmark::State& state) {
  const auto& net = network(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_icr_table_serial(net, 0.1, 50, 7));
}

void BM_IcrParallel(benchmark::State& state) {
  const auto& net = network(static_cast<int>(state.range(0)));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_icr_table(net, 0.1, 50, 7));
}

void BM_LiveEdgeSampleBuild(benchmark::State& state) {
  const auto& net = network(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(LiveEdgeSample(net, 0.1, 100, 7));
}

void BM_LiveEdgeSampleLookup(benchmark::State& state) {
  const auto& net = network(static_cast<int>(state.range(0)));
  const LiveEdgeSample sample(net, 0.1, 1000, 7);
  const auto seeds = top_seeds(net, 20);
  for (auto _ : state) benchmark::DoNotOptimize(sample.mean_spread(seeds));
}

void models(benchmark::internal::Benchmark* b) {
  for (int m = 0; m < 3; ++m) b->Args({m, 1});
}

void models_threads(benchmark::internal::Benchmark* b) {
  const int max_threads = omp_get_max_threads();
  for (int m = 0; m < 3; ++m) {
    for (int t = 1; t <= max_threads; t *= 2) b->Args({m, t});
  }
}

}  // namespace

BENCHMARK(BM_EstimateSerial)->Apply(models)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateParallel)->Apply(models_threads)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IcrSerial)->Apply(models)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IcrParallel)->Apply(models_threads)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LiveEdgeSampleBuild)->Apply(models)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LiveEdgeSampleLookup)->Apply(models)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
