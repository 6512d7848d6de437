#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "partmodes/engine.hpp"
#include "partmodes/graph.hpp"
#include "partmodes/information.hpp"
#include "partmodes/sampler.hpp"
#include "partmodes/table_count.hpp"

using namespace partmodes;

namespace {

std::vector<Count> even_margin(Count n, Count parts) {
  std::vector<Count> m(static_cast<std::size_t>(parts), n / parts);
  for (Count i = 0; i < n % parts; ++i) ++m[static_cast<std::size_t>(i)];
  return m;
}

Partition blocks(std::size_t n, std::size_t q) {
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i * q / n);
  return canonicalize(labels);
}

PartitionSet noisy_ensemble(std::size_t samples, std::size_t n, double flip) {
  PerturbationSpec spec;
  spec.bases = {{blocks(n, 4), 1.0}};
  spec.node_flip_rate = flip;
  spec.samples = samples;
  spec.seed = 11;
  return perturb_ensemble(spec).set;
}

void BM_CountTablesExact(benchmark::State& state) {
  const auto n = static_cast<Count>(state.range(0));
  const auto rows = even_margin(n, state.range(1)), cols = even_margin(n, state.range(1) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_tables_exact(rows, cols));
}
BENCHMARK(BM_CountTablesExact)->Args({50, 3})->Args({100, 3})->Args({50, 4})->Args({100, 4});

void BM_CountTablesEstimate(benchmark::State& state) {
  const auto n = static_cast<Count>(state.range(0));
  const auto rows = even_margin(n, state.range(1)), cols = even_margin(n, state.range(1) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_tables_estimate(rows, cols));
}
BENCHMARK(BM_CountTablesEstimate)->Args({100, 4})->Args({100, 8})->Args({1000, 8});

void BM_ModifiedConditionalEntropy(benchmark::State& state) {
  const auto set = noisy_ensemble(2, static_cast<std::size_t>(state.range(0)), 0.1);
  // Warm the table-count memo so the loop measures the entropy work.
  modified_conditional_entropy(set[0], set[1]);
  for (auto _ : state) benchmark::DoNotOptimize(modified_conditional_entropy(set[0], set[1]));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ModifiedConditionalEntropy)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_EngineMoves(benchmark::State& state) {
  const auto set = noisy_ensemble(static_cast<std::size_t>(state.range(0)), 100, 0.05);
  const EntropyCache cache(set);
  EngineParams params;
  params.seed = 5;
  MergeSplitEngine engine(cache, params);
  // Untimed moves fill the process-wide table-count memo.
  for (int i = 0; i < 30; ++i) engine.step();
  for (auto _ : state) benchmark::DoNotOptimize(engine.step());
}
BENCHMARK(BM_EngineMoves)->Arg(1000)->Arg(2000)->Arg(5000)->Arg(10000)->Iterations(30)->Unit(benchmark::kMillisecond);

void BM_McmcSample(benchmark::State& state) {
  const auto ring = ring_of_cliques(8, 6);
  McmcParams params;
  params.samples = static_cast<std::size_t>(state.range(0));
  params.beta = 50.0;
  for (auto _ : state) benchmark::DoNotOptimize(mcmc_sample(ring.graph, params));
}
BENCHMARK(BM_McmcSample)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
