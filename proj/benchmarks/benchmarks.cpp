#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "cu/clustering.hpp"
#include "cu/dataset.hpp"
#include "cu/guessing_game.hpp"
#include "cu/measures.hpp"

namespace {

// deterministic synthetic dataset: n instances, ndim dimensions, card values
cu::Dataset synthetic(int n, int ndim, int card, uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  cu::AttributeSchema schema;
  for (int k = 0; k < ndim; ++k) {
    cu::AttributeDimension dim;
    dim.name = "d" + std::to_string(k);
    for (int v = 0; v < card; ++v)
      dim.values.push_back("v" + std::to_string(v));
    schema.dimensions.push_back(dim);
  }
  std::vector<cu::Instance> insts(n);
  for (int i = 0; i < n; ++i) {
    insts[i].id = "i" + std::to_string(i + 1);
    for (int k = 0; k < ndim; ++k)
      insts[i].values.push_back(static_cast<int>(rng() % card));
  }
  return cu::Dataset(std::move(schema), std::move(insts));
}

cu::Category half(const cu::Dataset& d) {
  std::vector<int> idx;
  for (int i = 0; i < d.size() / 2; ++i) idx.push_back(i);
  return cu::Category(d, std::move(idx));
}

void BM_cu_info_partition(benchmark::State& state) {
  cu::Dataset d = synthetic(static_cast<int>(state.range(0)), 8, 4);
  cu::Category c = half(d);
  for (auto _ : state)
    benchmark::DoNotOptimize(cu::cu_info_partition(d, c));
}
BENCHMARK(BM_cu_info_partition)->Arg(64)->Arg(512)->Arg(4096);

void BM_cu_quad_partition_exact(benchmark::State& state) {
  cu::Dataset d = synthetic(static_cast<int>(state.range(0)), 8, 4);
  cu::Category c = half(d);
  for (auto _ : state)
    benchmark::DoNotOptimize(cu::cu_quad_partition_exact(d, c));
}
BENCHMARK(BM_cu_quad_partition_exact)->Arg(64)->Arg(512)->Arg(4096);

void BM_rival_measures_modal(benchmark::State& state) {
  cu::Dataset d = synthetic(static_cast<int>(state.range(0)), 8, 4);
  cu::Category c = half(d);
  for (auto _ : state)
    benchmark::DoNotOptimize(cu::rival_measures(d, c));
}
BENCHMARK(BM_rival_measures_modal)->Arg(64)->Arg(512);

void BM_simulate(benchmark::State& state) {
  cu::Dataset d = synthetic(128, 4, 3);
  cu::Category c = half(d);
  long long trials = state.range(0);
  for (auto _ : state) {
    cu::ScoreEstimate est =
        cu::simulate(d, &c, cu::GameCondition::Partition,
                     cu::Strategy::ProbabilityMatching, trials, 42);
    benchmark::DoNotOptimize(est);
  }
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_simulate)->Arg(10000)->Arg(100000);

void BM_best_split_exhaustive(benchmark::State& state) {
  cu::Dataset d = synthetic(static_cast<int>(state.range(0)), 4, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(cu::best_split_exhaustive(d));
}
BENCHMARK(BM_best_split_exhaustive)->Arg(10)->Arg(14);

void BM_greedy_agglomerate(benchmark::State& state) {
  cu::Dataset d = synthetic(static_cast<int>(state.range(0)), 4, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(cu::greedy_agglomerate(d, 2));
}
BENCHMARK(BM_greedy_agglomerate)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
