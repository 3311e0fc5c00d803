#include <benchmark/benchmark.h>

#include "measrep/graph_props.hpp"
#include "measrep/lp_distance.hpp"
#include "measrep/profiles.hpp"

using namespace measrep;

namespace {

struct Pair {
  MeasureSet x{2};
  MeasureSet y{2};
};

Pair make_pair(std::size_t count) {
  const int n = 8;
  const auto a = MeasuredMatrix::uniform(adjacency_matrix(complete_graph(n)) / n);
  const auto b = MeasuredMatrix::uniform(adjacency_matrix(cycle_graph(n)) / 2.0);
  return {sample_profile(a, 1, count, 7).measures, sample_profile(b, 1, count, 7).measures};
}

void BM_Hausdorff(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(p.x, p.y));
}

void BM_HausdorffReference(benchmark::State& state) {
  const Pair p = make_pair(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_reference(p.x, p.y));
}

void BM_ProfileMeasures(benchmark::State& state) {
  const auto m = MeasuredMatrix::uniform(adjacency_matrix(cycle_graph(64)));
  const auto tuples = canonical_tuples(64, 3, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(profile_measures(m, tuples));
}

void BM_ProfileMeasuresReference(benchmark::State& state) {
  const auto m = MeasuredMatrix::uniform(adjacency_matrix(cycle_graph(64)));
  const auto tuples = canonical_tuples(64, 3, static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(profile_measures_reference(m, tuples));
}

}  // namespace

BENCHMARK(BM_Hausdorff)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HausdorffReference)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileMeasures)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileMeasuresReference)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
