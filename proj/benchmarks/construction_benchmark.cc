#include <benchmark/benchmark.h>

#include "bincs/bipartite_graph.h"
#include "bincs/construction.h"

namespace {

void BM_PegConstruct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bincs::peg_construct(200, 400, d));
  }
}
BENCHMARK(BM_PegConstruct)->Arg(3)->Arg(7)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_RandomRegular(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bincs::random_regular(200, 400, 7, seed++));
  }
}
BENCHMARK(BM_RandomRegular)->Unit(benchmark::kMicrosecond);

void BM_ComputeGirth(benchmark::State& state) {
  const auto a = bincs::peg_construct(200, 400, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bincs::compute_girth(a.graph()));
  }
}
BENCHMARK(BM_ComputeGirth)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_FindDmax(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bincs::find_dmax(100, 200));
  }
}
BENCHMARK(BM_FindDmax)->Unit(benchmark::kMillisecond);

}  // namespace
