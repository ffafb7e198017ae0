#include <random>

#include <benchmark/benchmark.h>

#include "bincs/construction.h"
#include "bincs/sensing_matrix.h"
#include "bincs/spectral.h"

namespace {

void BM_JacobiGram(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto a = bincs::peg_construct(200, 400, 7);
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd gram =
      bincs::gram_submatrix(a, bincs::sample_subset(400, k, rng)).to_dense();
  for (auto _ : state) benchmark::DoNotOptimize(bincs::extreme_eigenvalues(gram));
}
BENCHMARK(BM_JacobiGram)->Arg(4)->Arg(12)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_CorrelationSpectrum(benchmark::State& state) {
  const auto a = bincs::peg_construct(200, 400, 7);
  for (auto _ : state) benchmark::DoNotOptimize(bincs::correlation_spectrum(a));
}
BENCHMARK(BM_CorrelationSpectrum)->Unit(benchmark::kMicrosecond);

void BM_EmpiricalRic(benchmark::State& state) {
  const auto a = bincs::peg_construct(200, 400, 7);
  for (auto _ : state) benchmark::DoNotOptimize(bincs::empirical_ric(a, 12, 100, 0));
}
BENCHMARK(BM_EmpiricalRic)->Unit(benchmark::kMillisecond);

}  // namespace
