#include <random>

#include <benchmark/benchmark.h>

#include "bincs/construction.h"
#include "bincs/recovery.h"
#include "bincs/sensing_operator.h"
#include "bincs/spectral.h"

namespace {

struct Problem {
  bincs::BinaryOperator a{bincs::peg_construct(200, 400, 7)};
  Eigen::VectorXd y;

  explicit Problem(int k) {
    std::mt19937_64 rng(k);
    std::normal_distribution<double> normal;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(400);
    for (int i : bincs::sample_subset(400, k, rng)) x[i] = normal(rng);
    y = a.apply(x);
  }
};

void BM_Omp(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Problem p(k);
  for (auto _ : state) benchmark::DoNotOptimize(bincs::omp(p.a, p.y, k));
}
BENCHMARK(BM_Omp)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_Iht(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Problem p(k);
  for (auto _ : state) benchmark::DoNotOptimize(bincs::iht(p.a, p.y, k));
}
BENCHMARK(BM_Iht)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_Sp(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Problem p(k);
  for (auto _ : state) benchmark::DoNotOptimize(bincs::sp(p.a, p.y, k));
}
BENCHMARK(BM_Sp)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_Bp(benchmark::State& state) {
  const Problem p(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bincs::bp(p.a, p.y));
}
BENCHMARK(BM_Bp)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_ApplyTranspose(benchmark::State& state) {
  const Problem p(10);
  for (auto _ : state) benchmark::DoNotOptimize(p.a.apply_transpose(p.y));
}
BENCHMARK(BM_ApplyTranspose);

}  // namespace
