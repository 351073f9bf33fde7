#include <benchmark/benchmark.h>

#include <vector>

#include "colltherm/correlations.hpp"
#include "colltherm/figures.hpp"
#include "colltherm/fisher.hpp"

using namespace colltherm;

static void BM_RunChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> taus(static_cast<std::size_t>(n - 1), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(run_chain({1.0, 0.5}, standard_zz(), n, taus));
}
BENCHMARK(BM_RunChain)->DenseRange(1, 6);

static void BM_ChainQfi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> taus(static_cast<std::size_t>(n - 1), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(chain_qfi({1.0, 0.5}, standard_zz(), n, taus));
}
BENCHMARK(BM_ChainQfi)->DenseRange(1, 5);

static void BM_ChainQfiMatrix(benchmark::State& state) {
  const std::vector<double> taus{1.0};
  for (auto _ : state) benchmark::DoNotOptimize(chain_qfi_matrix({1.0, 0.5}, standard_zz(), 2, taus));
}
BENCHMARK(BM_ChainQfiMatrix);

static void BM_DeltaAnalytic(benchmark::State& state) {
  double rate = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_analytic(1.0, rate));
    rate = rate < 10.0 ? rate * 1.01 : 0.1;
  }
}
BENCHMARK(BM_DeltaAnalytic);

static void BM_AverageDelta(benchmark::State& state) {
  const WtdSpec w{WtdKind::Weibull, static_cast<double>(state.range(0)), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(average_delta(w, 2.0, 0.3));
}
BENCHMARK(BM_AverageDelta)->Arg(1)->Arg(5);

static void BM_Discord(benchmark::State& state) {
  const ChainResult r = run_chain({1.0, 0.5}, standard_zz(), 2, std::vector<double>{1.0});
  const BipartiteState pair = pair_state(r.joint_ancillas, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(discord(pair, MeasuredSide::A));
}
BENCHMARK(BM_Discord);

static void BM_MonteCarlo(benchmark::State& state) {
  const WtdSpec w{WtdKind::Weibull, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(average_qfi_mc(w, {1.0, 0.5}, standard_zz(), 3, 100, 1, 1));
}
BENCHMARK(BM_MonteCarlo)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
