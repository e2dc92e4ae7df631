#include <benchmark/benchmark.h>

#include "xorgames/games.hpp"
#include "xorgames/rigidity.hpp"
#include "xorgames/sdp.hpp"
#include "xorgames/strategies.hpp"
#include "xorgames/sweep.hpp"

namespace {

using namespace xorgames;

void BM_Kron(benchmark::State& state) {
  const Index d = state.range(0);
  const CMatrix a = CMatrix::Random(d, d);
  const CMatrix b = CMatrix::Random(d, d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kron(a, b));
  }
}
BENCHMARK(BM_Kron)->Arg(4)->Arg(16)->Arg(64);

void BM_CanonicalBias(benchmark::State& state) {
  const int n = int(state.range(0));
  const GameMatrix g = build_chsh_game(n);
  const Strategy s = build_optimal_chsh_strategy(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bias(g, s));
  }
}
BENCHMARK(BM_CanonicalBias)->Arg(2)->Arg(4)->Arg(6);

void BM_ClassicalBruteForce(benchmark::State& state) {
  const GameMatrix g = build_chsh_game(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(classical_bias_bruteforce(g));
  }
}
BENCHMARK(BM_ClassicalBruteForce)->Arg(3)->Arg(6)->Arg(10);

void BM_SymmetricDual(benchmark::State& state) {
  const GameMatrix g = build_chsh_game(int(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_symmetric_dual(g));
  }
}
BENCHMARK(BM_SymmetricDual)->Arg(2)->Arg(3);

void BM_Intertwiner(benchmark::State& state) {
  const int n = int(state.range(0));
  const Strategy s = build_optimal_chsh_strategy(n);
  const Strategy r = build_reference_strategy(n, n % 2 == 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_intertwiner(s, r, n));
  }
}
BENCHMARK(BM_Intertwiner)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_SweepPoint(benchmark::State& state) {
  SweepConfig config;
  config.n_values = {int(state.range(0))};
  config.theta_grid = {0.05};
  config.seeds = {1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(config));
  }
}
BENCHMARK(BM_SweepPoint)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
