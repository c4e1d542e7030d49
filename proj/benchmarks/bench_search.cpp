#include <benchmark/benchmark.h>

#include "tik/reductions.hpp"
#include "tik/s2d.hpp"

using namespace tik;

static void BM_Decide3tiIsomorphic(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const InstancePair pair = gen_pair(Problem::TI3, {n, n, n}, static_cast<u32>(state.range(1)), 7, true, default_budget());
  const auto& a = std::get<Tensor3>(pair.a);
  const auto& b = std::get<Tensor3>(pair.b);
  for (auto _ : state) benchmark::DoNotOptimize(decide_3ti_smart(a, b, default_budget()));
}
BENCHMARK(BM_Decide3tiIsomorphic)->Args({2, 2})->Args({3, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

static void BM_DecideIsometry(benchmark::State& state) {
  const InstancePair pair = gen_pair(Problem::Isometry, {static_cast<std::size_t>(state.range(0)), 2}, 3, 11, true,
                                     default_budget());
  const MatrixTuple a = std::get<Tensor3>(pair.a).frontal(), b = std::get<Tensor3>(pair.b).frontal();
  for (auto _ : state) benchmark::DoNotOptimize(decide_isometry(a, b, default_budget()));
}
BENCHMARK(BM_DecideIsometry)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_AltGadget(benchmark::State& state) {
  const std::size_t n = state.range(0);
  Tensor3 t;
  for (u64 seed = 0;; ++seed) {
    t = std::get<Tensor3>(gen_pair(Problem::TI3, {n, n, n}, 3, seed, true, default_budget()).a);
    if (is_nondegenerate(t)) break;
  }
  for (auto _ : state) benchmark::DoNotOptimize(ti3_to_alt_isometry(t));
}
BENCHMARK(BM_AltGadget)->Arg(2)->Arg(3);

// One search-to-decision run with the structural oracle, the workload of the end-to-end check.
static void BM_FindIsometry(benchmark::State& state) {
  const InstancePair pair = gen_pair(Problem::Isometry, {static_cast<std::size_t>(state.range(0)), 2}, 3, 5, true,
                                     default_budget());
  const MatrixTuple a = std::get<Tensor3>(pair.a).frontal(), b = std::get<Tensor3>(pair.b).frontal();
  const DecisionOracle oracle = structural_oracle(default_budget());
  for (auto _ : state) benchmark::DoNotOptimize(find_isometry(a, b, oracle, default_budget()));
}
BENCHMARK(BM_FindIsometry)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
