#include <benchmark/benchmark.h>

#include "tik/enumerate.hpp"
#include "tik/matspace.hpp"
#include "tik/oracle.hpp"

using namespace tik;

static void BM_Rank(benchmark::State& state) {
  const Field f(static_cast<u32>(state.range(1)));
  Rng rng(1);
  const Mat m = random_mat(f, state.range(0), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_Rank)->ArgsProduct({{8, 32, 128}, {2, 7}});

static void BM_Solve(benchmark::State& state) {
  const Field f(5);
  Rng rng(2);
  const Mat m = sample_gl(f, state.range(0), rng);
  const Mat rhs = random_mat(f, state.range(0), 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve(m, rhs));
}
BENCHMARK(BM_Solve)->Arg(8)->Arg(32)->Arg(128);

// Every u in F^n, so 2^n or 3^n rows of work.
static void BM_LateralRankTable(benchmark::State& state) {
  const Field f(static_cast<u32>(state.range(1)));
  Rng rng(3);
  MatrixTuple t;
  for (int k = 0; k < 4; ++k) t.push_back(random_alternating(f, state.range(0), rng));
  for (auto _ : state) benchmark::DoNotOptimize(lateral_rank_table(t, state.range(0), default_budget()));
}
BENCHMARK(BM_LateralRankTable)->Args({8, 2})->Args({16, 2})->Args({19, 2})->Args({6, 3})->Args({9, 3});

static void BM_EnumerateGL(benchmark::State& state) {
  const Field f(static_cast<u32>(state.range(1)));
  for (auto _ : state) {
    u64 count = 0;
    enumerate_gl(f, state.range(0), default_budget(), [&](const Mat&) { return ++count, true; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumerateGL)->Args({3, 2})->Args({4, 2})->Args({3, 3})->Unit(benchmark::kMillisecond);
