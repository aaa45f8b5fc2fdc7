#include <benchmark/benchmark.h>

#include "ggm/branches.hpp"
#include "ggm/measure.hpp"
#include "ggm/model.hpp"
#include "ggm/oracle.hpp"
#include "ggm/rootfind.hpp"

using namespace ggm;

static void BM_P2Census(benchmark::State& state) {
  const ModelParams p(2, 7.0);
  for (auto _ : state) benchmark::DoNotOptimize(branches::p2_census(p));
}
BENCHMARK(BM_P2Census);

static void BM_P3Solve(benchmark::State& state) {
  const ModelParams p(2, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(branches::p3_solve(p));
}
BENCHMARK(BM_P3Solve)->Arg(3)->Arg(10);

static void BM_P4Census(benchmark::State& state) {
  const ModelParams p(2, 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(branches::p4_census(p));
}
BENCHMARK(BM_P4Census);

static void BM_OracleSolve(benchmark::State& state) {
  const ModelParams p(2, 7.0);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::solve(state.range(0), p));
}
BENCHMARK(BM_OracleSolve)->Arg(2)->Arg(3)->Arg(4);

static void BM_PositiveRootsCubic(benchmark::State& state) {
  const roots::Polynomial p({-4.0, 21.0, -21.0, 4.0});
  for (auto _ : state) benchmark::DoNotOptimize(roots::positive_roots(p));
}
BENCHMARK(BM_PositiveRootsCubic);

static void BM_PinnedMarginalDepth2(benchmark::State& state) {
  const ModelParams p(2, 7.0);
  const auto law = branches::p2_solve_diagonal(p)->law;
  const auto tree = measure::FiniteSubtree::build(2, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(measure::pinned_marginal(law, tree, 0, p));
}
BENCHMARK(BM_PinnedMarginalDepth2);

static void BM_ConsistencyCheck(benchmark::State& state) {
  const ModelParams p(2, 7.0);
  const auto law = branches::p2_solve_diagonal(p)->law;
  const auto t1 = measure::FiniteSubtree::build(2, 1);
  const auto t2 = measure::FiniteSubtree::build(2, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(measure::check_consistency(law, t1, t2, p, 0));
}
BENCHMARK(BM_ConsistencyCheck);

BENCHMARK_MAIN();
