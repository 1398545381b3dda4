#include <benchmark/benchmark.h>

#include "arbor/branching.hpp"
#include "arbor/cut_decomposition.hpp"
#include "arbor/flow.hpp"
#include "arbor/generators.hpp"
#include "arbor/solver.hpp"

using namespace arbor;

namespace {

// gnp with the first vertex forced to reach everything via a spanning chain
Digraph rooted_gnp(int n, double p, std::uint64_t seed) {
  std::vector<Arc> arcs = gnp_digraph(n, p, seed).arcs();
  for (int i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1});
  return Digraph(n, arcs, true);
}

void BM_BiReachableSet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Digraph d = rooted_gnp(n, 4.0 / n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bi_reachable_set(d, 0));
  state.SetComplexityN(n);
}
BENCHMARK(BM_BiReachableSet)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_CutDecomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Digraph d = rooted_gnp(n, 3.0 / n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_cut_decomposition(d, 0));
  state.SetComplexityN(n);
}
BENCHMARK(BM_CutDecomposition)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_DegenerateChainDecomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Digraph d = degenerate_chain(n, 0.1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(build_cut_decomposition(d, 0));
}
BENCHMARK(BM_DegenerateChainDecomposition)->RangeMultiplier(2)->Range(16, 128);

void BM_MaxWeightBranching(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Digraph d = rooted_gnp(n, 0.2, 4);
  std::vector<Weight> w;
  for (std::size_t i = 0; i < d.arcs().size(); ++i) w.emplace_back(static_cast<std::int64_t>(i * 7919 % 101), 7);
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_out_branching(d, w, 0));
}
BENCHMARK(BM_MaxWeightBranching)->RangeMultiplier(2)->Range(16, 256);

void BM_SolveFpt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  Digraph d = rooted_gnp(n, 2.5 / n, 5);
  SolveOptions opt;
  opt.oracle_cap = 10;
  for (auto _ : state) benchmark::DoNotOptimize(solve(d, 0, n - 1, k, opt));
}
BENCHMARK(BM_SolveFpt)->ArgsProduct({{16, 32, 64}, {1, 2, 3}});

void BM_SolveClosedChain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Digraph d = paper3_digraph(n, true);
  for (auto _ : state) benchmark::DoNotOptimize(solve(d, 0, n + 1, 1));
}
BENCHMARK(BM_SolveClosedChain)->RangeMultiplier(2)->Range(4, 64);

void BM_Oracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Digraph d = rooted_gnp(n, 0.3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solve(d, 0, n - 1, n, 12));
}
BENCHMARK(BM_Oracle)->DenseRange(4, 8, 2);

}  // namespace
BENCHMARK_MAIN();
