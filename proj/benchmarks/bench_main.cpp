#include <benchmark/benchmark.h>

#include <random>

#include "actconv/dm.hpp"
#include "actconv/experiments.hpp"
#include "actconv/graphs.hpp"
#include "actconv/maxflow.hpp"
#include "actconv/norms.hpp"
#include "actconv/profiles.hpp"
#include "actconv/prokhorov.hpp"

using namespace actconv;

namespace {

EmpiricalMeasure random_measure(Rng& rng, std::size_t atoms, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::vector<double>> pts(atoms, std::vector<double>(dim));
  for (auto& p : pts)
    for (auto& x : p) x = u(rng);
  return EmpiricalMeasure(dim, std::move(pts), std::vector<double>(atoms, 1.0 / static_cast<double>(atoms)));
}

void BM_LpDistance(benchmark::State& state) {
  auto rng = make_stream(1, {static_cast<std::uint64_t>(state.range(0))});
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_measure(rng, n, 2);
  const auto b = random_measure(rng, n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(lp_distance(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LpDistance)->RangeMultiplier(2)->Range(16, 512)->Complexity();

void BM_MaxFlowBipartite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto rng = make_stream(2, {static_cast<std::uint64_t>(n)});
  std::uniform_int_distribution<std::int64_t> cap(1, 1000);
  std::bernoulli_distribution edge(0.2);
  std::vector<std::tuple<int, int, std::int64_t>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(2 * n, i, cap(rng));
    edges.emplace_back(n + i, 2 * n + 1, cap(rng));
    for (int j = 0; j < n; ++j)
      if (edge(rng)) edges.emplace_back(i, n + j, cap(rng));
  }
  for (auto _ : state) {
    MaxFlow f(2 * n + 2);
    for (const auto& [u, v, c] : edges) f.add_edge(u, v, c);
    benchmark::DoNotOptimize(f.run(2 * n, 2 * n + 1));
  }
}
BENCHMARK(BM_MaxFlowBipartite)->RangeMultiplier(2)->Range(32, 1024);

void BM_NormInfToOneExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto op = random_sign_matrix(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(norm_pq(*op, kInf, 1, NormMode::Exact));
}
BENCHMARK(BM_NormInfToOneExact)->DenseRange(8, 20, 4);

void BM_NormHeuristic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto op = random_sign_matrix(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(norm_pq(*op, kInf, 1, NormMode::Heuristic));
}
BENCHMARK(BM_NormHeuristic)->RangeMultiplier(4)->Range(16, 1024);

void BM_SpectralNorm(benchmark::State& state) {
  const auto op = random_sign_matrix(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(norm_pq(*op, 2, 2, NormMode::Exact));
}
BENCHMARK(BM_SpectralNorm)->RangeMultiplier(4)->Range(16, 1024);

void BM_SampleProfile(benchmark::State& state) {
  const auto op = markov_op(hypercube(static_cast<int>(state.range(0)))).op;
  SamplingBudget b;
  for (auto _ : state) benchmark::DoNotOptimize(sample_profile(*op, 2, b));
}
BENCHMARK(BM_SampleProfile)->DenseRange(4, 10, 2);

void BM_DmPaired(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_sign_matrix(n, 6);
  const auto b = random_sign_matrix(n, 7);
  SamplingBudget bud;
  bud.vectors_per_k = 4;
  for (auto _ : state) benchmark::DoNotOptimize(dm_estimate(*a, *b, 2, bud, DmMode::Paired));
}
BENCHMARK(BM_DmPaired)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
