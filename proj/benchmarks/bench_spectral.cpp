#include <benchmark/benchmark.h>

#include <random>

#include "jacobi/quadrature.hpp"
#include "jacobi/spectral.hpp"

using namespace jacobi;

// Synthesis of a full [0, N]^d expansion on its default tensor grid.
static void BM_SynthesizeOnGrid(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int N = 6;
  const ParamVector p = ParamVector::uniform(d, 0.0, 0.0);
  std::mt19937_64 rng(7);
  const Expansion f = Expansion::random(p, Basis::standard(), N, rng);
  const TensorGrid grid = TensorGrid::gauss(p, N + 2);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_on(f, grid).data());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_SynthesizeOnGrid)->DenseRange(1, 4);

static void BM_HeatKernelTable(benchmark::State& state) {
  const ParamVector p = ParamVector::uniform(1, 0.0, 0.0);
  const auto xs = as_points(interior_points(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(heat_kernel_table(0.1, p, xs, xs).values.data());
}
BENCHMARK(BM_HeatKernelTable)->Arg(11)->Arg(51);

static void BM_Subordination(benchmark::State& state) {
  const ParamVector p = ParamVector::uniform(2, 0.0, 0.5);
  std::mt19937_64 rng(11);
  const Expansion f = Expansion::random(p, Basis::standard(), 6, rng);
  const std::vector<double> x{0.2, -0.4};
  for (auto _ : state) benchmark::DoNotOptimize(subordinated_poisson(0.7, f, x).value);
}
BENCHMARK(BM_Subordination);
