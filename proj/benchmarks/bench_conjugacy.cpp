#include <benchmark/benchmark.h>

#include <random>

#include "jacobi/conjugacy.hpp"
#include "jacobi/squarefn.hpp"

using namespace jacobi;

static void BM_RieszAll(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ParamVector p = ParamVector::uniform(d, 0.0, 0.0);
  std::mt19937_64 rng(3);
  const Expansion f = Expansion::random(p, Basis::standard(), 6, rng);
  for (auto _ : state) {
    for (int i = 0; i < d; ++i) benchmark::DoNotOptimize(riesz(i, f).coeffs().size());
  }
}
BENCHMARK(BM_RieszAll)->DenseRange(1, 4);

static void BM_GFunctionClosedForm(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const ParamVector p = ParamVector::uniform(2, 0.0, 1.0);
  std::mt19937_64 rng(5);
  const Expansion f = Expansion::random(p, Basis::standard(), N, rng);
  const std::vector<double> x{0.3, -0.1};
  for (auto _ : state) benchmark::DoNotOptimize(g_function(f, x));
}
BENCHMARK(BM_GFunctionClosedForm)->Arg(3)->Arg(5);

static void BM_GFunctionQuadrature(benchmark::State& state) {
  const ParamVector p = ParamVector::uniform(2, 0.0, 1.0);
  std::mt19937_64 rng(5);
  const Expansion f = Expansion::random(p, Basis::standard(), 5, rng);
  const std::vector<double> x{0.3, -0.1};
  const TimeRule rule = log_time_rule();
  for (auto _ : state) benchmark::DoNotOptimize(g_function_quadrature(f, x, GVariant::full, rule));
}
BENCHMARK(BM_GFunctionQuadrature);
