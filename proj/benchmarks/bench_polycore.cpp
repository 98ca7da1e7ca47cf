#include <benchmark/benchmark.h>

#include "jacobi/polycore.hpp"
#include "jacobi/quadrature.hpp"

using namespace jacobi;

static void BM_EvalJacobi(benchmark::State& state) {
  const ParamPair p(0.5, 1.5);
  const int k = static_cast<int>(state.range(0));
  double x = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_jacobi(p, k, x));
    x = x > 0.9 ? -0.9 : x + 1e-3;
  }
}
BENCHMARK(BM_EvalJacobi)->Arg(4)->Arg(20)->Arg(200);

static void BM_Sweep(benchmark::State& state) {
  const ParamPair p(-0.5, 0.0);
  const int k = static_cast<int>(state.range(0));
  std::vector<double> out(k + 1);
  for (auto _ : state) {
    jacobi_sweep(p, k, 0.3, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_Sweep)->Arg(20)->Arg(400);

static void BM_GaussJacobi(benchmark::State& state) {
  const ParamPair p(1.0, 2.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_jacobi(p, n).weights.data());
}
BENCHMARK(BM_GaussJacobi)->Arg(16)->Arg(64)->Arg(256);
