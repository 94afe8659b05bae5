#include <benchmark/benchmark.h>

#include <vector>

#include "critns/gronwall.hpp"

using namespace critns::gronwall;

namespace {

void BM_ConvolutionWeights(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> nodes(n + 1);
  for (int i = 0; i <= n; ++i) nodes[i] = static_cast<double>(i) / n;
  for (auto _ : state) benchmark::DoNotOptimize(convolution_weights(nodes, 0.875, 0.125, 1.0));
}
BENCHMARK(BM_ConvolutionWeights)->Arg(100)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_SolveExtremal(benchmark::State& state) {
  GronwallProblem p;
  p.a0 = 1.0;
  p.c1 = 0.1;
  p.c2 = 0.1;
  p.horizon = 1.0;
  p.mesh.intervals = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_extremal(p));
}
BENCHMARK(BM_SolveExtremal)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
