#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "critns/certifier.hpp"
#include "critns/datagen.hpp"
#include "critns/fft.hpp"
#include "critns/grid.hpp"
#include "critns/operators.hpp"
#include "critns/solver.hpp"

using namespace critns;

namespace {

SpectralVectorField datum(int n) { return datagen::random_solenoidal(Grid(n), 7, -2.0, n / 4, 0.5); }

void BM_ForwardFft(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)));
  std::vector<double> real(g.real_size(), 0.25);
  std::vector<std::complex<double>> spec(g.spectral_size());
  for (auto _ : state) {
    forward_fft(g, real, spec);
    benchmark::DoNotOptimize(spec.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.real_size()));
}
BENCHMARK(BM_ForwardFft)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_InverseFft(benchmark::State& state) {
  const Grid g(static_cast<int>(state.range(0)));
  std::vector<double> real(g.real_size());
  std::vector<std::complex<double>> spec(g.spectral_size(), {1e-3, 0.0});
  for (auto _ : state) {
    inverse_fft(g, spec, real);
    benchmark::DoNotOptimize(real.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.real_size()));
}
BENCHMARK(BM_InverseFft)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_NonlinearTerm(benchmark::State& state) {
  const auto u = datum(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(u));
}
BENCHMARK(BM_NonlinearTerm)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_StepImex(benchmark::State& state) {
  const auto u = datum(static_cast<int>(state.range(0)));
  const auto scheme = state.range(1) == 4 ? solver::Scheme::imex_if_rk4 : solver::Scheme::imex_if_rk2;
  for (auto _ : state) benchmark::DoNotOptimize(solver::step_imex(u, 1e-3, scheme));
}
BENCHMARK(BM_StepImex)->Args({32, 2})->Args({32, 4})->Args({64, 4})->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const auto u = datum(static_cast<int>(state.range(0)));
  cert::CertifierConfig cfg;
  cfg.critical_context = false;
  for (auto _ : state) benchmark::DoNotOptimize(cert::condition_lhs(u, cfg));
}
BENCHMARK(BM_Certify)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
