// Microbenchmarks for the spectral kernel: the per-step cost of an
// integration is a handful of transforms, so deriv / antideriv / rhs / step
// throughput is what sets wall time for convergence ladders and sweeps.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "hslab/dynamics.hpp"
#include "hslab/spectral.hpp"

namespace {

using namespace hslab;

GridFunction test_profile(int n) {
  return sample(Grid(n), [](double x) {
    return std::sin(2.0 * std::numbers::pi * x) +
           0.3 * std::sin(6.0 * std::numbers::pi * x);
  });
}

void BM_deriv(benchmark::State& state) {
  const GridFunction f = test_profile(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(deriv(f, 1));
}
BENCHMARK(BM_deriv)->Arg(256)->Arg(1024)->Arg(4096);

void BM_antideriv(benchmark::State& state) {
  const GridFunction f = test_profile(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(antideriv_mean_zero(f));
}
BENCHMARK(BM_antideriv)->Arg(256)->Arg(1024)->Arg(4096);

void BM_dealiased_product(benchmark::State& state) {
  const GridFunction f = test_profile(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dealiased_product(f, f));
}
BENCHMARK(BM_dealiased_product)->Arg(256)->Arg(1024)->Arg(4096);

void BM_mhs_rhs(benchmark::State& state) {
  const MhsState s(test_profile(static_cast<int>(state.range(0))), 1);
  for (auto _ : state) benchmark::DoNotOptimize(mhs_rhs(s));
}
BENCHMARK(BM_mhs_rhs)->Arg(256)->Arg(1024)->Arg(4096);

void BM_hs2_rhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridFunction u = test_profile(n);
  const Hs2State s(-deriv(u, 2), u, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(hs2_rhs(s, 1.0));
}
BENCHMARK(BM_hs2_rhs)->Arg(256)->Arg(1024)->Arg(4096);

void BM_rk4_step(benchmark::State& state) {
  const GridFunction u = test_profile(static_cast<int>(state.range(0)));
  const double dt = 0.4 / u.n();
  auto rhs = [](const GridFunction& v) { return mhs_rhs(MhsState(v, 1)); };
  for (auto _ : state) benchmark::DoNotOptimize(rk4_step(u, dt, rhs));
}
BENCHMARK(BM_rk4_step)->Arg(256)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
