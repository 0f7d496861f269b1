#include <benchmark/benchmark.h>

#include "barrierlab/dirichlet.hpp"
#include "barrierlab/hp/special.hpp"
#include "barrierlab/solutions.hpp"

using namespace barrierlab;
using namespace barrierlab::hp;

static void BM_gamma(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  Complex z(7.3, 2.1, bits);
  for (auto _ : state) benchmark::DoNotOptimize(gamma(z));
}
BENCHMARK(BM_gamma)->Arg(64)->Arg(256)->Arg(1024);

static void BM_y0(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  Complex x(5.5, 3.0, bits);
  for (auto _ : state) benchmark::DoNotOptimize(y0(x));
}
BENCHMARK(BM_y0)->Arg(64)->Arg(256)->Arg(1024);

static void BM_y0_ml(benchmark::State& state) {
  Complex x(5.5, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(y0_ml(x));
}
BENCHMARK(BM_y0_ml)->Arg(64)->Arg(256);

static void BM_y1_near_pole(benchmark::State& state) {
  Complex x(4.0 + 1e-5, 0.0, 256);
  for (auto _ : state) benchmark::DoNotOptimize(y1(x));
}
BENCHMARK(BM_y1_near_pole);

static void BM_lambert_w(benchmark::State& state) {
  Complex z(3.0, 40.0, 256);
  for (auto _ : state) benchmark::DoNotOptimize(lambert_w(z, 0));
}
BENCHMARK(BM_lambert_w);

// p close to the barrier needs far more terms
static void BM_F_real(benchmark::State& state) {
  DirichletSeriesSpec F = builtin_F();
  Complex p(state.range(0) / 1000.0, 0.0, 256);
  for (auto _ : state) benchmark::DoNotOptimize(eval_series(F, p));
}
BENCHMARK(BM_F_real)->Arg(500)->Arg(900)->Arg(990)->Unit(benchmark::kMillisecond);

static void BM_F_complex(benchmark::State& state) {
  DirichletSeriesSpec F = builtin_F();
  Complex p(0.9, 3.0, 256);
  for (auto _ : state) benchmark::DoNotOptimize(eval_series(F, p));
}
BENCHMARK(BM_F_complex)->Unit(benchmark::kMillisecond);
