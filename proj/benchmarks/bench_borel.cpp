#include <benchmark/benchmark.h>

#include "barrierlab/acceleration.hpp"
#include "barrierlab/borel.hpp"

using namespace barrierlab;
using namespace barrierlab::hp;

namespace {

BorelOptions opts(int bits) {
  BorelOptions o;
  o.bits = bits;
  o.rel_tol = bits > 100 ? 1e-20 : 1e-12;
  return o;
}

}  // namespace

static void BM_Y_direct(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  Complex p(-1.0, 0.0, bits);
  for (auto _ : state) benchmark::DoNotOptimize(Y_direct(p, opts(bits)));
}
BENCHMARK(BM_Y_direct)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Y_decomposed(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  Complex p(0.5, 0.0, bits);
  for (auto _ : state) benchmark::DoNotOptimize(Y_decomposed(p, opts(bits)));
}
BENCHMARK(BM_Y_decomposed)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_H_left(benchmark::State& state) {
  Complex p(0.95, 0.5, 96);
  for (auto _ : state) benchmark::DoNotOptimize(H_left(p, 3, opts(96)));
}
BENCHMARK(BM_H_left)->Unit(benchmark::kMillisecond);

static void BM_H_right(benchmark::State& state) {
  Complex p(1.05, 0.5, 96), c(0.0, 0.0, 96);
  for (auto _ : state) benchmark::DoNotOptimize(H_right(p, c, 3, opts(96)));
}
BENCHMARK(BM_H_right)->Unit(benchmark::kMillisecond);

static void BM_f_plus(benchmark::State& state) {
  Complex x(3.3, 0.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f_plus(x));
}
BENCHMARK(BM_f_plus)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_least_term(benchmark::State& state) {
  Complex x(static_cast<double>(state.range(0)), 0.0, 256);
  for (auto _ : state) benchmark::DoNotOptimize(least_term_truncation(x, 120));
}
BENCHMARK(BM_least_term)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
