// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks for the hot paths: the Walsh transform, the exact
// growth step, formula sampling, and support closure.

#include <benchmark/benchmark.h>

#include "boolgrow/analysis.hpp"
#include "boolgrow/connective.hpp"
#include "boolgrow/process.hpp"
#include "boolgrow/spectrum.hpp"

using namespace boolgrow;

namespace {

ProcessSpec spec_of(const char* gate, int n, bool neg, bool c0, bool c1) {
  return ProcessSpec{SupportSpec{n, neg, c0, c1}, preset_connective(gate)};
}

void BM_transform(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ProcessSpec sp = spec_of("maj3", n, true, true, true);
  Distribution pi = iterate_exact(sp, 2);
  for (auto _ : state) benchmark::DoNotOptimize(transform(pi));
  state.SetComplexityN(1 << (1 << n));
}
BENCHMARK(BM_transform)->DenseRange(2, 4)->Complexity(benchmark::oNLogN);

void BM_step_exact_full_support(benchmark::State& state) {
  ProcessSpec sp = spec_of("maj3", 2, true, true, true);
  Distribution pi = iterate_exact(sp, 3); // support has closed by now
  for (auto _ : state) benchmark::DoNotOptimize(step_exact(pi, sp.alpha));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(pi.entries.size() *
                                                    pi.entries.size() *
                                                    pi.entries.size()));
}
BENCHMARK(BM_step_exact_full_support);

void BM_linear_step(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ProcessSpec sp = spec_of("xor3", n, true, false, false);
  Spectrum s = transform(iterate_exact(sp, 2));
  for (auto _ : state) benchmark::DoNotOptimize(linear_step(s, sp.alpha));
}
BENCHMARK(BM_linear_step)->Arg(8)->Arg(12)->Arg(16);

void BM_monte_carlo(benchmark::State& state) {
  ProcessSpec sp = spec_of("maj3", 3, false, false, false);
  const std::uint64_t samples = 2000;
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo(sp, 6, samples, seed++, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(samples));
}
BENCHMARK(BM_monte_carlo);

void BM_support_closure(benchmark::State& state) {
  ProcessSpec sp = spec_of("maj3", 3, true, true, true);
  for (auto _ : state) benchmark::DoNotOptimize(support_closure(sp));
}
BENCHMARK(BM_support_closure);

} // namespace

BENCHMARK_MAIN();
