#include <benchmark/benchmark.h>

#include "omegaforge/construct.hpp"
#include "omegaforge/oracle.hpp"
#include "omegaforge/polyreal.hpp"
#include "omegaforge/sweep.hpp"

using namespace omegaforge;

namespace {

RatPoly w_quartic() {
  RatPoly t = RatPoly::from_longs({-2, 4});
  return t * t * t * t - (t * t) * Rat(2);
}

void BM_CountRoots(benchmark::State& state) {
  RatPoly p = RatPoly::from_longs({-1, 0, 5, 0, -7, 0, 1, 2, 1});
  for (auto _ : state) {
    long n = count_roots(p, Rat(-4), Rat(4));
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_CountRoots);

void BM_IsolateRoots(benchmark::State& state) {
  RatPoly p = RatPoly::constant(Rat(1));
  for (long i = 1; i <= state.range(0); ++i)
    p = p * RatPoly::linear_root(make_rat(i, state.range(0) + 1));
  for (auto _ : state) {
    auto roots = isolate_roots(p, Rat(0), Rat(1));
    benchmark::DoNotOptimize(roots);
  }
}
BENCHMARK(BM_IsolateRoots)->Arg(4)->Arg(8);

void BM_OmegaPoly(benchmark::State& state) {
  RatPoly p = w_quartic();
  for (auto _ : state) {
    auto prof = omega_poly(p);
    benchmark::DoNotOptimize(prof);
  }
}
BENCHMARK(BM_OmegaPoly);

void BM_DecideAnalytic(benchmark::State& state) {
  CardinalitySpec s;
  s.base = {0, 2, 3, 4, 5, 6};
  for (auto _ : state) {
    auto w = decide_analytic(s);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_DecideAnalytic);

void BM_BuildWitness(benchmark::State& state) {
  ExtremaSequence seq{{0, 2, 4, 3, 2, 2, 0}};
  for (auto _ : state) {
    PLFunction f = build_witness(seq);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_BuildWitness);

void BM_ConstructContinuous(benchmark::State& state) {
  CardinalitySpec s;
  s.base = {0, 2, 4};
  for (auto _ : state) {
    Construction c = construct_continuous(s);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ConstructContinuous);

void BM_EnumerateShapes(benchmark::State& state) {
  for (auto _ : state) {
    long n = 0;
    enum_shapes(state.range(0), 4, [&](const ShapeWord&) {
      ++n;
      return true;
    });
    benchmark::DoNotOptimize(n);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumerateShapes)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
