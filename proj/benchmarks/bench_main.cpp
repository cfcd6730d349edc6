// Copyright 2026 The binomlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Wall-clock convenience timings: accuracy claims live in the tests, these
// are only here so regressions in the hot paths are visible.

#include <benchmark/benchmark.h>

#include "binomlab/float_eval.hpp"
#include "binomlab/identity.hpp"
#include "binomlab/mc.hpp"
#include "binomlab/rng.hpp"

namespace {

using namespace binomlab;

void BM_EvalFloat(benchmark::State& state, EvalStrategy strategy) {
  const IdentityInstance inst{state.range(0), 1, Rational(1)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_float(inst, strategy));
  }
  state.SetComplexityN(state.range(0));
}

void BM_ExactVerify(benchmark::State& state) {
  const IdentityInstance inst{state.range(0), 3, Rational(1, 2)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify(inst));
  }
  state.SetComplexityN(state.range(0));
}

void BM_SampleMax(benchmark::State& state) {
  RandomStream stream(42);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_max_exp1(n, stream));
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_EstimatePLess(benchmark::State& state) {
  const IdentityInstance inst{5, 2, Rational(1)};
  const StreamConfig cfg{42, 16, static_cast<std::uint64_t>(state.range(0)) / 16};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_p_less(inst, cfg, 1));
  }
  state.SetItemsProcessed(state.iterations() * cfg.total_samples());
}

}  // namespace

BENCHMARK_CAPTURE(BM_EvalFloat, naive, EvalStrategy::NaiveSum)
    ->RangeMultiplier(2)->Range(60, 960)->Complexity();
BENCHMARK_CAPTURE(BM_EvalFloat, compensated, EvalStrategy::CompensatedSum)
    ->RangeMultiplier(2)->Range(60, 960)->Complexity();
BENCHMARK_CAPTURE(BM_EvalFloat, pairwise, EvalStrategy::PairwiseSum)
    ->RangeMultiplier(2)->Range(60, 960)->Complexity();
BENCHMARK_CAPTURE(BM_EvalFloat, product, EvalStrategy::ProductForm)
    ->RangeMultiplier(2)->Range(60, 960)->Complexity();
BENCHMARK(BM_ExactVerify)->Arg(50)->Arg(100)->Arg(200)->Complexity();
BENCHMARK(BM_SampleMax)->Arg(1)->Arg(10)->Arg(100);
BENCHMARK(BM_EstimatePLess)->Arg(1 << 14)->Arg(1 << 17);

BENCHMARK_MAIN();
