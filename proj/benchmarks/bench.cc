// Copyright 2026 The polyfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numeric>

#include "polyfair/general.h"
#include "polyfair/induced.h"
#include "polyfair/majorization.h"
#include "polyfair/mwu.h"
#include "polyfair/polymatroid.h"
#include "polyfair_cli/fixtures.h"

namespace polyfair {
namespace {

void BM_GreedyTruncation(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto f = UniformTruncation<double>(n, n / 2.0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(GreedyAllocation<double>(f, order));
}
BENCHMARK(BM_GreedyTruncation)->Arg(8)->Arg(20)->Arg(64);

void BM_LeastMajorizedPoint(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1 + i % 3;
  auto g = InducedG<double>(UniformTruncation<double>(n, 2.0), v);
  for (auto _ : state) benchmark::DoNotOptimize(LeastMajorizedBasePoint(g));
}
BENCHMARK(BM_LeastMajorizedPoint)->Arg(6)->Arg(10)->Arg(14);

void BM_EvaluateLongShot(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto inst = cli::LongShotInstance<double>(n, 0.1);
  auto policy = cli::LongShotDesignedPolicy(inst, n, 0.1);
  EvalOptions opts;
  opts.symmetry = EvalOptions::Symmetry::kAlways;
  const BucketScheme<double>* none = nullptr;
  for (auto _ : state) benchmark::DoNotOptimize(EvaluatePolicy(inst.f, inst.dists, policy, none, opts));
}
BENCHMARK(BM_EvaluateLongShot)->Arg(10)->Arg(100);

void BM_EvaluateMonteCarlo(benchmark::State& state) {
  auto inst = cli::LongShotInstance<double>(100, 0.1);
  auto policy = cli::LongShotDesignedPolicy(inst, 100, 0.1);
  EvalOptions opts;
  opts.mode = EvalMode::kMonteCarlo;
  opts.samples = static_cast<int>(state.range(0));
  const BucketScheme<double>* none = nullptr;
  for (auto _ : state) benchmark::DoNotOptimize(EvaluatePolicy(inst.f, inst.dists, policy, none, opts));
}
BENCHMARK(BM_EvaluateMonteCarlo)->Arg(1000)->Unit(benchmark::kMillisecond);

std::vector<RankScenario<double>> IidRanks(int n) {
  auto d = MakeValueDist<double>({{1.0, 0.5}, {2.0, 0.3}, {4.0, 0.2}});
  std::vector<ValueDist<double>> dists(n, d);
  return FullRevelationRanks(UniformTruncation<double>(n, 1.0), EnumerateScenarios(dists));
}

void BM_BinarySearchOpt(benchmark::State& state) {
  auto ranks = IidRanks(static_cast<int>(state.range(0)));
  MwuOptions opts;
  opts.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(BinarySearchOpt(ranks, 1, opts));
}
BENCHMARK(BM_BinarySearchOpt)->Args({3, 1})->Args({4, 1})->Args({4, 4})->Unit(benchmark::kMillisecond);

void BM_SolveMajorizedExact(benchmark::State& state) {
  auto ranks = IidRanks(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SolveMajorizedExact(ranks));
}
BENCHMARK(BM_SolveMajorizedExact)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_GeneralSolve(benchmark::State& state) {
  auto d = MakeValueDist<double>({{1.0, 0.5}, {3.0, 0.3}, {8.0, 0.2}}, 8.0);
  std::vector<ValueDist<double>> dists(static_cast<int>(state.range(0)), d);
  auto f = UniformTruncation<double>(static_cast<int>(dists.size()), 1.0);
  BucketScheme<double> buckets(8.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(GeneralSolve(f, dists, buckets));
}
BENCHMARK(BM_GeneralSolve)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace polyfair

BENCHMARK_MAIN();
