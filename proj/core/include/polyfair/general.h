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

// End-to-end solvers: majorized full-revelation policies, and randomized
// single-mean policies for general signaling.

#ifndef POLYFAIR_GENERAL_H_
#define POLYFAIR_GENERAL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "polyfair/buckets.h"
#include "polyfair/mwu.h"
#include "polyfair/policy.h"

namespace polyfair {

enum class SolverKind { kAuto, kExact, kMwu };

struct SolveOptions {
  SolverKind solver = SolverKind::kAuto;
  MwuOptions mwu;
  std::uint64_t seed = 1;
  // Value or side-state scenarios are enumerated up to this count; beyond it
  // the full-revelation solver samples `samples` scenarios.
  std::int64_t max_scenarios = kMaxEnumeratedScenarios;
  int samples = 20000;
  EvalOptions eval;
};

template <class T>
struct Solution {
  Policy<T> policy;
  std::vector<T> utilities;  // true expected utilities
  std::vector<T> fake;       // general mode only
  std::vector<T> canonical;  // general mode: utilities valued at canonical bucket means
  bool has_fake = false;
  bool evaluated = false;    // utilities come from exact policy evaluation
  std::vector<T> target;     // utilities (full) or fake utilities (general) the solver aimed at
  std::vector<T> opt;        // OPT_j, j = 1..n
  int K = 1;
  std::string solver;
  bool sampled = false;
  std::int64_t scenarios = 0;
  std::int64_t iterations = 0;
  int search_steps = 0;
  std::int64_t profiles = 0;
  std::int64_t boundary_posteriors = 0;
};

template <class T>
Solution<T> SolveFull(const SetFunction<T>& f, const std::vector<ValueDist<T>>& dists,
                      const SolveOptions& options = {});

// mappings[k][i]: maximal mapping of agent i for bucket k.
template <class T>
std::vector<std::vector<AgentMapping<T>>> MaximalMappings(
    const std::vector<ValueDist<T>>& dists, const BucketScheme<T>& buckets);

// One rank scenario per bucket k and below / in / above state of the agents:
// probability Pr[state] / K and rank ghat_k for that state.
template <class T>
std::vector<RankScenario<T>> BucketRanks(
    const SetFunction<T>& f, const std::vector<ValueDist<T>>& dists,
    const BucketScheme<T>& buckets,
    const std::vector<std::vector<AgentMapping<T>>>& mappings,
    std::int64_t cap = kMaxEnumeratedScenarios);

template <class T>
Solution<T> GeneralSolve(const SetFunction<T>& f, const std::vector<ValueDist<T>>& dists,
                         const BucketScheme<T>& buckets, const SolveOptions& options = {});

}  // namespace polyfair

#endif  // POLYFAIR_GENERAL_H_
