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

#ifndef POLYFAIR_DISTRIBUTION_H_
#define POLYFAIR_DISTRIBUTION_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polyfair/scalar.h"

namespace polyfair {

// Discrete prior of one agent: strictly increasing values with positive
// probabilities summing to one.
template <class T>
struct ValueDist {
  std::vector<T> values;
  std::vector<T> probs;

  T Mean() const;
  int size() const { return static_cast<int>(values.size()); }
};

// Sorts the support and validates it. With V given, values must lie in
// [1, V]. Throws kInvalidDistribution.
template <class T>
ValueDist<T> MakeValueDist(std::vector<std::pair<T, T>> support,
                           std::optional<T> V = std::nullopt);

template <class T>
struct Scenario {
  std::vector<T> v;
  T p;
};

inline constexpr std::int64_t kMaxEnumeratedScenarios = 1000000;

// Product measure over all value profiles, agent 0 varying slowest.
template <class T>
std::vector<Scenario<T>> EnumerateScenarios(const std::vector<ValueDist<T>>& dists,
                                            std::int64_t cap = kMaxEnumeratedScenarios);

// count i.i.d. draws with weight 1/count each. Agent i always draws from
// stream i, so adding agents leaves the others' draws unchanged.
template <class T>
std::vector<Scenario<T>> SampleScenarios(const std::vector<ValueDist<T>>& dists,
                                         int count, std::uint64_t seed);

// Stateless counter-based generator (splitmix64 finalizer over
// seed/stream/counter).
class CounterRng {
 public:
  static std::uint64_t Bits(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t counter);
  // Uniform in [0, 1) with 53 random bits.
  static double Uniform(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter);
};

// Index drawn from discrete probabilities with a uniform u in [0, 1).
template <class T>
int DrawIndex(const std::vector<T>& probs, double u);

}  // namespace polyfair

#endif  // POLYFAIR_DISTRIBUTION_H_
