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

#ifndef POLYFAIR_MAPPING_H_
#define POLYFAIR_MAPPING_H_

#include <span>
#include <string>
#include <vector>

#include "polyfair/buckets.h"
#include "polyfair/distribution.h"
#include "polyfair/set_function.h"

namespace polyfair {

// Signal scheme of one agent: table[v][s] = Pr[signal s | value index v].
template <class T>
struct AgentMapping {
  std::vector<std::string> signals;
  std::vector<std::vector<T>> table;

  int num_signals() const { return static_cast<int>(signals.size()); }
};

template <class T>
AgentMapping<T> NoRevelationMapping(const ValueDist<T>& dist);

template <class T>
AgentMapping<T> FullRevelationMapping(const ValueDist<T>& dist);

// Throws kPolicyMismatch unless every row is a probability distribution
// over the signals.
template <class T>
void ValidateMapping(const ValueDist<T>& dist, const AgentMapping<T>& mapping);

template <class T>
struct SignalOutcome {
  T prob;       // marginal probability of the signal
  T posterior;  // posterior mean; meaningless when prob == 0
};

template <class T>
std::vector<SignalOutcome<T>> SignalOutcomes(const ValueDist<T>& dist,
                                             const AgentMapping<T>& mapping);

// Posterior means of every agent for the signal profile sigma. Throws
// kUndefinedPosterior for zero-probability signals.
template <class T>
std::vector<T> PosteriorProfile(const std::vector<ValueDist<T>>& dists,
                                const std::vector<AgentMapping<T>>& mappings,
                                std::span<const int> sigma);

// Removes zero-probability signals.
template <class T>
AgentMapping<T> DropUnusedSignals(const ValueDist<T>& dist, AgentMapping<T> mapping);

// Pr[posterior mean lands in the interval].
template <class T>
T InIntervalProbability(const ValueDist<T>& dist, const AgentMapping<T>& mapping,
                        const Interval<T>& interval);

// Upper end used by the mapping LP for an interval open at hi: hi - tau with
// tau = min((hi - lo) / 2^20, (hi - largest support value below hi) / 2).
template <class T>
T EffectiveUpper(const ValueDist<T>& dist, const Interval<T>& interval);

// LOW / IN / HIGH scheme maximizing Pr[posterior in interval], made
// one-sided by PoolOneSided.
template <class T>
AgentMapping<T> MaximalMapping(const ValueDist<T>& dist, const Interval<T>& interval);

// Collapses signals into below / in / above the interval and pools below and
// above mass into the interval until one side is empty.
template <class T>
AgentMapping<T> PoolOneSided(const ValueDist<T>& dist, const AgentMapping<T>& mapping,
                             const Interval<T>& interval);

// Per agent: probabilities that the posterior falls below, inside, above
// the interval.
template <class T>
struct SideProbabilities {
  T below;
  T in;
  T above;
};

template <class T>
SideProbabilities<T> Sides(const ValueDist<T>& dist, const AgentMapping<T>& mapping,
                           const Interval<T>& interval);

// E[ghat_k(S; mu)] for independent agents, from the per-agent side
// probabilities of bucket k (canonical mean m).
template <class T>
SetFunction<T> ExpectedBucketRank(const SetFunction<T>& f,
                                  const std::vector<SideProbabilities<T>>& sides,
                                  const T& m);

}  // namespace polyfair

#endif  // POLYFAIR_MAPPING_H_
