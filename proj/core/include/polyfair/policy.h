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

#ifndef POLYFAIR_POLICY_H_
#define POLYFAIR_POLICY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyfair/buckets.h"
#include "polyfair/mapping.h"
#include "polyfair/set_function.h"

namespace polyfair {

enum class ReceiverKind {
  kExact,      // greedy on posterior means
  kCanonical,  // greedy on the canonical mean of each posterior's bucket
};

enum class SelectionKind {
  kUniform,   // uniformly random order inside each tie block
  kPriority,  // one fixed priority order breaks ties
  kSchedule,  // a distribution over priority orders
  kExplicit,  // a face point per signal profile
};

template <class T>
struct WeightedOrder {
  T weight;
  std::vector<int> order;
};

// How the receiver picks a point of its optimal face.
template <class T>
struct Selection {
  SelectionKind kind = SelectionKind::kUniform;
  std::vector<WeightedOrder<T>> orders;
  // Optional per-profile schedules (kSchedule) or points (kExplicit), keyed
  // by ProfileKey.
  std::map<std::string, std::vector<WeightedOrder<T>>> profile_orders;
  std::map<std::string, std::vector<T>> points;
};

template <class T>
struct PolicyComponent {
  T weight;
  std::vector<AgentMapping<T>> mappings;
  Selection<T> selection;
  std::optional<int> active_bucket;  // fake utilities count this bucket only
};

template <class T>
struct Policy {
  std::string kind = "custom";
  ReceiverKind receiver = ReceiverKind::kExact;
  std::vector<PolicyComponent<T>> components;
};

// "0,2,1": signal index of every agent.
std::string ProfileKey(std::span<const int> sigma);

template <class T>
Policy<T> NoRevelationPolicy(const std::vector<ValueDist<T>>& dists,
                             ReceiverKind receiver = ReceiverKind::kExact);

template <class T>
Policy<T> FullRevelationPolicy(const std::vector<ValueDist<T>>& dists,
                               ReceiverKind receiver = ReceiverKind::kExact,
                               Selection<T> selection = {});

// Throws kPolicyMismatch when the policy does not fit the instance.
template <class T>
void ValidatePolicy(const Policy<T>& policy, int n,
                    const std::vector<ValueDist<T>>& dists);

// Receiver weights: posterior means, or their canonical means.
template <class T>
std::vector<T> ReceiverWeights(std::span<const T> mu, ReceiverKind receiver,
                               const BucketScheme<T>* buckets);

// Receiver allocation for posterior means mu with a fixed tie-break order.
template <class T>
std::vector<T> ReceiverAllocate(const SetFunction<T>& f, std::span<const T> mu,
                                const BucketScheme<T>* buckets,
                                std::span<const int> tie_break);

// Expected allocation for receiver weights w under a selection rule.
template <class T>
std::vector<T> SelectAllocation(const SetFunction<T>& f, std::span<const T> w,
                                const Selection<T>& selection,
                                const std::string& profile_key);

enum class EvalMode { kExact, kMonteCarlo };

struct EvalOptions {
  EvalMode mode = EvalMode::kExact;
  int samples = 100000;
  std::uint64_t seed = 1;
  std::int64_t profile_cap = 1000000;
  // Use class counts for symmetric rank functions with uniform selection:
  // kAuto when the ground set is too large for direct enumeration.
  enum class Symmetry { kAuto, kAlways, kNever } symmetry = Symmetry::kAuto;
};

template <class T>
struct Evaluation {
  std::vector<T> utilities;  // E[v_i x_i]
  std::vector<T> fake;       // only when some component has an active bucket
  bool has_fake = false;
  // E[m(mu_i) x_i] with m the canonical mean of the posterior's bucket; only
  // when a bucket scheme is supplied.
  std::vector<T> canonical;
  bool has_canonical = false;
  std::vector<double> std_errors;  // Monte Carlo only
  T welfare{};
  std::int64_t profiles = 0;
  std::int64_t boundary_posteriors = 0;  // posteriors on an interior bucket edge
  bool used_symmetry = false;
};

template <class T>
Evaluation<T> EvaluatePolicy(const SetFunction<T>& f,
                             const std::vector<ValueDist<T>>& dists,
                             const Policy<T>& policy,
                             const BucketScheme<T>* buckets,
                             const EvalOptions& options = {});

}  // namespace polyfair

#endif  // POLYFAIR_POLICY_H_
