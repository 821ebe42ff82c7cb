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

// Rank functions of the achievable utility sets.
//
// For a realized value vector v with value blocks E_1, ..., E_m (descending),
//   g(S; v) = sum_j v_j [ f(P_j + (S & E_j)) - f(P_j) ],  P_j = E_1 + ... + E_{j-1}.
// For bucket k of a posterior-mean profile mu,
//   ghat_k(S; mu) = m_k [ f(P + (S & E'_k)) - f(P) ],  P = agents in higher buckets.

#ifndef POLYFAIR_INDUCED_H_
#define POLYFAIR_INDUCED_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyfair/buckets.h"
#include "polyfair/set_function.h"

namespace polyfair {

template <class T>
struct ValueBlocks {
  std::vector<Subset> blocks;  // by strictly decreasing value
  std::vector<T> values;
};

template <class T>
ValueBlocks<T> MakeValueBlocks(std::span<const T> v);

template <class T>
struct WeightedVector {
  T prob;
  std::vector<T> v;
};

// Throws kDomain for nonpositive values.
template <class T>
SetFunction<T> InducedG(const SetFunction<T>& f, std::span<const T> v);

// Throws kDomain for means outside [1, V].
template <class T>
SetFunction<T> InducedGHat(const SetFunction<T>& f, std::span<const T> mu,
                           const BucketScheme<T>& buckets, int k);

// sum_s p_s g(.; v_s). Probabilities must sum to one.
template <class T>
SetFunction<T> ExpectedInduced(const SetFunction<T>& f,
                               const std::vector<WeightedVector<T>>& scenarios);

// (1/K) sum_k sum_mu p ghat_k(.; mu), with profiles[k] the posterior-mean
// profiles produced under bucket k's mapping.
template <class T>
SetFunction<T> ExpectedInducedBucket(
    const SetFunction<T>& f,
    const std::vector<std::vector<WeightedVector<T>>>& profiles,
    const BucketScheme<T>& buckets);

// Throws kInvalidDistribution unless the weights sum to one (1e-12 in float
// mode).
template <class T>
void CheckProbabilitySum(const std::vector<WeightedVector<T>>& items);

// g(S) = max over points of sum_{i in S} p_i.
template <class T>
SetFunction<T> SaturationFunction(int n, std::vector<std::vector<T>> points);

template <class T>
struct Certificate {
  bool ok = false;
  std::string reason;
  std::optional<Subset> failing_subset;
  std::optional<std::vector<T>> failing_vertex;
  std::vector<std::vector<T>> utility_vectors;
};

// Checks that conv(points) has saturation function g on every subset and
// that every greedy vertex of B(g) lies in conv(points). Also reports when g
// itself is not a polymatroid rank.
template <class T>
Certificate<T> CertifyUtilitySet(const SetFunction<T>& g,
                                 const std::vector<std::vector<T>>& points);

// Enumerates the receiver's utility vectors over all tie-break orders inside
// value blocks (n <= 6) and certifies them against InducedG(f, v).
template <class T>
Certificate<T> VerifyBaseEqualsUtilities(const SetFunction<T>& f,
                                         std::span<const T> v);

// Whether x lies in conv(points), by LP.
template <class T>
bool InConvexHull(std::span<const T> x, const std::vector<std::vector<T>>& points);

}  // namespace polyfair

#endif  // POLYFAIR_INDUCED_H_
