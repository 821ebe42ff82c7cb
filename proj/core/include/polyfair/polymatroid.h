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

#ifndef POLYFAIR_POLYMATROID_H_
#define POLYFAIR_POLYMATROID_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "polyfair/set_function.h"

namespace polyfair {

// Throws kInvalidPermutation unless order is a permutation of 0..n-1.
void ValidatePermutation(std::span<const int> order, int n);

std::vector<std::vector<int>> AllPermutations(int n);

// x[order[k]] = f(order[0..k]) - f(order[0..k-1]).
template <class T>
std::vector<T> GreedyAllocation(const SetFunction<T>& f,
                                std::span<const int> order);

// Maximizes w.x over P(f). Agents are processed by decreasing weight; equal
// weights are ordered by position in tie_break. Zero-weight agents get 0.
template <class T>
std::vector<T> GreedyMaxLinear(const SetFunction<T>& f, std::span<const T> w,
                               std::span<const int> tie_break);

enum class MembershipStatus { kOutside, kIndependent, kBase };

std::string MembershipName(MembershipStatus status);

template <class T>
struct MembershipResult {
  MembershipStatus status = MembershipStatus::kOutside;
  Subset witness = 0;  // a violated constraint when kOutside
};

template <class T>
MembershipResult<T> Membership(const SetFunction<T>& f, std::span<const T> x);

struct Violation {
  enum class Kind { kEmptyNonzero, kNegative, kNotMonotone, kNotSubmodular };
  Kind kind;
  Subset a = 0;
  Subset b = 0;
};

std::string ViolationKindName(Violation::Kind kind);

struct ValidationReport {
  bool exhaustive = true;
  std::int64_t violation_count = 0;
  std::vector<Violation> violations;  // first max_listed violations

  bool ok() const { return violation_count == 0; }
};

struct CheckOptions {
  int max_listed = 1000;
  int exhaustive_limit = 12;
  int samples = 200000;
  std::uint64_t seed = 1;
};

// Checks f(empty)=0, nonnegativity, monotonicity and submodularity. Pairs
// are scanned exhaustively for n <= exhaustive_limit; otherwise random
// diamonds are sampled. Symmetric functions larger than 20 agents are checked
// through their cardinality profile.
template <class T>
ValidationReport CheckSubmodularMonotone(const SetFunction<T>& f,
                                         const CheckOptions& options = {});

template <class T>
struct Minimizer {
  Subset set = 0;
  T value{};
};

// Minimizes h over nonempty subsets of domain (at most 20 agents). Ties go to
// the larger set, then to the numerically larger mask, so the result is
// always an inclusion-maximal minimizer.
template <class T>
Minimizer<T> MinimizeOverSubsets(const std::function<T(Subset)>& h,
                                 Subset domain);

// Distinct greedy vertices of B(f) over all n! orders (n <= 8), sorted.
template <class T>
std::vector<std::vector<T>> BaseVertices(const SetFunction<T>& f);

}  // namespace polyfair

#endif  // POLYFAIR_POLYMATROID_H_
