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

#ifndef POLYFAIR_SUBSET_H_
#define POLYFAIR_SUBSET_H_

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace polyfair {

// Subsets of the ground set {0..n-1} as bitmasks; bit i is agent i.
using Subset = std::uint64_t;

inline constexpr int kMaxSubsetAgents = 64;
// Hard cap for anything that enumerates all 2^n subsets.
inline constexpr int kMaxEnumerationAgents = 20;

constexpr Subset Bit(int i) { return Subset{1} << i; }

constexpr Subset FullSet(int n) {
  return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1;
}

constexpr bool Contains(Subset s, int i) { return (s >> i) & 1u; }

constexpr int Cardinality(Subset s) { return std::popcount(s); }

constexpr bool IsSubsetOf(Subset a, Subset b) { return (a & ~b) == 0; }

std::vector<int> Members(Subset s);

// Builds a mask from agent ids; throws kMalformedSubset when an id is
// outside [0, n).
Subset SubsetOf(std::span<const int> ids, int n);

// "{0,2,5}"
std::string SubsetToString(Subset s);

// The ground set of n agents with dense ids 0..n-1.
struct GroundSet {
  int n = 0;

  explicit GroundSet(int size);
  Subset all() const { return FullSet(n); }
  bool operator==(const GroundSet&) const = default;
};

}  // namespace polyfair

#endif  // POLYFAIR_SUBSET_H_
