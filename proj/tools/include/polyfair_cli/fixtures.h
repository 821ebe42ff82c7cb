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

// Regression fixtures for three small constructions:
//   A: one deterministic agent against many long-shot agents, select one;
//   B: nested utility vectors with geometric scale M;
//   C: a hexagonal utility set strictly inside its base polytope, and paired
//      groups whose utility vectors admit no good majorized point.

#ifndef POLYFAIR_CLI_FIXTURES_H_
#define POLYFAIR_CLI_FIXTURES_H_

#include <string>
#include <vector>

#include "polyfair/io.h"
#include "polyfair/policy.h"

namespace polyfair::cli {

// Agent 0 has value 2 - q; agents 1..n have value 1/q with probability q,
// else 1. At most one agent is selected.
template <class T>
Instance<T> LongShotInstance(int n, const T& q);

// Agents 1..n send HIGH with probability 1/(nq) when their value is 1/q and
// LOW otherwise; agent 0 sends nothing. Exact receiver, uniform ties.
template <class T>
Policy<T> LongShotDesignedPolicy(const Instance<T>& instance, int n, const T& q);

// u^(j)_k = M^j for k >= j, else 0 (j, k = 1..n).
template <class T>
std::vector<std::vector<T>> NestedPoints(int n, const T& M);

// g(S) = h(|S|) with h = (0, 1, 1.9, 2.5).
template <class T>
SetFunction<T> HexagonRank();

// B(g) cut by x - y <= 0.39: the five remaining hexagon vertices and the two
// new ones on the cut.
template <class T>
std::vector<std::vector<T>> HexagonUtilitySet();

// 2n agents in groups {i, 2n+1-i}; selecting group i pays n^(2i) to agent i
// and N - n^(2i) to its partner.
template <class T>
std::vector<std::vector<T>> GroupPoints(int n, const T& N);

// Best factor for GroupPoints(3, 3^7) from tests/oracles/group_factor.py
// (2.188770190250), rounded down by 1e-6.
inline constexpr const char* kGroupFactorThreshold = "1736935/793567";

struct Check {
  std::string name;
  bool pass = false;
  std::string value;
  std::string expected;
};

struct Reproduction {
  std::vector<Check> checks;
  Json report;
  bool ok() const;
};

Reproduction ReproduceA(int n, const std::string& q);
Reproduction ReproduceB(int n, const std::string& M);
Reproduction ReproduceC();

}  // namespace polyfair::cli

#endif  // POLYFAIR_CLI_FIXTURES_H_
