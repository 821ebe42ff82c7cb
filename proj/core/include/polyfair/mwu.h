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

// Majorized full-revelation and bucketed policies over a finite family of
// weighted rank functions ("rank scenarios"). Each scenario s carries a
// probability p_s and a polymatroid rank g_s on utility space; a selection
// order pi picks the greedy vertex of every B(g_s) along pi.

#ifndef POLYFAIR_MWU_H_
#define POLYFAIR_MWU_H_

#include <cstdint>
#include <vector>

#include "polyfair/distribution.h"
#include "polyfair/policy.h"
#include "polyfair/set_function.h"

namespace polyfair {

template <class T>
struct RankScenario {
  T prob;
  SetFunction<T> g;
};

// g_s = InducedG(f, v_s) for every value scenario.
template <class T>
std::vector<RankScenario<T>> FullRevelationRanks(const SetFunction<T>& f,
                                                 const std::vector<Scenario<T>>& scenarios);

template <class T>
std::vector<RankScenario<double>> ToDoubleRanks(const std::vector<RankScenario<T>>& ranks);

// R(S) = sum_s p_s g_s(S), tabulated (n <= 20).
template <class T>
SetFunction<T> ExpectedRank(const std::vector<RankScenario<T>>& ranks);

// sum_s p_s x_s where x_s is the greedy vertex of B(g_s) along order.
template <class T>
std::vector<T> ExpectedVertex(const std::vector<RankScenario<T>>& ranks,
                              std::span<const int> order, int threads = 1);

template <class T>
struct PrefixLpResult {
  T opt{};
  std::vector<T> utilities;
};

inline constexpr std::int64_t kPrefixLpBudget = 1000000;

// max Q_j(sum_s p_s u_s) over u_s in B(g_s), one block of 2^n rank rows per
// scenario. Throws kCapExceeded when scenarios * 2^n exceeds the budget.
template <class T>
PrefixLpResult<T> SolvePrefixLpExact(const std::vector<RankScenario<T>>& ranks, int j,
                                     std::int64_t budget = kPrefixLpBudget);

struct MwuOptions {
  double delta = 0.05;
  int threads = 1;
  std::int64_t max_iterations = 20000000;
  // How often the running average of the weights is tried as an
  // infeasibility certificate.
  int certificate_interval = 256;
};

// Counter-utility block of the dual oracle: minimizes lambda.U over
// {0 <= U_i <= M, sum U - (n-j) M >= target}.
struct CounterBlock {
  std::vector<double> u;
  double m = 0;
  double cost = 0;
};
CounterBlock MinimizeCounter(std::span<const double> lambda, int j, double target);

struct OracleResult {
  std::vector<int> order;          // greedy order of the scenario block
  std::vector<double> utilities;   // expected vertex along order
  CounterBlock counter;
  double value = 0;  // lambda.(U - E x); positive proves infeasibility
};

// Throws kDomain for negative weights.
OracleResult DualOracle(const std::vector<RankScenario<double>>& ranks,
                        std::span<const double> lambda, int j, double target,
                        int threads = 1);

struct MwuResult {
  bool feasible = false;
  bool proven = false;  // infeasibility backed by a certificate
  std::vector<double> utilities;  // averaged primal (expected vertex)
  std::vector<double> counter;    // averaged truncated utilities
  std::vector<double> certificate;
  double max_violation = 0;
  std::int64_t iterations = 0;
};

// Decides whether some mixture of vertices reaches Q_j >= target up to
// coupling violations of delta / n.
MwuResult MwuFeasibility(const std::vector<RankScenario<double>>& ranks, int j,
                         double target, const MwuOptions& options = {});

struct SearchResult {
  double opt = 0;
  int steps = 0;
  std::int64_t iterations = 0;
};

// Largest feasible target on [0, (j/n) E[g(E)]] to within delta.
SearchResult BinarySearchOpt(const std::vector<RankScenario<double>>& ranks, int j,
                             const MwuOptions& options = {});

template <class T>
struct MajorizedSolution {
  std::vector<T> utilities;  // expected utilities of the schedule
  std::vector<T> opt;        // OPT_j, j = 1..n
  std::vector<WeightedOrder<T>> orders;
  std::int64_t iterations = 0;
  int search_steps = 0;
  int retries = 0;
};

// Exact path: the least majorized point of B(R), written as a convex
// combination of greedy vertices (n <= 8).
template <class T>
MajorizedSolution<T> SolveMajorizedExact(const std::vector<RankScenario<T>>& ranks);

// MWU path: OPT_j by binary search, then one combined run over all j. The
// schedule is the empirical distribution of the oracle's orders.
MajorizedSolution<double> SolveMajorizedMwu(const std::vector<RankScenario<double>>& ranks,
                                            const MwuOptions& options = {});

// Writes y as a convex combination of greedy vertices of B(R) (n <= 8).
template <class T>
std::vector<WeightedOrder<T>> DecomposeIntoOrders(const SetFunction<T>& R,
                                                  std::span<const T> y);

}  // namespace polyfair

#endif  // POLYFAIR_MWU_H_
