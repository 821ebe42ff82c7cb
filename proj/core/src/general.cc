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

#include "polyfair/general.h"

#include <cmath>
#include <numeric>

#include "polyfair/error.h"
#include "polyfair/induced.h"
#include "polyfair/majorization.h"

namespace polyfair {

namespace {

template <class T>
double ScenarioCount(const std::vector<ValueDist<T>>& dists) {
  double count = 1;
  for (const auto& d : dists) count *= d.size();
  return count;
}

bool UseExact(SolverKind kind, int n, double scenarios, std::int64_t cap) {
  if (kind == SolverKind::kExact) return true;
  if (kind == SolverKind::kMwu) return false;
  return n <= 8 && scenarios <= static_cast<double>(cap);
}

// MWU schedules come back in double; weights are rebuilt in T so that they
// sum to one exactly.
template <class T>
std::vector<WeightedOrder<T>> ConvertOrders(const std::vector<WeightedOrder<double>>& orders) {
  std::vector<WeightedOrder<T>> out;
  T total = 0;
  for (size_t k = 0; k < orders.size(); ++k) {
    T w = k + 1 == orders.size() ? T(1) - total : ConvertScalar<T>(orders[k].weight);
    total += w;
    out.push_back({w, orders[k].order});
  }
  return out;
}

template <class T>
std::vector<T> ConvertVector(const std::vector<double>& v) {
  std::vector<T> out;
  for (double x : v) out.push_back(ConvertScalar<T>(x));
  return out;
}

template <class T>
void Solve(const std::vector<RankScenario<T>>& ranks, bool exact, const SolveOptions& options,
           Solution<T>& sol, std::vector<WeightedOrder<T>>& orders) {
  if (exact) {
    MajorizedSolution<T> m = SolveMajorizedExact(ranks);
    sol.solver = "exact";
    sol.target = m.utilities;
    sol.opt = m.opt;
    orders = m.orders;
  } else {
    MajorizedSolution<double> m = SolveMajorizedMwu(ToDoubleRanks(ranks), options.mwu);
    sol.solver = "mwu";
    sol.target = ConvertVector<T>(m.utilities);
    sol.opt = ConvertVector<T>(m.opt);
    sol.iterations = m.iterations;
    sol.search_steps = m.search_steps;
    orders = ConvertOrders<T>(m.orders);
  }
}

template <class T>
void Evaluate(const SetFunction<T>& f, const std::vector<ValueDist<T>>& dists,
              const BucketScheme<T>* buckets, const SolveOptions& options, Solution<T>& sol) {
  try {
    Evaluation<T> ev = EvaluatePolicy(f, dists, sol.policy, buckets, options.eval);
    sol.utilities = ev.utilities;
    sol.fake = ev.fake;
    sol.canonical = ev.canonical;
    sol.has_fake = ev.has_fake;
    sol.profiles = ev.profiles;
    sol.boundary_posteriors = ev.boundary_posteriors;
    sol.evaluated = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCapExceeded) throw;
    sol.evaluated = false;
  }
}

}  // namespace

template <class T>
Solution<T> SolveFull(const SetFunction<T>& f, const std::vector<ValueDist<T>>& dists,
                      const SolveOptions& options) {
  int n = f.n();
  if (static_cast<int>(dists.size()) != n) throw Error(ErrorCode::kGroundSetMismatch, "one distribution per agent");
  if (n > kMaxSubsetAgents) throw Error(ErrorCode::kCapExceeded, "solving needs at most 64 agents");
  Solution<T> sol;
  double count = ScenarioCount(dists);
  std::vector<Scenario<T>> scenarios;
  if (count <= static_cast<double>(options.max_scenarios)) {
    scenarios = EnumerateScenarios(dists, options.max_scenarios);
  } else {
    sol.sampled = true;
    scenarios = SampleScenarios(dists, options.samples, options.seed);
  }
  sol.scenarios = static_cast<std::int64_t>(scenarios.size());
  bool exact = !sol.sampled && UseExact(options.solver, n, count, options.max_scenarios);
  if (options.solver == SolverKind::kExact && sol.sampled) {
    throw Error(ErrorCode::kCapExceeded, "too many value scenarios for the exact solver; use --solver mwu");
  }
  std::vector<RankScenario<T>> ranks = FullRevelationRanks(f, scenarios);
  std::vector<WeightedOrder<T>> orders;
  Solve(ranks, exact, options, sol, orders);
  sol.policy = FullRevelationPolicy(dists, ReceiverKind::kExact,
                                    Selection<T>{SelectionKind::kSchedule, orders, {}, {}});
  sol.policy.kind = "majorized_full_revelation";
  Evaluate<T>(f, dists, nullptr, options, sol);
  if (!sol.evaluated) sol.utilities = sol.target;
  sol.has_fake = false;
  sol.fake.clear();
  return sol;
}

template <class T>
std::vector<std::vector<AgentMapping<T>>> MaximalMappings(
    const std::vector<ValueDist<T>>& dists, const BucketScheme<T>& buckets) {
  std::vector<std::vector<AgentMapping<T>>> out(buckets.K());
  for (int k = 0; k < buckets.K(); ++k) {
    for (const auto& d : dists) out[k].push_back(MaximalMapping(d, buckets.interval(k)));
  }
  return out;
}

template <class T>
std::vector<RankScenario<T>> BucketRanks(
    const SetFunction<T>& f, const std::vector<ValueDist<T>>& dists,
    const BucketScheme<T>& buckets,
    const std::vector<std::vector<AgentMapping<T>>>& mappings, std::int64_t cap) {
  int n = f.n();
  int K = buckets.K();
  if (std::pow(3.0, n) * K > static_cast<double>(cap)) {
    throw Error(ErrorCode::kCapExceeded, "too many bucket states to enumerate");
  }
  std::vector<RankScenario<T>> ranks;
  T inv_k = T(1) / FromInt<T>(K);
  for (int k = 0; k < K; ++k) {
    std::vector<SideProbabilities<T>> sides;
    for (int i = 0; i < n; ++i) sides.push_back(Sides(dists[i], mappings[k][i], buckets.interval(k)));
    T m = buckets.canonical(k);
    std::vector<int> state(n, 0);
    while (true) {
      T p = inv_k;
      Subset above = 0, in = 0;
      for (int i = 0; i < n && p != 0; ++i) {
        const auto& s = sides[i];
        p *= state[i] == 0 ? s.below : state[i] == 1 ? s.in : s.above;
        if (state[i] == 1) in |= Bit(i);
        if (state[i] == 2) above |= Bit(i);
      }
      if (p != 0) {
        T base = f(above);
        std::string desc = "bucket " + std::to_string(k) + " rank, in=" + SubsetToString(in) +
                           " above=" + SubsetToString(above);
        ranks.push_back({p, FromFunction<T>(
                                n,
                                [f, above, in, m, base](Subset S) -> T {
                                  return m * (f(above | (S & in)) - base);
                                },
                                desc)});
      }
      int i = n - 1;
      while (i >= 0 && ++state[i] == 3) state[i--] = 0;
      if (i < 0) break;
    }
  }
  return ranks;
}

template <class T>
Solution<T> GeneralSolve(const SetFunction<T>& f, const std::vector<ValueDist<T>>& dists,
                         const BucketScheme<T>& buckets, const SolveOptions& options) {
  int n = f.n();
  if (static_cast<int>(dists.size()) != n) throw Error(ErrorCode::kGroundSetMismatch, "one distribution per agent");
  if (n > kMaxSubsetAgents) throw Error(ErrorCode::kCapExceeded, "solving needs at most 64 agents");
  for (const auto& d : dists) {
    if (d.values.front() < 1 || d.values.back() > buckets.V()) {
      throw Error(ErrorCode::kDomain, "values must lie in [1, V]");
    }
  }
  Solution<T> sol;
  sol.K = buckets.K();
  auto mappings = MaximalMappings(dists, buckets);
  std::vector<RankScenario<T>> ranks = BucketRanks(f, dists, buckets, mappings, options.max_scenarios);
  sol.scenarios = static_cast<std::int64_t>(ranks.size());
  bool exact = UseExact(options.solver, n, static_cast<double>(ranks.size()), options.max_scenarios);
  std::vector<WeightedOrder<T>> orders;
  Solve(ranks, exact, options, sol, orders);
  sol.policy.kind = "randomized_single_mean";
  sol.policy.receiver = ReceiverKind::kCanonical;
  T weight = T(1) / FromInt<T>(sol.K);
  for (int k = 0; k < sol.K; ++k) {
    PolicyComponent<T> c;
    c.weight = weight;
    c.mappings = mappings[k];
    c.selection = Selection<T>{SelectionKind::kSchedule, orders, {}, {}};
    c.active_bucket = k;
    sol.policy.components.push_back(std::move(c));
  }
  Evaluate<T>(f, dists, &buckets, options, sol);
  if (!sol.evaluated) {
    sol.utilities = sol.target;
    sol.fake = sol.target;
    sol.canonical = sol.target;
  }
  sol.has_fake = true;
  return sol;
}

#define POLYFAIR_INSTANTIATE(T)                                                           \
  template Solution<T> SolveFull<T>(const SetFunction<T>&, const std::vector<ValueDist<T>>&, \
                                    const SolveOptions&);                                 \
  template std::vector<std::vector<AgentMapping<T>>> MaximalMappings<T>(                  \
      const std::vector<ValueDist<T>>&, const BucketScheme<T>&);                          \
  template std::vector<RankScenario<T>> BucketRanks<T>(                                   \
      const SetFunction<T>&, const std::vector<ValueDist<T>>&, const BucketScheme<T>&,    \
      const std::vector<std::vector<AgentMapping<T>>>&, std::int64_t);                    \
  template Solution<T> GeneralSolve<T>(const SetFunction<T>&, const std::vector<ValueDist<T>>&, \
                                       const BucketScheme<T>&, const SolveOptions&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
