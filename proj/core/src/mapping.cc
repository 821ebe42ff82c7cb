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

#include "polyfair/mapping.h"

#include <algorithm>

#include "polyfair/error.h"
#include "polyfair/lp.h"

namespace polyfair {

template <class T>
AgentMapping<T> NoRevelationMapping(const ValueDist<T>& dist) {
  AgentMapping<T> m;
  m.signals = {"pool"};
  m.table.assign(dist.size(), {T(1)});
  return m;
}

template <class T>
AgentMapping<T> FullRevelationMapping(const ValueDist<T>& dist) {
  AgentMapping<T> m;
  for (int v = 0; v < dist.size(); ++v) {
    m.signals.push_back(ScalarToString(dist.values[v]));
    std::vector<T> row(dist.size(), T(0));
    row[v] = 1;
    m.table.push_back(std::move(row));
  }
  return m;
}

template <class T>
void ValidateMapping(const ValueDist<T>& dist, const AgentMapping<T>& mapping) {
  if (static_cast<int>(mapping.table.size()) != dist.size()) {
    throw Error(ErrorCode::kPolicyMismatch, "mapping needs one row per support value");
  }
  if (mapping.signals.empty()) throw Error(ErrorCode::kPolicyMismatch, "mapping has no signals");
  for (const auto& row : mapping.table) {
    if (static_cast<int>(row.size()) != mapping.num_signals()) {
      throw Error(ErrorCode::kPolicyMismatch, "mapping row has wrong width");
    }
    T total = 0;
    for (const T& p : row) {
      if (p < 0) throw Error(ErrorCode::kPolicyMismatch, "negative signal probability");
      total += p;
    }
    if (!IsClose(total, T(1))) {
      throw Error(ErrorCode::kPolicyMismatch, "signal probabilities sum to " + ScalarToString(total));
    }
  }
}

template <class T>
std::vector<SignalOutcome<T>> SignalOutcomes(const ValueDist<T>& dist,
                                             const AgentMapping<T>& mapping) {
  std::vector<SignalOutcome<T>> out(mapping.num_signals(), {T(0), T(0)});
  for (int s = 0; s < mapping.num_signals(); ++s) {
    T mass = 0;
    T weighted = 0;
    for (int v = 0; v < dist.size(); ++v) {
      T joint = dist.probs[v] * mapping.table[v][s];
      mass += joint;
      weighted += joint * dist.values[v];
    }
    out[s].prob = mass;
    if (mass > 0) out[s].posterior = weighted / mass;
  }
  return out;
}

template <class T>
std::vector<T> PosteriorProfile(const std::vector<ValueDist<T>>& dists,
                                const std::vector<AgentMapping<T>>& mappings,
                                std::span<const int> sigma) {
  if (dists.size() != mappings.size() || sigma.size() != dists.size()) {
    throw Error(ErrorCode::kPolicyMismatch, "profile length mismatch");
  }
  std::vector<T> mu(dists.size());
  for (size_t i = 0; i < dists.size(); ++i) {
    if (sigma[i] < 0 || sigma[i] >= mappings[i].num_signals()) {
      throw Error(ErrorCode::kPolicyMismatch, "unknown signal index");
    }
    SignalOutcome<T> o = SignalOutcomes(dists[i], mappings[i])[sigma[i]];
    if (!(o.prob > 0)) {
      throw Error(ErrorCode::kUndefinedPosterior,
                  "signal '" + mappings[i].signals[sigma[i]] + "' of agent " +
                      std::to_string(i) + " has probability zero");
    }
    mu[i] = o.posterior;
  }
  return mu;
}

template <class T>
AgentMapping<T> DropUnusedSignals(const ValueDist<T>& dist, AgentMapping<T> mapping) {
  std::vector<SignalOutcome<T>> outcomes = SignalOutcomes(dist, mapping);
  AgentMapping<T> out;
  out.table.assign(dist.size(), {});
  for (int s = 0; s < mapping.num_signals(); ++s) {
    if (!(outcomes[s].prob > 0)) continue;
    out.signals.push_back(mapping.signals[s]);
    for (int v = 0; v < dist.size(); ++v) out.table[v].push_back(mapping.table[v][s]);
  }
  return out;
}

template <class T>
T InIntervalProbability(const ValueDist<T>& dist, const AgentMapping<T>& mapping,
                        const Interval<T>& interval) {
  return Sides(dist, mapping, interval).in;
}

template <class T>
SideProbabilities<T> Sides(const ValueDist<T>& dist, const AgentMapping<T>& mapping,
                           const Interval<T>& interval) {
  SideProbabilities<T> out{T(0), T(0), T(0)};
  for (const auto& o : SignalOutcomes(dist, mapping)) {
    if (!(o.prob > 0)) continue;
    if (o.posterior < interval.lo) {
      out.below += o.prob;
    } else if (interval.Contains(o.posterior)) {
      out.in += o.prob;
    } else {
      out.above += o.prob;
    }
  }
  return out;
}

template <class T>
T EffectiveUpper(const ValueDist<T>& dist, const Interval<T>& interval) {
  if (interval.hi_closed) return interval.hi;
  T tau = (interval.hi - interval.lo) / T(1 << 20);
  for (const T& v : dist.values) {
    if (v < interval.hi) {
      T half = (interval.hi - v) / T(2);
      if (half < tau) tau = half;
    }
  }
  return interval.hi - tau;
}

namespace {

template <class T>
AgentMapping<T> ThreeSignal(const std::vector<std::vector<T>>& table) {
  AgentMapping<T> m;
  m.signals = {"LOW", "IN", "HIGH"};
  m.table = table;
  return m;
}

}  // namespace

template <class T>
AgentMapping<T> MaximalMapping(const ValueDist<T>& dist, const Interval<T>& interval) {
  int nv = dist.size();
  if (nv == 0) throw Error(ErrorCode::kInvalidDistribution, "empty distribution");
  T hi = EffectiveUpper(dist, interval);
  // a_v = Pr[IN | v] in [0, 1].
  LinearProgram<T> lp(nv);
  std::vector<std::pair<int, T>> lower_row;
  std::vector<std::pair<int, T>> upper_row;
  for (int v = 0; v < nv; ++v) {
    lp.SetObjective(v, dist.probs[v]);
    lp.AddRow({{v, T(1)}}, Sense::kLe, T(1));
    lower_row.push_back({v, T(dist.probs[v] * (dist.values[v] - interval.lo))});
    upper_row.push_back({v, T(dist.probs[v] * (dist.values[v] - hi))});
  }
  lp.AddRow(lower_row, Sense::kGe, T(0));
  lp.AddRow(upper_row, Sense::kLe, T(0));
  LpSolution<T> sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) throw Error(ErrorCode::kSolver, "maximal mapping LP failed");
  std::vector<std::vector<T>> table(nv, std::vector<T>(3, T(0)));
  for (int v = 0; v < nv; ++v) {
    T a = sol.x[v];
    if (a > 1) a = 1;
    if (a < 0) a = 0;
    table[v][1] = a;
    T rest = T(1) - a;
    if (dist.values[v] < interval.lo) {
      table[v][0] = rest;
    } else {
      table[v][2] = rest;
    }
  }
  AgentMapping<T> m = DropUnusedSignals(dist, ThreeSignal(table));
  return PoolOneSided(dist, m, interval);
}

template <class T>
AgentMapping<T> PoolOneSided(const ValueDist<T>& dist, const AgentMapping<T>& mapping,
                             const Interval<T>& interval) {
  ValidateMapping(dist, mapping);
  int nv = dist.size();
  std::vector<SignalOutcome<T>> outcomes = SignalOutcomes(dist, mapping);
  // Columns: 0 below, 1 in, 2 above.
  std::vector<std::vector<T>> table(nv, std::vector<T>(3, T(0)));
  for (int s = 0; s < mapping.num_signals(); ++s) {
    if (!(outcomes[s].prob > 0)) continue;
    const T& mu = outcomes[s].posterior;
    int side = mu < interval.lo ? 0 : (interval.Contains(mu) ? 1 : 2);
    for (int v = 0; v < nv; ++v) table[v][side] += mapping.table[v][s];
  }
  AgentMapping<T> collapsed = ThreeSignal(table);
  std::vector<SignalOutcome<T>> phi = SignalOutcomes(dist, collapsed);
  if (!(phi[0].prob > 0) || !(phi[2].prob > 0)) {
    return DropUnusedSignals(dist, collapsed);
  }
  const T& eta1 = phi[0].posterior;
  const T& eta3 = phi[2].posterior;
  T target;
  if (phi[1].prob > 0) {
    target = phi[1].posterior;
  } else {
    target = (eta1 + eta3) / T(2);
    T hi = EffectiveUpper(dist, interval);
    if (target < interval.lo) target = interval.lo;
    if (target > hi) target = hi;
  }
  // target = alpha * eta1 + (1 - alpha) * eta3.
  T alpha = (eta3 - target) / (eta3 - eta1);
  T beta = phi[0].prob * (T(1) - alpha) / (phi[2].prob * alpha);
  T take_low = 1;
  T take_high = 1;
  if (beta <= 1) {
    take_high = beta;
  } else {
    take_low = T(1) / beta;
  }
  for (int v = 0; v < nv; ++v) {
    T moved_low = table[v][0] * take_low;
    T moved_high = table[v][2] * take_high;
    table[v][0] -= moved_low;
    table[v][2] -= moved_high;
    table[v][1] += moved_low + moved_high;
  }
  if constexpr (!kIsExact<T>) {
    // Round away the side that should now be empty.
    bool low_empty = beta <= 1;
    for (int v = 0; v < nv; ++v) {
      int side = low_empty ? 0 : 2;
      table[v][1] += table[v][side];
      table[v][side] = 0;
    }
  }
  return DropUnusedSignals(dist, ThreeSignal(table));
}

template <class T>
SetFunction<T> ExpectedBucketRank(const SetFunction<T>& f,
                                  const std::vector<SideProbabilities<T>>& sides,
                                  const T& m) {
  int n = f.n();
  if (static_cast<int>(sides.size()) != n) throw Error(ErrorCode::kGroundSetMismatch, "one entry per agent");
  if (n > 12) throw Error(ErrorCode::kCapExceeded, "bucket rank expectation supports n <= 12");
  // Enumerate side assignments with positive probability.
  struct State {
    T prob;
    Subset in;
    Subset above;
    T f_above;
  };
  std::vector<State> states = {{T(1), 0, 0, T(0)}};
  for (int i = 0; i < n; ++i) {
    std::vector<State> next;
    for (const State& s : states) {
      if (sides[i].below > 0) next.push_back({s.prob * sides[i].below, s.in, s.above, T(0)});
      if (sides[i].in > 0) next.push_back({s.prob * sides[i].in, s.in | Bit(i), s.above, T(0)});
      if (sides[i].above > 0) next.push_back({s.prob * sides[i].above, s.in, s.above | Bit(i), T(0)});
    }
    states = std::move(next);
  }
  for (State& s : states) s.f_above = f(s.above);
  auto eval = [f, states, m](Subset set) {
    T total = 0;
    for (const State& s : states) {
      Subset part = set & s.in;
      if (part == 0) continue;
      total += s.prob * (f.impl().Eval(s.above | part) - s.f_above);
    }
    return T(m * total);
  };
  return FromFunction<T>(n, eval, "expected_bucket_rank");
}

#define POLYFAIR_INSTANTIATE(T)                                                          \
  template struct AgentMapping<T>;                                                       \
  template AgentMapping<T> NoRevelationMapping<T>(const ValueDist<T>&);                  \
  template AgentMapping<T> FullRevelationMapping<T>(const ValueDist<T>&);                \
  template void ValidateMapping<T>(const ValueDist<T>&, const AgentMapping<T>&);         \
  template std::vector<SignalOutcome<T>> SignalOutcomes<T>(const ValueDist<T>&,          \
                                                           const AgentMapping<T>&);      \
  template std::vector<T> PosteriorProfile<T>(const std::vector<ValueDist<T>>&,          \
                                              const std::vector<AgentMapping<T>>&,       \
                                              std::span<const int>);                     \
  template AgentMapping<T> DropUnusedSignals<T>(const ValueDist<T>&, AgentMapping<T>);   \
  template T InIntervalProbability<T>(const ValueDist<T>&, const AgentMapping<T>&,       \
                                      const Interval<T>&);                               \
  template T EffectiveUpper<T>(const ValueDist<T>&, const Interval<T>&);                 \
  template AgentMapping<T> MaximalMapping<T>(const ValueDist<T>&, const Interval<T>&);   \
  template AgentMapping<T> PoolOneSided<T>(const ValueDist<T>&, const AgentMapping<T>&,  \
                                           const Interval<T>&);                          \
  template SideProbabilities<T> Sides<T>(const ValueDist<T>&, const AgentMapping<T>&,    \
                                         const Interval<T>&);                            \
  template SetFunction<T> ExpectedBucketRank<T>(const SetFunction<T>&,                   \
                                                const std::vector<SideProbabilities<T>>&, \
                                                const T&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
