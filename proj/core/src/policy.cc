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

#include "polyfair/policy.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polyfair/error.h"
#include "polyfair/induced.h"
#include "polyfair/polymatroid.h"

namespace polyfair {

std::string ProfileKey(std::span<const int> sigma) {
  std::string key;
  for (size_t i = 0; i < sigma.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(sigma[i]);
  }
  return key;
}

template <class T>
Policy<T> NoRevelationPolicy(const std::vector<ValueDist<T>>& dists,
                             ReceiverKind receiver) {
  Policy<T> p;
  p.kind = "no_revelation";
  p.receiver = receiver;
  PolicyComponent<T> c;
  c.weight = 1;
  for (const auto& d : dists) c.mappings.push_back(NoRevelationMapping(d));
  p.components.push_back(std::move(c));
  return p;
}

template <class T>
Policy<T> FullRevelationPolicy(const std::vector<ValueDist<T>>& dists,
                               ReceiverKind receiver, Selection<T> selection) {
  Policy<T> p;
  p.kind = "full_revelation";
  p.receiver = receiver;
  PolicyComponent<T> c;
  c.weight = 1;
  for (const auto& d : dists) c.mappings.push_back(FullRevelationMapping(d));
  c.selection = std::move(selection);
  p.components.push_back(std::move(c));
  return p;
}

namespace {

template <class T>
void ValidateOrders(const std::vector<WeightedOrder<T>>& orders, int n) {
  if (orders.empty()) throw Error(ErrorCode::kPolicyMismatch, "selection has no orders");
  T total = 0;
  for (const auto& o : orders) {
    if (o.weight < 0) throw Error(ErrorCode::kPolicyMismatch, "negative order weight");
    ValidatePermutation(o.order, n);
    total += o.weight;
  }
  if (!IsClose(total, T(1))) throw Error(ErrorCode::kPolicyMismatch, "order weights must sum to 1");
}

template <class T>
bool UnitWeights(const std::vector<T>& w) {
  T total = 0;
  for (const T& x : w) total += x;
  return IsClose(total, T(1));
}

// Agents sorted by decreasing weight; ties keep their relative order in rank.
template <class T>
std::vector<int> ByWeight(std::span<const T> w, std::span<const int> rank) {
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (!TiesWith(w[a], w[b])) return w[a] > w[b];
    return rank.empty() ? false : rank[a] < rank[b];
  });
  return order;
}

// Greedy for rank functions that depend on |S| only; works for any n.
template <class T>
std::vector<T> SymmetricGreedy(const SetFunction<T>& f, std::span<const T> w,
                               std::span<const int> tie_break) {
  int n = f.n();
  std::vector<int> rank(n);
  for (int k = 0; k < n; ++k) rank[tie_break[k]] = k;
  std::vector<T> x(n, T(0));
  std::vector<int> order = ByWeight<T>(w, rank);
  T f_before = f.EvalCount(0);
  for (int k = 0; k < n; ++k) {
    if (!(w[order[k]] > 0)) break;
    T f_after = f.EvalCount(k + 1);
    x[order[k]] = f_after - f_before;
    f_before = f_after;
  }
  return x;
}

// Expected greedy allocation with a uniformly random order inside each block
// of equal weights.
template <class T>
std::vector<T> UniformTieAllocation(const SetFunction<T>& f, std::span<const T> w) {
  int n = f.n();
  std::vector<T> x(n, T(0));
  if (f.IsSymmetric()) {
    std::vector<int> order = ByWeight<T>(w, {});
    int before = 0;
    T f_before = f.EvalCount(0);
    for (int start = 0; start < n;) {
      int end = start;
      while (end < n && TiesWith(w[order[end]], w[order[start]])) ++end;
      int b = end - start;
      T f_after = f.EvalCount(before + b);
      if (w[order[start]] > 0) {
        T share = (f_after - f_before) / FromInt<T>(b);
        for (int k = start; k < end; ++k) x[order[k]] = share;
      }
      before += b;
      f_before = f_after;
      start = end;
    }
    return x;
  }
  ValueBlocks<T> blocks = MakeValueBlocks(w);
  std::vector<std::vector<int>> members;
  double total = 1;
  for (Subset b : blocks.blocks) {
    members.push_back(Members(b));
    for (int k = 2; k <= static_cast<int>(members.back().size()); ++k) total *= k;
  }
  if (total > 40320) throw Error(ErrorCode::kCapExceeded, "too many tie-break orders to average");
  std::vector<std::vector<int>> current = members;
  std::int64_t count = 0;
  while (true) {
    std::vector<int> order;
    for (const auto& m : current) order.insert(order.end(), m.begin(), m.end());
    std::vector<T> y = GreedyMaxLinear<T>(f, w, order);
    for (int i = 0; i < n; ++i) x[i] += y[i];
    ++count;
    size_t j = 0;
    while (j < current.size() &&
           !std::next_permutation(current[j].begin(), current[j].end())) {
      ++j;
    }
    if (j == current.size()) break;
  }
  T inv = T(1) / FromInt<T>(count);
  for (T& v : x) v *= inv;
  return x;
}

}  // namespace

template <class T>
void ValidatePolicy(const Policy<T>& policy, int n,
                    const std::vector<ValueDist<T>>& dists) {
  if (policy.components.empty()) throw Error(ErrorCode::kPolicyMismatch, "policy has no components");
  if (static_cast<int>(dists.size()) != n) throw Error(ErrorCode::kPolicyMismatch, "one distribution per agent");
  std::vector<T> weights;
  for (const auto& c : policy.components) {
    if (c.weight < 0) throw Error(ErrorCode::kPolicyMismatch, "negative component weight");
    weights.push_back(c.weight);
    if (static_cast<int>(c.mappings.size()) != n) {
      throw Error(ErrorCode::kPolicyMismatch,
                  "policy has " + std::to_string(c.mappings.size()) + " mappings for " +
                      std::to_string(n) + " agents");
    }
    for (int i = 0; i < n; ++i) ValidateMapping(dists[i], c.mappings[i]);
    switch (c.selection.kind) {
      case SelectionKind::kUniform:
        break;
      case SelectionKind::kPriority:
        if (c.selection.orders.size() != 1) {
          throw Error(ErrorCode::kPolicyMismatch, "priority selection needs exactly one order");
        }
        ValidatePermutation(c.selection.orders.front().order, n);
        break;
      case SelectionKind::kSchedule:
        ValidateOrders(c.selection.orders, n);
        for (const auto& [key, orders] : c.selection.profile_orders) ValidateOrders(orders, n);
        break;
      case SelectionKind::kExplicit:
        for (const auto& [key, x] : c.selection.points) {
          if (static_cast<int>(x.size()) != n) throw Error(ErrorCode::kPolicyMismatch, "explicit point has wrong length");
        }
        break;
    }
  }
  if (!UnitWeights(weights)) throw Error(ErrorCode::kPolicyMismatch, "component weights must sum to 1");
}

template <class T>
std::vector<T> ReceiverWeights(std::span<const T> mu, ReceiverKind receiver,
                               const BucketScheme<T>* buckets) {
  std::vector<T> w(mu.begin(), mu.end());
  if (receiver == ReceiverKind::kCanonical) {
    if (!buckets) throw Error(ErrorCode::kDomain, "canonical receiver needs a bucket scheme");
    for (T& x : w) x = buckets->Canonical(x);
  }
  return w;
}

template <class T>
std::vector<T> ReceiverAllocate(const SetFunction<T>& f, std::span<const T> mu,
                                const BucketScheme<T>* buckets,
                                std::span<const int> tie_break) {
  std::vector<T> w = ReceiverWeights(mu, buckets ? ReceiverKind::kCanonical : ReceiverKind::kExact, buckets);
  return GreedyMaxLinear<T>(f, w, tie_break);
}

template <class T>
std::vector<T> SelectAllocation(const SetFunction<T>& f, std::span<const T> w,
                                const Selection<T>& selection,
                                const std::string& profile_key) {
  int n = f.n();
  switch (selection.kind) {
    case SelectionKind::kUniform:
      return UniformTieAllocation(f, w);
    case SelectionKind::kPriority:
    case SelectionKind::kSchedule: {
      const std::vector<WeightedOrder<T>>* orders = &selection.orders;
      if (auto it = selection.profile_orders.find(profile_key);
          it != selection.profile_orders.end()) {
        orders = &it->second;
      }
      std::vector<T> x(n, T(0));
      for (const auto& o : *orders) {
        if (o.weight == 0) continue;
        std::vector<T> y = f.IsSymmetric() ? SymmetricGreedy<T>(f, w, o.order)
                                           : GreedyMaxLinear<T>(f, w, o.order);
        for (int i = 0; i < n; ++i) x[i] += o.weight * y[i];
      }
      return x;
    }
    case SelectionKind::kExplicit: {
      auto it = selection.points.find(profile_key);
      if (it == selection.points.end()) {
        throw Error(ErrorCode::kPolicyMismatch, "no explicit allocation for profile " + profile_key);
      }
      const std::vector<T>& x = it->second;
      if (Membership<T>(f, x).status == MembershipStatus::kOutside) {
        throw Error(ErrorCode::kPolicyMismatch, "explicit allocation for " + profile_key + " is infeasible");
      }
      std::vector<int> identity(n);
      std::iota(identity.begin(), identity.end(), 0);
      std::vector<T> best = GreedyMaxLinear<T>(f, w, identity);
      T best_welfare = 0;
      T welfare = 0;
      for (int i = 0; i < n; ++i) {
        best_welfare += w[i] * best[i];
        welfare += w[i] * x[i];
      }
      if (!IsClose(welfare, best_welfare)) {
        throw Error(ErrorCode::kPolicyMismatch,
                    "explicit allocation for " + profile_key + " is not receiver-optimal");
      }
      return x;
    }
  }
  return {};
}

namespace {

template <class T>
bool OnInteriorEdge(const T& mu, const BucketScheme<T>* buckets) {
  if (!buckets) return false;
  for (int k = 1; k < buckets->K(); ++k) {
    if (mu == buckets->canonical(k)) return true;
  }
  return false;
}

template <class T>
struct AgentOutcomes {
  std::vector<int> signals;  // with positive probability
  std::vector<T> probs;
  std::vector<T> posteriors;
};

template <class T>
std::vector<AgentOutcomes<T>> ComponentOutcomes(const std::vector<ValueDist<T>>& dists,
                                                const PolicyComponent<T>& c) {
  std::vector<AgentOutcomes<T>> out(dists.size());
  for (size_t i = 0; i < dists.size(); ++i) {
    auto outcomes = SignalOutcomes(dists[i], c.mappings[i]);
    for (int s = 0; s < static_cast<int>(outcomes.size()); ++s) {
      if (!(outcomes[s].prob > 0)) continue;
      out[i].signals.push_back(s);
      out[i].probs.push_back(outcomes[s].prob);
      out[i].posteriors.push_back(outcomes[s].posterior);
    }
  }
  return out;
}

template <class T>
void CheckActiveBucket(const PolicyComponent<T>& c, const BucketScheme<T>* buckets) {
  if (!c.active_bucket) return;
  if (!buckets) throw Error(ErrorCode::kPolicyMismatch, "fake utilities need a bucket scheme");
  if (*c.active_bucket < 0 || *c.active_bucket >= buckets->K()) {
    throw Error(ErrorCode::kPolicyMismatch, "active bucket out of range");
  }
}

template <class T>
Evaluation<T> EvaluateExact(const SetFunction<T>& f, const std::vector<ValueDist<T>>& dists,
                            const Policy<T>& policy, const BucketScheme<T>* buckets,
                            const EvalOptions& options) {
  int n = f.n();
  Evaluation<T> ev;
  ev.utilities.assign(n, T(0));
  ev.fake.assign(n, T(0));
  ev.canonical.assign(n, T(0));
  for (const auto& c : policy.components) {
    CheckActiveBucket(c, buckets);
    if (c.active_bucket) ev.has_fake = true;
    if (c.weight == 0) continue;
    std::vector<AgentOutcomes<T>> outs = ComponentOutcomes(dists, c);
    std::int64_t count = 1;
    for (const auto& o : outs) {
      count *= static_cast<std::int64_t>(o.signals.size());
      if (count > options.profile_cap) {
        throw Error(ErrorCode::kCapExceeded,
                    "signal profile enumeration exceeds " + std::to_string(options.profile_cap));
      }
      for (const T& mu : o.posteriors) {
        if (OnInteriorEdge(mu, buckets)) ++ev.boundary_posteriors;
      }
    }
    std::vector<int> idx(n, 0);
    std::vector<int> sigma(n);
    std::vector<T> mu(n);
    while (true) {
      T prob = c.weight;
      for (int i = 0; i < n; ++i) {
        prob *= outs[i].probs[idx[i]];
        mu[i] = outs[i].posteriors[idx[i]];
        sigma[i] = outs[i].signals[idx[i]];
      }
      ++ev.profiles;
      std::vector<T> w = ReceiverWeights<T>(mu, policy.receiver, buckets);
      std::vector<T> x = SelectAllocation<T>(f, w, c.selection, ProfileKey(sigma));
      for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        ev.utilities[i] += prob * mu[i] * x[i];
        if (buckets) ev.canonical[i] += prob * buckets->Canonical(mu[i]) * x[i];
        if (c.active_bucket && buckets->BucketOf(mu[i]) == *c.active_bucket) {
          ev.fake[i] += prob * buckets->canonical(*c.active_bucket) * x[i];
        }
      }
      int i = n - 1;
      while (i >= 0 && ++idx[i] == static_cast<int>(outs[i].signals.size())) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  return ev;
}

// Agents with identical priors and mappings are exchangeable when the rank
// function is symmetric and ties are broken uniformly, so only the number of
// agents of each class sending each signal matters.
template <class T>
Evaluation<T> EvaluateSymmetric(const SetFunction<T>& f,
                                const std::vector<ValueDist<T>>& dists,
                                const Policy<T>& policy, const BucketScheme<T>* buckets,
                                const EvalOptions& options) {
  int n = f.n();
  if (!f.IsSymmetric()) throw Error(ErrorCode::kDomain, "class-count evaluation needs a symmetric rank");
  Evaluation<T> ev;
  ev.used_symmetry = true;
  ev.utilities.assign(n, T(0));
  ev.fake.assign(n, T(0));
  ev.canonical.assign(n, T(0));
  std::vector<T> factorial(n + 1);
  factorial[0] = 1;
  for (int k = 1; k <= n; ++k) factorial[k] = factorial[k - 1] * FromInt<T>(k);
  std::vector<T> rank(n + 1);
  for (int k = 0; k <= n; ++k) rank[k] = f.EvalCount(k);

  for (const auto& c : policy.components) {
    CheckActiveBucket(c, buckets);
    if (c.active_bucket) ev.has_fake = true;
    if (c.selection.kind != SelectionKind::kUniform) {
      throw Error(ErrorCode::kDomain, "class-count evaluation needs uniform tie-breaking");
    }
    if (c.weight == 0) continue;
    // Group agents into classes.
    std::vector<int> class_of(n, -1);
    std::vector<int> rep;
    for (int i = 0; i < n; ++i) {
      for (size_t l = 0; l < rep.size(); ++l) {
        int r = rep[l];
        if (dists[r].values == dists[i].values && dists[r].probs == dists[i].probs &&
            c.mappings[r].table == c.mappings[i].table) {
          class_of[i] = static_cast<int>(l);
          break;
        }
      }
      if (class_of[i] < 0) {
        class_of[i] = static_cast<int>(rep.size());
        rep.push_back(i);
      }
    }
    int L = static_cast<int>(rep.size());
    std::vector<int> size(L, 0);
    for (int i = 0; i < n; ++i) ++size[class_of[i]];
    std::vector<AgentOutcomes<T>> outs;
    for (int r : rep) {
      std::vector<ValueDist<T>> one = {dists[r]};
      PolicyComponent<T> sub;
      sub.mappings = {c.mappings[r]};
      outs.push_back(ComponentOutcomes(one, sub).front());
    }
    for (int l = 0; l < L; ++l) {
      for (const T& mu : outs[l].posteriors) {
        if (OnInteriorEdge(mu, buckets)) ev.boundary_posteriors += size[l];
      }
    }
    // Powers q^c per class and signal.
    std::vector<std::vector<std::vector<T>>> power(L);
    std::vector<std::vector<T>> weight(L);
    for (int l = 0; l < L; ++l) {
      for (size_t s = 0; s < outs[l].signals.size(); ++s) {
        std::vector<T> pw(size[l] + 1);
        pw[0] = 1;
        for (int k = 1; k <= size[l]; ++k) pw[k] = pw[k - 1] * outs[l].probs[s];
        power[l].push_back(std::move(pw));
        weight[l].push_back(outs[l].posteriors[s]);
      }
      weight[l] = ReceiverWeights<T>(weight[l], policy.receiver, buckets);
    }
    // All count vectors per class.
    std::vector<std::vector<std::vector<int>>> compositions(L);
    std::int64_t total = 1;
    for (int l = 0; l < L; ++l) {
      int parts = static_cast<int>(outs[l].signals.size());
      std::vector<int> cur(parts, 0);
      std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == parts - 1) {
          cur[pos] = left;
          compositions[l].push_back(cur);
          return;
        }
        for (int k = left; k >= 0; --k) {
          cur[pos] = k;
          rec(pos + 1, left - k);
        }
      };
      rec(0, size[l]);
      total *= static_cast<std::int64_t>(compositions[l].size());
      if (total > options.profile_cap) {
        throw Error(ErrorCode::kCapExceeded, "class-count enumeration exceeds the profile cap");
      }
    }
    std::vector<T> class_util(L, T(0));
    std::vector<T> class_fake(L, T(0));
    std::vector<T> class_canonical(L, T(0));
    std::vector<size_t> pick(L, 0);
    struct Cell {
      int l;
      int s;
      int count;
    };
    while (true) {
      T prob = c.weight;
      std::vector<Cell> cells;
      for (int l = 0; l < L; ++l) {
        const auto& comp = compositions[l][pick[l]];
        prob *= factorial[size[l]];
        for (size_t s = 0; s < comp.size(); ++s) {
          prob /= factorial[comp[s]];
          prob *= power[l][s][comp[s]];
          if (comp[s] > 0) cells.push_back({l, static_cast<int>(s), comp[s]});
        }
      }
      ++ev.profiles;
      std::stable_sort(cells.begin(), cells.end(), [&](const Cell& a, const Cell& b) {
        return weight[a.l][a.s] > weight[b.l][b.s];
      });
      int before = 0;
      for (size_t start = 0; start < cells.size();) {
        size_t end = start;
        int b = 0;
        while (end < cells.size() && TiesWith(weight[cells[end].l][cells[end].s],
                                              weight[cells[start].l][cells[start].s])) {
          b += cells[end].count;
          ++end;
        }
        T share = (rank[before + b] - rank[before]) / FromInt<T>(b);
        for (size_t e = start; e < end; ++e) {
          const Cell& cell = cells[e];
          const T& mu = outs[cell.l].posteriors[cell.s];
          T frac = prob * FromInt<T>(cell.count) / FromInt<T>(size[cell.l]);
          class_util[cell.l] += frac * mu * share;
          if (buckets) class_canonical[cell.l] += frac * buckets->Canonical(mu) * share;
          if (c.active_bucket && buckets->BucketOf(mu) == *c.active_bucket) {
            class_fake[cell.l] += frac * buckets->canonical(*c.active_bucket) * share;
          }
        }
        before += b;
        start = end;
      }
      size_t l = 0;
      while (l < pick.size() && ++pick[l] == compositions[l].size()) pick[l++] = 0;
      if (l == pick.size()) break;
    }
    for (int i = 0; i < n; ++i) {
      ev.utilities[i] += class_util[class_of[i]];
      ev.fake[i] += class_fake[class_of[i]];
      ev.canonical[i] += class_canonical[class_of[i]];
    }
  }
  return ev;
}

template <class T>
Evaluation<T> EvaluateMonteCarlo(const SetFunction<T>& f,
                                 const std::vector<ValueDist<T>>& dists,
                                 const Policy<T>& policy, const BucketScheme<T>* buckets,
                                 const EvalOptions& options) {
  if constexpr (kIsExact<T>) {
    throw Error(ErrorCode::kDomain, "Monte Carlo evaluation runs in float mode");
  } else {
    int n = f.n();
    if (options.samples < 2) throw Error(ErrorCode::kDomain, "Monte Carlo needs at least 2 samples");
    std::vector<std::vector<AgentOutcomes<T>>> outs;
    std::vector<std::vector<std::vector<SignalOutcome<T>>>> signal_outcomes;
    std::vector<T> comp_weights;
    Evaluation<T> ev;
    for (const auto& c : policy.components) {
      CheckActiveBucket(c, buckets);
      if (c.active_bucket) ev.has_fake = true;
      comp_weights.push_back(c.weight);
      std::vector<std::vector<SignalOutcome<T>>> per_agent;
      for (int i = 0; i < n; ++i) per_agent.push_back(SignalOutcomes(dists[i], c.mappings[i]));
      signal_outcomes.push_back(std::move(per_agent));
    }
    std::vector<double> sum(n, 0.0), sum_sq(n, 0.0), fake_sum(n, 0.0), canonical_sum(n, 0.0);
    std::vector<int> sigma(n);
    std::vector<T> mu(n);
    std::vector<T> value(n);
    const std::uint64_t seed = options.seed;
    for (int t = 0; t < options.samples; ++t) {
      int ci = DrawIndex(comp_weights, CounterRng::Uniform(seed, 2 * n, t));
      const auto& c = policy.components[ci];
      for (int i = 0; i < n; ++i) {
        int v = DrawIndex(dists[i].probs, CounterRng::Uniform(seed, i, t));
        value[i] = dists[i].values[v];
        sigma[i] = DrawIndex(c.mappings[i].table[v], CounterRng::Uniform(seed, n + i, t));
        mu[i] = signal_outcomes[ci][i][sigma[i]].posterior;
      }
      std::vector<T> w = ReceiverWeights<T>(mu, policy.receiver, buckets);
      std::vector<T> x = SelectAllocation<T>(f, w, c.selection, ProfileKey(sigma));
      for (int i = 0; i < n; ++i) {
        double u = value[i] * x[i];
        sum[i] += u;
        sum_sq[i] += u * u;
        if (buckets) canonical_sum[i] += buckets->Canonical(mu[i]) * x[i];
        if (c.active_bucket && buckets->BucketOf(mu[i]) == *c.active_bucket) {
          fake_sum[i] += buckets->canonical(*c.active_bucket) * x[i];
        }
      }
      ++ev.profiles;
    }
    double count = options.samples;
    ev.utilities.resize(n);
    ev.fake.resize(n);
    ev.canonical.resize(n);
    ev.std_errors.resize(n);
    for (int i = 0; i < n; ++i) {
      double mean = sum[i] / count;
      double var = std::max(0.0, (sum_sq[i] - count * mean * mean) / (count - 1));
      ev.utilities[i] = mean;
      ev.fake[i] = fake_sum[i] / count;
      ev.canonical[i] = canonical_sum[i] / count;
      ev.std_errors[i] = std::sqrt(var / count);
    }
    return ev;
  }
}

}  // namespace

template <class T>
Evaluation<T> EvaluatePolicy(const SetFunction<T>& f,
                             const std::vector<ValueDist<T>>& dists,
                             const Policy<T>& policy,
                             const BucketScheme<T>* buckets,
                             const EvalOptions& options) {
  int n = f.n();
  ValidatePolicy(policy, n, dists);
  if (policy.receiver == ReceiverKind::kCanonical && !buckets) {
    throw Error(ErrorCode::kPolicyMismatch, "canonical receiver needs a bucket scheme");
  }
  Evaluation<T> ev;
  if (options.mode == EvalMode::kMonteCarlo) {
    ev = EvaluateMonteCarlo(f, dists, policy, buckets, options);
  } else {
    bool symmetric = false;
    if (options.symmetry == EvalOptions::Symmetry::kAlways) {
      symmetric = true;
    } else if (options.symmetry == EvalOptions::Symmetry::kAuto && f.IsSymmetric()) {
      bool uniform = true;
      for (const auto& c : policy.components) {
        uniform = uniform && c.selection.kind == SelectionKind::kUniform;
      }
      symmetric = uniform && n > 12;
    }
    ev = symmetric ? EvaluateSymmetric(f, dists, policy, buckets, options)
                   : EvaluateExact(f, dists, policy, buckets, options);
  }
  ev.has_canonical = buckets != nullptr;
  if (!ev.has_canonical) ev.canonical.clear();
  ev.welfare = 0;
  for (const T& u : ev.utilities) ev.welfare += u;
  return ev;
}

#define POLYFAIR_INSTANTIATE(T)                                                        \
  template Policy<T> NoRevelationPolicy<T>(const std::vector<ValueDist<T>>&,           \
                                           ReceiverKind);                              \
  template Policy<T> FullRevelationPolicy<T>(const std::vector<ValueDist<T>>&,         \
                                             ReceiverKind, Selection<T>);              \
  template void ValidatePolicy<T>(const Policy<T>&, int, const std::vector<ValueDist<T>>&); \
  template std::vector<T> ReceiverWeights<T>(std::span<const T>, ReceiverKind,         \
                                             const BucketScheme<T>*);                  \
  template std::vector<T> ReceiverAllocate<T>(const SetFunction<T>&, std::span<const T>, \
                                              const BucketScheme<T>*, std::span<const int>); \
  template std::vector<T> SelectAllocation<T>(const SetFunction<T>&, std::span<const T>, \
                                              const Selection<T>&, const std::string&); \
  template Evaluation<T> EvaluatePolicy<T>(const SetFunction<T>&,                      \
                                           const std::vector<ValueDist<T>>&,           \
                                           const Policy<T>&, const BucketScheme<T>*,   \
                                           const EvalOptions&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
