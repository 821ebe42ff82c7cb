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

#include "polyfair/mwu.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

#include "polyfair/error.h"
#include "polyfair/induced.h"
#include "polyfair/lp.h"
#include "polyfair/majorization.h"
#include "polyfair/polymatroid.h"

namespace polyfair {

namespace {

int GroundSize(const auto& ranks) {
  if (ranks.empty()) throw Error(ErrorCode::kDomain, "no rank scenarios");
  int n = ranks.front().g.n();
  for (const auto& r : ranks) {
    if (r.g.n() != n) throw Error(ErrorCode::kGroundSetMismatch, "rank scenarios disagree on n");
  }
  return n;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Callers write to
// disjoint slots, so the result does not depend on the thread count.
template <class Fn>
void ParallelFor(std::size_t count, int threads, Fn fn) {
  std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<int> OrderByWeight(std::span<const double> w) {
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a] > w[b]; });
  return order;
}

// Expected vertices keyed by order. Only the order of the weights matters to
// the scenario block, so most oracle calls are lookups.
class VertexCache {
 public:
  VertexCache(const std::vector<RankScenario<double>>& ranks, int threads)
      : ranks_(ranks), threads_(threads) {}

  const std::vector<double>& Get(const std::vector<int>& order) {
    auto it = cache_.find(order);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(order, ExpectedVertex<double>(ranks_, order, threads_)).first->second;
  }

 private:
  const std::vector<RankScenario<double>>& ranks_;
  int threads_;
  std::map<std::vector<int>, std::vector<double>> cache_;
};

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Upper bound on |U_i - E x_i| over the oracle's outputs.
double Width(const std::vector<RankScenario<double>>& ranks, int n, double target) {
  double w = std::max(target, 1e-12);
  for (int i = 0; i < n; ++i) {
    double single = 0;
    for (const auto& r : ranks) single += r.prob * r.g(Bit(i));
    w = std::max(w, single);
  }
  return w;
}

double ExpectedTotalRank(const std::vector<RankScenario<double>>& ranks, int n) {
  double total = 0;
  for (const auto& r : ranks) total += r.prob * r.g(FullSet(n));
  return total;
}

void Softmax(const std::vector<double>& logw, std::vector<double>& out) {
  double top = *std::max_element(logw.begin(), logw.end());
  double sum = 0;
  out.resize(logw.size());
  for (size_t i = 0; i < logw.size(); ++i) {
    out[i] = std::exp(logw[i] - top);
    sum += out[i];
  }
  for (double& x : out) x /= sum;
}

}  // namespace

template <class T>
std::vector<RankScenario<T>> FullRevelationRanks(const SetFunction<T>& f,
                                                 const std::vector<Scenario<T>>& scenarios) {
  std::vector<RankScenario<T>> ranks;
  ranks.reserve(scenarios.size());
  for (const auto& s : scenarios) ranks.push_back({s.p, InducedG<T>(f, s.v)});
  return ranks;
}

template <class T>
std::vector<RankScenario<double>> ToDoubleRanks(const std::vector<RankScenario<T>>& ranks) {
  std::vector<RankScenario<double>> out;
  for (const auto& r : ranks) {
    if constexpr (std::is_same_v<T, double>) {
      out.push_back(r);
    } else {
      SetFunction<T> g = r.g;
      out.push_back({ToDouble(r.prob),
                     FromFunction<double>(
                         g.n(), [g](Subset s) { return ToDouble(g(s)); }, g.Describe())});
    }
  }
  return out;
}

template <class T>
SetFunction<T> ExpectedRank(const std::vector<RankScenario<T>>& ranks) {
  int n = GroundSize(ranks);
  if (n > kMaxEnumerationAgents) throw Error(ErrorCode::kCapExceeded, "expected rank needs n <= 20");
  std::vector<T> table(std::size_t{1} << n, T(0));
  for (const auto& r : ranks) {
    std::vector<T> g = Tabulate(r.g);
    for (std::size_t s = 0; s < table.size(); ++s) table[s] += r.prob * g[s];
  }
  return ExplicitTable<T>(n, std::move(table), TableCheck::kNone);
}

template <class T>
std::vector<T> ExpectedVertex(const std::vector<RankScenario<T>>& ranks,
                              std::span<const int> order, int threads) {
  int n = GroundSize(ranks);
  std::vector<std::vector<T>> per(ranks.size());
  ParallelFor(ranks.size(), threads,
              [&](std::size_t s) { per[s] = GreedyAllocation<T>(ranks[s].g, order); });
  std::vector<T> x(n, T(0));
  for (std::size_t s = 0; s < ranks.size(); ++s) {
    for (int i = 0; i < n; ++i) x[i] += ranks[s].prob * per[s][i];
  }
  return x;
}

template <class T>
PrefixLpResult<T> SolvePrefixLpExact(const std::vector<RankScenario<T>>& ranks, int j,
                                     std::int64_t budget) {
  int n = GroundSize(ranks);
  if (j < 1 || j > n) throw Error(ErrorCode::kDomain, "prefix index out of range");
  if (n > kMaxEnumerationAgents ||
      static_cast<double>(ranks.size()) * std::ldexp(1.0, n) > static_cast<double>(budget)) {
    throw Error(ErrorCode::kCapExceeded,
                "prefix LP exceeds the row budget; use the MWU solver");
  }
  int S = static_cast<int>(ranks.size());
  LinearProgram<T> lp(S * n);
  Subset full = FullSet(n);
  for (int s = 0; s < S; ++s) {
    for (Subset A = 1; A <= full; ++A) {
      std::vector<std::pair<int, T>> terms;
      for (int i : Members(A)) terms.push_back({s * n + i, T(1)});
      lp.AddRow(std::move(terms), A == full ? Sense::kEq : Sense::kLe, ranks[s].g(A));
    }
  }
  std::vector<std::vector<std::pair<int, T>>> x(n);
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < S; ++s) {
      if (ranks[s].prob != 0) x[i].push_back({s * n + i, ranks[s].prob});
    }
  }
  for (const auto& [var, coeff] : AddPrefixSumTerms(lp, x, j)) lp.SetObjective(var, coeff);
  LpSolution<T> sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) throw Error(ErrorCode::kSolver, "prefix LP did not solve");
  PrefixLpResult<T> out;
  out.opt = sol.value;
  out.utilities.assign(n, T(0));
  for (int i = 0; i < n; ++i) {
    for (const auto& [var, coeff] : x[i]) out.utilities[i] += coeff * sol.x[var];
  }
  return out;
}

CounterBlock MinimizeCounter(std::span<const double> lambda, int j, double target) {
  int n = static_cast<int>(lambda.size());
  CounterBlock best;
  best.u.assign(n, 0.0);
  if (target <= 0) return best;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lambda[a] < lambda[b]; });
  // Optimal vertices put M = target / t on the n - j + t cheapest agents.
  std::vector<double> prefix(n + 1, 0.0);
  for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + lambda[order[k]];
  int best_t = 1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= j; ++t) {
    double cost = target / t * prefix[n - j + t];
    if (cost < best_cost) {
      best_cost = cost;
      best_t = t;
    }
  }
  best.m = target / best_t;
  best.cost = best_cost;
  for (int k = 0; k < n - j + best_t; ++k) best.u[order[k]] = best.m;
  return best;
}

OracleResult DualOracle(const std::vector<RankScenario<double>>& ranks,
                        std::span<const double> lambda, int j, double target, int threads) {
  int n = GroundSize(ranks);
  if (static_cast<int>(lambda.size()) != n) throw Error(ErrorCode::kGroundSetMismatch, "one weight per agent");
  for (double l : lambda) {
    if (l < 0) throw Error(ErrorCode::kDomain, "dual weights must be nonnegative");
  }
  OracleResult r;
  r.order = OrderByWeight(lambda);
  r.utilities = ExpectedVertex<double>(ranks, r.order, threads);
  r.counter = MinimizeCounter(lambda, j, target);
  r.value = r.counter.cost - Dot(lambda, r.utilities);
  return r;
}

namespace {

// One MWU run over the coupling rows U^(j)_i <= E x_i for every listed j.
struct CombinedRun {
  bool feasible = false;
  bool proven = false;
  std::vector<double> utilities;
  std::vector<double> counter;  // per listed j, n entries each
  std::vector<double> certificate;
  std::map<std::vector<int>, std::int64_t> order_counts;
  double max_violation = 0;
  std::int64_t iterations = 0;
};

CombinedRun RunMwu(const std::vector<RankScenario<double>>& ranks, const std::vector<int>& js,
                   const std::vector<double>& targets, double eps, const MwuOptions& options) {
  int n = GroundSize(ranks);
  int J = static_cast<int>(js.size());
  int rows = J * n;
  double W = Width(ranks, n, *std::max_element(targets.begin(), targets.end()));
  double logn = std::log(std::max(rows, 2));
  double bound = std::ceil(4.0 * W * W * logn / (eps * eps));
  std::int64_t T = bound > static_cast<double>(options.max_iterations)
                       ? options.max_iterations
                       : static_cast<std::int64_t>(bound);
  T = std::max<std::int64_t>(T, 1);
  double rate = eps / (2.0 * W);
  // The certificate test must not be fooled by rounding.
  double slack = 1e-12 * std::max(1.0, W);

  VertexCache cache(ranks, options.threads);
  CombinedRun run;
  std::vector<double> logw(rows, 0.0), lambda, lambda_sum(rows, 0.0);
  std::vector<double> sum_x(n, 0.0), sum_u(rows, 0.0), agg(n);
  std::vector<CounterBlock> blocks(J);

  // min over the easy set of lambda.(U - E x), used for certificates.
  auto oracle_value = [&](const std::vector<double>& lam, std::vector<int>* order_out,
                          const std::vector<double>** x_out) {
    std::fill(agg.begin(), agg.end(), 0.0);
    double cost = 0;
    for (int b = 0; b < J; ++b) {
      std::span<const double> slice(lam.data() + b * n, n);
      for (int i = 0; i < n; ++i) agg[i] += slice[i];
      blocks[b] = MinimizeCounter(slice, js[b], targets[b]);
      cost += blocks[b].cost;
    }
    std::vector<int> order = OrderByWeight(agg);
    const std::vector<double>& x = cache.Get(order);
    if (order_out) *order_out = std::move(order);
    if (x_out) *x_out = &x;
    return cost - Dot(agg, x);
  };

  std::vector<int> order;
  for (std::int64_t t = 1; t <= T; ++t) {
    Softmax(logw, lambda);
    const std::vector<double>* x = nullptr;
    double value = oracle_value(lambda, &order, &x);
    if (value > slack) {
      run.proven = true;
      run.certificate = lambda;
      run.iterations = t;
      return run;
    }
    ++run.order_counts[order];
    for (int i = 0; i < n; ++i) sum_x[i] += (*x)[i];
    double worst = -std::numeric_limits<double>::infinity();
    for (int b = 0; b < J; ++b) {
      for (int i = 0; i < n; ++i) {
        int row = b * n + i;
        double viol = blocks[b].u[i] - (*x)[i];
        sum_u[row] += blocks[b].u[i];
        logw[row] += rate * viol / W;
        lambda_sum[row] += lambda[row];
        worst = std::max(worst, (sum_u[row] - sum_x[i]) / static_cast<double>(t));
      }
    }
    run.iterations = t;
    run.max_violation = worst;
    if (worst <= eps) {
      run.feasible = true;
      break;
    }
    if (t % options.certificate_interval == 0) {
      std::vector<double> avg(rows);
      for (int r = 0; r < rows; ++r) avg[r] = lambda_sum[r] / static_cast<double>(t);
      if (oracle_value(avg, nullptr, nullptr) > slack) {
        run.proven = true;
        run.certificate = avg;
        return run;
      }
    }
  }
  double count = static_cast<double>(run.iterations);
  run.utilities.resize(n);
  for (int i = 0; i < n; ++i) run.utilities[i] = sum_x[i] / count;
  run.counter.resize(rows);
  for (int r = 0; r < rows; ++r) run.counter[r] = sum_u[r] / count;
  return run;
}

}  // namespace

MwuResult MwuFeasibility(const std::vector<RankScenario<double>>& ranks, int j,
                         double target, const MwuOptions& options) {
  int n = GroundSize(ranks);
  if (j < 1 || j > n) throw Error(ErrorCode::kDomain, "prefix index out of range");
  if (!(options.delta > 0)) throw Error(ErrorCode::kDomain, "delta must be positive");
  MwuResult out;
  if (target <= 0) {
    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    out.feasible = true;
    out.utilities = ExpectedVertex<double>(ranks, identity, options.threads);
    out.counter.assign(n, 0.0);
    return out;
  }
  CombinedRun run = RunMwu(ranks, {j}, {target}, options.delta / n, options);
  out.feasible = run.feasible;
  out.proven = run.proven;
  out.utilities = std::move(run.utilities);
  out.counter = std::move(run.counter);
  out.certificate = std::move(run.certificate);
  out.max_violation = run.max_violation;
  out.iterations = run.iterations;
  return out;
}

SearchResult BinarySearchOpt(const std::vector<RankScenario<double>>& ranks, int j,
                             const MwuOptions& options) {
  int n = GroundSize(ranks);
  if (!(options.delta > 0)) throw Error(ErrorCode::kDomain, "delta must be positive");
  // Feasibility is decided at half the accuracy so that the answer is within
  // delta on both sides.
  MwuOptions inner = options;
  inner.delta = options.delta / 2;
  SearchResult out;
  double lo = 0;
  double hi = static_cast<double>(j) / n * ExpectedTotalRank(ranks, n);
  // The upper end is attained when all utilities can be equal.
  MwuResult top = MwuFeasibility(ranks, j, hi, inner);
  out.iterations += top.iterations;
  ++out.steps;
  if (top.feasible) {
    out.opt = hi;
    return out;
  }
  while (hi - lo > options.delta / 2) {
    double mid = (lo + hi) / 2;
    MwuResult r = MwuFeasibility(ranks, j, mid, inner);
    out.iterations += r.iterations;
    ++out.steps;
    (r.feasible ? lo : hi) = mid;
  }
  out.opt = lo;
  return out;
}

template <class T>
std::vector<WeightedOrder<T>> DecomposeIntoOrders(const SetFunction<T>& R,
                                                  std::span<const T> y) {
  int n = R.n();
  if (static_cast<int>(y.size()) != n) throw Error(ErrorCode::kGroundSetMismatch, "point has wrong length");
  if (n > 8) throw Error(ErrorCode::kCapExceeded, "vertex decomposition needs n <= 8");
  std::map<std::vector<T>, std::vector<int>> vertices;
  for (const auto& order : AllPermutations(n)) {
    vertices.emplace(GreedyAllocation<T>(R, order), order);
  }
  int V = static_cast<int>(vertices.size());
  LinearProgram<T> lp(V);
  std::vector<std::vector<std::pair<int, T>>> rows(n);
  std::vector<std::pair<int, T>> sum;
  int k = 0;
  for (const auto& [vertex, order] : vertices) {
    for (int i = 0; i < n; ++i) {
      if (vertex[i] != 0) rows[i].push_back({k, vertex[i]});
    }
    sum.push_back({k, T(1)});
    ++k;
  }
  for (int i = 0; i < n; ++i) lp.AddRow(std::move(rows[i]), Sense::kEq, y[i]);
  lp.AddRow(std::move(sum), Sense::kEq, T(1));
  LpSolution<T> sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kSolver, "point is not in the base polytope");
  }
  std::vector<WeightedOrder<T>> out;
  k = 0;
  for (const auto& [vertex, order] : vertices) {
    if (sol.x[k] > 0) out.push_back({sol.x[k], order});
    ++k;
  }
  return out;
}

template <class T>
MajorizedSolution<T> SolveMajorizedExact(const std::vector<RankScenario<T>>& ranks) {
  int n = GroundSize(ranks);
  if (n > 8) throw Error(ErrorCode::kCapExceeded, "exact solver needs n <= 8; use the MWU solver");
  SetFunction<T> R = ExpectedRank(ranks);
  MajorizedSolution<T> out;
  std::vector<T> y = LeastMajorizedBasePoint(R);
  out.orders = DecomposeIntoOrders<T>(R, y);
  out.utilities = y;
  // The least majorized point attains every OPT_j at once.
  out.opt = PrefixSums<T>(y);
  return out;
}

MajorizedSolution<double> SolveMajorizedMwu(const std::vector<RankScenario<double>>& ranks,
                                            const MwuOptions& options) {
  int n = GroundSize(ranks);
  MajorizedSolution<double> out;
  std::vector<int> js(n);
  std::iota(js.begin(), js.end(), 1);
  for (int j = 1; j <= n; ++j) {
    SearchResult s = BinarySearchOpt(ranks, j, options);
    out.opt.push_back(s.opt);
    out.iterations += s.iterations;
    out.search_steps += s.steps;
  }
  double eps = options.delta / (2.0 * n);
  for (int attempt = 0;; ++attempt) {
    std::vector<double> targets;
    for (double o : out.opt) targets.push_back(std::max(0.0, o - options.delta / 2 * (attempt + 1)));
    CombinedRun run = RunMwu(ranks, js, targets, eps, options);
    out.iterations += run.iterations;
    if (run.feasible || attempt == 3) {
      out.retries = attempt;
      double count = static_cast<double>(run.iterations);
      if (run.order_counts.empty()) {
        std::vector<int> identity(n);
        std::iota(identity.begin(), identity.end(), 0);
        run.order_counts[identity] = 1;
        count = 1;
      }
      out.utilities.assign(n, 0.0);
      for (const auto& [order, c] : run.order_counts) {
        double w = static_cast<double>(c) / count;
        out.orders.push_back({w, order});
        std::vector<double> x = ExpectedVertex<double>(ranks, order, options.threads);
        for (int i = 0; i < n; ++i) out.utilities[i] += w * x[i];
      }
      return out;
    }
  }
}

#define POLYFAIR_INSTANTIATE(T)                                                          \
  template std::vector<RankScenario<T>> FullRevelationRanks<T>(                          \
      const SetFunction<T>&, const std::vector<Scenario<T>>&);                           \
  template std::vector<RankScenario<double>> ToDoubleRanks<T>(                           \
      const std::vector<RankScenario<T>>&);                                              \
  template SetFunction<T> ExpectedRank<T>(const std::vector<RankScenario<T>>&);          \
  template std::vector<T> ExpectedVertex<T>(const std::vector<RankScenario<T>>&,         \
                                            std::span<const int>, int);                  \
  template PrefixLpResult<T> SolvePrefixLpExact<T>(const std::vector<RankScenario<T>>&,  \
                                                   int, std::int64_t);                   \
  template std::vector<WeightedOrder<T>> DecomposeIntoOrders<T>(const SetFunction<T>&,   \
                                                                std::span<const T>);     \
  template MajorizedSolution<T> SolveMajorizedExact<T>(const std::vector<RankScenario<T>>&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
