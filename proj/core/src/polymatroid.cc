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

#include "polyfair/polymatroid.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "polyfair/error.h"

namespace polyfair {

void ValidatePermutation(std::span<const int> order, int n) {
  if (static_cast<int>(order.size()) != n) {
    throw Error(ErrorCode::kInvalidPermutation,
                "order has " + std::to_string(order.size()) + " entries, expected " +
                    std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (int i : order) {
    if (i < 0 || i >= n || seen[i]) {
      throw Error(ErrorCode::kInvalidPermutation,
                  "order is not a permutation (entry " + std::to_string(i) + ")");
    }
    seen[i] = true;
  }
}

std::vector<std::vector<int>> AllPermutations(int n) {
  if (n > 10) throw Error(ErrorCode::kCapExceeded, "permutation enumeration supports n <= 10");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

template <class T>
std::vector<T> GreedyAllocation(const SetFunction<T>& f,
                                std::span<const int> order) {
  ValidatePermutation(order, f.n());
  std::vector<T> x(f.n());
  Subset prefix = 0;
  T prev = f(0);
  for (int i : order) {
    prefix |= Bit(i);
    T cur = f(prefix);
    x[i] = cur - prev;
    prev = cur;
  }
  return x;
}

template <class T>
std::vector<T> GreedyMaxLinear(const SetFunction<T>& f, std::span<const T> w,
                               std::span<const int> tie_break) {
  int n = f.n();
  if (static_cast<int>(w.size()) != n) {
    throw Error(ErrorCode::kGroundSetMismatch, "weight vector has wrong length");
  }
  ValidatePermutation(tie_break, n);
  for (const T& wi : w) {
    if (wi < 0) throw Error(ErrorCode::kDomain, "negative weight");
  }
  std::vector<int> rank(n);
  for (int k = 0; k < n; ++k) rank[tie_break[k]] = k;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (w[a] != w[b]) return w[a] > w[b];
    return rank[a] < rank[b];
  });
  std::vector<T> x(n, T(0));
  Subset prefix = 0;
  T prev = f(0);
  for (int i : order) {
    if (w[i] == 0) break;
    prefix |= Bit(i);
    T cur = f(prefix);
    x[i] = cur - prev;
    prev = cur;
  }
  return x;
}

std::string MembershipName(MembershipStatus status) {
  switch (status) {
    case MembershipStatus::kOutside: return "outside";
    case MembershipStatus::kIndependent: return "independent";
    case MembershipStatus::kBase: return "base";
  }
  return "unknown";
}

template <class T>
MembershipResult<T> Membership(const SetFunction<T>& f, std::span<const T> x) {
  int n = f.n();
  if (static_cast<int>(x.size()) != n) {
    throw Error(ErrorCode::kGroundSetMismatch, "allocation has wrong length");
  }
  if (n > kMaxEnumerationAgents) throw Error(ErrorCode::kCapExceeded, "membership supports n <= 20");
  MembershipResult<T> result;
  for (int i = 0; i < n; ++i) {
    if (StrictlyLess(x[i], T(0))) {
      result.witness = Bit(i);
      return result;
    }
  }
  // Subset sums by lowest-bit recurrence.
  std::vector<T> sums(size_t{1} << n);
  sums[0] = 0;
  for (Subset s = 1; s < sums.size(); ++s) {
    int low = std::countr_zero(s);
    sums[s] = sums[s & (s - 1)] + x[low];
    if (!LessEq(sums[s], f.impl().Eval(s))) {
      result.witness = s;
      return result;
    }
  }
  Subset all = FullSet(n);
  result.status = IsClose(sums[all], f.impl().Eval(all)) ? MembershipStatus::kBase
                                                         : MembershipStatus::kIndependent;
  return result;
}

std::string ViolationKindName(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kEmptyNonzero: return "f(empty)=0";
    case Violation::Kind::kNegative: return "nonnegativity";
    case Violation::Kind::kNotMonotone: return "monotonicity";
    case Violation::Kind::kNotSubmodular: return "submodularity";
  }
  return "unknown";
}

namespace {

class ReportBuilder {
 public:
  ReportBuilder(ValidationReport& report, int max_listed)
      : report_(report), max_listed_(max_listed) {}
  void Add(Violation::Kind kind, Subset a, Subset b) {
    ++report_.violation_count;
    if (static_cast<int>(report_.violations.size()) < max_listed_) {
      report_.violations.push_back({kind, a, b});
    }
  }

 private:
  ValidationReport& report_;
  int max_listed_;
};

template <class T>
ValidationReport CheckCardinalityProfile(const SetFunction<T>& f,
                                         const CheckOptions& options) {
  ValidationReport report;
  ReportBuilder out(report, options.max_listed);
  int n = f.n();
  auto first = [](int k) { return k >= 64 ? ~Subset{0} : FullSet(k); };
  std::vector<T> h(n + 1);
  for (int k = 0; k <= n; ++k) h[k] = f.EvalCount(k);
  if (!IsClose(h[0], T(0))) out.Add(Violation::Kind::kEmptyNonzero, 0, 0);
  for (int k = 1; k <= n; ++k) {
    if (StrictlyLess(h[k], T(0))) out.Add(Violation::Kind::kNegative, first(k), first(k));
    if (StrictlyLess(h[k], h[k - 1])) {
      out.Add(Violation::Kind::kNotMonotone, first(k - 1), first(k));
    }
    // Concavity of the profile: h(k-1) + h(k+1) <= 2 h(k).
    if (k < n && StrictlyLess(h[k] + h[k], h[k - 1] + h[k + 1])) {
      Subset base = first(k - 1);
      out.Add(Violation::Kind::kNotSubmodular, base | Bit(k - 1), base | Bit(k));
    }
  }
  return report;
}

}  // namespace

template <class T>
ValidationReport CheckSubmodularMonotone(const SetFunction<T>& f,
                                         const CheckOptions& options) {
  int n = f.n();
  if (n > kMaxEnumerationAgents) {
    if (f.IsSymmetric()) return CheckCardinalityProfile(f, options);
    throw Error(ErrorCode::kCapExceeded, "validation supports n <= 20 for non-symmetric functions");
  }
  ValidationReport report;
  ReportBuilder out(report, options.max_listed);
  std::vector<T> v = Tabulate(f);
  const Subset count = Subset{1} << n;
  if (!IsClose(v[0], T(0))) out.Add(Violation::Kind::kEmptyNonzero, 0, 0);
  for (Subset s = 1; s < count; ++s) {
    if (StrictlyLess(v[s], T(0))) out.Add(Violation::Kind::kNegative, s, s);
  }
  if (n <= options.exhaustive_limit) {
    // Every A strictly inside B.
    for (Subset b = 1; b < count; ++b) {
      for (Subset a = (b - 1) & b;; a = (a - 1) & b) {
        if (StrictlyLess(v[b], v[a])) out.Add(Violation::Kind::kNotMonotone, a, b);
        if (a == 0) break;
      }
    }
    // Every unordered pair of incomparable sets.
    for (Subset a = 1; a < count; ++a) {
      for (Subset b = a + 1; b < count; ++b) {
        if ((a & b) == a || (a & b) == b) continue;
        if (StrictlyLess(v[a] + v[b], v[a | b] + v[a & b])) {
          out.Add(Violation::Kind::kNotSubmodular, a, b);
        }
      }
    }
    return report;
  }
  report.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> agent(0, n - 1);
  for (int t = 0; t < options.samples; ++t) {
    Subset s = rng() & (count - 1);
    int i = agent(rng);
    int j = agent(rng);
    s &= ~(Bit(i) | Bit(j));
    if (StrictlyLess(v[s | Bit(i)], v[s])) out.Add(Violation::Kind::kNotMonotone, s, s | Bit(i));
    if (i == j) continue;
    Subset a = s | Bit(i);
    Subset b = s | Bit(j);
    if (StrictlyLess(v[a] + v[b], v[a | b] + v[s])) {
      out.Add(Violation::Kind::kNotSubmodular, a, b);
    }
  }
  return report;
}

template <class T>
Minimizer<T> MinimizeOverSubsets(const std::function<T(Subset)>& h,
                                 Subset domain) {
  if (domain == 0) throw Error(ErrorCode::kEmptyDomain, "minimization over an empty domain");
  if (Cardinality(domain) > kMaxEnumerationAgents) {
    throw Error(ErrorCode::kCapExceeded, "minimization supports domains of <= 20 agents");
  }
  Minimizer<T> best;
  bool have = false;
  for (Subset s = domain;; s = (s - 1) & domain) {
    if (s == 0) break;
    T value = h(s);
    bool take = false;
    if (!have) {
      take = true;
    } else if (IsClose(value, best.value)) {
      int cs = Cardinality(s);
      int cb = Cardinality(best.set);
      take = cs > cb || (cs == cb && s > best.set);
    } else {
      take = value < best.value;
    }
    if (take) {
      best.set = s;
      best.value = value;
      have = true;
    }
  }
  return best;
}

template <class T>
std::vector<std::vector<T>> BaseVertices(const SetFunction<T>& f) {
  if (f.n() > 8) throw Error(ErrorCode::kCapExceeded, "vertex enumeration supports n <= 8");
  std::vector<std::vector<T>> out;
  for (const auto& order : AllPermutations(f.n())) {
    out.push_back(GreedyAllocation(f, order));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

#define POLYFAIR_INSTANTIATE(T)                                                  \
  template std::vector<T> GreedyAllocation<T>(const SetFunction<T>&,             \
                                              std::span<const int>);             \
  template std::vector<T> GreedyMaxLinear<T>(                                    \
      const SetFunction<T>&, std::span<const T>, std::span<const int>);         \
  template MembershipResult<T> Membership<T>(const SetFunction<T>&,              \
                                             std::span<const T>);                \
  template ValidationReport CheckSubmodularMonotone<T>(const SetFunction<T>&,    \
                                                       const CheckOptions&);     \
  template Minimizer<T> MinimizeOverSubsets<T>(const std::function<T(Subset)>&,  \
                                               Subset);                          \
  template std::vector<std::vector<T>> BaseVertices<T>(const SetFunction<T>&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
