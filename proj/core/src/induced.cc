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

#include "polyfair/induced.h"

#include <algorithm>
#include <numeric>

#include "polyfair/error.h"
#include "polyfair/lp.h"
#include "polyfair/polymatroid.h"

namespace polyfair {

template <class T>
ValueBlocks<T> MakeValueBlocks(std::span<const T> v) {
  int n = static_cast<int>(v.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return v[a] > v[b]; });
  ValueBlocks<T> out;
  for (int i : order) {
    if (out.values.empty() || !TiesWith(out.values.back(), v[i])) {
      out.blocks.push_back(0);
      out.values.push_back(v[i]);
    }
    out.blocks.back() |= Bit(i);
  }
  return out;
}

template <class T>
SetFunction<T> InducedG(const SetFunction<T>& f, std::span<const T> v) {
  int n = f.n();
  if (static_cast<int>(v.size()) != n) {
    throw Error(ErrorCode::kGroundSetMismatch, "value vector has wrong length");
  }
  for (const T& x : v) {
    if (!(x > 0)) throw Error(ErrorCode::kDomain, "values must be positive");
  }
  ValueBlocks<T> blocks = MakeValueBlocks(v);
  std::vector<Subset> prefix;
  std::vector<T> f_prefix;
  Subset p = 0;
  for (Subset b : blocks.blocks) {
    prefix.push_back(p);
    f_prefix.push_back(f(p));
    p |= b;
  }
  auto eval = [f, blocks, prefix, f_prefix](Subset s) {
    T total = 0;
    for (size_t j = 0; j < blocks.blocks.size(); ++j) {
      Subset part = s & blocks.blocks[j];
      if (part == 0) continue;
      total += blocks.values[j] * (f.impl().Eval(prefix[j] | part) - f_prefix[j]);
    }
    return total;
  };
  return FromFunction<T>(n, eval, "induced_g");
}

template <class T>
SetFunction<T> InducedGHat(const SetFunction<T>& f, std::span<const T> mu,
                           const BucketScheme<T>& buckets, int k) {
  int n = f.n();
  if (static_cast<int>(mu.size()) != n) {
    throw Error(ErrorCode::kGroundSetMismatch, "mean vector has wrong length");
  }
  if (k < 0 || k >= buckets.K()) throw Error(ErrorCode::kDomain, "bucket index out of range");
  Subset in = 0;
  Subset higher = 0;
  for (int i = 0; i < n; ++i) {
    int b = buckets.BucketOf(mu[i]);
    if (b == k) in |= Bit(i);
    if (b > k) higher |= Bit(i);
  }
  T m = buckets.canonical(k);
  T f_higher = f(higher);
  auto eval = [f, in, higher, m, f_higher](Subset s) {
    Subset part = s & in;
    if (part == 0) return T(0);
    return T(m * (f.impl().Eval(higher | part) - f_higher));
  };
  return FromFunction<T>(n, eval, "induced_g_hat");
}

template <class T>
void CheckProbabilitySum(const std::vector<WeightedVector<T>>& items) {
  T total = 0;
  for (const auto& item : items) {
    if (item.prob < 0) throw Error(ErrorCode::kInvalidDistribution, "negative probability");
    total += item.prob;
  }
  bool ok;
  if constexpr (kIsExact<T>) {
    ok = total == 1;
  } else {
    ok = std::abs(total - 1.0) <= 1e-12;
  }
  if (!ok) {
    throw Error(ErrorCode::kInvalidDistribution,
                "probabilities sum to " + ScalarToString(total) + ", expected 1");
  }
}

template <class T>
SetFunction<T> ExpectedInduced(const SetFunction<T>& f,
                               const std::vector<WeightedVector<T>>& scenarios) {
  CheckProbabilitySum(scenarios);
  std::vector<SetFunction<T>> parts;
  std::vector<T> coeffs;
  for (const auto& s : scenarios) {
    if (s.prob == 0) continue;
    parts.push_back(InducedG<T>(f, s.v));
    coeffs.push_back(s.prob);
  }
  return Combine(parts, coeffs);
}

template <class T>
SetFunction<T> ExpectedInducedBucket(
    const SetFunction<T>& f,
    const std::vector<std::vector<WeightedVector<T>>>& profiles,
    const BucketScheme<T>& buckets) {
  if (static_cast<int>(profiles.size()) != buckets.K()) {
    throw Error(ErrorCode::kDomain, "one profile list per bucket is required");
  }
  T inv_k = T(1) / FromInt<T>(buckets.K());
  std::vector<SetFunction<T>> parts;
  std::vector<T> coeffs;
  for (int k = 0; k < buckets.K(); ++k) {
    CheckProbabilitySum(profiles[k]);
    for (const auto& s : profiles[k]) {
      if (s.prob == 0) continue;
      parts.push_back(InducedGHat<T>(f, s.v, buckets, k));
      coeffs.push_back(s.prob * inv_k);
    }
  }
  return Combine(parts, coeffs);
}

template <class T>
SetFunction<T> SaturationFunction(int n, std::vector<std::vector<T>> points) {
  if (points.empty()) throw Error(ErrorCode::kEmptyDomain, "saturation of an empty set");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != n) throw Error(ErrorCode::kGroundSetMismatch, "point has wrong length");
  }
  auto eval = [points](Subset s) {
    T best = 0;
    bool first = true;
    for (const auto& p : points) {
      T sum = 0;
      for (Subset r = s; r; r &= r - 1) sum += p[std::countr_zero(r)];
      if (first || sum > best) best = sum;
      first = false;
    }
    return best;
  };
  return FromFunction<T>(n, eval, "saturation");
}

template <class T>
bool InConvexHull(std::span<const T> x, const std::vector<std::vector<T>>& points) {
  int n = static_cast<int>(x.size());
  int m = static_cast<int>(points.size());
  if (m == 0) return false;
  LinearProgram<T> lp(m);
  std::vector<std::pair<int, T>> sum_row;
  for (int p = 0; p < m; ++p) sum_row.push_back({p, T(1)});
  lp.AddRow(sum_row, Sense::kEq, T(1));
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, T>> row;
    for (int p = 0; p < m; ++p) {
      if (points[p][i] != 0) row.push_back({p, points[p][i]});
    }
    lp.AddRow(row, Sense::kEq, x[i]);
  }
  return SolveLp(lp).status == LpStatus::kOptimal;
}

template <class T>
Certificate<T> CertifyUtilitySet(const SetFunction<T>& g,
                                 const std::vector<std::vector<T>>& points) {
  Certificate<T> cert;
  cert.utility_vectors = points;
  int n = g.n();
  SetFunction<T> sat = SaturationFunction<T>(n, points);
  for (Subset s = 1; s <= FullSet(n); ++s) {
    if (!IsClose(sat(s), g(s))) {
      cert.reason = "saturation differs from the rank function at " + SubsetToString(s);
      cert.failing_subset = s;
      return cert;
    }
  }
  CheckOptions options;
  options.max_listed = 1;
  ValidationReport report = CheckSubmodularMonotone(g, options);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    cert.reason = "rank function violates " + ViolationKindName(v.kind) + " at A=" +
                  SubsetToString(v.a) + ", B=" + SubsetToString(v.b);
    cert.failing_subset = v.a;
    return cert;
  }
  for (const auto& vertex : BaseVertices(g)) {
    bool found = false;
    for (const auto& p : points) {
      bool same = true;
      for (int i = 0; i < n && same; ++i) same = IsClose(p[i], vertex[i]);
      if (same) {
        found = true;
        break;
      }
    }
    if (!found) found = InConvexHull<T>(vertex, points);
    if (!found) {
      cert.reason = "base vertex is not an achievable utility vector";
      cert.failing_vertex = vertex;
      return cert;
    }
  }
  cert.ok = true;
  return cert;
}

template <class T>
Certificate<T> VerifyBaseEqualsUtilities(const SetFunction<T>& f,
                                         std::span<const T> v) {
  int n = f.n();
  if (n > 6) throw Error(ErrorCode::kCapExceeded, "base/utility certification supports n <= 6");
  SetFunction<T> g = InducedG(f, v);
  ValueBlocks<T> blocks = MakeValueBlocks(v);
  std::vector<std::vector<std::vector<int>>> block_orders;
  for (Subset b : blocks.blocks) {
    std::vector<int> members = Members(b);
    std::vector<std::vector<int>> orders;
    do {
      orders.push_back(members);
    } while (std::next_permutation(members.begin(), members.end()));
    block_orders.push_back(std::move(orders));
  }
  std::vector<std::vector<T>> utilities;
  std::vector<size_t> pick(block_orders.size(), 0);
  while (true) {
    std::vector<int> order;
    for (size_t j = 0; j < block_orders.size(); ++j) {
      const auto& o = block_orders[j][pick[j]];
      order.insert(order.end(), o.begin(), o.end());
    }
    std::vector<T> x = GreedyMaxLinear<T>(f, v, order);
    for (int i = 0; i < n; ++i) x[i] *= v[i];
    utilities.push_back(std::move(x));
    size_t j = 0;
    while (j < pick.size() && ++pick[j] == block_orders[j].size()) pick[j++] = 0;
    if (j == pick.size()) break;
  }
  std::sort(utilities.begin(), utilities.end());
  utilities.erase(std::unique(utilities.begin(), utilities.end()), utilities.end());
  return CertifyUtilitySet(g, utilities);
}

#define POLYFAIR_INSTANTIATE(T)                                                      \
  template ValueBlocks<T> MakeValueBlocks<T>(std::span<const T>);                    \
  template SetFunction<T> InducedG<T>(const SetFunction<T>&, std::span<const T>);    \
  template SetFunction<T> InducedGHat<T>(const SetFunction<T>&, std::span<const T>, \
                                         const BucketScheme<T>&, int);               \
  template SetFunction<T> ExpectedInduced<T>(const SetFunction<T>&,                  \
                                             const std::vector<WeightedVector<T>>&); \
  template SetFunction<T> ExpectedInducedBucket<T>(                                  \
      const SetFunction<T>&, const std::vector<std::vector<WeightedVector<T>>>&,     \
      const BucketScheme<T>&);                                                       \
  template void CheckProbabilitySum<T>(const std::vector<WeightedVector<T>>&);       \
  template SetFunction<T> SaturationFunction<T>(int, std::vector<std::vector<T>>);   \
  template bool InConvexHull<T>(std::span<const T>, const std::vector<std::vector<T>>&); \
  template Certificate<T> CertifyUtilitySet<T>(const SetFunction<T>&,                \
                                               const std::vector<std::vector<T>>&);  \
  template Certificate<T> VerifyBaseEqualsUtilities<T>(const SetFunction<T>&,        \
                                                       std::span<const T>);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
