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

#include "polyfair/majorization.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>

#include "polyfair/error.h"
#include "polyfair/polymatroid.h"

namespace polyfair {

template <class T>
std::vector<T> PrefixSums(std::span<const T> u) {
  std::vector<T> sorted(u.begin(), u.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<T> q(sorted.size());
  T run = 0;
  for (size_t i = 0; i < sorted.size(); ++i) {
    run += sorted[i];
    q[i] = run;
  }
  return q;
}

template <class T>
double Ratio<T>::ToDouble() const {
  return unbounded ? std::numeric_limits<double>::infinity() : polyfair::ToDouble(value);
}

template <class T>
std::string Ratio<T>::ToString() const {
  return unbounded ? "inf" : ScalarToString(value);
}

template <class T>
Ratio<T> MajorizationRatio(std::span<const T> candidate,
                           const std::vector<std::vector<T>>& rivals) {
  std::vector<T> qc = PrefixSums(candidate);
  Ratio<T> out;
  out.value = 0;
  for (const auto& r : rivals) {
    if (r.size() != candidate.size()) {
      throw Error(ErrorCode::kGroundSetMismatch, "rival utility vector has wrong length");
    }
    std::vector<T> qr = PrefixSums<T>(r);
    for (size_t j = 0; j < qc.size(); ++j) {
      bool den_zero;
      bool num_zero;
      if constexpr (kIsExact<T>) {
        den_zero = qc[j] == 0;
        num_zero = qr[j] == 0;
      } else {
        den_zero = std::abs(qc[j]) <= 1e-12;
        num_zero = std::abs(qr[j]) <= 1e-12;
      }
      if (den_zero) {
        if (num_zero) {
          if (out.value < 1) out.value = 1;
        } else {
          out.unbounded = true;
        }
        continue;
      }
      T ratio = qr[j] / qc[j];
      if (ratio > out.value) out.value = ratio;
    }
  }
  return out;
}

template <class T>
Decomposition<T> LeastMajorizedDecomposition(const SetFunction<T>& g) {
  int n = g.n();
  if (n > kMaxEnumerationAgents) throw Error(ErrorCode::kCapExceeded, "decomposition supports n <= 20");
  std::vector<T> table = Tabulate(g);
  Decomposition<T> out;
  out.point.assign(n, T(0));
  Subset done = 0;
  Subset rest = FullSet(n);
  while (rest) {
    const T base = table[done];
    std::function<T(Subset)> ratio = [&](Subset s) {
      return T((table[done | s] - base) / FromInt<T>(Cardinality(s)));
    };
    Minimizer<T> m = MinimizeOverSubsets<T>(ratio, rest);
    if (StrictlyLess(m.value, T(0))) {
      throw Error(ErrorCode::kInvalidRank, "rank function is not monotone");
    }
    for (int i : Members(m.set)) out.point[i] = m.value;
    out.layers.push_back(m.set);
    out.levels.push_back(m.value);
    done |= m.set;
    rest &= ~m.set;
  }
  return out;
}

template <class T>
std::vector<T> LeastMajorizedBasePoint(const SetFunction<T>& g) {
  return LeastMajorizedDecomposition(g).point;
}

template <class T>
std::vector<std::pair<int, T>> AddPrefixSumTerms(
    LinearProgram<T>& lp, const std::vector<std::vector<std::pair<int, T>>>& x,
    int j) {
  int n = static_cast<int>(x.size());
  if (j < 1 || j > n) throw Error(ErrorCode::kDomain, "prefix index out of range");
  int m = lp.AddVariable();
  std::vector<std::pair<int, T>> terms;
  for (int i = 0; i < n; ++i) {
    int u = lp.AddVariable();
    // U'_i - x_i <= 0
    std::vector<std::pair<int, T>> row = {{u, T(1)}};
    for (const auto& [var, coeff] : x[i]) row.push_back({var, T(-coeff)});
    lp.AddRow(row, Sense::kLe, T(0));
    lp.AddRow({{u, T(1)}, {m, T(-1)}}, Sense::kLe, T(0));
    terms.push_back({u, T(1)});
  }
  if (n > j) terms.push_back({m, FromInt<T>(-(n - j))});
  return terms;
}

template <class T>
T MaxPrefixSumOverBase(const SetFunction<T>& g, int j, PrefixMode mode) {
  int n = g.n();
  if (j < 1 || j > n) throw Error(ErrorCode::kDomain, "prefix index out of range");
  std::vector<std::vector<std::pair<int, T>>> x(n);
  std::unique_ptr<LinearProgram<T>> lp;
  if (mode == PrefixMode::kConstraints) {
    if (n > 16) throw Error(ErrorCode::kCapExceeded, "constraint LP supports n <= 16");
    std::vector<T> table = Tabulate(g);
    lp = std::make_unique<LinearProgram<T>>(n);
    for (Subset s = 1; s <= FullSet(n); ++s) {
      std::vector<std::pair<int, T>> row;
      for (int i : Members(s)) row.push_back({i, T(1)});
      lp->AddRow(row, s == FullSet(n) ? Sense::kEq : Sense::kLe, table[s]);
    }
    for (int i = 0; i < n; ++i) x[i] = {{i, T(1)}};
  } else {
    std::vector<std::vector<T>> vertices = BaseVertices(g);
    int m = static_cast<int>(vertices.size());
    lp = std::make_unique<LinearProgram<T>>(m);
    std::vector<std::pair<int, T>> sum_row;
    for (int p = 0; p < m; ++p) sum_row.push_back({p, T(1)});
    lp->AddRow(sum_row, Sense::kEq, T(1));
    for (int i = 0; i < n; ++i) {
      for (int p = 0; p < m; ++p) {
        if (vertices[p][i] != 0) x[i].push_back({p, vertices[p][i]});
      }
    }
  }
  for (const auto& [var, coeff] : AddPrefixSumTerms(*lp, x, j)) {
    lp->SetObjective(var, coeff);
  }
  LpSolution<T> sol = SolveLp(*lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kSolver, "prefix LP did not reach an optimum");
  }
  return sol.value;
}

template <class T>
FactorResult<T> BestMajorizationFactor(const std::vector<std::vector<T>>& points) {
  if (points.empty()) throw Error(ErrorCode::kEmptyDomain, "no points");
  int n = static_cast<int>(points.front().size());
  int m = static_cast<int>(points.size());
  auto hull_lp = [&](LinearProgram<T>& lp,
                     std::vector<std::vector<std::pair<int, T>>>& x) {
    std::vector<std::pair<int, T>> sum_row;
    for (int p = 0; p < m; ++p) sum_row.push_back({p, T(1)});
    lp.AddRow(sum_row, Sense::kEq, T(1));
    x.assign(n, {});
    for (int i = 0; i < n; ++i) {
      for (int p = 0; p < m; ++p) {
        if (points[p][i] != 0) x[i].push_back({p, points[p][i]});
      }
    }
  };
  FactorResult<T> out;
  for (int j = 1; j <= n; ++j) {
    LinearProgram<T> lp(m);
    std::vector<std::vector<std::pair<int, T>>> x;
    hull_lp(lp, x);
    for (const auto& [var, coeff] : AddPrefixSumTerms(lp, x, j)) lp.SetObjective(var, coeff);
    LpSolution<T> sol = SolveLp(lp);
    if (sol.status != LpStatus::kOptimal) throw Error(ErrorCode::kSolver, "prefix LP failed");
    out.best_prefix.push_back(sol.value);
  }
  LinearProgram<T> lp(m);
  std::vector<std::vector<std::pair<int, T>>> x;
  hull_lp(lp, x);
  int t = lp.AddVariable();
  lp.SetObjective(t, T(1));
  lp.AddRow({{t, T(1)}}, Sense::kLe, T(1));
  for (int j = 1; j <= n; ++j) {
    if (!(out.best_prefix[j - 1] > 0)) continue;
    std::vector<std::pair<int, T>> row = AddPrefixSumTerms(lp, x, j);
    row.push_back({t, T(-out.best_prefix[j - 1])});
    lp.AddRow(row, Sense::kGe, T(0));
  }
  LpSolution<T> sol = SolveLp(lp);
  if (sol.status != LpStatus::kOptimal || !(sol.x[t] > 0)) {
    throw Error(ErrorCode::kSolver, "majorization factor LP failed");
  }
  out.alpha = T(1) / sol.x[t];
  out.weights.assign(sol.x.begin(), sol.x.begin() + m);
  out.point.assign(n, T(0));
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < m; ++p) out.point[i] += out.weights[p] * points[p][i];
  }
  return out;
}

#define POLYFAIR_INSTANTIATE(T)                                                   \
  template std::vector<T> PrefixSums<T>(std::span<const T>);                      \
  template struct Ratio<T>;                                                       \
  template Ratio<T> MajorizationRatio<T>(std::span<const T>,                      \
                                         const std::vector<std::vector<T>>&);     \
  template Decomposition<T> LeastMajorizedDecomposition<T>(const SetFunction<T>&); \
  template std::vector<T> LeastMajorizedBasePoint<T>(const SetFunction<T>&);      \
  template T MaxPrefixSumOverBase<T>(const SetFunction<T>&, int, PrefixMode);     \
  template std::vector<std::pair<int, T>> AddPrefixSumTerms<T>(                   \
      LinearProgram<T>&, const std::vector<std::vector<std::pair<int, T>>>&, int); \
  template FactorResult<T> BestMajorizationFactor<T>(const std::vector<std::vector<T>>&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
