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

#include "polyfair/lp.h"

#include <algorithm>

#include "polyfair/error.h"

namespace polyfair {

template <class T>
LinearProgram<T>::LinearProgram(int num_vars)
    : num_vars_(num_vars), objective_(num_vars, T(0)) {}

template <class T>
int LinearProgram<T>::AddVariable() {
  objective_.push_back(T(0));
  return num_vars_++;
}

template <class T>
void LinearProgram<T>::SetObjective(int var, T coeff) {
  objective_.at(var) = std::move(coeff);
}

template <class T>
void LinearProgram<T>::AddRow(std::vector<std::pair<int, T>> terms, Sense sense,
                              T rhs) {
  for (const auto& [var, coeff] : terms) {
    if (var < 0 || var >= num_vars_) throw Error(ErrorCode::kSolver, "LP row references unknown variable");
  }
  rows_.push_back({std::move(terms), sense, std::move(rhs)});
}

namespace {

template <class T>
bool Positive(const T& v) {
  if constexpr (kIsExact<T>) {
    return v > 0;
  } else {
    return v > 1e-9;
  }
}

template <class T>
bool Negative(const T& v) {
  return Positive<T>(-v);
}

template <class T>
bool Zero(const T& v) {
  return !Positive(v) && !Negative(v);
}

template <class T>
class Tableau {
 public:
  // Rows 1..m hold constraints; row 0 is the objective row (z - c.x = 0).
  std::vector<std::vector<T>> a;
  std::vector<int> basis;  // basic column of row r (index r-1)
  int cols = 0;            // structural columns; RHS sits at index cols
  int pivots = 0;

  void Pivot(int pr, int pc) {
    ++pivots;
    std::vector<T>& prow = a[pr];
    T inv = T(1) / prow[pc];
    std::vector<int> nz;
    for (int c = 0; c <= cols; ++c) {
      if (prow[c] != 0) {
        prow[c] *= inv;
        if constexpr (!kIsExact<T>) {
          if (Zero(prow[c])) {
            prow[c] = 0;
            continue;
          }
        }
        nz.push_back(c);
      }
    }
    prow[pc] = 1;
    for (size_t r = 0; r < a.size(); ++r) {
      if (static_cast<int>(r) == pr) continue;
      std::vector<T>& row = a[r];
      if (row[pc] == 0) continue;
      T factor = row[pc];
      for (int c : nz) row[c] -= factor * prow[c];
      row[pc] = 0;
    }
    basis[pr - 1] = pc;
  }

  // Maximizes row 0; returns false when unbounded.
  bool Run(int allowed_cols) {
    while (true) {
      int pc = -1;
      for (int c = 0; c < allowed_cols; ++c) {
        if (Negative(a[0][c])) {
          pc = c;
          break;
        }
      }
      if (pc < 0) return true;
      int pr = -1;
      T best{};
      for (size_t r = 1; r < a.size(); ++r) {
        if (!Positive(a[r][pc])) continue;
        T ratio = a[r][cols] / a[r][pc];
        bool take = pr < 0;
        if (!take) {
          if constexpr (kIsExact<T>) {
            take = ratio < best || (ratio == best && basis[r - 1] < basis[pr - 1]);
          } else {
            take = ratio < best - 1e-12 ||
                   (ratio <= best + 1e-12 && basis[r - 1] < basis[pr - 1]);
          }
        }
        if (take) {
          pr = static_cast<int>(r);
          best = ratio;
        }
      }
      if (pr < 0) return false;
      Pivot(pr, pc);
    }
  }
};

}  // namespace

template <class T>
LpSolution<T> SolveLp(const LinearProgram<T>& lp) {
  const int nv = lp.num_vars();
  const auto& rows = lp.rows();
  const int m = static_cast<int>(rows.size());
  LpSolution<T> sol;
  sol.x.assign(nv, T(0));

  // Normalize to nonnegative right-hand sides and count extra columns.
  std::vector<Sense> sense(m);
  std::vector<bool> flip(m, false);
  int slacks = 0;
  int arts = 0;
  for (int r = 0; r < m; ++r) {
    sense[r] = rows[r].sense;
    if (rows[r].rhs < 0) {
      flip[r] = true;
      if (sense[r] == Sense::kLe) sense[r] = Sense::kGe;
      else if (sense[r] == Sense::kGe) sense[r] = Sense::kLe;
    }
    if (sense[r] != Sense::kEq) ++slacks;
    if (sense[r] != Sense::kLe) ++arts;
  }
  Tableau<T> tab;
  tab.cols = nv + slacks + arts;
  tab.a.assign(m + 1, std::vector<T>(tab.cols + 1, T(0)));
  tab.basis.assign(m, -1);
  int next_slack = nv;
  int next_art = nv + slacks;
  const int first_art = nv + slacks;
  for (int r = 0; r < m; ++r) {
    std::vector<T>& row = tab.a[r + 1];
    for (const auto& [var, coeff] : rows[r].terms) {
      row[var] += flip[r] ? T(-coeff) : coeff;
    }
    row[tab.cols] = flip[r] ? T(-rows[r].rhs) : rows[r].rhs;
    if (sense[r] == Sense::kLe) {
      row[next_slack] = 1;
      tab.basis[r] = next_slack++;
    } else {
      if (sense[r] == Sense::kGe) row[next_slack++] = -1;
      row[next_art] = 1;
      tab.basis[r] = next_art++;
    }
  }

  // Phase 1: maximize -(sum of artificials).
  if (arts > 0) {
    std::vector<T>& obj = tab.a[0];
    for (int c = first_art; c < tab.cols; ++c) obj[c] = 1;
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] >= first_art) {
        for (int c = 0; c <= tab.cols; ++c) obj[c] -= tab.a[r + 1][c];
      }
    }
    tab.Run(tab.cols);
    if (Negative(tab.a[0][tab.cols])) {
      sol.status = LpStatus::kInfeasible;
      sol.pivots = tab.pivots;
      return sol;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    for (int r = m - 1; r >= 0; --r) {
      if (tab.basis[r] < first_art) continue;
      int pc = -1;
      for (int c = 0; c < first_art; ++c) {
        if (!Zero(tab.a[r + 1][c])) {
          pc = c;
          break;
        }
      }
      if (pc >= 0) {
        tab.Pivot(r + 1, pc);
      } else {
        tab.a.erase(tab.a.begin() + r + 1);
        tab.basis.erase(tab.basis.begin() + r);
      }
    }
  }

  // Phase 2.
  std::vector<T>& obj = tab.a[0];
  std::fill(obj.begin(), obj.end(), T(0));
  for (int c = 0; c < nv; ++c) obj[c] = -lp.objective()[c];
  for (size_t r = 0; r < tab.basis.size(); ++r) {
    int b = tab.basis[r];
    if (obj[b] == 0) continue;
    T factor = obj[b];
    for (int c = 0; c <= tab.cols; ++c) obj[c] -= factor * tab.a[r + 1][c];
  }
  bool bounded = tab.Run(first_art);
  sol.pivots = tab.pivots;
  if (!bounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  sol.status = LpStatus::kOptimal;
  for (size_t r = 0; r < tab.basis.size(); ++r) {
    if (tab.basis[r] < nv) sol.x[tab.basis[r]] = tab.a[r + 1][tab.cols];
  }
  sol.value = 0;
  for (int c = 0; c < nv; ++c) sol.value += lp.objective()[c] * sol.x[c];
  return sol;
}

template class LinearProgram<double>;
template class LinearProgram<Rational>;
template LpSolution<double> SolveLp<double>(const LinearProgram<double>&);
template LpSolution<Rational> SolveLp<Rational>(const LinearProgram<Rational>&);

}  // namespace polyfair
