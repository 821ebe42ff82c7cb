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

// Small dense linear programs: maximize c.x subject to rows, x >= 0.
// Two-phase tableau simplex with Bland's anti-cycling rule.

#ifndef POLYFAIR_LP_H_
#define POLYFAIR_LP_H_

#include <utility>
#include <vector>

#include "polyfair/scalar.h"

namespace polyfair {

enum class Sense { kLe, kGe, kEq };

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <class T>
class LinearProgram {
 public:
  struct Row {
    std::vector<std::pair<int, T>> terms;
    Sense sense;
    T rhs;
  };

  explicit LinearProgram(int num_vars);

  int num_vars() const { return num_vars_; }
  int AddVariable();  // returns its index

  void SetObjective(int var, T coeff);
  void AddRow(std::vector<std::pair<int, T>> terms, Sense sense, T rhs);

  const std::vector<T>& objective() const { return objective_; }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  int num_vars_;
  std::vector<T> objective_;
  std::vector<Row> rows_;
};

template <class T>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  T value{};
  std::vector<T> x;
  int pivots = 0;
};

template <class T>
LpSolution<T> SolveLp(const LinearProgram<T>& lp);

}  // namespace polyfair

#endif  // POLYFAIR_LP_H_
