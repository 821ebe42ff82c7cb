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

#ifndef POLYFAIR_MAJORIZATION_H_
#define POLYFAIR_MAJORIZATION_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyfair/lp.h"
#include "polyfair/set_function.h"

namespace polyfair {

// Q_j = sum of the j smallest entries, j = 1..n.
template <class T>
std::vector<T> PrefixSums(std::span<const T> u);

template <class T>
struct Ratio {
  T value{};
  bool unbounded = false;

  double ToDouble() const;
  std::string ToString() const;
};

// max over rivals r and j of Q_j(r) / Q_j(candidate). 0/0 counts as 1 and a
// positive numerator over 0 makes the ratio unbounded.
template <class T>
Ratio<T> MajorizationRatio(std::span<const T> candidate,
                           const std::vector<std::vector<T>>& rivals);

template <class T>
struct Decomposition {
  std::vector<T> point;
  std::vector<Subset> layers;  // in the order they were split off
  std::vector<T> levels;       // common utility on each layer
};

// Water-filling decomposition: repeatedly split off the maximal set S
// minimizing (g(A + S) - g(A)) / |S| over the remaining agents.
template <class T>
Decomposition<T> LeastMajorizedDecomposition(const SetFunction<T>& g);

template <class T>
std::vector<T> LeastMajorizedBasePoint(const SetFunction<T>& g);

enum class PrefixMode {
  kConstraints,  // LP over the 2^n rank inequalities
  kVertexHull,   // LP over the convex hull of the greedy vertices
};

// max over u in B(g) of Q_j(u), j in 1..n.
template <class T>
T MaxPrefixSumOverBase(const SetFunction<T>& g, int j,
                       PrefixMode mode = PrefixMode::kConstraints);

// Adds variables U'_i, M with U'_i <= x_i and U'_i <= M, and returns the
// terms of sum_i U'_i - (n - j) M. Its maximum over the new variables is
// Q_j(x).
template <class T>
std::vector<std::pair<int, T>> AddPrefixSumTerms(
    LinearProgram<T>& lp, const std::vector<std::vector<std::pair<int, T>>>& x,
    int j);

template <class T>
struct FactorResult {
  T alpha{};
  std::vector<T> weights;  // convex weights on the points
  std::vector<T> point;
  std::vector<T> best_prefix;  // max Q_j over the hull, j = 1..n
};

// Smallest alpha such that some point of conv(points) is alpha-majorized over
// the whole hull.
template <class T>
FactorResult<T> BestMajorizationFactor(const std::vector<std::vector<T>>& points);

}  // namespace polyfair

#endif  // POLYFAIR_MAJORIZATION_H_
