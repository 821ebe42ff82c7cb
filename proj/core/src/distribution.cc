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

#include "polyfair/distribution.h"

#include <algorithm>

#include "polyfair/error.h"

namespace polyfair {

template <class T>
T ValueDist<T>::Mean() const {
  T mean = 0;
  for (size_t i = 0; i < values.size(); ++i) mean += values[i] * probs[i];
  return mean;
}

template <class T>
ValueDist<T> MakeValueDist(std::vector<std::pair<T, T>> support,
                           std::optional<T> V) {
  if (support.empty()) throw Error(ErrorCode::kInvalidDistribution, "empty support");
  std::sort(support.begin(), support.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ValueDist<T> d;
  T total = 0;
  for (const auto& [v, p] : support) {
    if (!d.values.empty() && !(d.values.back() < v)) {
      throw Error(ErrorCode::kInvalidDistribution, "support values must be distinct");
    }
    if (!(p > 0)) throw Error(ErrorCode::kInvalidDistribution, "probabilities must be positive");
    if (StrictlyLess(v, T(1)) || (V && StrictlyLess(*V, v))) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "value " + ScalarToString(v) + " outside [1, V]");
    }
    d.values.push_back(v);
    d.probs.push_back(p);
    total += p;
  }
  bool ok;
  if constexpr (kIsExact<T>) {
    ok = total == 1;
  } else {
    ok = std::abs(total - 1.0) <= 1e-12;
  }
  if (!ok) {
    throw Error(ErrorCode::kInvalidDistribution,
                "probabilities sum to " + ScalarToString(total));
  }
  return d;
}

template <class T>
std::vector<Scenario<T>> EnumerateScenarios(const std::vector<ValueDist<T>>& dists,
                                            std::int64_t cap) {
  std::int64_t count = 1;
  for (const auto& d : dists) {
    count *= d.size();
    if (count > cap) {
      throw Error(ErrorCode::kCapExceeded,
                  "scenario enumeration exceeds " + std::to_string(cap) +
                      " profiles; use sampling");
    }
  }
  int n = static_cast<int>(dists.size());
  std::vector<Scenario<T>> out;
  out.reserve(count);
  std::vector<int> idx(n, 0);
  while (true) {
    Scenario<T> s;
    s.v.resize(n);
    s.p = 1;
    for (int i = 0; i < n; ++i) {
      s.v[i] = dists[i].values[idx[i]];
      s.p *= dists[i].probs[idx[i]];
    }
    out.push_back(std::move(s));
    int i = n - 1;
    while (i >= 0 && ++idx[i] == dists[i].size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

std::uint64_t CounterRng::Bits(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t counter) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ stream) ^ counter);
}

double CounterRng::Uniform(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) {
  return static_cast<double>(Bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

template <class T>
int DrawIndex(const std::vector<T>& probs, double u) {
  double acc = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += ToDouble(probs[i]);
    if (u < acc) return static_cast<int>(i);
  }
  for (size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0) return static_cast<int>(i);
  }
  return 0;
}

template <class T>
std::vector<Scenario<T>> SampleScenarios(const std::vector<ValueDist<T>>& dists,
                                         int count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorCode::kDomain, "sample count must be positive");
  std::vector<Scenario<T>> out(count);
  T weight = T(1) / FromInt<T>(count);
  for (int s = 0; s < count; ++s) {
    out[s].p = weight;
    out[s].v.resize(dists.size());
    for (size_t i = 0; i < dists.size(); ++i) {
      int k = DrawIndex(dists[i].probs, CounterRng::Uniform(seed, i, s));
      out[s].v[i] = dists[i].values[k];
    }
  }
  return out;
}

#define POLYFAIR_INSTANTIATE(T)                                                    \
  template struct ValueDist<T>;                                                    \
  template ValueDist<T> MakeValueDist<T>(std::vector<std::pair<T, T>>,             \
                                         std::optional<T>);                        \
  template std::vector<Scenario<T>> EnumerateScenarios<T>(                         \
      const std::vector<ValueDist<T>>&, std::int64_t);                             \
  template std::vector<Scenario<T>> SampleScenarios<T>(                            \
      const std::vector<ValueDist<T>>&, int, std::uint64_t);                       \
  template int DrawIndex<T>(const std::vector<T>&, double);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
