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

#ifndef POLYFAIR_BUCKETS_H_
#define POLYFAIR_BUCKETS_H_

#include <vector>

#include "polyfair/scalar.h"

namespace polyfair {

// A value interval. Buckets are closed below and open above, except the last
// one, which is closed at V.
template <class T>
struct Interval {
  T lo;
  T hi;
  bool hi_closed = false;

  bool Contains(const T& x) const;
};

// Geometric partition of [1, V] with ratio eta = 1 + eps. Buckets are indexed
// 0..K-1 from the bottom; bucket k is [eta^k, eta^(k+1)) and its canonical
// mean is the lower endpoint eta^k.
template <class T>
class BucketScheme {
 public:
  BucketScheme(T V, T eps);

  int K() const { return static_cast<int>(lower_.size()); }
  const T& V() const { return V_; }
  const T& eps() const { return eps_; }
  const T& eta() const { return eta_; }
  const T& canonical(int k) const { return lower_.at(k); }
  Interval<T> interval(int k) const;

  // Bucket containing x; throws kDomain when x is outside [1, V].
  int BucketOf(const T& x) const;
  // Canonical mean of the bucket containing x.
  const T& Canonical(const T& x) const { return lower_[BucketOf(x)]; }

 private:
  T V_;
  T eps_;
  T eta_;
  std::vector<T> lower_;
};

}  // namespace polyfair

#endif  // POLYFAIR_BUCKETS_H_
