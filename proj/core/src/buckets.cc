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

#include "polyfair/buckets.h"

#include "polyfair/error.h"

namespace polyfair {

template <class T>
bool Interval<T>::Contains(const T& x) const {
  if (x < lo) return false;
  return hi_closed ? x <= hi : x < hi;
}

template <class T>
BucketScheme<T>::BucketScheme(T V, T eps)
    : V_(std::move(V)), eps_(std::move(eps)), eta_(T(1) + eps_) {
  if (V_ < 1) throw Error(ErrorCode::kDomain, "V must be at least 1");
  if (!(eps_ > 0)) throw Error(ErrorCode::kDomain, "epsilon must be positive");
  T power = 1;
  lower_.push_back(power);
  power *= eta_;
  while (power < V_) {
    if constexpr (!kIsExact<T>) {
      if (IsClose(power, V_)) break;
    }
    lower_.push_back(power);
    power *= eta_;
    if (lower_.size() > 100000) throw Error(ErrorCode::kCapExceeded, "too many buckets");
  }
}

template <class T>
Interval<T> BucketScheme<T>::interval(int k) const {
  if (k < 0 || k >= K()) throw Error(ErrorCode::kDomain, "bucket index out of range");
  if (k + 1 == K()) return {lower_[k], V_, true};
  return {lower_[k], lower_[k + 1], false};
}

template <class T>
int BucketScheme<T>::BucketOf(const T& x) const {
  if (StrictlyLess(x, T(1)) || StrictlyLess(V_, x)) {
    throw Error(ErrorCode::kDomain, "value " + ScalarToString(T(x)) + " outside [1, V]");
  }
  int k = 0;
  while (k + 1 < K() && !(x < lower_[k + 1])) ++k;
  return k;
}

template struct Interval<double>;
template struct Interval<Rational>;
template class BucketScheme<double>;
template class BucketScheme<Rational>;

}  // namespace polyfair
