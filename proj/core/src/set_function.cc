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

#include "polyfair/set_function.h"

#include <algorithm>
#include <sstream>
#include <utility>

#include "polyfair/error.h"
#include "polyfair/polymatroid.h"

namespace polyfair {
namespace {

void CheckAgentCount(int n) {
  if (n < 1) throw Error(ErrorCode::kDomain, "ground set must be nonempty");
}

template <class T>
class TableImpl final : public SetFunction<T>::Impl {
 public:
  TableImpl(int n, std::vector<T> values)
      : SetFunction<T>::Impl(n), values_(std::move(values)) {}
  T Eval(Subset s) const override { return values_[s]; }
  std::string Describe() const override {
    return "explicit(n=" + std::to_string(this->n()) + ")";
  }

 private:
  std::vector<T> values_;
};

template <class T>
class TruncationImpl final : public SetFunction<T>::Impl {
 public:
  TruncationImpl(int n, T c) : SetFunction<T>::Impl(n), c_(std::move(c)) {}
  T Eval(Subset s) const override { return *EvalCount(Cardinality(s)); }
  std::optional<T> EvalCount(int k) const override {
    T size = FromInt<T>(k);
    return size < c_ ? size : c_;
  }
  std::string Describe() const override {
    return "uniform_truncation(c=" + ScalarToString(c_) + ")";
  }

 private:
  T c_;
};

template <class T>
class PartitionImpl final : public SetFunction<T>::Impl {
 public:
  PartitionImpl(int n, std::vector<Subset> groups, std::vector<T> caps,
                std::optional<T> global)
      : SetFunction<T>::Impl(n),
        groups_(std::move(groups)),
        caps_(std::move(caps)),
        global_(std::move(global)) {
    for (Subset g : groups_) grouped_ |= g;
  }
  T Eval(Subset s) const override {
    T total = FromInt<T>(Cardinality(s & ~grouped_));
    for (size_t g = 0; g < groups_.size(); ++g) {
      T inside = FromInt<T>(Cardinality(s & groups_[g]));
      total += inside < caps_[g] ? inside : caps_[g];
    }
    if (global_ && *global_ < total) return *global_;
    return total;
  }
  std::string Describe() const override {
    return "partition_caps(groups=" + std::to_string(groups_.size()) + ")";
  }

 private:
  std::vector<Subset> groups_;
  std::vector<T> caps_;
  std::optional<T> global_;
  Subset grouped_ = 0;
};

template <class T>
class CombinationImpl final : public SetFunction<T>::Impl {
 public:
  CombinationImpl(int n, std::vector<SetFunction<T>> fs, std::vector<T> coeffs)
      : SetFunction<T>::Impl(n), fs_(std::move(fs)), coeffs_(std::move(coeffs)) {}
  T Eval(Subset s) const override {
    T total = 0;
    for (size_t j = 0; j < fs_.size(); ++j) {
      if (coeffs_[j] == 0) continue;
      total += coeffs_[j] * fs_[j].impl().Eval(s);
    }
    return total;
  }
  std::optional<T> EvalCount(int k) const override {
    T total = 0;
    for (size_t j = 0; j < fs_.size(); ++j) {
      std::optional<T> v = fs_[j].impl().EvalCount(k);
      if (!v) return std::nullopt;
      total += coeffs_[j] * *v;
    }
    return total;
  }
  std::string Describe() const override {
    return "linear_combination(terms=" + std::to_string(fs_.size()) + ")";
  }

 private:
  std::vector<SetFunction<T>> fs_;
  std::vector<T> coeffs_;
};

template <class T>
class LambdaImpl final : public SetFunction<T>::Impl {
 public:
  LambdaImpl(int n, std::function<T(Subset)> fn, std::string description)
      : SetFunction<T>::Impl(n),
        fn_(std::move(fn)),
        description_(std::move(description)) {}
  T Eval(Subset s) const override { return fn_(s); }
  std::string Describe() const override { return description_; }

 private:
  std::function<T(Subset)> fn_;
  std::string description_;
};

}  // namespace

template <class T>
SetFunction<T>::SetFunction(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)) {}

template <class T>
T SetFunction<T>::operator()(Subset s) const {
  int n = impl_->n();
  if (n > kMaxSubsetAgents) {
    throw Error(ErrorCode::kMalformedSubset,
                "bitmask subsets need at most 64 agents; use EvalCount");
  }
  if (n < kMaxSubsetAgents && (s >> n) != 0) {
    throw Error(ErrorCode::kMalformedSubset,
                "subset " + SubsetToString(s) + " outside ground set of size " +
                    std::to_string(n));
  }
  return impl_->Eval(s);
}

template <class T>
bool SetFunction<T>::IsSymmetric() const {
  return impl_->EvalCount(0).has_value();
}

template <class T>
T SetFunction<T>::EvalCount(int k) const {
  if (k < 0 || k > n()) throw Error(ErrorCode::kMalformedSubset, "count out of range");
  std::optional<T> v = impl_->EvalCount(k);
  if (!v) throw Error(ErrorCode::kDomain, Describe() + " is not symmetric");
  return *v;
}

template <class T>
SetFunction<T> ExplicitTable(int n, std::vector<T> values, TableCheck check) {
  CheckAgentCount(n);
  if (n > kMaxEnumerationAgents) {
    throw Error(ErrorCode::kCapExceeded, "explicit tables support n <= 20");
  }
  if (values.size() != (size_t{1} << n)) {
    throw Error(ErrorCode::kInvalidRank,
                "explicit table needs 2^n = " + std::to_string(size_t{1} << n) +
                    " values, got " + std::to_string(values.size()));
  }
  SetFunction<T> f(std::make_shared<TableImpl<T>>(n, std::move(values)));
  if (check == TableCheck::kEnforce) {
    CheckOptions options;
    options.max_listed = 1;
    ValidationReport report = CheckSubmodularMonotone(f, options);
    if (!report.ok()) {
      const Violation& v = report.violations.front();
      throw Error(ErrorCode::kInvalidRank,
                  "table violates " + ViolationKindName(v.kind) + " at A=" +
                      SubsetToString(v.a) + ", B=" + SubsetToString(v.b));
    }
  }
  return f;
}

template <class T>
SetFunction<T> UniformTruncation(int n, T c) {
  CheckAgentCount(n);
  if (!(c > 0)) throw Error(ErrorCode::kDomain, "truncation level must be positive");
  return SetFunction<T>(std::make_shared<TruncationImpl<T>>(n, std::move(c)));
}

template <class T>
SetFunction<T> PartitionCaps(int n, std::vector<std::vector<int>> groups,
                             std::vector<T> caps, std::optional<T> global) {
  CheckAgentCount(n);
  if (n > kMaxSubsetAgents) throw Error(ErrorCode::kCapExceeded, "partition caps need n <= 64");
  if (groups.size() != caps.size()) {
    throw Error(ErrorCode::kInvalidRank, "one cap per group is required");
  }
  std::vector<Subset> masks;
  Subset seen = 0;
  for (const auto& g : groups) {
    Subset m = SubsetOf(g, n);
    if (m & seen) throw Error(ErrorCode::kInvalidRank, "groups must be disjoint");
    seen |= m;
    masks.push_back(m);
  }
  for (const T& c : caps) {
    if (c < 0) throw Error(ErrorCode::kInvalidRank, "caps must be nonnegative");
  }
  if (global && *global < 0) throw Error(ErrorCode::kInvalidRank, "global cap must be nonnegative");
  return SetFunction<T>(std::make_shared<PartitionImpl<T>>(
      n, std::move(masks), std::move(caps), std::move(global)));
}

template <class T>
SetFunction<T> Combine(const std::vector<SetFunction<T>>& fs,
                       const std::vector<T>& coeffs) {
  if (fs.empty()) throw Error(ErrorCode::kDomain, "combine needs at least one function");
  if (fs.size() != coeffs.size()) {
    throw Error(ErrorCode::kDomain, "one coefficient per function is required");
  }
  int n = fs.front().n();
  for (size_t j = 0; j < fs.size(); ++j) {
    if (fs[j].n() != n) {
      throw Error(ErrorCode::kGroundSetMismatch,
                  "combine: ground sets of size " + std::to_string(n) + " and " +
                      std::to_string(fs[j].n()));
    }
    if (coeffs[j] < 0) throw Error(ErrorCode::kDomain, "combine: negative coefficient");
  }
  return SetFunction<T>(std::make_shared<CombinationImpl<T>>(n, fs, coeffs));
}

template <class T>
SetFunction<T> FromFunction(int n, std::function<T(Subset)> fn,
                            std::string description) {
  CheckAgentCount(n);
  return SetFunction<T>(
      std::make_shared<LambdaImpl<T>>(n, std::move(fn), std::move(description)));
}

template <class T>
std::vector<T> Tabulate(const SetFunction<T>& f) {
  int n = f.n();
  if (n > kMaxEnumerationAgents) {
    throw Error(ErrorCode::kCapExceeded, "tabulation supports n <= 20");
  }
  std::vector<T> values(size_t{1} << n);
  for (Subset s = 0; s < values.size(); ++s) values[s] = f.impl().Eval(s);
  return values;
}

template <class T>
SetFunction<T> Materialize(const SetFunction<T>& f) {
  return ExplicitTable<T>(f.n(), Tabulate(f), TableCheck::kNone);
}

#define POLYFAIR_INSTANTIATE(T)                                               \
  template class SetFunction<T>;                                              \
  template SetFunction<T> ExplicitTable<T>(int, std::vector<T>, TableCheck);  \
  template SetFunction<T> UniformTruncation<T>(int, T);                       \
  template SetFunction<T> PartitionCaps<T>(int, std::vector<std::vector<int>>, \
                                           std::vector<T>, std::optional<T>); \
  template SetFunction<T> Combine<T>(const std::vector<SetFunction<T>>&,      \
                                     const std::vector<T>&);                  \
  template SetFunction<T> FromFunction<T>(int, std::function<T(Subset)>,      \
                                          std::string);                       \
  template SetFunction<T> Materialize<T>(const SetFunction<T>&);              \
  template std::vector<T> Tabulate<T>(const SetFunction<T>&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
