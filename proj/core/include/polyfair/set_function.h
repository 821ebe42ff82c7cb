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

#ifndef POLYFAIR_SET_FUNCTION_H_
#define POLYFAIR_SET_FUNCTION_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polyfair/scalar.h"
#include "polyfair/subset.h"

namespace polyfair {

// A set function on the ground set {0..n-1}. Cheap to copy; the
// underlying representation is immutable and shared.
template <class T>
class SetFunction {
 public:
  class Impl {
   public:
    explicit Impl(int n) : n_(n) {}
    virtual ~Impl() = default;

    virtual T Eval(Subset s) const = 0;
    // Defined only for functions that depend on |S| alone. Such functions
    // are usable for ground sets larger than 64 agents.
    virtual std::optional<T> EvalCount(int /*k*/) const { return std::nullopt; }
    virtual std::string Describe() const = 0;

    int n() const { return n_; }

   private:
    int n_;
  };

  SetFunction() = default;
  explicit SetFunction(std::shared_ptr<const Impl> impl);

  int n() const { return impl_->n(); }
  bool valid() const { return impl_ != nullptr; }

  // f(S). Throws kMalformedSubset when S has bits outside the ground set.
  T operator()(Subset s) const;
  T Eval(Subset s) const { return (*this)(s); }

  bool IsSymmetric() const;
  // f of any k-subset; throws kDomain for non-symmetric functions.
  T EvalCount(int k) const;

  std::string Describe() const { return impl_->Describe(); }
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

enum class TableCheck {
  kEnforce,  // reject tables that are not monotone submodular with f(empty)=0
  kNone,
};

// Dense table indexed by bitmask, n <= 20. With kEnforce the rank axioms are
// checked exhaustively for n <= 12 and by sampling above.
template <class T>
SetFunction<T> ExplicitTable(int n, std::vector<T> values,
                             TableCheck check = TableCheck::kEnforce);

// f(S) = min(|S|, c), c > 0.
template <class T>
SetFunction<T> UniformTruncation(int n, T c);

// f(S) = min(global, sum_G min(|S & G|, cap_G) + |S \ grouped|).
template <class T>
SetFunction<T> PartitionCaps(int n, std::vector<std::vector<int>> groups,
                             std::vector<T> caps, std::optional<T> global);

// sum_j coeffs[j] * fs[j]; coefficients must be nonnegative.
template <class T>
SetFunction<T> Combine(const std::vector<SetFunction<T>>& fs,
                       const std::vector<T>& coeffs);

// Wraps an arbitrary evaluator; no axioms are checked.
template <class T>
SetFunction<T> FromFunction(int n, std::function<T(Subset)> fn,
                            std::string description);

// Tabulates f into a dense table (n <= 20) without re-checking axioms.
template <class T>
SetFunction<T> Materialize(const SetFunction<T>& f);

// All 2^n values of f, indexed by mask.
template <class T>
std::vector<T> Tabulate(const SetFunction<T>& f);

}  // namespace polyfair

#endif  // POLYFAIR_SET_FUNCTION_H_
