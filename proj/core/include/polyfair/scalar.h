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

// Numeric backends. Every algorithm in the library is instantiated for
// `double` (absolute tolerance 1e-9) and `Rational` (exact, GMP).

#ifndef POLYFAIR_SCALAR_H_
#define POLYFAIR_SCALAR_H_

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace polyfair {

using Rational = mpq_class;

template <class T>
struct Num;

template <>
struct Num<double> {
  static constexpr bool kExact = false;
  // Comparison tolerance for feasibility and membership tests.
  static constexpr double kTolerance = 1e-9;
  // Tolerance used when grouping agents with equal values into blocks.
  static constexpr double kTieTolerance = 1e-12;
  static constexpr const char* kName = "float64";
};

template <>
struct Num<Rational> {
  static constexpr bool kExact = true;
  static constexpr const char* kName = "rational";
};

template <class T>
inline constexpr bool kIsExact = Num<T>::kExact;

// Parses "3", "-0.25", "1e-3", "7/8". Decimal text is converted exactly in
// rational mode.
template <class T>
T ParseScalar(std::string_view text);

// Decimal representation when exact (finite binary/decimal expansions),
// otherwise "p/q" in rational mode; shortest round-trip form for doubles.
template <class T>
std::string ScalarToString(const T& value);

inline double ToDouble(double v) { return v; }
inline double ToDouble(const Rational& v) { return v.get_d(); }

template <class T>
T FromInt(long long v) {
  if constexpr (std::is_same_v<T, double>) {
    return static_cast<double>(v);
  } else {
    return Rational(static_cast<signed long>(v));
  }
}

inline double Abs(double v) { return std::abs(v); }
inline Rational Abs(const Rational& v) { return abs(v); }

// a == b, within tolerance for doubles.
inline bool IsClose(double a, double b) {
  return std::abs(a - b) <= Num<double>::kTolerance;
}
inline bool IsClose(const Rational& a, const Rational& b) { return a == b; }

// a <= b, within tolerance for doubles.
inline bool LessEq(double a, double b) {
  return a <= b + Num<double>::kTolerance;
}
inline bool LessEq(const Rational& a, const Rational& b) { return a <= b; }

// a < b by more than the tolerance.
inline bool StrictlyLess(double a, double b) { return !LessEq(b, a); }
inline bool StrictlyLess(const Rational& a, const Rational& b) { return a < b; }

// Equality used for grouping agents into value blocks.
inline bool TiesWith(double a, double b) {
  return std::abs(a - b) <= Num<double>::kTieTolerance;
}
inline bool TiesWith(const Rational& a, const Rational& b) { return a == b; }

// Converts between the two backends. Doubles are converted exactly.
template <class To, class From>
To ConvertScalar(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    return ToDouble(v);
  } else {
    return Rational(v);
  }
}

}  // namespace polyfair

#endif  // POLYFAIR_SCALAR_H_
