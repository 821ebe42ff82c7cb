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

// JSON formats: instances, policies and canonical report output.

#ifndef POLYFAIR_IO_H_
#define POLYFAIR_IO_H_

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "polyfair/distribution.h"
#include "polyfair/policy.h"
#include "polyfair/set_function.h"

namespace polyfair {

using Json = nlohmann::json;

// Numbers may be JSON numbers or strings such as "1/3" or "0.25".
std::string ScalarText(const Json& value, const std::string& where);

template <class T>
T ParseJsonScalar(const Json& value, const std::string& where);

// Instance text before any semantic check, so that validation can list
// every problem instead of stopping at the first one.
struct RawInstance {
  std::string V;
  std::string epsilon;
  std::vector<std::vector<std::pair<std::string, std::string>>> agents;
  Json constraint;
  std::string numeric;  // optional "float64" / "rational"
};

// Throws kParse with the offending field.
RawInstance ParseRawInstance(const std::string& text);
RawInstance LoadRawInstance(const std::string& path);

std::string ReadFile(const std::string& path);

template <class T>
struct Instance {
  T V;
  T epsilon;
  std::vector<ValueDist<T>> dists;
  SetFunction<T> f;
  int n() const { return static_cast<int>(dists.size()); }
};

// Constraint descriptors:
//   {"type":"uniform_truncation","c":1}
//   {"type":"partition_caps","groups":[[0,1],[2]],"caps":[1,1],"global":2}
//   {"type":"explicit","table":[...]}            (indexed by bitmask)
//   {"type":"explicit","values":{"3":"1.5",...}} (decimal mask keys, others 0)
//   {"type":"combine","terms":[{"coeff":1,"constraint":{...}},...]}
template <class T>
SetFunction<T> BuildConstraint(const Json& spec, int n, TableCheck check);

template <class T>
ValueDist<T> BuildDist(const std::vector<std::pair<std::string, std::string>>& support,
                       const T& V, const std::string& where);

template <class T>
Instance<T> BuildInstance(const RawInstance& raw, TableCheck check = TableCheck::kEnforce);

// Policy JSON. Shorthands {"kind":"no_revelation"} and
// {"kind":"full_revelation","selection":{...}} expand against the instance.
template <class T>
Policy<T> ParsePolicy(const Json& json, const Instance<T>& instance);

template <class T>
Json PolicyToJson(const Policy<T>& policy);

template <class T>
Json ScalarToJson(const T& value);  // JSON number

template <class T>
Json VectorToJson(const std::vector<T>& values);

template <class T>
Json ExactVectorToJson(const std::vector<T>& values);  // strings

// Sorted keys, two-space indent, trailing newline.
std::string CanonicalDump(const Json& json);

}  // namespace polyfair

#endif  // POLYFAIR_IO_H_
