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

#include "polyfair/subset.h"

#include "polyfair/error.h"

namespace polyfair {

std::vector<int> Members(Subset s) {
  std::vector<int> out;
  out.reserve(Cardinality(s));
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

Subset SubsetOf(std::span<const int> ids, int n) {
  Subset s = 0;
  for (int i : ids) {
    if (i < 0 || i >= n || i >= kMaxSubsetAgents) {
      throw Error(ErrorCode::kMalformedSubset,
                  "agent " + std::to_string(i) + " outside ground set of size " +
                      std::to_string(n));
    }
    s |= Bit(i);
  }
  return s;
}

std::string SubsetToString(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i : Members(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

GroundSet::GroundSet(int size) : n(size) {
  if (size < 1) throw Error(ErrorCode::kDomain, "ground set must be nonempty");
}

}  // namespace polyfair
