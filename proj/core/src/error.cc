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

#include "polyfair/error.h"

namespace polyfair {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedSubset: return "malformed-subset";
    case ErrorCode::kInvalidPermutation: return "invalid-permutation";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kGroundSetMismatch: return "ground-set-mismatch";
    case ErrorCode::kInvalidRank: return "invalid-rank";
    case ErrorCode::kInvalidDistribution: return "invalid-distribution";
    case ErrorCode::kUndefinedPosterior: return "undefined-posterior";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kEmptyDomain: return "empty-domain";
    case ErrorCode::kPolicyMismatch: return "policy-mismatch";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSolver: return "solver";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace polyfair
