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

#ifndef POLYFAIR_ERROR_H_
#define POLYFAIR_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyfair {

enum class ErrorCode {
  kMalformedSubset,
  kInvalidPermutation,
  kDomain,
  kGroundSetMismatch,
  kInvalidRank,
  kInvalidDistribution,
  kUndefinedPosterior,
  kCapExceeded,
  kEmptyDomain,
  kPolicyMismatch,
  kParse,
  kSolver,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  // The message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace polyfair

#endif  // POLYFAIR_ERROR_H_
