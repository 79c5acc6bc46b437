// Copyright 2026 The CKP Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CKP_ERROR_H_
#define CKP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ckp {

enum class ErrorCode {
  kInvalidParams,
  kInvalidInstance,
  kMixedQuadrantBid,
  kParseError,
  kGridTooLarge,
  kOracleCap,
  kCombinatorialCap,
  kValueOverflow,
  kInternalInconsistency,
};

std::string_view ErrorCodeName(ErrorCode code);

// Input errors, resource caps and internal invariant failures are the three
// families the command line maps to distinct exit codes.
enum class ErrorFamily { kInput, kResourceCap, kInternal };

ErrorFamily FamilyOf(ErrorCode code);

class CkpError : public std::runtime_error {
 public:
  CkpError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ckp

#endif  // CKP_ERROR_H_
