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

// JSON schema for instances and allocations. Rationals travel as "p/q"
// strings:
//
//   {"capacity": "p/q", "power_factor_bound": "p/q", "rotated": false,
//    "bids": [{"options": [{"re": "p/q", "im": "p/q", "value": "p/q"}]}]}
//
// "rotated" is optional. Any other key is rejected.

#ifndef CKP_MODEL_JSON_H_
#define CKP_MODEL_JSON_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "ckp/model.h"
#include "json.hpp"

namespace ckp {

nlohmann::json ComplexToJson(const ComplexRational& value);
nlohmann::json InstanceToJson(const Instance& instance);
nlohmann::json AllocationToJson(const Allocation& allocation);

// Throws kParseError with the offending field path in the message.
Instance InstanceFromJson(const nlohmann::json& json);

// Canonical single-line text of an instance; hashing input.
std::string CanonicalInstanceText(const Instance& instance);

uint64_t Fnv1a64(std::string_view bytes);
// 16 lowercase hex digits.
std::string HashHex(uint64_t hash);
std::string InstanceHash(const Instance& instance);

}  // namespace ckp

#endif  // CKP_MODEL_JSON_H_
