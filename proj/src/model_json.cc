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

#include "ckp/model_json.h"

#include <cstdio>
#include <initializer_list>
#include <string_view>

#include "ckp/error.h"

namespace ckp {

namespace {

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw CkpError(ErrorCode::kParseError, path + ": " + what);
}

void RequireObject(const nlohmann::json& json, const std::string& path,
                   std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional = {}) {
  if (!json.is_object()) Fail(path, "expected an object");
  for (auto key : required) {
    if (!json.contains(std::string(key))) {
      Fail(path, "missing field '" + std::string(key) + "'");
    }
  }
  for (const auto& item : json.items()) {
    bool known = false;
    for (auto key : required) known |= item.key() == key;
    for (auto key : optional) known |= item.key() == key;
    if (!known) Fail(path, "unknown field '" + item.key() + "'");
  }
}

Rational ReadRational(const nlohmann::json& json, const std::string& path) {
  if (!json.is_string()) Fail(path, "expected a \"p/q\" string");
  try {
    return ParseRational(json.get<std::string>());
  } catch (const CkpError& e) {
    Fail(path, e.what());
  }
}

}  // namespace

nlohmann::json ComplexToJson(const ComplexRational& value) {
  return {{"re", FormatRational(value.re)}, {"im", FormatRational(value.im)}};
}

nlohmann::json InstanceToJson(const Instance& instance) {
  nlohmann::json bids = nlohmann::json::array();
  for (const auto& bid : instance.bids) {
    nlohmann::json options = nlohmann::json::array();
    for (const auto& option : bid.options) {
      options.push_back({{"re", FormatRational(option.demand.re)},
                         {"im", FormatRational(option.demand.im)},
                         {"value", FormatRational(option.value)}});
    }
    bids.push_back({{"options", options}});
  }
  nlohmann::json out = {
      {"capacity", FormatRational(instance.capacity)},
      {"power_factor_bound", FormatRational(instance.power_factor_bound)},
      {"bids", bids},
  };
  if (instance.rotated) out["rotated"] = true;
  return out;
}

nlohmann::json AllocationToJson(const Allocation& allocation) {
  nlohmann::json chosen = nlohmann::json::array();
  for (const auto& d : allocation.chosen) chosen.push_back(ComplexToJson(d));
  return {
      {"chosen", chosen},
      {"total_load", ComplexToJson(allocation.total_load)},
      {"total_value", FormatRational(allocation.total_value)},
  };
}

Instance InstanceFromJson(const nlohmann::json& json) {
  RequireObject(json, "$", {"capacity", "power_factor_bound", "bids"},
                {"rotated"});
  Instance instance;
  instance.capacity = ReadRational(json["capacity"], "$.capacity");
  instance.power_factor_bound =
      ReadRational(json["power_factor_bound"], "$.power_factor_bound");
  if (json.contains("rotated")) {
    if (!json["rotated"].is_boolean()) Fail("$.rotated", "expected a boolean");
    instance.rotated = json["rotated"].get<bool>();
  }
  const auto& bids = json["bids"];
  if (!bids.is_array()) Fail("$.bids", "expected an array");
  for (size_t k = 0; k < bids.size(); ++k) {
    const std::string bid_path = "$.bids[" + std::to_string(k) + "]";
    RequireObject(bids[k], bid_path, {"options"});
    const auto& options = bids[k]["options"];
    if (!options.is_array()) Fail(bid_path + ".options", "expected an array");
    MultiMindedBid bid;
    for (size_t i = 0; i < options.size(); ++i) {
      const std::string path = bid_path + ".options[" + std::to_string(i) + "]";
      RequireObject(options[i], path, {"re", "im", "value"});
      DemandOption option;
      option.demand.re = ReadRational(options[i]["re"], path + ".re");
      option.demand.im = ReadRational(options[i]["im"], path + ".im");
      option.value = ReadRational(options[i]["value"], path + ".value");
      bid.options.push_back(std::move(option));
    }
    instance.bids.push_back(std::move(bid));
  }
  return instance;
}

std::string CanonicalInstanceText(const Instance& instance) {
  return InstanceToJson(instance).dump();
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string HashHex(uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string InstanceHash(const Instance& instance) {
  return HashHex(Fnv1a64(CanonicalInstanceText(instance)));
}

}  // namespace ckp
