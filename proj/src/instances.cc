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

#include "ckp/instances.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "ckp/error.h"
#include "ckp/model_json.h"

namespace ckp {

int64_t UniformInt(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  if (hi < lo) {
    throw CkpError(ErrorCode::kInvalidParams, "empty random range");
  }
  const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo);
  if (span == std::numeric_limits<uint64_t>::max()) {
    return static_cast<int64_t>(rng());
  }
  const uint64_t range = span + 1;
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % range;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<int64_t>(x % range);
}

void CheckSubSumSpec(const SubSumSpec& spec) {
  if (spec.a.empty()) {
    throw CkpError(ErrorCode::kInvalidParams, "subset-sum items are empty");
  }
  if (spec.b <= 0) throw CkpError(ErrorCode::kInvalidParams, "B must be positive");
  for (int64_t x : spec.a) {
    if (x <= 0) throw CkpError(ErrorCode::kInvalidParams, "items must be positive");
    // Larger items never take part in a solution; rejecting them keeps every
    // reduced demand within C(1 + P).
    if (x > spec.b) throw CkpError(ErrorCode::kInvalidParams, "item exceeds B");
  }
  if (spec.cot_theta <= 0) {
    throw CkpError(ErrorCode::kInvalidParams, "cot(theta) must be positive");
  }
  if (spec.alpha <= 0 || spec.alpha >= 1) {
    throw CkpError(ErrorCode::kInvalidParams, "alpha must lie in (0, 1)");
  }
}

Instance GenSubSumReduction(const SubSumSpec& spec) {
  CheckSubSumSpec(spec);
  const Rational m1 = static_cast<int64_t>(spec.a.size()) + 1;
  Instance inst;
  inst.capacity = Rational(spec.b) * spec.cot_theta;
  inst.power_factor_bound = std::max(Rational(1), 1 / spec.cot_theta);
  for (int64_t x : spec.a) {
    inst.bids.push_back(MultiMindedBid::FromSingle(
        {spec.alpha / m1, ComplexRational(Rational(x), Rational(0))}));
  }
  inst.bids.push_back(MultiMindedBid::FromSingle(
      {Rational(1), ComplexRational(Rational(-spec.b), inst.capacity)}));
  return inst;
}

bool SubSumFeasible(const SubSumSpec& spec) {
  CheckSubSumSpec(spec);
  std::vector<bool> reach(static_cast<size_t>(spec.b) + 1, false);
  reach[0] = true;
  for (int64_t x : spec.a) {
    for (int64_t s = spec.b; s >= x; --s) {
      if (reach[s - x]) reach[s] = true;
    }
  }
  return reach[spec.b];
}

bool SubSumBetaThreshold(const SubSumSpec& spec, const Rational& beta) {
  const Rational bc = Rational(spec.b) * spec.cot_theta;
  return bc * bc * (beta * beta - 1) < 1;
}

nlohmann::json SubSumSpecToJson(const SubSumSpec& spec) {
  return {{"a", spec.a},
          {"b", spec.b},
          {"cot_theta", FormatRational(spec.cot_theta)},
          {"alpha", FormatRational(spec.alpha)}};
}

Instance GenRandom(const RandomSpec& spec) {
  if (spec.num_users < 0 || spec.option_count < 0 || spec.capacity <= 0 ||
      spec.denominator <= 0 || spec.max_value <= 0 ||
      spec.power_factor_bound < 1 || spec.quadrant_mix < 0 ||
      spec.quadrant_mix > 1) {
    throw CkpError(ErrorCode::kInvalidParams, "random generator parameters");
  }
  if (spec.option_count + 1 > 64 || spec.num_users > 4096) {
    throw CkpError(ErrorCode::kInvalidParams, "random generator size limits");
  }
  std::mt19937_64 rng(spec.seed);
  const int64_t den = spec.denominator;
  const int64_t cmax = spec.capacity * den;  // scaled capacity
  constexpr int64_t kMixScale = 1'000'000;
  Instance inst;
  inst.capacity = spec.capacity;
  inst.power_factor_bound = spec.power_factor_bound;
  for (int64_t k = 0; k < spec.num_users; ++k) {
    const bool second =
        Rational(UniformInt(rng, 0, kMixScale - 1), kMixScale) < spec.quadrant_mix;
    MultiMindedBid bid;
    bid.options.push_back({{0, 0}, 0});
    for (int64_t j = 0; j < spec.option_count; ++j) {
      int64_t re, im;
      while (true) {
        im = UniformInt(rng, second ? 1 : 0, cmax);
        if (second) {
          // |re| <= P * im keeps the argument within the bound.
          const int64_t widest = std::min<int64_t>(
              cmax, static_cast<int64_t>(FloorOf(spec.power_factor_bound * im)));
          re = -UniformInt(rng, 1, widest);
        } else {
          re = UniformInt(rng, 0, cmax);
        }
        if ((re != 0 || im != 0) && re * re + im * im <= cmax * cmax) break;
      }
      const Rational value(UniformInt(rng, 1, spec.max_value), 2);
      bid.options.push_back({{Rational(re, den), Rational(im, den)}, value});
    }
    inst.bids.push_back(std::move(bid));
  }
  return inst;
}

Instance RotateQuarterTurn(const Instance& instance) {
  Instance out = instance;
  for (auto& bid : out.bids) {
    for (auto& option : bid.options) {
      option.demand = {-option.demand.im, option.demand.re};
    }
  }
  out.rotated = !instance.rotated;
  return out;
}

Instance ParseInstanceText(const std::string& text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const size_t upto = std::min(e.byte, text.size());
    size_t line = 1, column = 1;
    for (size_t i = 0; i + 1 < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw CkpError(ErrorCode::kParseError,
                   "line " + std::to_string(line) + ", column " +
                       std::to_string(column) + ": malformed JSON");
  }
  return InstanceFromJson(json);
}

Instance ReadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CkpError(ErrorCode::kParseError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseInstanceText(buffer.str());
  } catch (const CkpError& e) {
    std::string detail = e.what();
    detail = detail.substr(detail.find(": ") + 2);
    throw CkpError(e.code(), path + ": " + detail);
  }
}

void WriteInstance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CkpError(ErrorCode::kInvalidParams, "cannot write " + path);
  out << InstanceToJson(instance).dump(2) << "\n";
}

std::string CorpusIndexCsv(const std::vector<CorpusEntry>& entries) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::string csv = "path,family,num_users,hash,params\n";
  for (const auto& e : entries) {
    csv += quote(e.path) + "," + e.family + "," + std::to_string(e.num_users) +
           "," + e.hash + "," + quote(e.params) + "\n";
  }
  return csv;
}

}  // namespace ckp
