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

#ifndef CKP_INSTANCES_H_
#define CKP_INSTANCES_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ckp/model.h"
#include "ckp/rational.h"
#include "json.hpp"

namespace ckp {

// Uniform integer in [lo, hi] by rejection sampling, so that a seed gives
// the same stream on every standard library.
int64_t UniformInt(std::mt19937_64& rng, int64_t lo, int64_t hi);

// Subset-sum reduction. Items a_k sit on the real axis with value
// alpha / (m + 1); one extra user demands (-B, B cot) with value 1, and the
// capacity is B cot. A subset of `a` sums to B exactly when the optimum
// reaches 1; otherwise it stays below alpha.
struct SubSumSpec {
  std::vector<int64_t> a;
  int64_t b = 0;
  Rational cot_theta;
  Rational alpha;
};

// Throws kInvalidParams unless every a_k > 0, B > 0, cot > 0, 0 < alpha < 1.
void CheckSubSumSpec(const SubSumSpec& spec);
Instance GenSubSumReduction(const SubSumSpec& spec);
bool SubSumFeasible(const SubSumSpec& spec);
// B^2 cot^2 (beta^2 - 1) < 1.
bool SubSumBetaThreshold(const SubSumSpec& spec, const Rational& beta);

nlohmann::json SubSumSpecToJson(const SubSumSpec& spec);

struct RandomSpec {
  int64_t num_users = 5;
  int64_t option_count = 2;   // non-zero options per bid
  Rational quadrant_mix = 0;  // probability of a second-quadrant bid
  uint64_t seed = 1;
  int64_t capacity = 10;
  Rational power_factor_bound = 2;
  int64_t denominator = 4;    // demands are multiples of 1/denominator
  int64_t max_value = 20;     // values are k/2 for k in 1..max_value
};

// Throws kInvalidParams for out-of-range parameters.
Instance GenRandom(const RandomSpec& spec);

// (re, im) -> (-im, re) on every demand; toggles `rotated`.
Instance RotateQuarterTurn(const Instance& instance);

// Throws kParseError with line and column for malformed JSON, and with the
// field path for schema violations.
Instance ReadInstance(const std::string& path);
void WriteInstance(const Instance& instance, const std::string& path);
Instance ParseInstanceText(const std::string& text);

struct CorpusEntry {
  std::string path;
  std::string family;
  std::string params;
  std::string hash;
  int64_t num_users = 0;
};

std::string CorpusIndexCsv(const std::vector<CorpusEntry>& entries);

}  // namespace ckp

#endif  // CKP_INSTANCES_H_
