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

#ifndef CKP_TESTS_TEST_UTIL_H_
#define CKP_TESTS_TEST_UTIL_H_

#include <initializer_list>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "ckp/instances.h"
#include "ckp/model.h"
#include "ckp/rational.h"

namespace ckp::testing {

inline Rational Q(const std::string& text) { return ParseRational(text); }
inline Rational Q(int64_t value) { return Rational(value); }

inline ComplexRational Z(const Rational& re, const Rational& im) { return {re, im}; }

struct OptionSpec {
  Rational re, im, value;
};

inline MultiMindedBid Bid(std::initializer_list<OptionSpec> options) {
  MultiMindedBid bid;
  for (const auto& o : options) bid.options.push_back({{o.re, o.im}, o.value});
  return bid;
}

inline Instance MakeInstance(const Rational& capacity, const Rational& power,
                             std::vector<MultiMindedBid> bids) {
  Instance inst;
  inst.capacity = capacity;
  inst.power_factor_bound = power;
  inst.bids = std::move(bids);
  return inst;
}

// Single-minded instance with mixed quadrants, n users, P in 1..max_power.
inline Instance RandomSingleMinded(std::mt19937_64& rng, int64_t max_users,
                                   int64_t max_power) {
  RandomSpec spec;
  spec.num_users = UniformInt(rng, 1, max_users);
  spec.option_count = 1;
  spec.quadrant_mix = Rational(UniformInt(rng, 0, 2), 2);
  spec.seed = rng();
  spec.capacity = UniformInt(rng, 2, 10);
  spec.power_factor_bound = UniformInt(rng, 1, max_power);
  spec.denominator = UniformInt(rng, 1, 4);
  return GenRandom(spec);
}

inline Instance RandomMultiMinded(std::mt19937_64& rng, int64_t max_users,
                                  int64_t max_options) {
  RandomSpec spec;
  spec.num_users = UniformInt(rng, 1, max_users);
  spec.option_count = UniformInt(rng, 1, max_options);
  spec.quadrant_mix = Rational(UniformInt(rng, 0, 2), 2);
  spec.seed = rng();
  spec.capacity = UniformInt(rng, 2, 10);
  spec.power_factor_bound = UniformInt(rng, 1, 3);
  spec.denominator = UniformInt(rng, 1, 4);
  return GenRandom(spec);
}

}  // namespace ckp::testing

#endif  // CKP_TESTS_TEST_UTIL_H_
