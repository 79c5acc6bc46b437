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

// (1 - eps)-approximation for the multi-dimensional knapsack with
// multi-minded bids (Multi-mDKP), without capacity violation.
//
// The range is the union, over heavy sets (N, partial selection), of the
// allocations that give N its partial selection and every other user a
// bucket point b * r with sum(r) <= (n - t)^2 per axis. Each bucket problem
// is a small multiple-choice knapsack over r-vectors.

#ifndef CKP_PTAS_RANGE_H_
#define CKP_PTAS_RANGE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "ckp/model.h"
#include "ckp/rational.h"
#include "json.hpp"

namespace ckp {

using BoxVector = std::vector<Rational>;

struct BoxOption {
  BoxVector demand;  // non-negative, one entry per axis
  Rational value;
};

struct BoxBid {
  std::vector<BoxOption> options;
};

struct BoxInstance {
  BoxVector capacity;
  std::vector<BoxBid> bids;

  size_t num_axes() const { return capacity.size(); }
};

struct BoxAllocation {
  // Index into the normalized option list of each user; 0 is the zero demand.
  std::vector<int> option_index;
  std::vector<BoxVector> chosen;
  BoxVector total_load;
  Rational total_value;
};

struct PtasLimits {
  int64_t max_heavy_sets = 2'000'000;
  int64_t max_bucket_states = 4'000'000;
};

// Checks dimensions and signs, and puts the zero demand first in every bid.
// Throws kInvalidInstance.
BoxInstance NormalizeBoxInstance(const BoxInstance& instance);

bool BoxLeq(const BoxVector& a, const BoxVector& b);

// max{value : option.demand <= point}, 0 when nothing fits.
Rational BoxClosureValue(const BoxBid& bid, const BoxVector& point);

// First option attaining BoxClosureValue(bid, point).
int BoxClosureArgmax(const BoxBid& bid, const BoxVector& point);

BoxAllocation MakeBoxAllocation(const BoxInstance& instance,
                                std::vector<int> option_index);

// t = ceil(m / eps).
int64_t HeavySetSize(int64_t num_axes, const Rational& epsilon);

struct HeavySet {
  std::vector<size_t> users;    // increasing
  std::vector<int> partial;     // option index per member of `users`
  BoxVector partial_load;
};

// Visits every heavy set of size min(n, t) whose partial load fits under the
// capacity: subsets in lexicographic order, then option products with the
// first member's option varying slowest. Expects a normalized instance.
// Throws kCombinatorialCap once more than `limits.max_heavy_sets` are seen.
// Returns the number visited.
int64_t EnumerateHeavySets(const BoxInstance& instance, const Rational& epsilon,
                           const std::function<void(const HeavySet&)>& visit,
                           const PtasLimits& limits = {});

// b^i = (c^i - partial^i) / (n - t)^2. Requires outside_users > 0.
BoxVector MakeBucketVector(const BoxVector& capacity,
                           const BoxVector& partial_load,
                           int64_t outside_users);

struct BucketDpResult {
  std::vector<std::vector<int64_t>> r;  // per user
  std::vector<int> option_index;        // declared option dominated by b * r
  Rational value;
};

// Maximizes sum_k closure_k(b * r_k) subject to sum_k r_k <= r_cap on every
// axis. Normalized bids expected.
BucketDpResult BucketDp(const std::vector<BoxBid>& bids, const BoxVector& bucket,
                        int64_t r_cap, const PtasLimits& limits = {});

struct PtasStats {
  int64_t heavy_sets = 0;
  int64_t bucket_states = 0;
  double wall_seconds = 0;
};

struct PtasResult {
  BoxAllocation allocation;
  HeavySet heavy_set;
  int64_t t = 0;
  PtasStats stats;
};

PtasResult MultiMdkpPtas(const BoxInstance& instance, const Rational& epsilon,
                         const PtasLimits& limits = {});

// Two-axis view of a first-quadrant complex instance: (re, im) against the
// box (c1, c2). Throws kInvalidInstance for a demand with re < 0.
BoxInstance BoxFromComplex(const Instance& instance, const Rational& c1,
                           const Rational& c2);

nlohmann::json PtasResultToJson(const PtasResult& result);

}  // namespace ckp

#endif  // CKP_PTAS_RANGE_H_
