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

#include "ckp/ptas_range.h"

#include <random>

#include "ckp/error.h"
#include "ckp/instances.h"
#include "ckp/oracle.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ckp {
namespace {

using testing::Bid;
using testing::MakeInstance;
using testing::Q;

BoxInstance RandomBox(std::mt19937_64& rng, int64_t max_users) {
  BoxInstance inst;
  inst.capacity = {Rational(UniformInt(rng, 1, 8)), Rational(UniformInt(rng, 1, 8))};
  const int64_t n = UniformInt(rng, 1, max_users);
  for (int64_t k = 0; k < n; ++k) {
    BoxBid bid;
    const int64_t options = UniformInt(rng, 1, 3);
    for (int64_t j = 0; j < options; ++j) {
      bid.options.push_back({{Rational(UniformInt(rng, 0, 12), 2),
                              Rational(UniformInt(rng, 0, 12), 2)},
                             Rational(UniformInt(rng, 1, 20), 2)});
    }
    inst.bids.push_back(std::move(bid));
  }
  return inst;
}

TEST(NormalizeBoxInstanceTest, PrependsZeroOption) {
  BoxInstance inst;
  inst.capacity = {1, 1};
  inst.bids = {BoxBid{{{{1, 0}, 2}}}, BoxBid{{{{0, 0}, 0}, {{0, 1}, 1}}}};
  const auto out = NormalizeBoxInstance(inst);
  ASSERT_EQ(out.bids[0].options.size(), 2u);
  EXPECT_EQ(out.bids[0].options[0].demand, (BoxVector{0, 0}));
  EXPECT_EQ(out.bids[1].options.size(), 2u);
}

TEST(NormalizeBoxInstanceTest, RejectsBadShapes) {
  BoxInstance inst;
  inst.capacity = {1, 1};
  inst.bids = {BoxBid{{{{1}, 2}}}};
  EXPECT_THROW(NormalizeBoxInstance(inst), CkpError);
  inst.bids = {BoxBid{{{{1, -1}, 2}}}};
  EXPECT_THROW(NormalizeBoxInstance(inst), CkpError);
  inst.capacity = {};
  inst.bids.clear();
  EXPECT_THROW(NormalizeBoxInstance(inst), CkpError);
}

TEST(BoxClosureTest, PicksBestDominatedOption) {
  const BoxBid bid{{{{0, 0}, 0}, {{1, 2}, 3}, {{2, 1}, 5}}};
  EXPECT_EQ(BoxClosureValue(bid, {2, 2}), 5);
  EXPECT_EQ(BoxClosureArgmax(bid, {2, 2}), 2);
  EXPECT_EQ(BoxClosureValue(bid, {1, 2}), 3);
  EXPECT_EQ(BoxClosureArgmax(bid, {0, 5}), 0);
}

TEST(HeavySetSizeTest, CeilOfAxesOverEpsilon) {
  EXPECT_EQ(HeavySetSize(2, 1), 2);
  EXPECT_EQ(HeavySetSize(2, Q("1/2")), 4);
  EXPECT_EQ(HeavySetSize(3, Q("2/3")), 5);
  EXPECT_THROW(HeavySetSize(2, 0), CkpError);
  EXPECT_THROW(HeavySetSize(2, 2), CkpError);
  EXPECT_THROW(HeavySetSize(0, 1), CkpError);
}

TEST(EnumerateHeavySetsTest, ZeroOnlyBids) {
  BoxInstance inst;
  inst.capacity = {1, 1};
  inst.bids.assign(3, BoxBid{{{{0, 0}, 0}}});
  std::vector<std::vector<size_t>> seen;
  const int64_t count = EnumerateHeavySets(
      inst, 1, [&](const HeavySet& hs) { seen.push_back(hs.users); });
  EXPECT_EQ(count, 3);
  EXPECT_EQ(seen, (std::vector<std::vector<size_t>>{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(EnumerateHeavySetsTest, SkipsOverfullPartials) {
  BoxInstance inst;
  inst.capacity = {1, 1};
  inst.bids.assign(2, BoxBid{{{{0, 0}, 0}, {{1, 1}, 1}}});
  int64_t visits = 0;
  const int64_t count = EnumerateHeavySets(inst, 1, [&](const HeavySet& hs) {
    ++visits;
    EXPECT_TRUE(BoxLeq(hs.partial_load, inst.capacity));
  });
  EXPECT_EQ(count, 3);
  EXPECT_EQ(visits, 3);
}

TEST(EnumerateHeavySetsTest, CapEnforced) {
  BoxInstance inst;
  inst.capacity = {1, 1};
  inst.bids.assign(30, BoxBid{{{{0, 0}, 0}}});
  PtasLimits limits;
  limits.max_heavy_sets = 10;
  try {
    EnumerateHeavySets(inst, Q("1/2"), [](const HeavySet&) {}, limits);
    FAIL();
  } catch (const CkpError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCombinatorialCap);
  }
}

TEST(MakeBucketVectorTest, ResidualOverSquare) {
  EXPECT_EQ(MakeBucketVector({4, 4}, {1, 0}, 2), (BoxVector{Q("3/4"), 1}));
  EXPECT_THROW(MakeBucketVector({4, 4}, {1, 0}, 0), CkpError);
}

TEST(MakeBucketVectorTest, SmallerPartialGivesLargerBucket) {
  std::mt19937_64 rng(30);
  for (int i = 0; i < 500; ++i) {
    const BoxVector cap = {Rational(UniformInt(rng, 4, 20)), Rational(UniformInt(rng, 4, 20))};
    const BoxVector big = {Rational(UniformInt(rng, 0, 4)), Rational(UniformInt(rng, 0, 4))};
    const BoxVector small = {big[0] * Rational(UniformInt(rng, 0, 4), 4),
                             big[1] * Rational(UniformInt(rng, 0, 4), 4)};
    const int64_t outside = UniformInt(rng, 1, 6);
    EXPECT_TRUE(BoxLeq(MakeBucketVector(cap, big, outside),
                       MakeBucketVector(cap, small, outside)));
  }
}

TEST(BucketDpTest, RespectsBucketBudget) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 50; ++round) {
    auto inst = NormalizeBoxInstance(RandomBox(rng, 4));
    const BoxVector bucket = {Rational(UniformInt(rng, 1, 4), 2),
                              Rational(UniformInt(rng, 1, 4), 2)};
    const int64_t cap = UniformInt(rng, 1, 9);
    const auto dp = BucketDp(inst.bids, bucket, cap);
    std::vector<int64_t> used(2, 0);
    Rational value = 0;
    for (size_t k = 0; k < inst.bids.size(); ++k) {
      const BoxVector point = {bucket[0] * dp.r[k][0], bucket[1] * dp.r[k][1]};
      const auto& option = inst.bids[k].options[dp.option_index[k]];
      EXPECT_TRUE(BoxLeq(option.demand, point));
      value += option.value;
      used[0] += dp.r[k][0];
      used[1] += dp.r[k][1];
    }
    EXPECT_LE(used[0], cap);
    EXPECT_LE(used[1], cap);
    EXPECT_EQ(value, dp.value);
  }
}

TEST(MultiMdkpPtasTest, EmptyInstance) {
  BoxInstance inst;
  inst.capacity = {1, 1};
  const auto r = MultiMdkpPtas(inst, 1);
  EXPECT_EQ(r.allocation.total_value, 0);
  EXPECT_EQ(r.stats.heavy_sets, 1);
}

TEST(MultiMdkpPtasTest, MeetsGuaranteeAgainstOracle) {
  std::mt19937_64 rng(32);
  for (int round = 0; round < 40; ++round) {
    const auto inst = RandomBox(rng, 6);
    const Rational eps = round % 2 ? Q(1) : Q("1/2");
    const auto r = MultiMdkpPtas(inst, eps);
    const auto opt = BruteForceBox(inst);
    EXPECT_GE(r.allocation.total_value, (1 - eps) * opt.opt_value) << round;
    EXPECT_TRUE(BoxLeq(r.allocation.total_load, inst.capacity)) << round;
    EXPECT_LE(r.allocation.total_value, opt.opt_value) << round;
  }
}

TEST(BoxFromComplexTest, FirstQuadrantOnly) {
  const auto inst = MakeInstance(10, 1, {Bid({{1, 2, 3}})});
  const auto box = BoxFromComplex(inst, 4, 5);
  EXPECT_EQ(box.capacity, (BoxVector{4, 5}));
  EXPECT_EQ(box.bids[0].options[0].demand, (BoxVector{1, 2}));
  EXPECT_THROW(BoxFromComplex(MakeInstance(10, 1, {Bid({{-1, 2, 3}})}), 4, 5),
               CkpError);
}

}  // namespace
}  // namespace ckp
