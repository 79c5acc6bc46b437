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

#include "ckp/model.h"

#include <random>

#include "ckp/error.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ckp {
namespace {

using testing::Bid;
using testing::MakeInstance;
using testing::Q;
using testing::Z;

TEST(PartialOrderTest, ZeroIsBelowEverything) {
  EXPECT_TRUE(PartialOrderLeq(Z(0, 0), Z(3, 1)));
  EXPECT_TRUE(PartialOrderLeq(Z(0, 0), Z(-3, 1)));
  EXPECT_TRUE(PartialOrderLeq(Z(0, 0), Z(0, 0)));
}

TEST(PartialOrderTest, Examples) {
  EXPECT_TRUE(PartialOrderLeq(Z(1, 1), Z(2, 3)));
  EXPECT_FALSE(PartialOrderLeq(Z(-1, 1), Z(2, 3)));
  EXPECT_FALSE(PartialOrderLeq(Z(2, 1), Z(1, 3)));
  EXPECT_TRUE(PartialOrderLeq(Z(-1, 1), Z(-2, 3)));
  EXPECT_FALSE(PartialOrderLeq(Z(1, 1), Z(-2, 3)));
}

TEST(PartialOrderTest, OrderAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  auto draw = [&] {
    return Z(Rational(UniformInt(rng, -3, 3), UniformInt(rng, 1, 2)),
             Rational(UniformInt(rng, 0, 3), UniformInt(rng, 1, 2)));
  };
  for (int i = 0; i < 3000; ++i) {
    const auto a = draw(), b = draw(), c = draw();
    EXPECT_TRUE(PartialOrderLeq(a, a));
    if (PartialOrderLeq(a, b) && PartialOrderLeq(b, a)) EXPECT_EQ(a, b);
    if (PartialOrderLeq(a, b) && PartialOrderLeq(b, c)) {
      EXPECT_TRUE(PartialOrderLeq(a, c));
    }
  }
}

TEST(ClosureValueTest, Examples) {
  const auto b1 = Bid({{0, 0, 0}, {1, 2, 5}});
  EXPECT_EQ(ClosureValue(b1, Z(1, 2)), 5);
  const auto b2 = Bid({{0, 0, 0}, {1, 2, 5}, {2, 1, 7}});
  EXPECT_EQ(ClosureValue(b2, Z(2, 2)), 7);
  const auto b3 = Bid({{0, 0, 0}, {3, 3, 9}});
  EXPECT_EQ(ClosureValue(b3, Z(1, 1)), 0);
}

TEST(ClosureValueTest, MonotoneAlongOrder) {
  std::mt19937_64 rng(11);
  const auto bid = Bid({{0, 0, 0}, {1, 2, 5}, {2, 1, 7}, {3, 3, 8}});
  for (int i = 0; i < 2000; ++i) {
    const auto f = Z(UniformInt(rng, 0, 4), UniformInt(rng, 0, 4));
    const auto d = Z(UniformInt(rng, 0, 4), UniformInt(rng, 0, 4));
    if (PartialOrderLeq(f, d)) EXPECT_LE(ClosureValue(bid, f), ClosureValue(bid, d));
  }
}

TEST(QuadrantPartitionTest, AllFirst) {
  const auto inst = MakeInstance(10, 1, {Bid({{1, 1, 1}}), Bid({{2, 0, 1}})});
  const auto split = QuadrantPartition(inst);
  EXPECT_EQ(split.first, (std::vector<size_t>{0, 1}));
  EXPECT_TRUE(split.second.empty());
}

TEST(QuadrantPartitionTest, SignOfRealPart) {
  const auto inst = MakeInstance(10, 4, {Bid({{2, 1, 1}}), Bid({{-1, 3, 1}})});
  const auto split = QuadrantPartition(inst);
  EXPECT_EQ(split.first, (std::vector<size_t>{0}));
  EXPECT_EQ(split.second, (std::vector<size_t>{1}));
}

TEST(QuadrantPartitionTest, MixedBidRejected) {
  const auto inst = MakeInstance(10, 1, {Bid({{1, 1, 1}, {-1, 1, 2}})});
  try {
    QuadrantPartition(inst);
    FAIL() << "expected MixedQuadrantBid";
  } catch (const CkpError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMixedQuadrantBid);
  }
}

TEST(QuadrantPartitionTest, PureImaginaryFitsEitherSide) {
  const auto inst = MakeInstance(10, 1, {Bid({{0, 2, 1}, {-1, 1, 2}}), Bid({{0, 3, 1}})});
  const auto split = QuadrantPartition(inst);
  EXPECT_EQ(split.first, (std::vector<size_t>{1}));
  EXPECT_EQ(split.second, (std::vector<size_t>{0}));
  EXPECT_TRUE(FitsQuadrant(inst.bids[1], Quadrant::kSecond));
  EXPECT_FALSE(FitsQuadrant(inst.bids[0], Quadrant::kFirst));
}

TEST(LoadAndCheckTest, Examples) {
  EXPECT_TRUE(LoadAndCheck(Allocation{}, 1, 1));
  Allocation a;
  a.chosen = {Z(3, 0), Z(0, 4)};
  a.total_load = Z(3, 4);
  EXPECT_TRUE(LoadAndCheck(a, 5, 1));
  a.chosen.push_back(Z(1, 0));
  a.total_load = Z(4, 4);
  EXPECT_FALSE(LoadAndCheck(a, 5, 1));
}

TEST(LoadAndCheckTest, InvariantUnderCommonScaling) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Rational re(UniformInt(rng, -20, 20), UniformInt(rng, 1, 5));
    const Rational im(UniformInt(rng, 0, 20), UniformInt(rng, 1, 5));
    const Rational c(UniformInt(rng, 1, 20), UniformInt(rng, 1, 5));
    const Rational beta(UniformInt(rng, 4, 8), 4);
    const int64_t s = UniformInt(rng, 2, 1000);
    EXPECT_EQ(LoadWithin(Z(re, im), c, beta), LoadWithin(Z(re * s, im * s), c * s, beta));
  }
}

TEST(ValidateInstanceTest, InsertsZeroOption) {
  const auto inst = ValidateInstance(MakeInstance(10, 1, {Bid({{1, 2, 5}})}));
  ASSERT_EQ(inst.bids[0].options.size(), 2u);
  EXPECT_TRUE(inst.bids[0].options[0].demand.IsZero());
  EXPECT_EQ(inst.bids[0].options[0].value, 0);
}

TEST(ValidateInstanceTest, RejectsBadInput) {
  auto code = [](const Instance& inst) {
    try {
      ValidateInstance(inst);
    } catch (const CkpError& e) {
      return e.code();
    }
    return ErrorCode::kInternalInconsistency;
  };
  EXPECT_EQ(code(MakeInstance(0, 1, {})), ErrorCode::kInvalidParams);
  EXPECT_EQ(code(MakeInstance(10, Q("1/2"), {})), ErrorCode::kInvalidParams);
  EXPECT_EQ(code(MakeInstance(10, 1, {Bid({{1, -1, 1}})})), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code(MakeInstance(10, 1, {Bid({{-3, 1, 1}})})), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code(MakeInstance(10, 1, {Bid({{1, 1, -1}})})), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code(MakeInstance(10, 1, {Bid({{0, 0, 1}})})), ErrorCode::kInvalidInstance);
  EXPECT_EQ(code(MakeInstance(10, 1, {Bid({{1, 1, 1}, {-1, 1, 1}})})),
            ErrorCode::kMixedQuadrantBid);
}

TEST(ValidateInstanceTest, PowerFactorCheckedExactly) {
  // |re| = P * im is allowed, one step past it is not.
  EXPECT_NO_THROW(ValidateInstance(MakeInstance(10, 2, {Bid({{-4, 2, 1}})})));
  EXPECT_THROW(ValidateInstance(MakeInstance(10, 2, {Bid({{Q("-401/100"), 2, 1}})})),
               CkpError);
  EXPECT_EQ(MaxArgumentTangent(MakeInstance(10, 2, {Bid({{-4, 2, 1}})})), 2);
}

TEST(MakeAllocationTest, TotalsUseClosure) {
  const auto inst = ValidateInstance(
      MakeInstance(10, 1, {Bid({{1, 2, 5}, {2, 2, 3}}), Bid({{0, 1, 2}})}));
  const auto alloc = MakeAllocation(inst, {Z(2, 2), Z(0, 0)});
  EXPECT_EQ(alloc.total_load, Z(2, 2));
  EXPECT_EQ(alloc.total_value, 5);
}

}  // namespace
}  // namespace ckp
