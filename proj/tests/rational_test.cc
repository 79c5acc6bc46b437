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

#include "ckp/rational.h"

#include "ckp/error.h"
#include "gtest/gtest.h"

namespace ckp {
namespace {

TEST(RationalTest, ParseAndFormat) {
  EXPECT_EQ(ParseRational("6/4"), Rational(3, 2));
  EXPECT_EQ(ParseRational("-7"), Rational(-7));
  EXPECT_EQ(ParseRational("+2/3"), Rational(2, 3));
  EXPECT_EQ(FormatRational(Rational(3, 2)), "3/2");
  EXPECT_EQ(FormatRational(Rational(5)), "5/1");
  EXPECT_EQ(FormatRational(Rational(-1, 3)), "-1/3");
}

TEST(RationalTest, ParseErrors) {
  for (const char* bad : {"3/0", "", "1/", "/2", "a", "1.5", "1/-2", "--1"}) {
    try {
      ParseRational(bad);
      ADD_FAILURE() << bad;
    } catch (const CkpError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParseError) << bad;
    }
  }
}

TEST(RationalTest, FloorCeil) {
  EXPECT_EQ(FloorOf(Rational(7, 2)), 3);
  EXPECT_EQ(CeilOf(Rational(7, 2)), 4);
  EXPECT_EQ(FloorOf(Rational(-7, 2)), -4);
  EXPECT_EQ(CeilOf(Rational(-7, 2)), -3);
  EXPECT_EQ(FloorOf(Rational(4)), 4);
  EXPECT_EQ(CeilOf(Rational(-4)), -4);
}

TEST(RationalTest, ToInt64Overflow) {
  EXPECT_EQ(ToInt64(BigInt(42), "x"), 42);
  const BigInt huge = BigInt(1) << 70;
  try {
    ToInt64(huge, "x");
    FAIL();
  } catch (const CkpError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValueOverflow);
  }
}

TEST(ErrorTest, Families) {
  EXPECT_EQ(FamilyOf(ErrorCode::kParseError), ErrorFamily::kInput);
  EXPECT_EQ(FamilyOf(ErrorCode::kMixedQuadrantBid), ErrorFamily::kInput);
  EXPECT_EQ(FamilyOf(ErrorCode::kGridTooLarge), ErrorFamily::kResourceCap);
  EXPECT_EQ(FamilyOf(ErrorCode::kOracleCap), ErrorFamily::kResourceCap);
  EXPECT_EQ(FamilyOf(ErrorCode::kInternalInconsistency), ErrorFamily::kInternal);
}

}  // namespace
}  // namespace ckp
