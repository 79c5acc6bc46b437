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

#include "ckp/rounding.h"

#include "ckp/error.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ckp {
namespace {

using testing::Q;
using testing::Z;

// C = 10, n = 5, eps = 1, P = 1 gives L = 1.
GridConfig UnitGrid() { return GridUnit(10, 5, 1, 1); }

TEST(GridUnitTest, Examples) {
  EXPECT_EQ(GridUnit(10, 5, Q("1/2"), 1).unit, Q("1/2"));
  EXPECT_EQ(GridUnit(1, 1, 1, 1).unit, Q("1/2"));
  EXPECT_EQ(UnitGrid().unit, 1);
}

TEST(GridUnitTest, RejectsDegenerateParameters) {
  EXPECT_THROW(GridUnit(10, 5, 0, 1), CkpError);
  EXPECT_THROW(GridUnit(10, 5, Q("3/2"), 1), CkpError);
  EXPECT_THROW(GridUnit(0, 5, 1, 1), CkpError);
  EXPECT_THROW(GridUnit(10, 0, 1, 1), CkpError);
  EXPECT_THROW(GridUnit(10, 5, 1, Q("1/2")), CkpError);
}

TEST(RoundDemandTest, Examples) {
  const auto cfg = UnitGrid();
  EXPECT_EQ(RoundDemand(Z(0, 0), cfg), (GridPoint{0, 0}));
  EXPECT_EQ(RoundDemand(Z(Q("5/2"), Q("3/2")), cfg), (GridPoint{3, 2}));
  EXPECT_EQ(RoundDemand(Z(Q("-5/2"), Q("3/2")), cfg), (GridPoint{-3, 2}));
  EXPECT_EQ(RoundDemand(Z(3, 2), cfg), (GridPoint{3, 2}));
}

TEST(RoundDemandTest, NeverShrinksAndKeepsSign) {
  const auto cfg = GridUnit(7, 3, Q("1/3"), 2);
  for (int a = -40; a <= 40; ++a) {
    for (int b = 0; b <= 20; b += 3) {
      const ComplexRational d(Rational(a, 7), Rational(b, 5));
      const GridPoint p = RoundDemand(d, cfg);
      const ComplexRational g = GridValue(p, cfg);
      EXPECT_GE(Abs(g.re), Abs(d.re));
      EXPECT_GE(g.im, d.im);
      EXPECT_LT(Abs(g.re) - Abs(d.re), cfg.unit);
      EXPECT_TRUE(PartialOrderLeq(d, g));
    }
  }
}

TEST(ProjectionGridsTest, Examples) {
  const auto grids = MakeProjectionGrids(UnitGrid());
  EXPECT_EQ(grids.a_plus_max, 20);
  EXPECT_EQ(grids.a_minus_max, 10);
  EXPECT_EQ(grids.b_max, 10);

  GridConfig one_cell = UnitGrid();
  one_cell.unit = one_cell.capacity;
  EXPECT_EQ(MakeProjectionGrids(one_cell).b_max, 1);
}

TEST(ProjectionGridsTest, DependOnPublicParametersOnly) {
  EXPECT_EQ(MakeProjectionGrids(GridUnit(Q("17/3"), 4, Q("1/4"), 3)),
            MakeProjectionGrids(GridUnit(Q("17/3"), 4, Q("1/4"), 3)));
}

TEST(ProjectionGridsTest, CapEnforced) {
  try {
    MakeProjectionGrids(GridUnit(10, 5, Q("1/2"), 1), 100);
    FAIL();
  } catch (const CkpError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridTooLarge);
  }
}

TEST(RoundedDemandSpaceTest, Counts) {
  ProjectionGrids g;
  g.a_plus_max = 2;
  g.b_max = 1;
  EXPECT_EQ(RoundedDemandSpace(g).size(), 6u);
  EXPECT_EQ(RoundedDemandSpace(ProjectionGrids{}),
            (std::vector<GridPoint>{{0, 0}}));
  const auto grids = MakeProjectionGrids(GridUnit(10, 3, Q("1/2"), 2));
  EXPECT_EQ(static_cast<int64_t>(RoundedDemandSpace(grids).size()),
            grids.a_plus_size() * grids.b_size());
}

}  // namespace
}  // namespace ckp
