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

#include "ckp/mechanism.h"

#include <random>
#include <string>

#include "ckp/dp_exact.h"
#include "ckp/error.h"
#include "ckp/instances.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ckp {
namespace {

using testing::Bid;
using testing::MakeInstance;
using testing::Q;

Instance Fixture(const std::string& name) {
  return ReadInstance(std::string(CKP_TEST_DATA_DIR) + "/" + name);
}

// Best reported welfare over every per-user grid cell whose quadrant sums
// are dominated by an admissible guess inside the table box.
Rational EnumerateRange(const Instance& raw, const RangeDescriptor& range) {
  const Instance inst = ValidateInstance(raw);
  const auto& cfg = range.grid;
  const auto& g = range.grids;
  const int64_t slack = RoundingSlack(cfg);
  std::vector<Quadrant> quad;
  std::vector<std::vector<std::pair<GridPoint, Rational>>> cells;
  bool any_plus = false, any_minus = false;
  for (const auto& bid : inst.bids) {
    const Quadrant q = QuadrantOf(bid);
    (q == Quadrant::kFirst ? any_plus : any_minus) = true;
    quad.push_back(q);
    std::vector<std::pair<GridPoint, Rational>> list;
    const int64_t width =
        (q == Quadrant::kFirst ? g.a_plus_max : g.a_minus_max) + slack;
    for (int64_t x = 0; x <= width; ++x) {
      for (int64_t z = 0; z <= g.b_max + slack; ++z) {
        const GridPoint p{x, z};
        list.push_back({p, ClosureValue(bid, CellDemand(p, q, cfg))});
      }
    }
    cells.push_back(std::move(list));
  }
  const int64_t xp_max = any_plus ? g.a_plus_max + slack : 0;
  const int64_t xm_max = any_minus ? g.a_minus_max + slack : 0;
  const int64_t zp_max = any_plus ? g.b_max + slack : 0;
  const int64_t zm_max = any_minus ? g.b_max + slack : 0;

  Rational best = -1;
  std::vector<size_t> pick(inst.bids.size(), 0);
  while (true) {
    int64_t sp = 0, sm = 0, tp = 0, tm = 0;
    Rational value = 0;
    for (size_t k = 0; k < pick.size(); ++k) {
      const auto& [p, v] = cells[k][pick[k]];
      (quad[k] == Quadrant::kFirst ? sp : sm) += p.re_idx;
      (quad[k] == Quadrant::kFirst ? tp : tm) += p.im_idx;
      value += v;
    }
    bool in_range = false;
    if (sp <= xp_max && sm <= xm_max && tp <= zp_max && tm <= zm_max) {
      for (int64_t xp = sp; xp <= xp_max && !in_range; ++xp) {
        for (int64_t xm = sm; xm <= xm_max && !in_range; ++xm) {
          in_range = GuessAdmissible({xp, xm, tp, tm}, cfg);
        }
      }
    }
    if (in_range && value > best) best = value;
    size_t k = 0;
    while (k < pick.size() && ++pick[k] == cells[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return best;
}

TEST(RangeTest, HashDependsOnPublicParametersOnly) {
  const auto a = MakeRange(10, 4, Q("1/2"), 2);
  EXPECT_EQ(a.hash, MakeRange(10, 4, Q("1/2"), 2).hash);
  EXPECT_EQ(a.hash.size(), 16u);
  EXPECT_NE(a.hash, MakeRange(10, 4, Q("1/4"), 2).hash);
  EXPECT_NE(a.hash, MakeRange(10, 5, Q("1/2"), 2).hash);
  EXPECT_NE(a.hash, MakeRange(11, 4, Q("1/2"), 2).hash);
  EXPECT_NE(a.hash, MakeRange(10, 4, Q("1/2"), 3).hash);
  EXPECT_EQ(a.radius_squared, 100 * 4);
}

TEST(RangeTest, InstanceMustMatch) {
  const auto inst = Fixture("five_user.json");
  const auto range = MakeRange(10, 4, Q("1/2"), 2);
  try {
    MirAllocate(inst, range);
    FAIL();
  } catch (const CkpError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidParams);
  }
}

TEST(MirAllocateTest, MatchesExplicitRangeEnumeration) {
  const auto range = MakeRange(2, 2, 1, 1);
  ASSERT_EQ(range.grid.unit, Q("1/2"));
  std::vector<Instance> cases = {
      MakeInstance(2, 1, {Bid({{1, Q("1/2"), 3}, {Q("1/2"), 1, 2}}),
                          Bid({{Q("-1/2"), 1, 4}, {-1, 1, 5}})}),
      MakeInstance(2, 1, {Bid({{2, 0, 3}}), Bid({{1, 1, 2}})})};
  for (uint64_t seed = 0; seed < 12; ++seed) {
    RandomSpec spec;
    spec.num_users = 2;
    spec.capacity = 2;
    spec.power_factor_bound = 1;
    spec.quadrant_mix = Q("1/2");
    spec.seed = seed;
    cases.push_back(GenRandom(spec));
  }
  for (size_t i = 0; i < cases.size(); ++i) {
    const auto r = MirAllocate(cases[i], range);
    EXPECT_EQ(r.allocation.total_value, EnumerateRange(cases[i], range)) << i;
    EXPECT_TRUE(GuessAdmissible(r.guess, range.grid)) << i;
  }
}

TEST(RunMechanismTest, TwoUserCompetition) {
  const auto out = RunMechanism(Fixture("two_user_competition.json"), Q("1/4"));
  EXPECT_EQ(out.payments, (std::vector<Rational>{3, 0}));
  EXPECT_EQ(out.solver_calls, 3);
  EXPECT_EQ(out.result.allocation.total_value, 5);
  EXPECT_EQ(out.call_stats.size(), 3u);
}

TEST(RunMechanismTest, PaymentsBoundedByReportedValue) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 15; ++i) {
    const auto inst = testing::RandomMultiMinded(rng, 4, 2);
    const auto out = RunMechanism(inst, Q("1/2"));
    const auto norm = ValidateInstance(inst);
    for (size_t k = 0; k < inst.bids.size(); ++k) {
      EXPECT_GE(out.payments[k], 0);
      EXPECT_LE(out.payments[k],
                ClosureValue(norm.bids[k], out.result.allocation.chosen[k]));
    }
    EXPECT_TRUE(LoadAndCheck(out.result.allocation, inst.capacity,
                             out.result.violation_bound));
  }
}

TEST(ZeroValuationTest, KeepsDemands) {
  const auto inst = Fixture("five_user.json");
  const auto z = ZeroValuation(inst, 1);
  ASSERT_EQ(z.bids[1].options.size(), inst.bids[1].options.size());
  for (const auto& o : z.bids[1].options) EXPECT_EQ(o.value, 0);
  EXPECT_EQ(z.bids[0].options[0].value, inst.bids[0].options[0].value);
}

TEST(MisreportTrialTest, HonestReportHasNoGap) {
  const auto inst = Fixture("multi_minded.json");
  const auto range = RangeForInstance(inst, Q("1/2"));
  for (size_t k = 0; k < inst.bids.size(); ++k) {
    const auto t = MisreportTrial(inst, k, inst.bids[k], range);
    EXPECT_EQ(t.utility_truth, t.utility_lie);
  }
}

TEST(RandomMisreportTest, StaysInQuadrant) {
  const auto inst = Fixture("multi_minded.json");
  std::mt19937_64 rng(7);
  for (int kind = 0; kind < 7; ++kind) {
    for (size_t k = 0; k < inst.bids.size(); ++k) {
      const auto fake =
          RandomMisreport(inst, k, static_cast<MisreportKind>(kind), rng);
      Instance lie = inst;
      lie.bids[k] = fake;
      EXPECT_NO_THROW(ValidateInstance(lie)) << MisreportKindName(
          static_cast<MisreportKind>(kind));
    }
  }
}

TEST(AuditTruthfulnessTest, NoProfitableLies) {
  const auto report =
      AuditTruthfulness(Fixture("multi_minded.json"), Q("1/2"), 60, 3);
  EXPECT_EQ(report.trials, 60);
  EXPECT_EQ(report.violations, 0);
  ASSERT_TRUE(report.worst_gap.has_value());
  EXPECT_LE(*report.worst_gap, 0);
  EXPECT_EQ(report.range_hash,
            RangeForInstance(Fixture("multi_minded.json"), Q("1/2")).hash);
}

}  // namespace
}  // namespace ckp
