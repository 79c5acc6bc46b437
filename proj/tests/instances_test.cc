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

#include <filesystem>
#include <random>
#include <string>

#include "ckp/error.h"
#include "ckp/model_json.h"
#include "ckp/oracle.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ckp {
namespace {

using testing::Q;

std::string DataPath(const std::string& name) {
  return std::string(CKP_TEST_DATA_DIR) + "/" + name;
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const CkpError& e) {
    return e.code();
  }
  return ErrorCode::kInternalInconsistency;
}

TEST(UniformIntTest, StaysInRange) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const int64_t x = UniformInt(rng, -3, 4);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 4);
  }
  EXPECT_EQ(UniformInt(rng, 5, 5), 5);
}

TEST(SubSumTest, Reduction) {
  const SubSumSpec spec{{2, 3, 5}, 5, 1, Q("1/2")};
  const auto inst = GenSubSumReduction(spec);
  EXPECT_EQ(inst.num_users(), 4u);
  EXPECT_EQ(inst.capacity, 5);
  EXPECT_TRUE(SubSumFeasible(spec));
  EXPECT_GE(BruteForceCkp(inst, 1).opt_value, 1);
}

TEST(SubSumTest, InfeasibleBelowAlpha) {
  const SubSumSpec spec{{4, 6, 6}, 7, 2, Q("1/2")};
  EXPECT_FALSE(SubSumFeasible(spec));
  EXPECT_LT(BruteForceCkp(GenSubSumReduction(spec), 1).opt_value, spec.alpha);
}

TEST(SubSumTest, SpecChecked) {
  EXPECT_EQ(CodeOf([] { CheckSubSumSpec({{}, 1, 1, Q("1/2")}); }),
            ErrorCode::kInvalidParams);
  EXPECT_EQ(CodeOf([] { CheckSubSumSpec({{1, 0}, 1, 1, Q("1/2")}); }),
            ErrorCode::kInvalidParams);
  EXPECT_EQ(CodeOf([] { CheckSubSumSpec({{3}, 2, 1, Q("1/2")}); }),
            ErrorCode::kInvalidParams);
  EXPECT_EQ(CodeOf([] { CheckSubSumSpec({{1}, 1, 0, Q("1/2")}); }),
            ErrorCode::kInvalidParams);
  EXPECT_EQ(CodeOf([] { CheckSubSumSpec({{1}, 1, 1, Q(2)}); }),
            ErrorCode::kInvalidParams);
}

TEST(GenRandomTest, DeterministicAndValid) {
  RandomSpec spec;
  spec.num_users = 6;
  spec.quadrant_mix = Q("1/2");
  spec.seed = 42;
  const auto a = GenRandom(spec);
  const auto b = GenRandom(spec);
  EXPECT_EQ(CanonicalInstanceText(a), CanonicalInstanceText(b));
  EXPECT_NO_THROW(ValidateInstance(a));
  spec.seed = 43;
  EXPECT_NE(CanonicalInstanceText(GenRandom(spec)), CanonicalInstanceText(a));
}

TEST(GenRandomTest, ValidatesOverManySeeds) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.quadrant_mix = Q("1/3");
    spec.power_factor_bound = Rational(1 + seed % 4);
    spec.capacity = 1 + static_cast<int64_t>(seed % 9);
    const auto inst = GenRandom(spec);
    EXPECT_NO_THROW(QuadrantPartition(ValidateInstance(inst))) << seed;
  }
}

TEST(RotateQuarterTurnTest, MovesFirstToSecond) {
  RandomSpec spec;
  spec.quadrant_mix = 0;
  spec.power_factor_bound = 1;
  const auto inst = GenRandom(spec);
  const auto rot = RotateQuarterTurn(inst);
  EXPECT_TRUE(rot.rotated);
  for (size_t k = 0; k < inst.bids.size(); ++k) {
    for (size_t j = 0; j < inst.bids[k].options.size(); ++j) {
      const auto& d = inst.bids[k].options[j].demand;
      const auto& r = rot.bids[k].options[j].demand;
      EXPECT_EQ(r.re, -d.im);
      EXPECT_EQ(r.im, d.re);
    }
  }
  EXPECT_EQ(BruteForceMulti(inst, 1).opt_value, BruteForceMulti(rot, 1).opt_value);
}

TEST(InstanceIoTest, RoundTrip) {
  const auto inst = ReadInstance(DataPath("five_user.json"));
  const auto path =
      (std::filesystem::temp_directory_path() / "ckp_instances_test.json").string();
  WriteInstance(inst, path);
  EXPECT_EQ(InstanceHash(ReadInstance(path)), InstanceHash(inst));
  std::filesystem::remove(path);
}

TEST(InstanceIoTest, Errors) {
  EXPECT_EQ(CodeOf([] { ReadInstance(DataPath("malformed_rational.json")); }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ReadInstance(DataPath("unknown_field.json")); }),
            ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([] { ReadInstance(DataPath("no_such_file.json")); }),
            ErrorCode::kParseError);
  try {
    ParseInstanceText("{\n  \"capacity\": ,\n}");
    FAIL();
  } catch (const CkpError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(CorpusIndexCsvTest, Format) {
  const std::string csv =
      CorpusIndexCsv({{"a.json", "random", "seed=1", "0123456789abcdef", 3}});
  EXPECT_EQ(csv,
            "path,family,num_users,hash,params\n"
            "\"a.json\",random,3,0123456789abcdef,\"seed=1\"\n");
}

}  // namespace
}  // namespace ckp
