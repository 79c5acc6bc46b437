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

// Exhaustive reference solvers. They accept unvalidated instances (for
// example rotated ones) and give every user the zero demand as an extra
// choice. Among optimal selections the first one in enumeration order, user
// 0's choice varying fastest, is returned.

#ifndef CKP_ORACLE_H_
#define CKP_ORACLE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ckp/dp_exact.h"
#include "ckp/model.h"
#include "ckp/ptas_range.h"
#include "ckp/rational.h"
#include "ckp/rounding.h"

namespace ckp {

struct OracleLimits {
  size_t max_users = 20;
  int64_t max_products = 1'000'000;
};

struct OracleResult {
  Rational opt_value;
  Allocation witness;
  int64_t nodes_explored = 0;
};

// Max over all subsets with |sum d| <= beta * C. Single-minded input only
// (kInvalidParams otherwise); kOracleCap above `max_users`.
OracleResult BruteForceCkp(const Instance& instance, const Rational& beta,
                           const OracleLimits& limits = {});

// Max over all option products with |sum d| <= beta * C. kOracleCap when
// the product count exceeds `max_products`.
OracleResult BruteForceMulti(const Instance& instance, const Rational& beta,
                             const OracleLimits& limits = {});

struct BoxOracleResult {
  Rational opt_value;
  BoxAllocation witness;
  int64_t nodes_explored = 0;
};

// Max over option products with the coordinate-wise box constraint.
BoxOracleResult BruteForceBox(const BoxInstance& instance,
                              const OracleLimits& limits = {});

// Max over subsets whose demands sum exactly to (c1, c2); absent when none
// does. kOracleCap above `max_users` items.
std::optional<ExactFitSolution> BruteForceExactFit(
    std::span<const ExactFitItem> items, int64_t c1, int64_t c2,
    const OracleLimits& limits = {});

// Max over option products whose rounded cells (mirrored for the second
// quadrant) sum exactly to (xi, zeta), valuing each option by the closure.
std::optional<Rational> BruteForceMultiExactFit(
    std::span<const MultiMindedBid> bids, Quadrant quadrant,
    const GridConfig& config, int64_t xi, int64_t zeta,
    const OracleLimits& limits = {});

}  // namespace ckp

#endif  // CKP_ORACLE_H_
