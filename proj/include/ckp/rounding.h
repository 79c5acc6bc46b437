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

// The rounding grid. Every quantity here depends only on the public
// parameters (C, n, eps, P), never on the bids, which is what keeps the
// mechanism's range independent of declarations.

#ifndef CKP_ROUNDING_H_
#define CKP_ROUNDING_H_

#include <cstdint>
#include <vector>

#include "ckp/model.h"
#include "ckp/rational.h"
#include "json.hpp"

namespace ckp {

inline constexpr int64_t kDefaultCellCap = 100'000'000;

struct GridConfig {
  Rational capacity;
  int64_t num_users = 0;
  Rational epsilon;
  Rational power_factor_bound;
  // L = eps * C / (n * (P + 1)).
  Rational unit;
};

// Index-space demand: the value is (re_idx * L, im_idx * L).
struct GridPoint {
  int64_t re_idx = 0;
  int64_t im_idx = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

// Inclusive index ranges 0..max for the guessed projections.
struct ProjectionGrids {
  int64_t a_plus_max = 0;   // ceil(C (1 + P) / L)
  int64_t a_minus_max = 0;  // ceil(C P / L)
  int64_t b_max = 0;        // ceil(C / L)

  int64_t a_plus_size() const { return a_plus_max + 1; }
  int64_t a_minus_size() const { return a_minus_max + 1; }
  int64_t b_size() const { return b_max + 1; }

  friend bool operator==(const ProjectionGrids&,
                         const ProjectionGrids&) = default;
};

// Throws kInvalidParams unless C > 0, n >= 1, 0 < eps <= 1 and P >= 1.
GridConfig GridUnit(const Rational& capacity, int64_t num_users,
                    const Rational& epsilon, const Rational& power_factor_bound);

// Real part rounded away from zero (ceil for re >= 0, floor otherwise),
// imaginary part ceiled.
// Rounding up each of n demands can carry their sum up to n cells past the
// grid ceilings, so exact-fit tables extend every axis by this many cells.
inline int64_t RoundingSlack(const GridConfig& config) { return config.num_users; }

GridPoint RoundDemand(const ComplexRational& demand, const GridConfig& config);

ComplexRational GridValue(const GridPoint& point, const GridConfig& config);

// Throws kGridTooLarge when a range or the A+ x B box exceeds `cell_cap`.
ProjectionGrids MakeProjectionGrids(const GridConfig& config,
                                    int64_t cell_cap = kDefaultCellCap);

// Every point of the first-quadrant box A+ x B, re-major order.
std::vector<GridPoint> RoundedDemandSpace(const ProjectionGrids& grids,
                                          int64_t cell_cap = kDefaultCellCap);

nlohmann::json GridConfigToJson(const GridConfig& config);
nlohmann::json ProjectionGridsToJson(const ProjectionGrids& grids);

}  // namespace ckp

#endif  // CKP_ROUNDING_H_
