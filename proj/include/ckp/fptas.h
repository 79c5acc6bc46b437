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

// Bi-criteria approximation schemes for the complex-demand knapsack problem.
//
// Both schemes guess the rounded totals (xi+, xi-, zeta+, zeta-) of the
// first- and second-quadrant users, keep the guesses whose rounded load is
// within (1 + 2 eps) C, and solve one exact-fit program per quadrant. The
// exact-fit tables do not depend on the guess, so each quadrant's table is
// filled once for its whole projection box and every guess becomes a pair
// of table lookups. Guesses whose exact fit is infeasible on either side can
// never win and are not visited.

#ifndef CKP_FPTAS_H_
#define CKP_FPTAS_H_

#include <compare>
#include <cstdint>
#include <vector>

#include "ckp/dp_exact.h"
#include "ckp/model.h"
#include "ckp/rounding.h"
#include "json.hpp"

namespace ckp {

struct GuessTuple {
  int64_t xi_plus = 0;
  int64_t xi_minus = 0;
  int64_t zeta_plus = 0;
  int64_t zeta_minus = 0;

  friend bool operator==(const GuessTuple&, const GuessTuple&) = default;
  friend auto operator<=>(const GuessTuple&, const GuessTuple&) = default;
};

// (xi+ - xi-)^2 + (zeta+ + zeta-)^2 <= (1 + 2 eps)^2 C^2, with the indices
// scaled by L. Exact.
bool GuessAdmissible(const GuessTuple& guess, const GridConfig& config);

// |A+| * |A-| * |B|^2.
BigInt GuessSpaceSize(const ProjectionGrids& grids);

struct SolverStats {
  uint64_t guesses_tried = 0;
  int64_t dp_cells_filled = 0;
  double wall_seconds = 0;
};

struct SolverResult {
  Allocation allocation;
  GuessTuple guess;
  // beta such that |load| <= beta * C is guaranteed.
  Rational violation_bound;
  GridConfig grid;
  ProjectionGrids grids;
  // Per-user grid cell (mirrored for second-quadrant users) of the winning
  // guess; these sum to the guess per quadrant.
  std::vector<GridPoint> cells;
  std::vector<Quadrant> quadrants;
  SolverStats stats;
};

struct FptasOptions {
  CellDomain domain = CellDomain::kDeclaredCells;
  int64_t cell_cap = kDefaultCellCap;
  // Fill the two quadrant tables concurrently when > 1.
  int jobs = 1;
  // Fixed quadrant per user; empty means derived from the bids. A bid with
  // a non-zero demand must agree with its entry (kMixedQuadrantBid).
  std::vector<Quadrant> quadrants;
};

// Single-minded scheme; the returned allocation has value >= OPT(C) and
// load <= (1 + 3 eps) C. Throws kInvalidParams on multi-minded input.
SolverResult CkpBiFptas(const Instance& instance, const Rational& epsilon,
                        const FptasOptions& options = {});

// Multi-minded scheme; value >= OPT(C) and, with the declared-cell domain,
// load <= (1 + 4 eps) C. With the full-grid domain it maximizes over the
// declaration-independent range and carries no load guarantee beyond the
// rounded totals.
SolverResult MultiCkpFptas(const Instance& instance, const Rational& epsilon,
                           const FptasOptions& options = {});

nlohmann::json GuessToJson(const GuessTuple& guess);
nlohmann::json SolverResultToJson(const SolverResult& result);

}  // namespace ckp

#endif  // CKP_FPTAS_H_
