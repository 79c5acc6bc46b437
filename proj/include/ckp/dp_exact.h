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

// Exact-fit dynamic programs over the rounding grid.
//
// A table cell (c1, c2) after processing users 1..k holds the best total
// value of a per-user choice of grid cells that sums to exactly (c1, c2).
// Each user offers a short candidate list of cells; the zero cell is always
// first. Values are scaled to integers once per solve so the inner loops
// never touch rational arithmetic.
//
// Two cell domains are supported:
//  * kDeclaredCells: a user may only occupy the rounding of one of its
//    declared options. The allocated demand then rounds to exactly the
//    chosen cell, which is what the load bound of the approximation scheme
//    relies on.
//  * kFullGrid: a user may occupy any grid cell and is valued through the
//    closure of its bid. This is the declaration-independent range used by
//    the truthful mechanism. For a quadrant with at least one user, an exact
//    fit over the full grid exists exactly when the declared-cell sum is
//    dominated by the target, so the table is filled with that recurrence.

#ifndef CKP_DP_EXACT_H_
#define CKP_DP_EXACT_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ckp/model.h"
#include "ckp/rational.h"
#include "ckp/rounding.h"

namespace ckp {

enum class CellDomain { kDeclaredCells, kFullGrid };

// Converts rational values to integers over a common denominator.
class ValueScale {
 public:
  ValueScale() = default;
  static ValueScale ForValues(std::span<const Rational> values);
  static ValueScale ForBids(std::span<const MultiMindedBid> bids);

  int64_t Scale(const Rational& value) const;
  Rational Unscale(int64_t scaled) const;
  const BigInt& denominator() const { return denominator_; }

 private:
  BigInt denominator_ = 1;
};

struct CellCandidate {
  GridPoint cell;  // non-negative coordinates
  int64_t value = 0;
  // Declared option realizing the cell; -1 for an implicit zero demand.
  int option_index = -1;
};

// One candidate list per user; every list starts with the zero cell.
using CandidateLists = std::vector<std::vector<CellCandidate>>;

class ExactFitTable {
 public:
  static constexpr int64_t kUnreachable = std::numeric_limits<int64_t>::min();

  // Fills the table for targets in [0, width) x [0, height). Throws
  // kGridTooLarge when users * width * height exceeds `cell_cap`.
  ExactFitTable(CandidateLists users, int64_t width, int64_t height,
                CellDomain domain, int64_t cell_cap = kDefaultCellCap);

  int64_t width() const { return width_; }
  int64_t height() const { return height_; }
  size_t num_users() const { return users_.size(); }
  CellDomain domain() const { return domain_; }
  int64_t cells_filled() const { return cells_filled_; }

  bool InRange(int64_t c1, int64_t c2) const {
    return c1 >= 0 && c2 >= 0 && c1 < width_ && c2 < height_;
  }
  bool Reachable(int64_t c1, int64_t c2) const {
    return InRange(c1, c2) && values_[Index(c1, c2)] != kUnreachable;
  }
  // Scaled value of a reachable cell.
  int64_t Value(int64_t c1, int64_t c2) const { return values_[Index(c1, c2)]; }

  // Candidate index chosen for each user at a reachable target.
  std::vector<int> Traceback(int64_t c1, int64_t c2) const;

  const CandidateLists& candidates() const { return users_; }

 private:
  size_t Index(int64_t c1, int64_t c2) const {
    return static_cast<size_t>(c1 * height_ + c2);
  }

  CandidateLists users_;
  int64_t width_;
  int64_t height_;
  CellDomain domain_;
  int64_t cells_filled_ = 0;
  std::vector<int64_t> values_;
  // choices_[k][cell] = candidate index of user k, -1 when unreachable.
  std::vector<std::vector<int16_t>> choices_;
};

struct ExactFitItem {
  Rational value;
  GridPoint demand;
};

struct ExactFitSolution {
  std::vector<size_t> items;
  Rational value;
};

// Max-value subset of `items` whose demands sum to exactly (c1, c2), or
// nothing when no subset does. Ties prefer leaving an item out.
std::optional<ExactFitSolution> TwoDkpExact(std::span<const ExactFitItem> items,
                                            int64_t c1, int64_t c2);

// Candidate cells of one bid in its own quadrant, mirrored into the first
// quadrant for second-quadrant bids. A cell reached by several options keeps
// the largest closure value, ties to the smallest option index.
std::vector<CellCandidate> BuildCandidates(const MultiMindedBid& bid,
                                           Quadrant quadrant,
                                           const GridConfig& config,
                                           const ValueScale& scale);

struct MultiExactFitSolution {
  std::vector<GridPoint> cells;    // per user, mirrored coordinates
  std::vector<int> option_index;   // per user, -1 for an implicit zero
  Rational value;
};

// All `bids` must lie in `quadrant` and be normalized (zero option first).
std::optional<MultiExactFitSolution> MultiTwoDkpExact(
    std::span<const MultiMindedBid> bids, Quadrant quadrant,
    const GridConfig& config, int64_t xi, int64_t zeta,
    CellDomain domain = CellDomain::kDeclaredCells,
    int64_t cell_cap = kDefaultCellCap);

// Maps each user's grid cell back to a declared option that is dominated by
// L * cell (L * mirrored cell for second-quadrant users) and attains the
// closure value there. Throws kInternalInconsistency when none exists.
std::vector<ComplexRational> TracebackToDeclared(
    std::span<const GridPoint> cells, std::span<const MultiMindedBid> bids,
    Quadrant quadrant, const GridConfig& config);

// The demand a grid cell stands for, undoing the mirror.
ComplexRational CellDemand(const GridPoint& cell, Quadrant quadrant,
                           const GridConfig& config);

}  // namespace ckp

#endif  // CKP_DP_EXACT_H_
