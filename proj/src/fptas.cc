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

#include "ckp/fptas.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <memory>
#include <string>

#include "ckp/error.h"
#include "ckp/model_json.h"

namespace ckp {

namespace {

using int128 = __int128;

int64_t ISqrt(int64_t x) {
  if (x <= 0) return 0;
  auto r = static_cast<int64_t>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && static_cast<int128>(r) * r > x) --r;
  while (static_cast<int128>(r + 1) * (r + 1) <= x) ++r;
  return r;
}

// floor(((1 + 2 eps) C / L)^2) as an integer.
int64_t SquaredRadius(const GridConfig& config) {
  const Rational r = (1 + 2 * config.epsilon) * config.capacity / config.unit;
  return ToInt64(FloorOf(r * r), "squared guess radius");
}

bool Admissible(int64_t xp, int64_t xm, int64_t zp, int64_t zm,
                int64_t floor_r2) {
  const int128 dx = static_cast<int128>(xp) - xm;
  const int128 s = static_cast<int128>(zp) + zm;
  return dx * dx + s * s <= floor_r2;
}

struct Side {
  Quadrant quadrant;
  std::vector<size_t> users;
  std::vector<MultiMindedBid> bids;
  std::unique_ptr<ExactFitTable> table;
};

struct Best {
  int64_t value = ExactFitTable::kUnreachable;
  GuessTuple guess;

  bool Improves(int64_t v, const GuessTuple& g) const {
    return v > value || (v == value && g < guess);
  }
};

struct FiniteCell {
  int64_t xi;
  int64_t zeta;
  int64_t value;
};

std::vector<FiniteCell> FiniteCells(const ExactFitTable& table) {
  std::vector<FiniteCell> out;
  for (int64_t x = 0; x < table.width(); ++x) {
    for (int64_t z = 0; z < table.height(); ++z) {
      if (table.Reachable(x, z)) out.push_back({x, z, table.Value(x, z)});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FiniteCell& a, const FiniteCell& b) {
                     return a.value > b.value;
                   });
  return out;
}

// Pairs of finite cells, best total first; stops once no remaining pair can
// reach the incumbent.
Best SearchDeclared(const ExactFitTable& plus, const ExactFitTable& minus,
                    int64_t floor_r2, uint64_t& tried) {
  Best best;
  best.value = plus.Value(0, 0) + minus.Value(0, 0);
  ++tried;
  const auto fp = FiniteCells(plus);
  const auto fm = FiniteCells(minus);
  for (const auto& a : fp) {
    if (a.value + fm.front().value < best.value) break;
    for (const auto& b : fm) {
      if (a.value + b.value < best.value) break;
      ++tried;
      if (!Admissible(a.xi, b.xi, a.zeta, b.zeta, floor_r2)) continue;
      const GuessTuple g{a.xi, b.xi, a.zeta, b.zeta};
      if (best.Improves(a.value + b.value, g)) best = {a.value + b.value, g};
    }
  }
  return best;
}

// Full-grid tables are monotone in both coordinates, so for fixed
// (zeta+, zeta-, xi-) the largest admissible xi+ dominates.
Best SearchFullGrid(const Side& plus, const Side& minus, int64_t floor_r2,
                    uint64_t& tried) {
  const auto& tp = *plus.table;
  const auto& tm = *minus.table;
  const int64_t xp_max = plus.users.empty() ? 0 : tp.width() - 1;
  const int64_t zp_max = plus.users.empty() ? 0 : tp.height() - 1;
  const int64_t xm_max = minus.users.empty() ? 0 : tm.width() - 1;
  const int64_t zm_max = minus.users.empty() ? 0 : tm.height() - 1;
  Best best;
  for (int64_t zp = 0; zp <= zp_max; ++zp) {
    for (int64_t zm = 0; zm <= zm_max; ++zm) {
      const int128 s = static_cast<int128>(zp) + zm;
      if (s * s > floor_r2) break;
      const int64_t w = ISqrt(floor_r2 - static_cast<int64_t>(s * s));
      for (int64_t xm = 0; xm <= xm_max; ++xm) {
        if (xm - w > xp_max) break;
        const int64_t xp = std::min(xp_max, xm + w);
        ++tried;
        const int64_t v = tp.Value(xp, zp) + tm.Value(xm, zm);
        const GuessTuple g{xp, xm, zp, zm};
        if (best.Improves(v, g)) best = {v, g};
      }
    }
  }
  return best;
}

SolverResult Solve(const Instance& raw, const Rational& epsilon,
                   const FptasOptions& options, const Rational& declared_beta) {
  const auto start = std::chrono::steady_clock::now();
  const Instance instance = ValidateInstance(raw);
  const int64_t n = static_cast<int64_t>(instance.num_users());

  SolverResult result;
  result.grid = GridUnit(instance.capacity, std::max<int64_t>(n, 1), epsilon,
                         instance.power_factor_bound);
  result.grids = MakeProjectionGrids(result.grid, options.cell_cap);
  const GridConfig& cfg = result.grid;
  const ValueScale scale = ValueScale::ForBids(instance.bids);
  const int64_t floor_r2 = SquaredRadius(cfg);

  QuadrantSplit split;
  if (options.quadrants.empty()) {
    split = QuadrantPartition(instance);
  } else {
    if (options.quadrants.size() != instance.bids.size()) {
      throw CkpError(ErrorCode::kInvalidParams,
                     "quadrant list does not match the number of users");
    }
    for (size_t k = 0; k < instance.bids.size(); ++k) {
      if (!FitsQuadrant(instance.bids[k], options.quadrants[k])) {
        throw CkpError(ErrorCode::kMixedQuadrantBid,
                       "user " + std::to_string(k) +
                           " reports demands outside its quadrant");
      }
      (options.quadrants[k] == Quadrant::kFirst ? split.first : split.second)
          .push_back(k);
    }
  }
  Side plus{Quadrant::kFirst, split.first, {}, nullptr};
  Side minus{Quadrant::kSecond, split.second, {}, nullptr};
  result.quadrants.assign(n, Quadrant::kFirst);
  for (size_t k : minus.users) result.quadrants[k] = Quadrant::kSecond;

  const int64_t slack = RoundingSlack(cfg);
  auto build = [&](Side& side, int64_t width) {
    CandidateLists lists;
    for (size_t k : side.users) {
      side.bids.push_back(instance.bids[k]);
      lists.push_back(BuildCandidates(instance.bids[k], side.quadrant, cfg, scale));
    }
    side.table = std::make_unique<ExactFitTable>(
        std::move(lists), width + slack, result.grids.b_size() + slack,
        options.domain, options.cell_cap);
  };
  if (options.jobs > 1) {
    auto other = std::async(std::launch::async, [&] {
      build(minus, result.grids.a_minus_size());
    });
    build(plus, result.grids.a_plus_size());
    other.get();
  } else {
    build(plus, result.grids.a_plus_size());
    build(minus, result.grids.a_minus_size());
  }

  uint64_t tried = 0;
  const Best best =
      options.domain == CellDomain::kDeclaredCells
          ? SearchDeclared(*plus.table, *minus.table, floor_r2, tried)
          : SearchFullGrid(plus, minus, floor_r2, tried);
  if (best.value == ExactFitTable::kUnreachable) {
    throw CkpError(ErrorCode::kInternalInconsistency, "no admissible guess");
  }
  result.guess = best.guess;

  std::vector<ComplexRational> chosen(n, ComplexRational{0, 0});
  result.cells.assign(n, GridPoint{0, 0});
  auto trace = [&](const Side& side, int64_t xi, int64_t zeta) {
    if (side.users.empty()) return;
    const auto picks = side.table->Traceback(xi, zeta);
    std::vector<GridPoint> cells;
    GridPoint used{0, 0};
    for (size_t i = 0; i < picks.size(); ++i) {
      const auto& cand = side.table->candidates()[i][picks[i]];
      cells.push_back(cand.cell);
      used.re_idx += cand.cell.re_idx;
      used.im_idx += cand.cell.im_idx;
      if (cand.option_index >= 0) {
        chosen[side.users[i]] = side.bids[i].options[cand.option_index].demand;
      }
    }
    if (options.domain == CellDomain::kFullGrid) {
      const auto declared =
          TracebackToDeclared(cells, side.bids, side.quadrant, cfg);
      for (size_t i = 0; i < declared.size(); ++i) {
        chosen[side.users[i]] = declared[i];
      }
      cells[0].re_idx += xi - used.re_idx;
      cells[0].im_idx += zeta - used.im_idx;
    }
    for (size_t i = 0; i < cells.size(); ++i) result.cells[side.users[i]] = cells[i];
  };
  trace(plus, best.guess.xi_plus, best.guess.zeta_plus);
  trace(minus, best.guess.xi_minus, best.guess.zeta_minus);

  result.allocation = MakeAllocation(instance, std::move(chosen));
  if (result.allocation.total_value != scale.Unscale(best.value)) {
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "allocation value differs from the table value");
  }
  if (options.domain == CellDomain::kDeclaredCells) {
    result.violation_bound = declared_beta;
    if (!LoadAndCheck(result.allocation, instance.capacity, declared_beta)) {
      throw CkpError(ErrorCode::kInternalInconsistency,
                     "allocation exceeds the guaranteed load bound");
    }
  } else {
    // |re| <= max(xi+, xi-) L and im <= (zeta+ + zeta-) L.
    const auto& g = best.guess;
    const Rational bound =
        Rational(std::max(g.xi_plus, g.xi_minus) + g.zeta_plus + g.zeta_minus) *
        cfg.unit / cfg.capacity;
    result.violation_bound = std::max(Rational(1), bound);
  }

  result.stats.guesses_tried = tried;
  result.stats.dp_cells_filled =
      plus.table->cells_filled() + minus.table->cells_filled();
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace

bool GuessAdmissible(const GuessTuple& guess, const GridConfig& config) {
  const Rational dx = Rational(guess.xi_plus - guess.xi_minus) * config.unit;
  const Rational s = Rational(guess.zeta_plus + guess.zeta_minus) * config.unit;
  const Rational r = (1 + 2 * config.epsilon) * config.capacity;
  return dx * dx + s * s <= r * r;
}

BigInt GuessSpaceSize(const ProjectionGrids& grids) {
  return BigInt(grids.a_plus_size()) * grids.a_minus_size() * grids.b_size() *
         grids.b_size();
}

SolverResult CkpBiFptas(const Instance& instance, const Rational& epsilon,
                        const FptasOptions& options) {
  if (!instance.IsSingleMinded()) {
    throw CkpError(ErrorCode::kInvalidParams,
                   "single-minded scheme given a multi-minded bid");
  }
  return Solve(instance, epsilon, options, 1 + 3 * epsilon);
}

SolverResult MultiCkpFptas(const Instance& instance, const Rational& epsilon,
                           const FptasOptions& options) {
  return Solve(instance, epsilon, options, 1 + 4 * epsilon);
}

nlohmann::json GuessToJson(const GuessTuple& guess) {
  return {{"xi_plus", guess.xi_plus},
          {"xi_minus", guess.xi_minus},
          {"zeta_plus", guess.zeta_plus},
          {"zeta_minus", guess.zeta_minus}};
}

nlohmann::json SolverResultToJson(const SolverResult& result) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : result.cells) cells.push_back({c.re_idx, c.im_idx});
  return {
      {"allocation", AllocationToJson(result.allocation)},
      {"guess", GuessToJson(result.guess)},
      {"violation_bound", FormatRational(result.violation_bound)},
      {"violation_factor_squared",
       FormatRational(ViolationFactorSquared(result.allocation.total_load,
                                             result.grid.capacity))},
      {"grid", GridConfigToJson(result.grid)},
      {"grids", ProjectionGridsToJson(result.grids)},
      {"cells", cells},
      {"stats",
       {{"guesses_tried", result.stats.guesses_tried},
        {"dp_cells_filled", result.stats.dp_cells_filled},
        {"wall_seconds", result.stats.wall_seconds}}},
  };
}

}  // namespace ckp
