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

#include "ckp/dp_exact.h"

#include <algorithm>
#include <string>

#include <boost/integer/common_factor_rt.hpp>

#include "ckp/error.h"

namespace ckp {

ValueScale ValueScale::ForValues(std::span<const Rational> values) {
  ValueScale scale;
  BigInt lcm = 1;
  BigInt max_total = 0;
  for (const auto& v : values) {
    const BigInt d = Denominator(v);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  for (const auto& v : values) {
    max_total += Numerator(v) * (lcm / Denominator(v));
  }
  // Any feasible total is bounded by the sum of all scaled values.
  ToInt64(max_total, "sum of scaled values");
  scale.denominator_ = lcm;
  return scale;
}

ValueScale ValueScale::ForBids(std::span<const MultiMindedBid> bids) {
  std::vector<Rational> values;
  for (const auto& bid : bids) {
    Rational best = 0;
    for (const auto& option : bid.options) {
      values.push_back(option.value);
      if (option.value > best) best = option.value;
    }
    // The per-user maximum bounds every closure value of that user.
    values.push_back(best);
  }
  return ForValues(values);
}

int64_t ValueScale::Scale(const Rational& value) const {
  const Rational scaled = value * denominator_;
  if (Denominator(scaled) != 1) {
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "value " + FormatRational(value) + " not on the value scale");
  }
  return ToInt64(Numerator(scaled), "scaled value");
}

Rational ValueScale::Unscale(int64_t scaled) const {
  return Rational(BigInt(scaled), denominator_);
}

ExactFitTable::ExactFitTable(CandidateLists users, int64_t width,
                             int64_t height, CellDomain domain,
                             int64_t cell_cap)
    : users_(std::move(users)), width_(width), height_(height),
      domain_(domain) {
  if (width_ < 1 || height_ < 1) {
    throw CkpError(ErrorCode::kInvalidParams, "empty target box");
  }
  const BigInt total = BigInt(width_) * height_ *
                       BigInt(std::max<size_t>(users_.size(), 1));
  if (total > cell_cap) {
    throw CkpError(ErrorCode::kGridTooLarge,
                   "exact-fit table needs " + total.str() + " cells, cap " +
                       std::to_string(cell_cap));
  }
  for (const auto& list : users_) {
    if (list.empty() || list.front().cell != GridPoint{0, 0}) {
      throw CkpError(ErrorCode::kInternalInconsistency,
                     "candidate list must start with the zero cell");
    }
    if (list.size() > static_cast<size_t>(std::numeric_limits<int16_t>::max())) {
      throw CkpError(ErrorCode::kCombinatorialCap, "too many candidates");
    }
  }
  const size_t cells = static_cast<size_t>(width_ * height_);
  std::vector<int64_t> prev(cells, kUnreachable);
  if (domain_ == CellDomain::kFullGrid && !users_.empty()) {
    std::fill(prev.begin(), prev.end(), 0);
  } else {
    prev[0] = 0;
  }
  std::vector<int64_t> cur(cells);
  choices_.resize(users_.size());
  for (size_t k = 0; k < users_.size(); ++k) {
    const auto& list = users_[k];
    auto& choice = choices_[k];
    choice.assign(cells, -1);
    for (int64_t c1 = 0; c1 < width_; ++c1) {
      for (int64_t c2 = 0; c2 < height_; ++c2) {
        const size_t idx = Index(c1, c2);
        int64_t best = kUnreachable;
        int16_t best_j = -1;
        for (size_t j = 0; j < list.size(); ++j) {
          const GridPoint& cell = list[j].cell;
          if (cell.re_idx > c1 || cell.im_idx > c2) continue;
          const int64_t rest = prev[Index(c1 - cell.re_idx, c2 - cell.im_idx)];
          if (rest == kUnreachable) continue;
          const int64_t candidate = rest + list[j].value;
          if (best == kUnreachable || candidate > best) {
            best = candidate;
            best_j = static_cast<int16_t>(j);
          }
        }
        cur[idx] = best;
        choice[idx] = best_j;
      }
    }
    std::swap(prev, cur);
    cells_filled_ += static_cast<int64_t>(cells);
  }
  values_ = std::move(prev);
}

std::vector<int> ExactFitTable::Traceback(int64_t c1, int64_t c2) const {
  if (!Reachable(c1, c2)) {
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "traceback from an unreachable cell");
  }
  std::vector<int> picks(users_.size(), 0);
  for (size_t k = users_.size(); k-- > 0;) {
    const int j = choices_[k][Index(c1, c2)];
    if (j < 0) {
      throw CkpError(ErrorCode::kInternalInconsistency,
                     "broken traceback chain");
    }
    picks[k] = j;
    c1 -= users_[k][j].cell.re_idx;
    c2 -= users_[k][j].cell.im_idx;
  }
  if (domain_ == CellDomain::kDeclaredCells && (c1 != 0 || c2 != 0)) {
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "exact-fit traceback did not consume the target");
  }
  return picks;
}

std::optional<ExactFitSolution> TwoDkpExact(std::span<const ExactFitItem> items,
                                            int64_t c1, int64_t c2) {
  if (c1 < 0 || c2 < 0) return std::nullopt;
  std::vector<Rational> values;
  for (const auto& item : items) {
    if (item.demand.re_idx < 0 || item.demand.im_idx < 0) {
      throw CkpError(ErrorCode::kInvalidParams,
                     "exact-fit items need non-negative grid demands");
    }
    if (item.value < 0) {
      throw CkpError(ErrorCode::kInvalidParams, "negative item value");
    }
    values.push_back(item.value);
  }
  const ValueScale scale = ValueScale::ForValues(values);
  CandidateLists lists;
  for (const auto& item : items) {
    std::vector<CellCandidate> list{{GridPoint{0, 0}, 0, 0}};
    const int64_t v = scale.Scale(item.value);
    if (item.demand == GridPoint{0, 0}) {
      // Both base rules land on the zero cell; keep the larger.
      if (v > 0) list[0] = {GridPoint{0, 0}, v, 1};
    } else {
      list.push_back({item.demand, v, 1});
    }
    lists.push_back(std::move(list));
  }
  ExactFitTable table(std::move(lists), c1 + 1, c2 + 1,
                      CellDomain::kDeclaredCells);
  if (!table.Reachable(c1, c2)) return std::nullopt;
  ExactFitSolution solution;
  const auto picks = table.Traceback(c1, c2);
  for (size_t k = 0; k < picks.size(); ++k) {
    if (table.candidates()[k][picks[k]].option_index == 1) {
      solution.items.push_back(k);
    }
  }
  solution.value = scale.Unscale(table.Value(c1, c2));
  return solution;
}

std::vector<CellCandidate> BuildCandidates(const MultiMindedBid& bid,
                                           Quadrant quadrant,
                                           const GridConfig& config,
                                           const ValueScale& scale) {
  std::vector<CellCandidate> out{{GridPoint{0, 0}, 0, -1}};
  bool zero_seen = false;
  for (size_t i = 0; i < bid.options.size(); ++i) {
    const auto& demand = bid.options[i].demand;
    GridPoint cell = RoundDemand(demand, config);
    if (quadrant == Quadrant::kSecond) cell.re_idx = -cell.re_idx;
    if (cell.re_idx < 0) {
      throw CkpError(ErrorCode::kMixedQuadrantBid,
                     "option outside the bid's quadrant");
    }
    const int64_t value = scale.Scale(ClosureValue(bid, demand));
    auto it = std::find_if(out.begin(), out.end(), [&](const CellCandidate& c) {
      return c.cell == cell;
    });
    if (cell == GridPoint{0, 0} && !zero_seen) {
      zero_seen = true;
      out[0] = {cell, value, static_cast<int>(i)};
      continue;
    }
    if (it == out.end()) {
      out.push_back({cell, value, static_cast<int>(i)});
    } else if (value > it->value) {
      it->value = value;
      it->option_index = static_cast<int>(i);
    }
  }
  return out;
}

ComplexRational CellDemand(const GridPoint& cell, Quadrant quadrant,
                           const GridConfig& config) {
  ComplexRational d = GridValue(cell, config);
  if (quadrant == Quadrant::kSecond) d.re = -d.re;
  return d;
}

std::optional<MultiExactFitSolution> MultiTwoDkpExact(
    std::span<const MultiMindedBid> bids, Quadrant quadrant,
    const GridConfig& config, int64_t xi, int64_t zeta, CellDomain domain,
    int64_t cell_cap) {
  if (xi < 0 || zeta < 0) return std::nullopt;
  const ValueScale scale = ValueScale::ForBids(bids);
  CandidateLists lists;
  for (const auto& bid : bids) {
    if (!FitsQuadrant(bid, quadrant)) {
      throw CkpError(ErrorCode::kMixedQuadrantBid,
                     "bid does not belong to the requested quadrant");
    }
    lists.push_back(BuildCandidates(bid, quadrant, config, scale));
  }
  ExactFitTable table(std::move(lists), xi + 1, zeta + 1, domain, cell_cap);
  if (!table.Reachable(xi, zeta)) return std::nullopt;
  const auto picks = table.Traceback(xi, zeta);
  MultiExactFitSolution solution;
  GridPoint used{0, 0};
  for (size_t k = 0; k < picks.size(); ++k) {
    const auto& cand = table.candidates()[k][picks[k]];
    solution.cells.push_back(cand.cell);
    solution.option_index.push_back(cand.option_index);
    used.re_idx += cand.cell.re_idx;
    used.im_idx += cand.cell.im_idx;
  }
  if (domain == CellDomain::kFullGrid && !solution.cells.empty()) {
    // Slack goes to the first user; its closure value cannot drop.
    solution.cells[0].re_idx += xi - used.re_idx;
    solution.cells[0].im_idx += zeta - used.im_idx;
  }
  solution.value = scale.Unscale(table.Value(xi, zeta));
  return solution;
}

std::vector<ComplexRational> TracebackToDeclared(
    std::span<const GridPoint> cells, std::span<const MultiMindedBid> bids,
    Quadrant quadrant, const GridConfig& config) {
  if (cells.size() != bids.size()) {
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "assignment and bids differ in length");
  }
  std::vector<ComplexRational> out;
  out.reserve(cells.size());
  for (size_t k = 0; k < cells.size(); ++k) {
    const ComplexRational target = CellDemand(cells[k], quadrant, config);
    const Rational closure = ClosureValue(bids[k], target);
    if (closure == 0) {
      out.push_back({0, 0});
      continue;
    }
    const DemandOption* pick = nullptr;
    for (const auto& option : bids[k].options) {
      if (option.value == closure && PartialOrderLeq(option.demand, target)) {
        pick = &option;
        break;
      }
    }
    if (pick == nullptr) {
      throw CkpError(ErrorCode::kInternalInconsistency,
                     "no declared option attains the closure value");
    }
    out.push_back(pick->demand);
  }
  return out;
}

}  // namespace ckp
