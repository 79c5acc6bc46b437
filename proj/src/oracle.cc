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

#include "ckp/oracle.h"

#include <string>

#include <boost/integer/common_factor_rt.hpp>

#include "ckp/error.h"

namespace ckp {

namespace {

using int128 = __int128;

// Walks every digit vector, digit 0 fastest. `change(k, from, to)` runs as
// digit k moves; `visit(digits)` runs once per vector.
template <typename Change, typename Visit>
int64_t Odometer(const std::vector<int>& radix, Change change, Visit visit) {
  std::vector<int> digit(radix.size(), 0);
  int64_t count = 0;
  while (true) {
    ++count;
    visit(digit);
    size_t k = 0;
    for (; k < radix.size(); ++k) {
      const int from = digit[k];
      if (++digit[k] < radix[k]) {
        change(k, from, digit[k]);
        break;
      }
      digit[k] = 0;
      change(k, from, 0);
    }
    if (k == radix.size()) return count;
  }
}

void CheckProducts(const std::vector<int>& radix, const OracleLimits& limits) {
  BigInt product = 1;
  for (int r : radix) {
    product *= r;
    if (product > limits.max_products) {
      throw CkpError(ErrorCode::kOracleCap,
                     "more than " + std::to_string(limits.max_products) +
                         " option products");
    }
  }
}

// Options of each user with the zero demand guaranteed, valued through the
// closure of the original bid.
struct Choices {
  std::vector<std::vector<ComplexRational>> demand;
  std::vector<std::vector<Rational>> value;
  std::vector<int> radix;
};

Choices CollectChoices(const Instance& instance) {
  Choices out;
  for (const auto& bid : instance.bids) {
    std::vector<ComplexRational> demands;
    bool has_zero = false;
    for (const auto& option : bid.options) has_zero |= option.demand.IsZero();
    if (!has_zero) demands.push_back({0, 0});
    for (const auto& option : bid.options) demands.push_back(option.demand);
    std::vector<Rational> values;
    for (const auto& d : demands) values.push_back(ClosureValue(bid, d));
    out.radix.push_back(static_cast<int>(demands.size()));
    out.demand.push_back(std::move(demands));
    out.value.push_back(std::move(values));
  }
  return out;
}

BigInt Lcm(const BigInt& a, const BigInt& b) {
  return a / boost::multiprecision::gcd(a, b) * b;
}

OracleResult SolveComplex(const Instance& instance, const Rational& beta,
                          const Choices& choices) {
  if (beta < 0) throw CkpError(ErrorCode::kInvalidParams, "negative beta");
  const size_t n = choices.radix.size();
  std::vector<Rational> all_values;
  BigInt denom = 1;
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = 0; j < choices.demand[k].size(); ++j) {
      all_values.push_back(choices.value[k][j]);
      denom = Lcm(denom, Denominator(choices.demand[k][j].re));
      denom = Lcm(denom, Denominator(choices.demand[k][j].im));
    }
  }
  const ValueScale scale = ValueScale::ForValues(all_values);

  // Loads scaled by `denom`; the bound keeps both squares inside int128.
  BigInt reach = 0;
  std::vector<std::vector<int64_t>> re(n), im(n), val(n);
  bool fits = true;
  for (size_t k = 0; k < n && fits; ++k) {
    BigInt widest = 0;
    for (size_t j = 0; j < choices.demand[k].size(); ++j) {
      const BigInt r = Numerator(choices.demand[k][j].re * denom);
      const BigInt i = Numerator(choices.demand[k][j].im * denom);
      widest = std::max({widest, BigInt(abs(r)), BigInt(abs(i))});
      if (abs(r) > (BigInt(1) << 62) || abs(i) > (BigInt(1) << 62)) {
        fits = false;
        break;
      }
      re[k].push_back(static_cast<int64_t>(r));
      im[k].push_back(static_cast<int64_t>(i));
      val[k].push_back(scale.Scale(choices.value[k][j]));
    }
    reach += widest;
  }
  fits = fits && reach <= (BigInt(1) << 62);
  if (!fits) {
    throw CkpError(ErrorCode::kValueOverflow,
                   "demands too large for the exact oracle");
  }
  const Rational bound_r = beta * beta * instance.capacity * instance.capacity *
                           Rational(denom) * Rational(denom);
  BigInt bound_big = FloorOf(bound_r);
  const BigInt ceiling = BigInt(1) << 126;
  if (bound_big > ceiling) bound_big = ceiling;
  const int128 bound = static_cast<int128>(bound_big);

  int64_t sum_re = 0, sum_im = 0, sum_val = 0;
  for (size_t k = 0; k < n; ++k) {
    sum_re += re[k][0];
    sum_im += im[k][0];
    sum_val += val[k][0];
  }
  int64_t best = -1;
  std::vector<int> best_digits(n, 0);
  OracleResult result;
  result.nodes_explored = Odometer(
      choices.radix,
      [&](size_t k, int from, int to) {
        sum_re += re[k][to] - re[k][from];
        sum_im += im[k][to] - im[k][from];
        sum_val += val[k][to] - val[k][from];
      },
      [&](const std::vector<int>& digits) {
        if (sum_val <= best) return;
        const int128 sq = static_cast<int128>(sum_re) * sum_re +
                          static_cast<int128>(sum_im) * sum_im;
        if (sq > bound) return;
        best = sum_val;
        best_digits = digits;
      });
  std::vector<ComplexRational> chosen;
  for (size_t k = 0; k < n; ++k) {
    chosen.push_back(choices.demand[k][best_digits[k]]);
  }
  result.witness = MakeAllocation(instance, std::move(chosen));
  result.opt_value = scale.Unscale(best);
  return result;
}

}  // namespace

OracleResult BruteForceCkp(const Instance& instance, const Rational& beta,
                           const OracleLimits& limits) {
  if (!instance.IsSingleMinded()) {
    throw CkpError(ErrorCode::kInvalidParams,
                   "subset oracle given a multi-minded bid");
  }
  if (instance.num_users() > limits.max_users) {
    throw CkpError(ErrorCode::kOracleCap,
                   std::to_string(instance.num_users()) + " users exceed the cap of " +
                       std::to_string(limits.max_users));
  }
  return SolveComplex(instance, beta, CollectChoices(instance));
}

OracleResult BruteForceMulti(const Instance& instance, const Rational& beta,
                             const OracleLimits& limits) {
  Choices choices = CollectChoices(instance);
  CheckProducts(choices.radix, limits);
  return SolveComplex(instance, beta, choices);
}

BoxOracleResult BruteForceBox(const BoxInstance& raw, const OracleLimits& limits) {
  const BoxInstance instance = NormalizeBoxInstance(raw);
  const size_t m = instance.num_axes();
  std::vector<int> radix;
  std::vector<std::vector<Rational>> values;
  for (const auto& bid : instance.bids) {
    radix.push_back(static_cast<int>(bid.options.size()));
    std::vector<Rational> v;
    for (const auto& option : bid.options) {
      v.push_back(BoxClosureValue(bid, option.demand));
    }
    values.push_back(std::move(v));
  }
  CheckProducts(radix, limits);
  BoxVector load(m, Rational(0));
  Rational value = 0;
  for (size_t k = 0; k < values.size(); ++k) value += values[k][0];
  Rational best = -1;
  std::vector<int> best_digits(radix.size(), 0);
  BoxOracleResult result;
  result.nodes_explored = Odometer(
      radix,
      [&](size_t k, int from, int to) {
        const auto& a = instance.bids[k].options[from].demand;
        const auto& b = instance.bids[k].options[to].demand;
        for (size_t i = 0; i < m; ++i) load[i] += b[i] - a[i];
        value += values[k][to] - values[k][from];
      },
      [&](const std::vector<int>& digits) {
        if (value <= best || !BoxLeq(load, instance.capacity)) return;
        best = value;
        best_digits = digits;
      });
  result.witness = MakeBoxAllocation(instance, best_digits);
  result.opt_value = best;
  return result;
}

std::optional<ExactFitSolution> BruteForceExactFit(
    std::span<const ExactFitItem> items, int64_t c1, int64_t c2,
    const OracleLimits& limits) {
  if (items.size() > limits.max_users) {
    throw CkpError(ErrorCode::kOracleCap,
                   std::to_string(items.size()) + " items exceed the cap of " +
                       std::to_string(limits.max_users));
  }
  std::optional<ExactFitSolution> best;
  const uint64_t subsets = uint64_t{1} << items.size();
  for (uint64_t mask = 0; mask < subsets; ++mask) {
    int64_t s1 = 0, s2 = 0;
    Rational value = 0;
    for (size_t k = 0; k < items.size(); ++k) {
      if (mask >> k & 1) {
        s1 += items[k].demand.re_idx;
        s2 += items[k].demand.im_idx;
        value += items[k].value;
      }
    }
    if (s1 != c1 || s2 != c2) continue;
    if (best && value <= best->value) continue;
    ExactFitSolution solution;
    for (size_t k = 0; k < items.size(); ++k) {
      if (mask >> k & 1) solution.items.push_back(k);
    }
    solution.value = value;
    best = std::move(solution);
  }
  return best;
}

std::optional<Rational> BruteForceMultiExactFit(
    std::span<const MultiMindedBid> bids, Quadrant quadrant,
    const GridConfig& config, int64_t xi, int64_t zeta,
    const OracleLimits& limits) {
  std::vector<int> radix;
  std::vector<std::vector<GridPoint>> cells;
  std::vector<std::vector<Rational>> values;
  for (const auto& bid : bids) {
    std::vector<GridPoint> c{{0, 0}};
    std::vector<Rational> v{ClosureValue(bid, {0, 0})};
    for (const auto& option : bid.options) {
      GridPoint p = RoundDemand(option.demand, config);
      if (quadrant == Quadrant::kSecond) p.re_idx = -p.re_idx;
      if (p.re_idx < 0) {
        throw CkpError(ErrorCode::kMixedQuadrantBid,
                       "option outside the requested quadrant");
      }
      c.push_back(p);
      v.push_back(ClosureValue(bid, option.demand));
    }
    radix.push_back(static_cast<int>(c.size()));
    cells.push_back(std::move(c));
    values.push_back(std::move(v));
  }
  CheckProducts(radix, limits);
  int64_t s1 = 0, s2 = 0;
  Rational value = 0;
  for (size_t k = 0; k < bids.size(); ++k) value += values[k][0];
  std::optional<Rational> best;
  Odometer(
      radix,
      [&](size_t k, int from, int to) {
        s1 += cells[k][to].re_idx - cells[k][from].re_idx;
        s2 += cells[k][to].im_idx - cells[k][from].im_idx;
        value += values[k][to] - values[k][from];
      },
      [&](const std::vector<int>&) {
        if (s1 == xi && s2 == zeta && (!best || value > *best)) best = value;
      });
  return best;
}

}  // namespace ckp
