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

#include "ckp/ptas_range.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>

#include "ckp/dp_exact.h"
#include "ckp/error.h"

namespace ckp {

namespace {

BoxVector Zeros(size_t m) { return BoxVector(m, Rational(0)); }

void AddTo(BoxVector& acc, const BoxVector& v) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
}

bool IsZeroVector(const BoxVector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& x) { return x == 0; });
}

// Number of (N, partial) pairs: the elementary symmetric polynomial of
// degree s in the option counts.
BigInt CountHeavySets(const BoxInstance& instance, size_t s) {
  std::vector<BigInt> e(s + 1, 0);
  e[0] = 1;
  for (const auto& bid : instance.bids) {
    const BigInt k = bid.options.size();
    for (size_t j = s; j >= 1; --j) e[j] += e[j - 1] * k;
  }
  return e[s];
}

nlohmann::json BoxVectorToJson(const BoxVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(FormatRational(x));
  return out;
}

}  // namespace

BoxInstance NormalizeBoxInstance(const BoxInstance& instance) {
  const size_t m = instance.num_axes();
  if (m == 0) {
    throw CkpError(ErrorCode::kInvalidInstance, "box needs at least one axis");
  }
  for (const auto& c : instance.capacity) {
    if (c < 0) {
      throw CkpError(ErrorCode::kInvalidInstance, "negative box capacity");
    }
  }
  BoxInstance out;
  out.capacity = instance.capacity;
  for (size_t k = 0; k < instance.bids.size(); ++k) {
    BoxBid bid;
    for (const auto& option : instance.bids[k].options) {
      if (option.demand.size() != m) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       "user " + std::to_string(k) + ": demand has " +
                           std::to_string(option.demand.size()) + " axes, box has " +
                           std::to_string(m));
      }
      for (const auto& x : option.demand) {
        if (x < 0) {
          throw CkpError(ErrorCode::kInvalidInstance,
                         "user " + std::to_string(k) + ": negative box demand");
        }
      }
      if (option.value < 0) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       "user " + std::to_string(k) + ": negative value");
      }
    }
    if (instance.bids[k].options.empty() ||
        !IsZeroVector(instance.bids[k].options.front().demand)) {
      bid.options.push_back({Zeros(m), 0});
    }
    for (const auto& option : instance.bids[k].options) {
      bid.options.push_back(option);
    }
    out.bids.push_back(std::move(bid));
  }
  return out;
}

bool BoxLeq(const BoxVector& a, const BoxVector& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Rational BoxClosureValue(const BoxBid& bid, const BoxVector& point) {
  Rational best = 0;
  for (const auto& option : bid.options) {
    if (option.value > best && BoxLeq(option.demand, point)) best = option.value;
  }
  return best;
}

int BoxClosureArgmax(const BoxBid& bid, const BoxVector& point) {
  const Rational best = BoxClosureValue(bid, point);
  for (size_t j = 0; j < bid.options.size(); ++j) {
    if (bid.options[j].value == best && BoxLeq(bid.options[j].demand, point)) {
      return static_cast<int>(j);
    }
  }
  // best == 0 and no zero-valued option fits; the zero demand always does
  // in a normalized bid.
  throw CkpError(ErrorCode::kInternalInconsistency,
                 "no option attains the box closure value");
}

BoxAllocation MakeBoxAllocation(const BoxInstance& instance,
                                std::vector<int> option_index) {
  if (option_index.size() != instance.bids.size()) {
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "box allocation size mismatch");
  }
  BoxAllocation out;
  out.total_load = Zeros(instance.num_axes());
  out.total_value = 0;
  for (size_t k = 0; k < option_index.size(); ++k) {
    const auto& bid = instance.bids[k];
    const auto& demand = bid.options.at(option_index[k]).demand;
    out.chosen.push_back(demand);
    AddTo(out.total_load, demand);
    out.total_value += BoxClosureValue(bid, demand);
  }
  out.option_index = std::move(option_index);
  return out;
}

int64_t HeavySetSize(int64_t num_axes, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) {
    throw CkpError(ErrorCode::kInvalidParams, "epsilon must lie in (0, 1]");
  }
  if (num_axes < 1) {
    throw CkpError(ErrorCode::kInvalidParams, "need at least one axis");
  }
  return ToInt64(CeilOf(Rational(num_axes) / epsilon), "heavy set size");
}

int64_t EnumerateHeavySets(const BoxInstance& instance, const Rational& epsilon,
                           const std::function<void(const HeavySet&)>& visit,
                           const PtasLimits& limits) {
  const size_t n = instance.bids.size();
  const int64_t t = HeavySetSize(static_cast<int64_t>(instance.num_axes()), epsilon);
  const size_t s = static_cast<size_t>(std::min<int64_t>(static_cast<int64_t>(n), t));
  const BigInt total = CountHeavySets(instance, s);
  if (total > limits.max_heavy_sets) {
    throw CkpError(ErrorCode::kCombinatorialCap,
                   total.str() + " heavy sets exceed the cap of " +
                       std::to_string(limits.max_heavy_sets));
  }
  int64_t visited = 0;
  std::vector<size_t> users(s);
  for (size_t i = 0; i < s; ++i) users[i] = i;
  while (true) {
    HeavySet hs;
    hs.users = users;
    hs.partial.assign(s, 0);
    while (true) {
      hs.partial_load = Zeros(instance.num_axes());
      for (size_t i = 0; i < s; ++i) {
        AddTo(hs.partial_load,
              instance.bids[users[i]].options[hs.partial[i]].demand);
      }
      if (BoxLeq(hs.partial_load, instance.capacity)) {
        ++visited;
        visit(hs);
      }
      size_t i = s;
      bool done = true;
      while (i > 0) {
        --i;
        if (++hs.partial[i] <
            static_cast<int>(instance.bids[users[i]].options.size())) {
          done = false;
          break;
        }
        hs.partial[i] = 0;
      }
      if (done) break;
    }
    // Next combination.
    size_t i = s;
    while (i > 0 && users[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) break;
    ++users[i - 1];
    for (size_t j = i; j < s; ++j) users[j] = users[j - 1] + 1;
  }
  return visited;
}

BoxVector MakeBucketVector(const BoxVector& capacity,
                           const BoxVector& partial_load,
                           int64_t outside_users) {
  if (outside_users <= 0) {
    throw CkpError(ErrorCode::kInvalidParams,
                   "bucket vector needs at least one outside user");
  }
  const Rational denom = Rational(outside_users) * outside_users;
  BoxVector b(capacity.size());
  for (size_t i = 0; i < capacity.size(); ++i) {
    b[i] = (capacity[i] - partial_load[i]) / denom;
    if (b[i] < 0) {
      throw CkpError(ErrorCode::kInternalInconsistency,
                     "partial selection exceeds the capacity");
    }
  }
  return b;
}

BucketDpResult BucketDp(const std::vector<BoxBid>& bids, const BoxVector& bucket,
                        int64_t r_cap, const PtasLimits& limits) {
  const size_t m = bucket.size();
  if (r_cap < 0) {
    throw CkpError(ErrorCode::kInvalidParams, "negative r cap");
  }
  BigInt states_big = 1;
  for (size_t i = 0; i < m; ++i) states_big *= (r_cap + 1);
  if (states_big > limits.max_bucket_states) {
    throw CkpError(ErrorCode::kCombinatorialCap,
                   states_big.str() + " bucket states exceed the cap of " +
                       std::to_string(limits.max_bucket_states));
  }
  const auto states = static_cast<size_t>(states_big);
  std::vector<size_t> stride(m, 1);
  for (size_t i = 1; i < m; ++i) stride[i] = stride[i - 1] * (r_cap + 1);

  std::vector<Rational> values;
  for (const auto& bid : bids) {
    for (const auto& option : bid.options) values.push_back(option.value);
  }
  const ValueScale scale = ValueScale::ForValues(values);

  struct Candidate {
    std::vector<int64_t> r;
    size_t offset;
    int64_t value;
  };
  auto point_of = [&](const std::vector<int64_t>& r) {
    BoxVector p(m);
    for (size_t i = 0; i < m; ++i) p[i] = bucket[i] * r[i];
    return p;
  };
  std::vector<std::vector<Candidate>> cands(bids.size());
  for (size_t k = 0; k < bids.size(); ++k) {
    for (const auto& option : bids[k].options) {
      std::vector<int64_t> r(m, 0);
      bool fits = true;
      for (size_t i = 0; i < m && fits; ++i) {
        if (bucket[i] == 0) {
          fits = option.demand[i] == 0;
        } else {
          const BigInt ri = CeilOf(option.demand[i] / bucket[i]);
          fits = ri <= r_cap;
          if (fits) r[i] = static_cast<int64_t>(ri);
        }
      }
      if (!fits) continue;
      auto dup = std::find_if(cands[k].begin(), cands[k].end(),
                              [&](const Candidate& c) { return c.r == r; });
      if (dup != cands[k].end()) continue;  // same r, same closure value
      size_t offset = 0;
      for (size_t i = 0; i < m; ++i) offset += static_cast<size_t>(r[i]) * stride[i];
      const int64_t v = scale.Scale(BoxClosureValue(bids[k], point_of(r)));
      cands[k].push_back({std::move(r), offset, v});
    }
    if (cands[k].size() > static_cast<size_t>(std::numeric_limits<int16_t>::max())) {
      throw CkpError(ErrorCode::kCombinatorialCap, "too many bucket candidates");
    }
  }

  std::vector<int64_t> prev(states, 0), cur(states);
  std::vector<std::vector<int16_t>> choice(bids.size(),
                                           std::vector<int16_t>(states, -1));
  std::vector<int64_t> digits(m);
  for (size_t k = 0; k < bids.size(); ++k) {
    std::fill(digits.begin(), digits.end(), 0);
    for (size_t s = 0; s < states; ++s) {
      int64_t best = std::numeric_limits<int64_t>::min();
      int16_t best_j = -1;
      for (size_t j = 0; j < cands[k].size(); ++j) {
        const auto& c = cands[k][j];
        bool ok = true;
        for (size_t i = 0; i < m && ok; ++i) ok = c.r[i] <= digits[i];
        if (!ok) continue;
        const int64_t v = prev[s - c.offset] + c.value;
        if (v > best) {
          best = v;
          best_j = static_cast<int16_t>(j);
        }
      }
      cur[s] = best;
      choice[k][s] = best_j;
      for (size_t i = 0; i < m; ++i) {
        if (++digits[i] <= r_cap) break;
        digits[i] = 0;
      }
    }
    std::swap(prev, cur);
  }

  BucketDpResult result;
  result.r.resize(bids.size());
  result.option_index.resize(bids.size());
  size_t s = states - 1;
  const int64_t total = prev[s];
  for (size_t k = bids.size(); k-- > 0;) {
    const int j = choice[k][s];
    if (j < 0) {
      throw CkpError(ErrorCode::kInternalInconsistency, "broken bucket traceback");
    }
    const auto& c = cands[k][j];
    result.r[k] = c.r;
    result.option_index[k] = BoxClosureArgmax(bids[k], point_of(c.r));
    s -= c.offset;
  }
  result.value = scale.Unscale(bids.empty() ? 0 : total);
  return result;
}

PtasResult MultiMdkpPtas(const BoxInstance& raw, const Rational& epsilon,
                         const PtasLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  const BoxInstance instance = NormalizeBoxInstance(raw);
  const int64_t n = static_cast<int64_t>(instance.bids.size());
  const size_t m = instance.num_axes();
  PtasResult result;
  result.t = HeavySetSize(static_cast<int64_t>(m), epsilon);
  const int64_t outside = n - std::min(n, result.t);

  bool have_best = false;
  Rational best_value;
  std::vector<int> best_index;
  result.stats.heavy_sets = EnumerateHeavySets(
      instance, epsilon,
      [&](const HeavySet& hs) {
        std::vector<int> index(n, 0);
        std::vector<bool> in_n(n, false);
        Rational value = 0;
        for (size_t i = 0; i < hs.users.size(); ++i) {
          index[hs.users[i]] = hs.partial[i];
          in_n[hs.users[i]] = true;
          value += BoxClosureValue(
              instance.bids[hs.users[i]],
              instance.bids[hs.users[i]].options[hs.partial[i]].demand);
        }
        if (outside > 0) {
          std::vector<size_t> rest;
          std::vector<BoxBid> rest_bids;
          for (int64_t k = 0; k < n; ++k) {
            if (!in_n[k]) {
              rest.push_back(k);
              rest_bids.push_back(instance.bids[k]);
            }
          }
          const BoxVector b =
              MakeBucketVector(instance.capacity, hs.partial_load, outside);
          const int64_t r_cap = outside * outside;
          const BucketDpResult dp = BucketDp(rest_bids, b, r_cap, limits);
          BigInt states = 1;
          for (size_t i = 0; i < m; ++i) states *= (r_cap + 1);
          result.stats.bucket_states += static_cast<int64_t>(states);
          BoxVector outside_load = Zeros(m);
          for (size_t i = 0; i < rest.size(); ++i) {
            index[rest[i]] = dp.option_index[i];
            AddTo(outside_load, rest_bids[i].options[dp.option_index[i]].demand);
          }
          BoxVector residual(m);
          for (size_t i = 0; i < m; ++i) {
            residual[i] = instance.capacity[i] - hs.partial_load[i];
          }
          if (!BoxLeq(outside_load, residual)) {
            throw CkpError(ErrorCode::kInternalInconsistency,
                           "bucket selection exceeds the residual capacity");
          }
          value += dp.value;
        }
        if (!have_best || value > best_value) {
          have_best = true;
          best_value = value;
          best_index = std::move(index);
          result.heavy_set = hs;
        }
      },
      limits);
  if (!have_best) {
    throw CkpError(ErrorCode::kInternalInconsistency, "no heavy set visited");
  }
  result.allocation = MakeBoxAllocation(instance, std::move(best_index));
  if (result.allocation.total_value != best_value ||
      !BoxLeq(result.allocation.total_load, instance.capacity)) {
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "PTAS allocation disagrees with its range value");
  }
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

BoxInstance BoxFromComplex(const Instance& instance, const Rational& c1,
                           const Rational& c2) {
  BoxInstance out;
  out.capacity = {c1, c2};
  for (size_t k = 0; k < instance.bids.size(); ++k) {
    BoxBid bid;
    for (const auto& option : instance.bids[k].options) {
      if (option.demand.re < 0 || option.demand.im < 0) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       "user " + std::to_string(k) +
                           ": box view needs first-quadrant demands");
      }
      bid.options.push_back({{option.demand.re, option.demand.im}, option.value});
    }
    out.bids.push_back(std::move(bid));
  }
  return out;
}

nlohmann::json PtasResultToJson(const PtasResult& result) {
  nlohmann::json chosen = nlohmann::json::array();
  for (const auto& d : result.allocation.chosen) chosen.push_back(BoxVectorToJson(d));
  return {
      {"allocation",
       {{"option_index", result.allocation.option_index},
        {"chosen", chosen},
        {"total_load", BoxVectorToJson(result.allocation.total_load)},
        {"total_value", FormatRational(result.allocation.total_value)}}},
      {"heavy_set",
       {{"users", result.heavy_set.users}, {"partial", result.heavy_set.partial}}},
      {"t", result.t},
      {"stats",
       {{"heavy_sets", result.stats.heavy_sets},
        {"bucket_states", result.stats.bucket_states},
        {"wall_seconds", result.stats.wall_seconds}}},
  };
}

}  // namespace ckp
