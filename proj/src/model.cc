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

#include "ckp/model.h"

#include <string>

#include "ckp/error.h"

namespace ckp {

namespace {

bool ComponentLeq(const Rational& f, const Rational& d) {
  if (Abs(f) > Abs(d)) return false;
  const int sf = Sign(f);
  return sf == 0 || sf == Sign(d);
}

std::string UserTag(size_t k) { return "bid " + std::to_string(k); }

}  // namespace

MultiMindedBid MultiMindedBid::FromSingle(const SingleMindedBid& bid) {
  MultiMindedBid out;
  out.options.push_back({bid.demand, bid.value});
  return out;
}

bool Instance::IsSingleMinded() const {
  for (const auto& bid : bids) {
    size_t non_zero = 0;
    for (const auto& option : bid.options) {
      if (!option.demand.IsZero()) ++non_zero;
    }
    if (non_zero > 1) return false;
  }
  return true;
}

bool PartialOrderLeq(const ComplexRational& f, const ComplexRational& d) {
  return ComponentLeq(f.re, d.re) && ComponentLeq(f.im, d.im);
}

Rational ClosureValue(const MultiMindedBid& bid, const ComplexRational& d) {
  Rational best = 0;
  for (const auto& option : bid.options) {
    if (option.value > best && PartialOrderLeq(option.demand, d)) {
      best = option.value;
    }
  }
  return best;
}

Quadrant QuadrantOf(const MultiMindedBid& bid) {
  const bool first = FitsQuadrant(bid, Quadrant::kFirst);
  const bool second = FitsQuadrant(bid, Quadrant::kSecond);
  if (!first && !second) {
    throw CkpError(ErrorCode::kMixedQuadrantBid,
                   "bid has demands with both re > 0 and re < 0");
  }
  return first ? Quadrant::kFirst : Quadrant::kSecond;
}

bool FitsQuadrant(const MultiMindedBid& bid, Quadrant quadrant) {
  for (const auto& option : bid.options) {
    if (quadrant == Quadrant::kFirst ? option.demand.re < 0
                                     : option.demand.re > 0) {
      return false;
    }
  }
  return true;
}

QuadrantSplit QuadrantPartition(const Instance& instance) {
  QuadrantSplit split;
  for (size_t k = 0; k < instance.bids.size(); ++k) {
    if (QuadrantOf(instance.bids[k]) == Quadrant::kFirst) {
      split.first.push_back(k);
    } else {
      split.second.push_back(k);
    }
  }
  return split;
}

Rational MaxArgumentTangent(const Instance& instance) {
  Rational best = 0;
  for (const auto& bid : instance.bids) {
    for (const auto& option : bid.options) {
      const auto& d = option.demand;
      if (d.re >= 0) continue;
      if (d.im <= 0) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       "demand with re < 0 and im <= 0 has argument >= pi");
      }
      const Rational tangent = -d.re / d.im;
      if (tangent > best) best = tangent;
    }
  }
  return best;
}

MultiMindedBid NormalizeBid(const MultiMindedBid& bid) {
  MultiMindedBid out;
  bool has_zero = false;
  for (const auto& option : bid.options) {
    if (option.demand.IsZero()) has_zero = true;
  }
  if (!has_zero) out.options.push_back({ComplexRational{0, 0}, Rational(0)});
  out.options.insert(out.options.end(), bid.options.begin(), bid.options.end());
  return out;
}

Instance ValidateInstance(const Instance& instance,
                          const ValidationLimits& limits) {
  if (instance.capacity <= 0) {
    throw CkpError(ErrorCode::kInvalidParams, "capacity must be positive");
  }
  if (instance.power_factor_bound < 1) {
    throw CkpError(ErrorCode::kInvalidParams,
                   "power factor bound must be at least 1");
  }
  if (instance.bids.size() > limits.max_users) {
    throw CkpError(ErrorCode::kInvalidInstance, "too many users");
  }
  const Rational& c = instance.capacity;
  const Rational& p = instance.power_factor_bound;
  Instance out;
  out.capacity = c;
  out.power_factor_bound = p;
  out.rotated = instance.rotated;
  out.bids.reserve(instance.bids.size());
  for (size_t k = 0; k < instance.bids.size(); ++k) {
    const auto& bid = instance.bids[k];
    if (bid.options.size() > limits.max_options_per_bid) {
      throw CkpError(ErrorCode::kInvalidInstance,
                     UserTag(k) + " exceeds the option cap");
    }
    for (const auto& option : bid.options) {
      const auto& d = option.demand;
      if (option.value < 0) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       UserTag(k) + " has a negative value");
      }
      if (d.IsZero() && option.value != 0) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       UserTag(k) + " assigns a non-zero value to the zero demand");
      }
      if (d.im < 0) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       UserTag(k) + " has im < 0; rotate demands first");
      }
      if (d.im > c) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       UserTag(k) + " has im above the capacity");
      }
      if (d.re < 0 && -d.re > p * d.im) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       UserTag(k) + " violates the power factor bound");
      }
      if (d.re > c * (1 + p)) {
        throw CkpError(ErrorCode::kInvalidInstance,
                       UserTag(k) + " has re above C(1+P)");
      }
    }
    QuadrantOf(bid);
    out.bids.push_back(NormalizeBid(bid));
  }
  return out;
}

bool LoadWithin(const ComplexRational& load, const Rational& capacity,
                const Rational& beta) {
  return load.MagnitudeSquared() <= beta * beta * capacity * capacity;
}

bool LoadAndCheck(const Allocation& allocation, const Rational& capacity,
                  const Rational& beta) {
  ComplexRational total{0, 0};
  for (const auto& d : allocation.chosen) total += d;
  return LoadWithin(total, capacity, beta);
}

Allocation MakeAllocation(const Instance& instance,
                          std::vector<ComplexRational> chosen) {
  if (chosen.size() != instance.bids.size()) {
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "allocation size does not match the number of users");
  }
  Allocation out;
  out.total_load = ComplexRational{0, 0};
  out.total_value = 0;
  for (size_t k = 0; k < chosen.size(); ++k) {
    out.total_load += chosen[k];
    out.total_value += ClosureValue(instance.bids[k], chosen[k]);
  }
  out.chosen = std::move(chosen);
  return out;
}

Rational ViolationFactorSquared(const ComplexRational& load,
                                const Rational& capacity) {
  return load.MagnitudeSquared() / (capacity * capacity);
}

}  // namespace ckp
