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

// Domain types for the complex-demand knapsack problem: demands are exact
// complex rationals, users declare a finite menu of (demand, value) options,
// and the capacity constraint bounds the magnitude of the total demand.

#ifndef CKP_MODEL_H_
#define CKP_MODEL_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "ckp/rational.h"

namespace ckp {

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool IsZero() const { return re == 0 && im == 0; }
  Rational MagnitudeSquared() const { return re * re + im * im; }
  // Reflection across the imaginary axis; maps second-quadrant demands into
  // the first quadrant.
  ComplexRational Mirrored() const { return {-re, im}; }

  friend ComplexRational operator+(const ComplexRational& a,
                                   const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  ComplexRational& operator+=(const ComplexRational& other) {
    re += other.re;
    im += other.im;
    return *this;
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

struct DemandOption {
  ComplexRational demand;
  Rational value;
};

struct SingleMindedBid {
  Rational value;
  ComplexRational demand;
};

// A multi-minded bid. After validation the zero demand with value 0 is
// always present; validated bids put it first.
struct MultiMindedBid {
  std::vector<DemandOption> options;

  static MultiMindedBid FromSingle(const SingleMindedBid& bid);
};

enum class Quadrant { kFirst, kSecond };

struct Instance {
  Rational capacity;
  Rational power_factor_bound{1};
  std::vector<MultiMindedBid> bids;
  // Records that the caller pre-rotated demands by 90 degrees so that every
  // imaginary part is non-negative.
  bool rotated = false;

  size_t num_users() const { return bids.size(); }
  // True when every bid has at most one non-zero option.
  bool IsSingleMinded() const;
};

struct Allocation {
  std::vector<ComplexRational> chosen;
  ComplexRational total_load;
  Rational total_value;
};

struct ValidationLimits {
  size_t max_options_per_bid = 64;
  size_t max_users = 4096;
};

// f ⪯ d: each component of d dominates f in magnitude, and every non-zero
// component of f has the same sign as the matching component of d. The zero
// demand precedes everything.
bool PartialOrderLeq(const ComplexRational& f, const ComplexRational& d);

// Largest declared value among options dominated by `d`.
Rational ClosureValue(const MultiMindedBid& bid, const ComplexRational& d);

// The quadrant of a single bid. Demands with re == 0 fit either quadrant;
// a bid made only of those counts as first quadrant. Throws
// kMixedQuadrantBid when both signs of re occur.
Quadrant QuadrantOf(const MultiMindedBid& bid);

// True when no option of `bid` lies strictly on the other side of the
// imaginary axis.
bool FitsQuadrant(const MultiMindedBid& bid, Quadrant quadrant);

struct QuadrantSplit {
  std::vector<size_t> first;   // users whose demands all have re >= 0
  std::vector<size_t> second;  // users whose demands all have re < 0
};

QuadrantSplit QuadrantPartition(const Instance& instance);

// tan(max(arg - pi/2, 0)) over all demands, computed as max |re|/im over the
// second-quadrant demands; zero when there are none.
Rational MaxArgumentTangent(const Instance& instance);

// Checks every structural and numeric precondition and returns a normalized
// copy (zero options inserted first). Throws kInvalidInstance,
// kMixedQuadrantBid or kInvalidParams.
Instance ValidateInstance(const Instance& instance,
                          const ValidationLimits& limits = {});

MultiMindedBid NormalizeBid(const MultiMindedBid& bid);

// |load| <= beta * C, compared as squares.
bool LoadWithin(const ComplexRational& load, const Rational& capacity,
                const Rational& beta);

bool LoadAndCheck(const Allocation& allocation, const Rational& capacity,
                  const Rational& beta);

// Builds an allocation whose totals are recomputed from `chosen`, valuing
// each user's demand through the closure of their bid.
Allocation MakeAllocation(const Instance& instance,
                          std::vector<ComplexRational> chosen);

// Smallest beta with |load| <= beta * C, reported as beta^2 so it stays
// rational.
Rational ViolationFactorSquared(const ComplexRational& load,
                                const Rational& capacity);

}  // namespace ckp

#endif  // CKP_MODEL_H_
