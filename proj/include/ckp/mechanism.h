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

// Maximal-in-range allocation with Clarke payments.
//
// The range is fixed by (C, n, eps, P) and the users' quadrants: every
// admissible guess and every way of splitting it into per-user grid cells.
// A user placed on a cell receives a declared option dominated by that cell
// with the same closure value. Allocation maximizes reported welfare over
// the range exactly, which together with payments computed against the same
// range makes truthful reporting a dominant strategy.

#ifndef CKP_MECHANISM_H_
#define CKP_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ckp/fptas.h"
#include "ckp/model.h"
#include "ckp/rounding.h"
#include "json.hpp"

namespace ckp {

struct RangeDescriptor {
  GridConfig grid;
  ProjectionGrids grids;
  Rational radius_squared;  // ((1 + 2 eps) C)^2
  std::string hash;
};

// Depends on the public parameters only.
RangeDescriptor MakeRange(const Rational& capacity, int64_t num_users,
                          const Rational& epsilon,
                          const Rational& power_factor_bound,
                          int64_t cell_cap = kDefaultCellCap);
RangeDescriptor RangeForInstance(const Instance& instance,
                                 const Rational& epsilon,
                                 int64_t cell_cap = kDefaultCellCap);
nlohmann::json RangeToJson(const RangeDescriptor& range);

struct MechanismOptions {
  // Public quadrant of each user; empty means derived from the bids.
  std::vector<Quadrant> quadrants;
  int jobs = 1;
};

// Throws kInvalidParams when the instance does not match the range's public
// parameters.
SolverResult MirAllocate(const Instance& instance, const RangeDescriptor& range,
                         const MechanismOptions& options = {});

// Copy of `instance` with every option value of `user` set to zero.
Instance ZeroValuation(const Instance& instance, size_t user);

// Clarke payment of one user: best reported welfare of the others over the
// range with the user's valuation zeroed, minus the others' welfare at
// `allocation`. One solver call.
Rational VcgPayment(const Instance& instance, const RangeDescriptor& range,
                    const Allocation& allocation, size_t user,
                    const MechanismOptions& options = {});

struct PaymentReport {
  std::vector<Rational> payments;
  std::vector<SolverStats> call_stats;
};

PaymentReport VcgPayments(const Instance& instance, const RangeDescriptor& range,
                          const Allocation& allocation,
                          const MechanismOptions& options = {});

struct MechanismOutcome {
  SolverResult result;
  std::vector<Rational> payments;
  std::string range_hash;
  int solver_calls = 0;
  std::vector<SolverStats> call_stats;  // base call first
};

MechanismOutcome RunMechanism(const Instance& instance, const Rational& epsilon,
                              const MechanismOptions& options = {});
nlohmann::json MechanismOutcomeToJson(const MechanismOutcome& outcome);

struct TrialOutcome {
  Rational utility_truth;
  Rational utility_lie;
};

// Both utilities use the liar's true bid. The fake must stay in the liar's
// quadrant (kMixedQuadrantBid otherwise).
TrialOutcome MisreportTrial(const Instance& truth, size_t liar,
                            const MultiMindedBid& fake,
                            const RangeDescriptor& range);

enum class MisreportKind {
  kInflateValue,
  kDeflateValue,
  kShrinkDemand,
  kInflateDemand,
  kAddOption,
  kDropOption,
  kZeroReport,
};

std::string MisreportKindName(MisreportKind kind);

// A random lie of the given kind that keeps the instance valid and the bid
// in its quadrant. Falls back to the truthful bid when no such lie exists.
MultiMindedBid RandomMisreport(const Instance& truth, size_t liar,
                               MisreportKind kind, std::mt19937_64& rng);

struct AuditRecord {
  size_t liar = 0;
  MisreportKind kind = MisreportKind::kInflateValue;
  Rational utility_truth;
  Rational utility_lie;
};

struct AuditReport {
  int64_t trials = 0;
  int64_t violations = 0;
  // max(utility_lie - utility_truth); absent without trials.
  std::optional<Rational> worst_gap;
  std::string range_hash;
  std::vector<AuditRecord> records;
};

AuditReport AuditTruthfulness(const Instance& truth, const Rational& epsilon,
                              int64_t trials, uint64_t seed);
nlohmann::json AuditReportToJson(const AuditReport& report);

}  // namespace ckp

#endif  // CKP_MECHANISM_H_
