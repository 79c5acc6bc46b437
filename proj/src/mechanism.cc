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

#include "ckp/mechanism.h"

#include <algorithm>
#include <map>

#include "ckp/error.h"
#include "ckp/instances.h"
#include "ckp/model_json.h"

namespace ckp {

namespace {

std::vector<Quadrant> PublicQuadrants(const Instance& instance,
                                      const MechanismOptions& options) {
  if (!options.quadrants.empty()) return options.quadrants;
  std::vector<Quadrant> out;
  for (const auto& bid : instance.bids) out.push_back(QuadrantOf(bid));
  return out;
}

Rational OthersWelfare(const Instance& instance, const Allocation& allocation,
                       size_t user) {
  Rational total = 0;
  for (size_t j = 0; j < instance.bids.size(); ++j) {
    if (j != user) total += ClosureValue(instance.bids[j], allocation.chosen[j]);
  }
  return total;
}

nlohmann::json StatsToJson(const SolverStats& stats) {
  return {{"guesses_tried", stats.guesses_tried},
          {"dp_cells_filled", stats.dp_cells_filled},
          {"wall_seconds", stats.wall_seconds}};
}

struct Reported {
  Allocation allocation;
  Rational payment;
};

// Allocation and the liar's payment under `reported`.
Reported Outcome(const Instance& reported, size_t liar,
                 const RangeDescriptor& range, const MechanismOptions& options) {
  Reported out;
  out.allocation = MirAllocate(reported, range, options).allocation;
  out.payment = VcgPayment(reported, range, out.allocation, liar, options);
  return out;
}

}  // namespace

RangeDescriptor MakeRange(const Rational& capacity, int64_t num_users,
                          const Rational& epsilon,
                          const Rational& power_factor_bound,
                          int64_t cell_cap) {
  RangeDescriptor range;
  range.grid = GridUnit(capacity, std::max<int64_t>(num_users, 1), epsilon,
                        power_factor_bound);
  range.grids = MakeProjectionGrids(range.grid, cell_cap);
  const Rational r = (1 + 2 * epsilon) * capacity;
  range.radius_squared = r * r;
  const nlohmann::json canonical = {
      {"capacity", FormatRational(capacity)},
      {"num_users", num_users},
      {"epsilon", FormatRational(epsilon)},
      {"power_factor_bound", FormatRational(power_factor_bound)},
      {"unit", FormatRational(range.grid.unit)},
      {"a_plus_max", range.grids.a_plus_max},
      {"a_minus_max", range.grids.a_minus_max},
      {"b_max", range.grids.b_max},
      {"radius_squared", FormatRational(range.radius_squared)},
  };
  range.hash = HashHex(Fnv1a64(canonical.dump()));
  return range;
}

RangeDescriptor RangeForInstance(const Instance& instance,
                                 const Rational& epsilon, int64_t cell_cap) {
  return MakeRange(instance.capacity,
                   static_cast<int64_t>(instance.num_users()), epsilon,
                   instance.power_factor_bound, cell_cap);
}

nlohmann::json RangeToJson(const RangeDescriptor& range) {
  return {{"grid", GridConfigToJson(range.grid)},
          {"grids", ProjectionGridsToJson(range.grids)},
          {"radius_squared", FormatRational(range.radius_squared)},
          {"hash", range.hash}};
}

SolverResult MirAllocate(const Instance& instance, const RangeDescriptor& range,
                         const MechanismOptions& options) {
  const int64_t n = static_cast<int64_t>(instance.num_users());
  if (instance.capacity != range.grid.capacity ||
      instance.power_factor_bound != range.grid.power_factor_bound ||
      std::max<int64_t>(n, 1) != range.grid.num_users) {
    throw CkpError(ErrorCode::kInvalidParams,
                   "instance does not match the range's public parameters");
  }
  FptasOptions fopts;
  fopts.domain = CellDomain::kFullGrid;
  fopts.jobs = options.jobs;
  fopts.quadrants = PublicQuadrants(instance, options);
  SolverResult result = MultiCkpFptas(instance, range.grid.epsilon, fopts);
  if (!(result.grids == range.grids)) {
    throw CkpError(ErrorCode::kInternalInconsistency, "range grids drifted");
  }
  return result;
}

Instance ZeroValuation(const Instance& instance, size_t user) {
  Instance out = instance;
  for (auto& option : out.bids.at(user).options) option.value = 0;
  return out;
}

Rational VcgPayment(const Instance& instance, const RangeDescriptor& range,
                    const Allocation& allocation, size_t user,
                    const MechanismOptions& options) {
  MechanismOptions fixed = options;
  fixed.quadrants = PublicQuadrants(instance, options);
  const Rational without =
      MirAllocate(ZeroValuation(instance, user), range, fixed).allocation.total_value;
  return without - OthersWelfare(instance, allocation, user);
}

PaymentReport VcgPayments(const Instance& instance, const RangeDescriptor& range,
                          const Allocation& allocation,
                          const MechanismOptions& options) {
  MechanismOptions fixed = options;
  fixed.quadrants = PublicQuadrants(instance, options);
  PaymentReport report;
  for (size_t k = 0; k < instance.num_users(); ++k) {
    const SolverResult zeroed = MirAllocate(ZeroValuation(instance, k), range, fixed);
    report.payments.push_back(zeroed.allocation.total_value -
                              OthersWelfare(instance, allocation, k));
    report.call_stats.push_back(zeroed.stats);
  }
  return report;
}

MechanismOutcome RunMechanism(const Instance& instance, const Rational& epsilon,
                              const MechanismOptions& options) {
  const Instance validated = ValidateInstance(instance);
  const RangeDescriptor range = RangeForInstance(validated, epsilon);
  MechanismOptions fixed = options;
  fixed.quadrants = PublicQuadrants(validated, options);
  MechanismOutcome outcome;
  outcome.range_hash = range.hash;
  outcome.result = MirAllocate(validated, range, fixed);
  outcome.call_stats.push_back(outcome.result.stats);
  PaymentReport payments =
      VcgPayments(validated, range, outcome.result.allocation, fixed);
  outcome.payments = std::move(payments.payments);
  for (const auto& s : payments.call_stats) outcome.call_stats.push_back(s);
  outcome.solver_calls = static_cast<int>(outcome.call_stats.size());
  for (size_t k = 0; k < outcome.payments.size(); ++k) {
    const Rational own =
        ClosureValue(validated.bids[k], outcome.result.allocation.chosen[k]);
    if (outcome.payments[k] < 0 || outcome.payments[k] > own) {
      throw CkpError(ErrorCode::kInternalInconsistency,
                     "payment of user " + std::to_string(k) +
                         " outside [0, reported value]");
    }
  }
  return outcome;
}

nlohmann::json MechanismOutcomeToJson(const MechanismOutcome& outcome) {
  nlohmann::json payments = nlohmann::json::array();
  for (const auto& p : outcome.payments) payments.push_back(FormatRational(p));
  nlohmann::json calls = nlohmann::json::array();
  for (const auto& s : outcome.call_stats) calls.push_back(StatsToJson(s));
  return {{"allocation", AllocationToJson(outcome.result.allocation)},
          {"guess", GuessToJson(outcome.result.guess)},
          {"payments", payments},
          {"range_hash", outcome.range_hash},
          {"solver_calls", outcome.solver_calls},
          {"call_stats", calls}};
}

TrialOutcome MisreportTrial(const Instance& truth, size_t liar,
                            const MultiMindedBid& fake,
                            const RangeDescriptor& range) {
  if (liar >= truth.num_users()) {
    throw CkpError(ErrorCode::kInvalidParams, "liar out of range");
  }
  MechanismOptions options;
  options.quadrants = PublicQuadrants(truth, {});
  Instance lie = truth;
  lie.bids[liar] = fake;
  const MultiMindedBid true_bid = NormalizeBid(truth.bids[liar]);
  const Reported honest = Outcome(truth, liar, range, options);
  const Reported lied = Outcome(lie, liar, range, options);
  return {ClosureValue(true_bid, honest.allocation.chosen[liar]) - honest.payment,
          ClosureValue(true_bid, lied.allocation.chosen[liar]) - lied.payment};
}

std::string MisreportKindName(MisreportKind kind) {
  switch (kind) {
    case MisreportKind::kInflateValue: return "inflate_value";
    case MisreportKind::kDeflateValue: return "deflate_value";
    case MisreportKind::kShrinkDemand: return "shrink_demand";
    case MisreportKind::kInflateDemand: return "inflate_demand";
    case MisreportKind::kAddOption: return "add_option";
    case MisreportKind::kDropOption: return "drop_option";
    case MisreportKind::kZeroReport: return "zero_report";
  }
  return "unknown";
}

MultiMindedBid RandomMisreport(const Instance& truth, size_t liar,
                               MisreportKind kind, std::mt19937_64& rng) {
  const MultiMindedBid honest = NormalizeBid(truth.bids.at(liar));
  const Quadrant quadrant = QuadrantOf(honest);
  std::vector<size_t> real;  // options with a non-zero demand
  for (size_t i = 0; i < honest.options.size(); ++i) {
    if (!honest.options[i].demand.IsZero()) real.push_back(i);
  }
  auto pick = [&]() -> size_t {
    return real[UniformInt(rng, 0, static_cast<int64_t>(real.size()) - 1)];
  };
  const Rational& c = truth.capacity;
  for (int attempt = 0; attempt < 20; ++attempt) {
    MultiMindedBid fake = honest;
    switch (kind) {
      case MisreportKind::kInflateValue: {
        if (real.empty()) return honest;
        auto& o = fake.options[pick()];
        o.value = o.value * Rational(4 + UniformInt(rng, 1, 8), 4) +
                  Rational(UniformInt(rng, 0, 4), 2);
        break;
      }
      case MisreportKind::kDeflateValue: {
        if (real.empty()) return honest;
        auto& o = fake.options[pick()];
        o.value *= Rational(UniformInt(rng, 0, 3), 4);
        break;
      }
      case MisreportKind::kShrinkDemand: {
        if (real.empty()) return honest;
        auto& o = fake.options[pick()];
        const Rational f(UniformInt(rng, 1, 3), 4);
        o.demand = {o.demand.re * f, o.demand.im * f};
        break;
      }
      case MisreportKind::kInflateDemand: {
        if (real.empty()) return honest;
        auto& o = fake.options[pick()];
        const Rational f(4 + UniformInt(rng, 1, 4), 4);
        o.demand = {o.demand.re * f, o.demand.im * f};
        break;
      }
      case MisreportKind::kAddOption: {
        const Rational im = c * Rational(UniformInt(rng, 1, 8), 8);
        Rational re = c * Rational(UniformInt(rng, 0, 8), 8);
        if (quadrant == Quadrant::kSecond) {
          re = -std::min(re + c / 8, im * truth.power_factor_bound);
        }
        fake.options.push_back({{re, im}, Rational(UniformInt(rng, 0, 40), 2)});
        break;
      }
      case MisreportKind::kDropOption: {
        if (real.empty()) return honest;
        fake.options.erase(fake.options.begin() +
                           static_cast<std::ptrdiff_t>(pick()));
        break;
      }
      case MisreportKind::kZeroReport:
        fake.options = {DemandOption{{0, 0}, 0}};
        break;
    }
    Instance probe = truth;
    probe.bids[liar] = fake;
    try {
      ValidateInstance(probe);
      if (FitsQuadrant(fake, quadrant)) return fake;
    } catch (const CkpError&) {
      // Try another draw.
    }
  }
  return honest;
}

AuditReport AuditTruthfulness(const Instance& raw, const Rational& epsilon,
                              int64_t trials, uint64_t seed) {
  const Instance truth = ValidateInstance(raw);
  const RangeDescriptor range = RangeForInstance(truth, epsilon);
  AuditReport report;
  report.range_hash = range.hash;
  const size_t n = truth.num_users();
  if (n == 0 || trials <= 0) return report;
  MechanismOptions options;
  options.quadrants = PublicQuadrants(truth, {});
  std::mt19937_64 rng(seed);
  std::map<size_t, Rational> honest_utility;
  for (int64_t t = 0; t < trials; ++t) {
    AuditRecord record;
    record.liar = static_cast<size_t>(UniformInt(rng, 0, static_cast<int64_t>(n) - 1));
    record.kind = static_cast<MisreportKind>(UniformInt(rng, 0, 6));
    const MultiMindedBid fake = RandomMisreport(truth, record.liar, record.kind, rng);
    const MultiMindedBid& true_bid = truth.bids[record.liar];
    auto it = honest_utility.find(record.liar);
    if (it == honest_utility.end()) {
      const Reported honest = Outcome(truth, record.liar, range, options);
      it = honest_utility
               .emplace(record.liar,
                        ClosureValue(true_bid, honest.allocation.chosen[record.liar]) -
                            honest.payment)
               .first;
    }
    Instance lie = truth;
    lie.bids[record.liar] = fake;
    const Reported lied = Outcome(lie, record.liar, range, options);
    record.utility_truth = it->second;
    record.utility_lie =
        ClosureValue(true_bid, lied.allocation.chosen[record.liar]) - lied.payment;
    const Rational gap = record.utility_lie - record.utility_truth;
    if (gap > 0) ++report.violations;
    if (!report.worst_gap || gap > *report.worst_gap) report.worst_gap = gap;
    report.records.push_back(std::move(record));
    ++report.trials;
  }
  return report;
}

nlohmann::json AuditReportToJson(const AuditReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"liar", r.liar},
                       {"kind", MisreportKindName(r.kind)},
                       {"utility_truth", FormatRational(r.utility_truth)},
                       {"utility_lie", FormatRational(r.utility_lie)}});
  }
  return {{"trials", report.trials},
          {"violations", report.violations},
          {"worst_gap", report.worst_gap ? nlohmann::json(FormatRational(*report.worst_gap))
                                         : nlohmann::json(nullptr)},
          {"range_hash", report.range_hash},
          {"records", records}};
}

}  // namespace ckp
