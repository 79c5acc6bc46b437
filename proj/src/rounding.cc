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

#include "ckp/rounding.h"

#include <string>

#include "ckp/error.h"

namespace ckp {

GridConfig GridUnit(const Rational& capacity, int64_t num_users,
                    const Rational& epsilon,
                    const Rational& power_factor_bound) {
  if (capacity <= 0) {
    throw CkpError(ErrorCode::kInvalidParams, "capacity must be positive");
  }
  if (num_users < 1) {
    throw CkpError(ErrorCode::kInvalidParams, "need at least one user");
  }
  if (epsilon <= 0 || epsilon > 1) {
    throw CkpError(ErrorCode::kInvalidParams, "epsilon must lie in (0, 1]");
  }
  if (power_factor_bound < 1) {
    throw CkpError(ErrorCode::kInvalidParams,
                   "power factor bound must be at least 1");
  }
  GridConfig config;
  config.capacity = capacity;
  config.num_users = num_users;
  config.epsilon = epsilon;
  config.power_factor_bound = power_factor_bound;
  config.unit = epsilon * capacity /
                (Rational(num_users) * (power_factor_bound + 1));
  return config;
}

GridPoint RoundDemand(const ComplexRational& demand, const GridConfig& config) {
  const Rational re_units = demand.re / config.unit;
  const Rational im_units = demand.im / config.unit;
  GridPoint point;
  point.re_idx = ToInt64(demand.re >= 0 ? CeilOf(re_units) : FloorOf(re_units),
                         "rounded real index");
  point.im_idx = ToInt64(CeilOf(im_units), "rounded imaginary index");
  return point;
}

ComplexRational GridValue(const GridPoint& point, const GridConfig& config) {
  return {Rational(point.re_idx) * config.unit,
          Rational(point.im_idx) * config.unit};
}

ProjectionGrids MakeProjectionGrids(const GridConfig& config,
                                    int64_t cell_cap) {
  const Rational& c = config.capacity;
  const Rational& p = config.power_factor_bound;
  const Rational& l = config.unit;
  ProjectionGrids grids;
  const BigInt a_plus = CeilOf(c * (1 + p) / l);
  const BigInt a_minus = CeilOf(c * p / l);
  const BigInt b = CeilOf(c / l);
  if (a_plus + 1 > cell_cap || a_minus + 1 > cell_cap || b + 1 > cell_cap ||
      (a_plus + 1) * (b + 1) > cell_cap) {
    throw CkpError(ErrorCode::kGridTooLarge,
                   "projection grid A+ x B has (" + (a_plus + 1).str() +
                       " x " + (b + 1).str() + ") cells, cap " +
                       std::to_string(cell_cap));
  }
  grids.a_plus_max = static_cast<int64_t>(a_plus);
  grids.a_minus_max = static_cast<int64_t>(a_minus);
  grids.b_max = static_cast<int64_t>(b);
  return grids;
}

std::vector<GridPoint> RoundedDemandSpace(const ProjectionGrids& grids,
                                          int64_t cell_cap) {
  const int64_t cells = grids.a_plus_size() * grids.b_size();
  if (cells > cell_cap) {
    throw CkpError(ErrorCode::kGridTooLarge,
                   "rounded demand space has " + std::to_string(cells) +
                       " points, cap " + std::to_string(cell_cap));
  }
  std::vector<GridPoint> points;
  points.reserve(static_cast<size_t>(cells));
  for (int64_t re = 0; re <= grids.a_plus_max; ++re) {
    for (int64_t im = 0; im <= grids.b_max; ++im) {
      points.push_back({re, im});
    }
  }
  return points;
}

nlohmann::json GridConfigToJson(const GridConfig& config) {
  return {
      {"capacity", FormatRational(config.capacity)},
      {"num_users", config.num_users},
      {"epsilon", FormatRational(config.epsilon)},
      {"power_factor_bound", FormatRational(config.power_factor_bound)},
      {"unit", FormatRational(config.unit)},
  };
}

nlohmann::json ProjectionGridsToJson(const ProjectionGrids& grids) {
  return {
      {"a_plus_max", grids.a_plus_max},
      {"a_minus_max", grids.a_minus_max},
      {"b_max", grids.b_max},
  };
}

}  // namespace ckp
