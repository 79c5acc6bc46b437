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

// Python bindings. Instances, parameters and results cross the boundary as
// JSON text with exact "p/q" rationals; the package wrapper converts them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ckp/error.h"
#include "ckp/fptas.h"
#include "ckp/instances.h"
#include "ckp/mechanism.h"
#include "ckp/model.h"
#include "ckp/model_json.h"
#include "ckp/oracle.h"
#include "ckp/ptas_range.h"
#include "ckp/rational.h"

namespace py = pybind11;

namespace {

using ckp::Rational;
using nlohmann::json;

ckp::Instance Load(const std::string& text) {
  return ckp::ValidateInstance(ckp::ParseInstanceText(text));
}

Rational Param(const std::string& text) { return ckp::ParseRational(text); }

std::string Validate(const std::string& text) {
  return ckp::InstanceToJson(Load(text)).dump();
}

std::string Hash(const std::string& text) {
  return ckp::InstanceHash(ckp::ParseInstanceText(text));
}

std::string Fptas(const std::string& text, const std::string& eps, bool multi,
                  bool full_grid, int jobs) {
  const ckp::Instance inst = Load(text);
  ckp::FptasOptions options;
  options.jobs = jobs;
  if (full_grid) options.domain = ckp::CellDomain::kFullGrid;
  const ckp::SolverResult r = multi ? ckp::MultiCkpFptas(inst, Param(eps), options)
                                    : ckp::CkpBiFptas(inst, Param(eps), options);
  return ckp::SolverResultToJson(r).dump();
}

std::string Oracle(const std::string& text, const std::string& beta) {
  const ckp::Instance inst = ckp::ParseInstanceText(text);
  const ckp::OracleResult o = inst.IsSingleMinded()
                                  ? ckp::BruteForceCkp(inst, Param(beta))
                                  : ckp::BruteForceMulti(inst, Param(beta));
  return json{{"opt_value", ckp::FormatRational(o.opt_value)},
              {"allocation", ckp::AllocationToJson(o.witness)},
              {"nodes_explored", o.nodes_explored}}
      .dump();
}

std::string Ptas(const std::string& text, const std::string& c1,
                 const std::string& c2, const std::string& eps) {
  const ckp::BoxInstance box =
      ckp::BoxFromComplex(Load(text), Param(c1), Param(c2));
  return ckp::PtasResultToJson(ckp::MultiMdkpPtas(box, Param(eps))).dump();
}

std::string Mechanism(const std::string& text, const std::string& eps, int jobs) {
  ckp::MechanismOptions options;
  options.jobs = jobs;
  return ckp::MechanismOutcomeToJson(ckp::RunMechanism(Load(text), Param(eps), options))
      .dump();
}

std::string Audit(const std::string& text, const std::string& eps, int64_t trials,
                  uint64_t seed) {
  return ckp::AuditReportToJson(
             ckp::AuditTruthfulness(Load(text), Param(eps), trials, seed))
      .dump();
}

std::string Range(const std::string& capacity, int64_t num_users,
                  const std::string& eps, const std::string& power) {
  return ckp::RangeToJson(
             ckp::MakeRange(Param(capacity), num_users, Param(eps), Param(power)))
      .dump();
}

std::string GenRandom(int64_t num_users, int64_t option_count,
                      const std::string& quadrant_mix, uint64_t seed,
                      int64_t capacity, const std::string& power,
                      int64_t denominator, int64_t max_value) {
  ckp::RandomSpec spec;
  spec.num_users = num_users;
  spec.option_count = option_count;
  spec.quadrant_mix = Param(quadrant_mix);
  spec.seed = seed;
  spec.capacity = capacity;
  spec.power_factor_bound = Param(power);
  spec.denominator = denominator;
  spec.max_value = max_value;
  return ckp::InstanceToJson(ckp::GenRandom(spec)).dump();
}

std::string GenSubSum(const std::vector<int64_t>& a, int64_t b,
                      const std::string& cot, const std::string& alpha) {
  const ckp::SubSumSpec spec{a, b, Param(cot), Param(alpha)};
  return ckp::InstanceToJson(ckp::GenSubSumReduction(spec)).dump();
}

}  // namespace

PYBIND11_MODULE(_ckp, m) {
  m.doc() = "Complex-demand knapsack solvers";
  py::register_exception<ckp::CkpError>(m, "CkpError", PyExc_ValueError);

  using release = py::call_guard<py::gil_scoped_release>;
  m.def("validate", &Validate, py::arg("instance"));
  m.def("instance_hash", &Hash, py::arg("instance"));
  m.def("fptas", &Fptas, py::arg("instance"), py::arg("eps"),
        py::arg("multi") = true, py::arg("full_grid") = false,
        py::arg("jobs") = 1, release());
  m.def("oracle", &Oracle, py::arg("instance"), py::arg("beta") = "1", release());
  m.def("ptas", &Ptas, py::arg("instance"), py::arg("c1"), py::arg("c2"),
        py::arg("eps"), release());
  m.def("mechanism", &Mechanism, py::arg("instance"), py::arg("eps"),
        py::arg("jobs") = 1, release());
  m.def("audit", &Audit, py::arg("instance"), py::arg("eps"),
        py::arg("trials"), py::arg("seed"), release());
  m.def("make_range", &Range, py::arg("capacity"), py::arg("num_users"),
        py::arg("eps"), py::arg("power_factor_bound"));
  m.def("gen_random", &GenRandom, py::arg("num_users"), py::arg("option_count"),
        py::arg("quadrant_mix"), py::arg("seed"), py::arg("capacity"),
        py::arg("power_factor_bound"), py::arg("denominator"),
        py::arg("max_value"));
  m.def("gen_subsum", &GenSubSum, py::arg("a"), py::arg("b"), py::arg("cot"),
        py::arg("alpha"));
}
