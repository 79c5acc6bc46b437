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

// ckp: solve, price, generate and audit complex-demand knapsack instances.
//
// Exit codes: 0 success, 2 input error, 3 resource cap, 4 internal failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ckp/error.h"
#include "ckp/fptas.h"
#include "ckp/instances.h"
#include "ckp/mechanism.h"
#include "ckp/model_json.h"
#include "ckp/oracle.h"
#include "ckp/ptas_range.h"
#include "json.hpp"

namespace {

using ckp::CkpError;
using ckp::ErrorCode;
using ckp::Rational;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

int ExitCodeFor(ErrorCode code) {
  switch (ckp::FamilyOf(code)) {
    case ckp::ErrorFamily::kInput: return kExitInput;
    case ckp::ErrorFamily::kResourceCap: return kExitCap;
    case ckp::ErrorFamily::kInternal: return kExitInternal;
  }
  return kExitInternal;
}

Rational ParseParam(const std::string& text, const std::string& name) {
  try {
    return ckp::ParseRational(text);
  } catch (const CkpError&) {
    throw CkpError(ErrorCode::kInvalidParams,
                   "--" + name + " expects a rational, got '" + text + "'");
  }
}

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::string ApproxSqrt(const Rational& value) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << std::sqrt(static_cast<double>(value));
  return out.str();
}

void FlattenInto(const json& node, const std::string& prefix,
                 std::vector<std::pair<std::string, std::string>>& rows) {
  if (node.is_object()) {
    for (const auto& item : node.items()) {
      FlattenInto(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(),
                  rows);
    }
  } else if (node.is_array()) {
    for (size_t i = 0; i < node.size(); ++i) {
      FlattenInto(node[i], prefix + "[" + std::to_string(i) + "]", rows);
    }
  } else {
    rows.emplace_back(prefix, node.is_string() ? node.get<std::string>() : node.dump());
  }
}

std::string ToCsv(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  FlattenInto(report, "", rows);
  size_t width = 3;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "key" << " , value\n";
  for (const auto& [key, value] : rows) {
    out << std::setw(static_cast<int>(width)) << key << " , " << value << "\n";
  }
  return out.str();
}

void Emit(const json& report, const std::string& format) {
  if (format == "csv") {
    std::cout << ToCsv(report);
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

void StripTimings(json& node) {
  if (node.is_object()) {
    node.erase("wall_seconds");
    node.erase("timings");
    for (auto& item : node.items()) StripTimings(item.value());
  } else if (node.is_array()) {
    for (auto& item : node) StripTimings(item);
  }
}

// Writes the run manifest into $CKP_MANIFEST_DIR (or --manifest-dir).
void SaveManifest(const json& report, const std::string& dir_flag) {
  std::string dir = dir_flag;
  if (dir.empty()) {
    if (const char* env = std::getenv("CKP_MANIFEST_DIR")) dir = env;
  }
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const std::string name = report.value("command", std::string("run")) + "-" +
                           report.value("instance_hash", std::string("none")) + ".json";
  std::ofstream out(std::filesystem::path(dir) / name);
  out << report.dump(2) << "\n";
}

struct SolveArgs {
  std::string path;
  std::string solver = "multifptas";
  std::string eps = "1/2";
  std::string beta = "1";
  std::string box;
  bool verify = false;
  int jobs = 1;
};

json RunSolve(const SolveArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const ckp::Instance instance = ckp::ValidateInstance(ckp::ReadInstance(args.path));
  const Rational eps = ParseParam(args.eps, "eps");
  const Rational beta = ParseParam(args.beta, "beta");
  json report = {
      {"command", "solve"},
      {"instance", args.path},
      {"instance_hash", ckp::InstanceHash(instance)},
      {"params",
       {{"solver", args.solver},
        {"eps", ckp::FormatRational(eps)},
        {"beta", ckp::FormatRational(beta)},
        {"box", args.box},
        {"verify", args.verify}}},
  };
  json result;
  Rational value;
  std::optional<bool> verified;
  if (args.solver == "bifptas" || args.solver == "multifptas") {
    ckp::FptasOptions options;
    options.jobs = args.jobs;
    const ckp::SolverResult r = args.solver == "bifptas"
                                    ? ckp::CkpBiFptas(instance, eps, options)
                                    : ckp::MultiCkpFptas(instance, eps, options);
    result = ckp::SolverResultToJson(r);
    value = r.allocation.total_value;
    const Rational factor2 =
        ckp::ViolationFactorSquared(r.allocation.total_load, instance.capacity);
    result["value"] = ckp::FormatRational(value);
    result["load"] = ckp::ComplexToJson(r.allocation.total_load);
    result["violation_factor"] = ApproxSqrt(factor2);
    result["violation_within_bound"] =
        factor2 <= r.violation_bound * r.violation_bound;
    if (args.verify) {
      const ckp::OracleResult o = ckp::BruteForceMulti(instance, 1);
      result["verify"] = {{"oracle_value", ckp::FormatRational(o.opt_value)},
                          {"value_at_least_oracle", value >= o.opt_value}};
      verified = value >= o.opt_value && factor2 <= r.violation_bound * r.violation_bound;
    }
  } else if (args.solver == "oracle") {
    const ckp::OracleResult o = instance.IsSingleMinded()
                                    ? ckp::BruteForceCkp(instance, beta)
                                    : ckp::BruteForceMulti(instance, beta);
    value = o.opt_value;
    const Rational factor2 =
        ckp::ViolationFactorSquared(o.witness.total_load, instance.capacity);
    result = {{"allocation", ckp::AllocationToJson(o.witness)},
              {"value", ckp::FormatRational(value)},
              {"load", ckp::ComplexToJson(o.witness.total_load)},
              {"violation_factor", ApproxSqrt(factor2)},
              {"violation_within_bound", factor2 <= beta * beta},
              {"nodes_explored", o.nodes_explored}};
  } else if (args.solver == "ptas") {
    const auto parts = SplitCommas(args.box);
    if (parts.size() != 2) {
      throw CkpError(ErrorCode::kInvalidParams, "--box expects c1,c2");
    }
    const ckp::BoxInstance box = ckp::BoxFromComplex(
        instance, ParseParam(parts[0], "box"), ParseParam(parts[1], "box"));
    const ckp::PtasResult r = ckp::MultiMdkpPtas(box, eps);
    value = r.allocation.total_value;
    result = ckp::PtasResultToJson(r);
    result["value"] = ckp::FormatRational(value);
    result["within_box"] = ckp::BoxLeq(r.allocation.total_load, box.capacity);
    if (args.verify) {
      const ckp::BoxOracleResult o = ckp::BruteForceBox(box);
      const bool ok = value >= (1 - eps) * o.opt_value;
      result["verify"] = {{"oracle_value", ckp::FormatRational(o.opt_value)},
                          {"value_at_least_1_minus_eps_oracle", ok}};
      verified = ok;
    }
  } else {
    throw CkpError(ErrorCode::kInvalidParams, "unknown solver '" + args.solver + "'");
  }
  report["result"] = result;
  report["timings"] = {
      {"wall_seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  if (verified.has_value() && !*verified) {
    Emit(report, "json");
    throw CkpError(ErrorCode::kInternalInconsistency,
                   "verification against the oracle failed");
  }
  return report;
}

json RunMechanismCmd(const std::string& path, const std::string& eps_text, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  const ckp::Instance instance = ckp::ReadInstance(path);
  const Rational eps = ParseParam(eps_text, "eps");
  ckp::MechanismOptions options;
  options.jobs = jobs;
  const ckp::MechanismOutcome outcome = ckp::RunMechanism(instance, eps, options);
  json report = {
      {"command", "mechanism"},
      {"instance", path},
      {"instance_hash", ckp::InstanceHash(instance)},
      {"params", {{"eps", ckp::FormatRational(eps)}}},
      {"result", ckp::MechanismOutcomeToJson(outcome)},
  };
  report["result"]["value"] = ckp::FormatRational(outcome.result.allocation.total_value);
  report["timings"] = {
      {"wall_seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  return report;
}

json RunAudit(const std::string& path, const std::string& eps_text, int64_t trials,
              uint64_t seed, bool records) {
  const auto start = std::chrono::steady_clock::now();
  if (trials < 0) throw CkpError(ErrorCode::kInvalidParams, "--trials must be >= 0");
  const ckp::Instance instance = ckp::ReadInstance(path);
  const Rational eps = ParseParam(eps_text, "eps");
  const ckp::AuditReport audit = ckp::AuditTruthfulness(instance, eps, trials, seed);
  json result = ckp::AuditReportToJson(audit);
  if (!records) result.erase("records");
  json report = {
      {"command", "audit"},
      {"instance", path},
      {"instance_hash", ckp::InstanceHash(instance)},
      {"params", {{"eps", ckp::FormatRational(eps)}, {"trials", trials}, {"seed", seed}}},
      {"result", result},
  };
  report["timings"] = {
      {"wall_seconds",
       std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  return report;
}

struct GenArgs {
  std::string family;
  std::string out;
  std::string index;
  std::string a = "1,2,3";
  int64_t b = 3;
  std::string cot = "1";
  std::string alpha = "1/2";
  int64_t n = 5;
  int64_t options = 2;
  std::string mix = "0";
  uint64_t seed = 1;
  int64_t capacity = 10;
  std::string power = "2";
};

json RunGen(const GenArgs& args) {
  ckp::Instance instance;
  json params;
  if (args.family == "subsum") {
    ckp::SubSumSpec spec;
    for (const auto& part : SplitCommas(args.a)) {
      try {
        spec.a.push_back(std::stoll(part));
      } catch (const std::exception&) {
        throw CkpError(ErrorCode::kInvalidParams, "--a expects integers");
      }
    }
    spec.b = args.b;
    spec.cot_theta = ParseParam(args.cot, "cot");
    spec.alpha = ParseParam(args.alpha, "alpha");
    instance = ckp::GenSubSumReduction(spec);
    params = ckp::SubSumSpecToJson(spec);
    params["subset_sum_feasible"] = ckp::SubSumFeasible(spec);
    params["question"] = "does a subset of a sum to b";
  } else if (args.family == "random") {
    ckp::RandomSpec spec;
    spec.num_users = args.n;
    spec.option_count = args.options;
    spec.quadrant_mix = ParseParam(args.mix, "mix");
    spec.seed = args.seed;
    spec.capacity = args.capacity;
    spec.power_factor_bound = ParseParam(args.power, "power");
    instance = ckp::GenRandom(spec);
    params = {{"n", spec.num_users},
              {"options", spec.option_count},
              {"mix", ckp::FormatRational(spec.quadrant_mix)},
              {"seed", spec.seed},
              {"capacity", spec.capacity},
              {"power", ckp::FormatRational(spec.power_factor_bound)}};
  } else {
    throw CkpError(ErrorCode::kInvalidParams, "unknown family '" + args.family + "'");
  }
  const std::string hash = ckp::InstanceHash(instance);
  json report = {{"command", "gen"},
                 {"family", args.family},
                 {"params", params},
                 {"instance_hash", hash},
                 {"num_users", instance.num_users()}};
  if (args.out.empty()) {
    report["instance"] = ckp::InstanceToJson(instance);
  } else {
    ckp::WriteInstance(instance, args.out);
    report["out"] = args.out;
    std::ofstream manifest(args.out + ".manifest.json");
    manifest << report.dump(2) << "\n";
  }
  if (!args.index.empty()) {
    const bool fresh = !std::filesystem::exists(args.index);
    std::string csv = ckp::CorpusIndexCsv(
        {{args.out, args.family, params.dump(), hash,
          static_cast<int64_t>(instance.num_users())}});
    if (!fresh) csv = csv.substr(csv.find('\n') + 1);
    std::ofstream index(args.index, std::ios::app);
    index << csv;
  }
  return report;
}

int Replay(const std::string& manifest_path, const std::string& format) {
  std::ifstream in(manifest_path);
  if (!in) throw CkpError(ErrorCode::kParseError, "cannot open " + manifest_path);
  json manifest;
  try {
    manifest = json::parse(in);
  } catch (const json::parse_error&) {
    throw CkpError(ErrorCode::kParseError, manifest_path + ": malformed JSON");
  }
  const std::string command = manifest.value("command", "");
  json rerun;
  if (command == "solve") {
    SolveArgs args;
    args.path = manifest.at("instance");
    const auto& p = manifest.at("params");
    args.solver = p.at("solver");
    args.eps = p.at("eps");
    args.beta = p.at("beta");
    args.box = p.at("box");
    args.verify = p.at("verify");
    rerun = RunSolve(args);
  } else if (command == "mechanism") {
    rerun = RunMechanismCmd(manifest.at("instance"), manifest.at("params").at("eps"), 1);
  } else {
    throw CkpError(ErrorCode::kInvalidParams, "cannot replay command '" + command + "'");
  }
  json a = manifest, b = rerun;
  StripTimings(a);
  StripTimings(b);
  const bool same = a == b;
  Emit({{"command", "replay"}, {"manifest", manifest_path}, {"identical", same}}, format);
  return same ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex-demand knapsack solvers and truthful mechanism"};
  app.require_subcommand(1);
  std::string format = "json";
  std::string manifest_dir;
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--manifest-dir", manifest_dir,
                 "Directory for run manifests (default $CKP_MANIFEST_DIR)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("instance", solve.path, "Instance JSON file")->required();
  solve_cmd->add_option("--solver", solve.solver)
      ->check(CLI::IsMember({"bifptas", "multifptas", "ptas", "oracle"}));
  solve_cmd->add_option("--eps", solve.eps, "Accuracy, rational in (0, 1]");
  solve_cmd->add_option("--beta", solve.beta, "Oracle capacity factor");
  solve_cmd->add_option("--box", solve.box, "Box capacities c1,c2 for --solver ptas");
  solve_cmd->add_flag("--verify", solve.verify, "Compare against the exact oracle");
  solve_cmd->add_option("--jobs", solve.jobs)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string mech_path, mech_eps = "1/2";
  int mech_jobs = 1;
  auto* mech_cmd = app.add_subcommand("mechanism", "Allocate and price truthfully");
  mech_cmd->add_option("instance", mech_path)->required();
  mech_cmd->add_option("--eps", mech_eps);
  mech_cmd->add_option("--jobs", mech_jobs)->check(CLI::PositiveNumber);
  mech_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--family", gen.family)->required()
      ->check(CLI::IsMember({"subsum", "random"}));
  gen_cmd->add_option("--out", gen.out, "Output file (stdout report when absent)");
  gen_cmd->add_option("--index", gen.index, "CSV corpus index to append to");
  gen_cmd->add_option("--a", gen.a, "subsum: comma-separated items");
  gen_cmd->add_option("--b", gen.b, "subsum: target");
  gen_cmd->add_option("--cot", gen.cot, "subsum: cot(theta)");
  gen_cmd->add_option("--alpha", gen.alpha, "subsum: alpha");
  gen_cmd->add_option("--n", gen.n, "random: users");
  gen_cmd->add_option("--options", gen.options, "random: options per bid");
  gen_cmd->add_option("--mix", gen.mix, "random: second-quadrant share");
  gen_cmd->add_option("--seed", gen.seed, "random: seed");
  gen_cmd->add_option("--capacity", gen.capacity, "random: capacity");
  gen_cmd->add_option("--power", gen.power, "random: power factor bound");
  gen_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string audit_path, audit_eps = "1/2";
  int64_t trials = 100;
  uint64_t seed = 1;
  bool records = false;
  auto* audit_cmd = app.add_subcommand("audit", "Misreport audit of the mechanism");
  audit_cmd->add_option("instance", audit_path)->required();
  audit_cmd->add_option("--trials", trials);
  audit_cmd->add_option("--seed", seed);
  audit_cmd->add_option("--eps", audit_eps);
  audit_cmd->add_flag("--records", records, "Include every trial in the report");
  audit_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a saved manifest and compare");
  replay_cmd->add_option("manifest", replay_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    json report;
    if (*solve_cmd) {
      report = RunSolve(solve);
    } else if (*mech_cmd) {
      report = RunMechanismCmd(mech_path, mech_eps, mech_jobs);
    } else if (*gen_cmd) {
      report = RunGen(gen);
    } else if (*audit_cmd) {
      report = RunAudit(audit_path, audit_eps, trials, seed, records);
    } else if (*replay_cmd) {
      return Replay(replay_path, format);
    }
    if (!*gen_cmd) SaveManifest(report, manifest_dir);
    Emit(report, format);
    return kExitOk;
  } catch (const CkpError& e) {
    std::cerr << "ckp: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const json::exception& e) {
    std::cerr << "ckp: malformed manifest: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "ckp: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
