// Copyright 2026 The polyfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polyfair_cli/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "polyfair/error.h"
#include "polyfair/general.h"
#include "polyfair/io.h"
#include "polyfair/majorization.h"
#include "polyfair/polymatroid.h"
#include "polyfair_cli/fixtures.h"

#ifndef POLYFAIR_VERSION
#define POLYFAIR_VERSION "0.0.0"
#endif

namespace polyfair::cli {

std::string Version() { return POLYFAIR_VERSION; }

int DefaultThreads() {
  const char* env = std::getenv("POLYFAIR_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 1024) return 1;
  return static_cast<int>(v);
}

namespace {

std::string Hint(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kCapExceeded:
      // Agent counts are bounded by the subset bitmask; no flag lifts that.
      if (e.detail().find("agents") != std::string::npos) return "hint: shrink the instance";
      return "hint: try --solver mwu, raise --max-scenarios, or shrink the instance";
    case ErrorCode::kPolicyMismatch:
      return "hint: the policy needs one mapping per agent and one table row per support value";
    case ErrorCode::kInvalidDistribution:
      return "hint: run `polyfair validate` for the full list of problems";
    default:
      return "";
  }
}

// Runs body and maps failures onto the exit-code contract.
template <class Fn>
CommandResult Guard(Fn body) {
  try {
    return body();
  } catch (const Error& e) {
    CommandResult r;
    r.exit_code = e.code() == ErrorCode::kParse ? kExitUsage : kExitCheckFailed;
    r.message = std::string("error: ") + e.what();
    std::string hint = Hint(e);
    if (!hint.empty()) r.message += "\n" + hint;
    return r;
  } catch (const Json::exception& e) {
    return {kExitUsage, "", std::string("error: ") + e.what()};
  }
}

bool UseRational(const std::string& flag, const RawInstance& raw) {
  std::string choice = !flag.empty() ? flag : !raw.numeric.empty() ? raw.numeric : "float64";
  if (choice == "rational") return true;
  if (choice == "float64") return false;
  throw Error(ErrorCode::kParse, "numeric must be \"float64\" or \"rational\", got \"" + choice + "\"");
}

template <class T>
Json RatioJson(const Ratio<T>& r) {
  if (r.unbounded) return {{"unbounded", true}, {"value", nullptr}};
  return {{"unbounded", false}, {"value", ToDouble(r.value)}};
}

template <class T>
std::optional<Evaluation<T>> TryEvaluate(const Instance<T>& inst, const Policy<T>& policy,
                                         const BucketScheme<T>* buckets) {
  try {
    return EvaluatePolicy(inst.f, inst.dists, policy, buckets);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kCapExceeded) throw;
    return std::nullopt;
  }
}

// Baseline comparisons shared by solve and evaluate. alpha[name] is the
// factor by which the candidate must be scaled to majorize the baseline.
template <class T>
void AddBaselines(Json& report, const Instance<T>& inst, const std::vector<T>& utilities,
                  bool with_full) {
  std::vector<std::pair<std::string, Policy<T>>> baselines;
  baselines.emplace_back("no_revelation", NoRevelationPolicy(inst.dists));
  if (with_full) baselines.emplace_back("full_revelation", FullRevelationPolicy(inst.dists));
  Json alpha = Json::object();
  Json base = Json::object();
  for (const auto& [name, policy] : baselines) {
    auto ev = TryEvaluate<T>(inst, policy, nullptr);
    if (!ev) {
      alpha[name] = nullptr;
      base[name] = nullptr;
      continue;
    }
    alpha[name] = RatioJson(MajorizationRatio<T>(utilities, {ev->utilities}));
    base[name] = {{"utilities", VectorToJson(ev->utilities)},
                  {"prefix_sums", VectorToJson(PrefixSums<T>(ev->utilities))}};
    if (name == "no_revelation") {
      report["self_check"] = {
          {"no_revelation_vs_itself", RatioJson(MajorizationRatio<T>(ev->utilities, {ev->utilities}))}};
    }
  }
  report["alpha"] = alpha;
  report["baselines"] = base;
}

template <class T>
void AddUtilities(Json& report, const std::vector<T>& utilities) {
  report["utilities"] = VectorToJson(utilities);
  report["prefix_sums"] = VectorToJson(PrefixSums<T>(utilities));
  T welfare = 0;
  for (const T& u : utilities) welfare += u;
  report["welfare"] = ToDouble(welfare);
  report["min_utility"] = ToDouble(*std::min_element(utilities.begin(), utilities.end()));
  if constexpr (kIsExact<T>) {
    report["exact"]["utilities"] = ExactVectorToJson(utilities);
    report["exact"]["welfare"] = ScalarToString(welfare);
  }
}

std::string Csv(const Json& report) {
  std::ostringstream out;
  out << "agent,utility,fake_utility,prefix_sum\n";
  const Json& u = report["utilities"];
  for (size_t i = 0; i < u.size(); ++i) {
    out << i << ',' << u[i].dump() << ',';
    if (report.contains("fake_utilities")) out << report["fake_utilities"][i].dump();
    out << ',' << report["prefix_sums"][i].dump() << '\n';
  }
  return out.str();
}

std::string Render(const Json& report, Format format) {
  return format == Format::kCsv ? Csv(report) : CanonicalDump(report);
}

template <class T>
CommandResult SolveImpl(const SolveArgs& args, const RawInstance& raw) {
  Instance<T> inst = BuildInstance<T>(raw);
  SolveOptions options;
  options.mwu.threads = std::max(1, args.threads);
  std::string solver = "auto";
  if (!args.config.empty()) {
    Json cfg;
    try {
      cfg = Json::parse(ReadFile(args.config));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParse, args.config + ": invalid JSON: " + e.what());
    }
    if (cfg.contains("delta")) options.mwu.delta = ParseJsonScalar<double>(cfg["delta"], "config.delta");
    if (cfg.contains("seed")) options.seed = cfg["seed"].get<std::uint64_t>();
    if (cfg.contains("mode")) solver = cfg["mode"].get<std::string>();
    if (cfg.contains("max_scenarios")) options.max_scenarios = cfg["max_scenarios"].get<std::int64_t>();
    if (cfg.contains("samples")) options.samples = cfg["samples"].get<int>();
  }
  if (args.delta) options.mwu.delta = *args.delta;
  if (args.seed) options.seed = *args.seed;
  if (args.max_scenarios) options.max_scenarios = *args.max_scenarios;
  if (!args.solver.empty()) solver = args.solver;
  if (!(options.mwu.delta > 0)) throw Error(ErrorCode::kParse, "delta must be positive");
  if (solver == "auto") {
    options.solver = SolverKind::kAuto;
  } else if (solver == "exact") {
    options.solver = SolverKind::kExact;
  } else if (solver == "mwu") {
    options.solver = SolverKind::kMwu;
  } else {
    throw Error(ErrorCode::kParse, "solver must be auto, exact or mwu, got \"" + solver + "\"");
  }

  Solution<T> sol;
  if (args.mode == "full") {
    sol = SolveFull(inst.f, inst.dists, options);
  } else if (args.mode == "general") {
    BucketScheme<T> buckets(inst.V, inst.epsilon);
    sol = GeneralSolve(inst.f, inst.dists, buckets, options);
  } else {
    throw Error(ErrorCode::kParse, "mode must be full or general, got \"" + args.mode + "\"");
  }

  Json report;
  report["command"] = "solve";
  report["version"] = Version();
  report["mode"] = args.mode;
  report["numeric"] = Num<T>::kName;
  report["seed"] = options.seed;
  report["delta"] = options.mwu.delta;
  report["solver"] = sol.solver;
  report["n"] = inst.n();
  report["K"] = sol.K;
  AddUtilities(report, sol.utilities);
  if (sol.has_fake) {
    report["fake_utilities"] = VectorToJson(sol.fake);
    report["fake_prefix_sums"] = VectorToJson(PrefixSums<T>(sol.fake));
    report["canonical_utilities"] = VectorToJson(sol.canonical);
  }
  report["target"] = VectorToJson(sol.target);
  report["opt"] = VectorToJson(sol.opt);
  if constexpr (kIsExact<T>) {
    report["exact"]["target"] = ExactVectorToJson(sol.target);
    report["exact"]["opt"] = ExactVectorToJson(sol.opt);
    if (sol.has_fake) report["exact"]["fake_utilities"] = ExactVectorToJson(sol.fake);
  }
  report["diagnostics"] = {{"scenarios", sol.scenarios},
                           {"sampled", sol.sampled},
                           {"evaluated", sol.evaluated},
                           {"iterations", sol.iterations},
                           {"search_steps", sol.search_steps},
                           {"profiles", sol.profiles},
                           {"boundary_posteriors", sol.boundary_posteriors}};
  AddBaselines(report, inst, sol.utilities, true);
  report["policy"] = PolicyToJson(sol.policy);
  CommandResult r;
  r.output = Render(report, args.format);
  return r;
}

template <class T>
CommandResult EvaluateImpl(const EvaluateArgs& args, const RawInstance& raw) {
  Instance<T> inst = BuildInstance<T>(raw);
  Json pj;
  try {
    pj = Json::parse(ReadFile(args.policy));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, args.policy + ": invalid JSON: " + e.what());
  }
  // Solve reports embed their policy; accept those directly.
  if (pj.contains("policy") && pj["policy"].is_object()) pj = pj["policy"];
  Policy<T> policy = ParsePolicy<T>(pj, inst);
  BucketScheme<T> buckets(inst.V, inst.epsilon);
  EvalOptions opts;
  if (args.mode == "exact") {
    opts.mode = EvalMode::kExact;
  } else if (args.mode == "mc") {
    if constexpr (kIsExact<T>) {
      throw Error(ErrorCode::kParse, "Monte Carlo evaluation needs --numeric float64");
    }
    opts.mode = EvalMode::kMonteCarlo;
  } else {
    throw Error(ErrorCode::kParse, "mode must be exact or mc, got \"" + args.mode + "\"");
  }
  opts.samples = args.samples;
  opts.seed = args.seed;
  Evaluation<T> ev = EvaluatePolicy(inst.f, inst.dists, policy, &buckets, opts);

  Json report;
  report["command"] = "evaluate";
  report["version"] = Version();
  report["mode"] = args.mode;
  report["numeric"] = Num<T>::kName;
  report["seed"] = args.seed;
  report["n"] = inst.n();
  report["K"] = buckets.K();
  AddUtilities(report, ev.utilities);
  report["canonical_utilities"] = VectorToJson(ev.canonical);
  if (ev.has_fake) {
    report["fake_utilities"] = VectorToJson(ev.fake);
    if constexpr (kIsExact<T>) report["exact"]["fake_utilities"] = ExactVectorToJson(ev.fake);
  }
  if (opts.mode == EvalMode::kMonteCarlo) {
    report["std_errors"] = ev.std_errors;
    report["samples"] = args.samples;
  }
  report["diagnostics"] = {{"profiles", ev.profiles},
                           {"boundary_posteriors", ev.boundary_posteriors},
                           {"class_counts", ev.used_symmetry}};
  AddBaselines(report, inst, ev.utilities, false);
  CommandResult r;
  r.output = Render(report, args.format);
  return r;
}

void Diff(const Json& a, const Json& b, const std::string& path, double tol,
          std::vector<std::string>& out) {
  if (a.is_number() && b.is_number()) {
    double x = a.get<double>(), y = b.get<double>();
    bool same = tol > 0 ? std::abs(x - y) <= tol : a == b;
    if (!same) out.push_back(path);
    return;
  }
  if (a.type() != b.type()) {
    out.push_back(path);
    return;
  }
  if (a.is_object()) {
    for (const auto& [k, v] : a.items()) {
      if (!b.contains(k)) {
        out.push_back(path + "/" + k);
      } else {
        Diff(v, b[k], path + "/" + k, tol, out);
      }
    }
    for (const auto& [k, v] : b.items()) {
      if (!a.contains(k)) out.push_back(path + "/" + k);
    }
  } else if (a.is_array()) {
    if (a.size() != b.size()) {
      out.push_back(path);
      return;
    }
    for (size_t i = 0; i < a.size(); ++i) Diff(a[i], b[i], path + "/" + std::to_string(i), tol, out);
  } else if (a != b) {
    out.push_back(path);
  }
}

}  // namespace

CommandResult RunValidate(const std::string& path, Format format) {
  return Guard([&] {
    RawInstance raw = LoadRawInstance(path);
    bool rational = UseRational("", raw);
    Json issues = Json::array();
    auto issue = [&](const std::string& kind, const std::string& where, const std::string& message) {
      issues.push_back({{"kind", kind}, {"where", where}, {"message", message}});
    };
    auto check = [&]<class T>(T) {
      T V = 1;
      try {
        V = ParseScalar<T>(raw.V);
        if (V < 1) issue("range", "V", "V must be at least 1");
        if (!(ParseScalar<T>(raw.epsilon) > 0)) issue("range", "epsilon", "epsilon must be positive");
      } catch (const Error& e) {
        issue("parse", "V/epsilon", e.what());
      }
      for (size_t i = 0; i < raw.agents.size(); ++i) {
        std::string where = "agents[" + std::to_string(i) + "].dist";
        try {
          BuildDist<T>(raw.agents[i], V, where);
        } catch (const Error& e) {
          issue(e.code() == ErrorCode::kParse ? "parse" : "distribution", where, e.what());
        }
      }
      Json violations = Json::array();
      bool exhaustive = true;
      try {
        SetFunction<T> f = BuildConstraint<T>(raw.constraint, static_cast<int>(raw.agents.size()),
                                              TableCheck::kNone);
        ValidationReport vr = CheckSubmodularMonotone(f);
        exhaustive = vr.exhaustive;
        for (const auto& v : vr.violations) {
          violations.push_back({{"kind", ViolationKindName(v.kind)},
                                {"a", SubsetToString(v.a)},
                                {"b", SubsetToString(v.b)}});
        }
        if (vr.violation_count > 0) {
          issue("rank", "constraint", std::to_string(vr.violation_count) + " rank axiom violations");
        }
      } catch (const Error& e) {
        issue(e.code() == ErrorCode::kParse ? "parse" : "rank", "constraint", e.what());
      }
      Json report;
      report["command"] = "validate";
      report["version"] = Version();
      report["numeric"] = Num<T>::kName;
      report["n"] = raw.agents.size();
      report["issues"] = issues;
      report["violations"] = violations;
      report["exhaustive"] = exhaustive;
      report["ok"] = issues.empty();
      return report;
    };
    Json report = rational ? check(Rational()) : check(0.0);
    CommandResult r;
    r.exit_code = report["ok"].get<bool>() ? kExitPass : kExitCheckFailed;
    if (format == Format::kCsv) {
      std::ostringstream out;
      out << "kind,where,message\n";
      for (const auto& i : report["issues"]) {
        out << i["kind"].get<std::string>() << ',' << i["where"].get<std::string>() << ",\""
            << i["message"].get<std::string>() << "\"\n";
      }
      r.output = out.str();
    } else {
      r.output = CanonicalDump(report);
    }
    return r;
  });
}

CommandResult RunSolve(const SolveArgs& args) {
  return Guard([&] {
    RawInstance raw = LoadRawInstance(args.path);
    return UseRational(args.numeric, raw) ? SolveImpl<Rational>(args, raw)
                                          : SolveImpl<double>(args, raw);
  });
}

CommandResult RunEvaluate(const EvaluateArgs& args) {
  return Guard([&] {
    RawInstance raw = LoadRawInstance(args.path);
    return UseRational(args.numeric, raw) ? EvaluateImpl<Rational>(args, raw)
                                          : EvaluateImpl<double>(args, raw);
  });
}

CommandResult RunReproduce(const ReproduceArgs& args) {
  return Guard([&] {
    Reproduction rep;
    if (args.fixture == "a") {
      rep = ReproduceA(args.n > 0 ? args.n : 100, args.q);
    } else if (args.fixture == "b") {
      rep = ReproduceB(args.n > 0 ? args.n : 4, args.M);
    } else if (args.fixture == "c") {
      rep = ReproduceC();
    } else {
      throw Error(ErrorCode::kParse, "reproduce expects a, b or c");
    }
    rep.report["command"] = "reproduce";
    rep.report["version"] = Version();
    rep.report["pass"] = rep.ok();
    CommandResult r;
    r.exit_code = rep.ok() ? kExitPass : kExitCheckFailed;
    r.output = CanonicalDump(rep.report);
    return r;
  });
}

CommandResult RunReportDiff(const std::string& a, const std::string& b, double tolerance) {
  return Guard([&] {
    Json ja, jb;
    try {
      ja = Json::parse(ReadFile(a));
      jb = Json::parse(ReadFile(b));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
    }
    std::vector<std::string> diffs;
    Diff(ja, jb, "", tolerance, diffs);
    Json report = {{"command", "report-diff"}, {"equal", diffs.empty()}, {"differences", diffs}};
    CommandResult r;
    r.exit_code = diffs.empty() ? kExitPass : kExitCheckFailed;
    r.output = CanonicalDump(report);
    return r;
  });
}

}  // namespace polyfair::cli
