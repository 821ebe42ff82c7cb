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

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <fstream>
#include <iostream>

#include "polyfair_cli/commands.h"

namespace {

using polyfair::cli::CommandResult;
using polyfair::cli::Format;

int Emit(const CommandResult& r, const std::string& out) {
  if (!r.message.empty()) std::cerr << r.message << "\n";
  if (r.output.empty()) return r.exit_code;
  if (out.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << out << "\n";
      return polyfair::cli::kExitUsage;
    }
    file << r.output;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorized signaling policies under polymatroid constraints"};
  app.set_version_flag("--version", polyfair::cli::Version());
  app.require_subcommand(1);

  std::string out;
  std::string format = "json";
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out, "Write the report here instead of stdout");
    cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto fmt = [&] { return format == "csv" ? Format::kCsv : Format::kJson; };

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("instance", validate_path)->required();
  common(validate);

  polyfair::cli::SolveArgs solve_args;
  solve_args.threads = polyfair::cli::DefaultThreads();
  double delta = 0;
  std::uint64_t seed = 0;
  std::int64_t max_scenarios = 0;
  auto* solve = app.add_subcommand("solve", "Compute a majorized policy");
  solve->add_option("instance", solve_args.path)->required();
  solve->add_option("--mode", solve_args.mode)->check(CLI::IsMember({"full", "general"}));
  solve->add_option("--solver", solve_args.solver)->check(CLI::IsMember({"auto", "exact", "mwu"}));
  auto* delta_opt = solve->add_option("--delta", delta, "Additive accuracy")->check(CLI::PositiveNumber);
  auto* seed_opt = solve->add_option("--seed", seed);
  auto* cap_opt = solve->add_option("--max-scenarios", max_scenarios)->check(CLI::PositiveNumber);
  solve->add_option("--config", solve_args.config, "Solver config JSON")->check(CLI::ExistingFile);
  solve->add_option("--numeric", solve_args.numeric)->check(CLI::IsMember({"float64", "rational"}));
  solve->add_option("--threads", solve_args.threads, "Worker threads (default: POLYFAIR_THREADS or 1)")
      ->check(CLI::Range(1, 1024));
  common(solve);

  polyfair::cli::EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a policy");
  evaluate->add_option("instance", eval_args.path)->required();
  evaluate->add_option("--policy", eval_args.policy)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--mode", eval_args.mode)->check(CLI::IsMember({"exact", "mc"}));
  evaluate->add_option("--samples", eval_args.samples)->check(CLI::Range(2, 1 << 30));
  evaluate->add_option("--seed", eval_args.seed);
  evaluate->add_option("--numeric", eval_args.numeric)->check(CLI::IsMember({"float64", "rational"}));
  common(evaluate);

  polyfair::cli::ReproduceArgs rep_args;
  auto* reproduce = app.add_subcommand("reproduce", "Run a regression fixture");
  reproduce->add_option("fixture", rep_args.fixture)->required()->check(CLI::IsMember({"a", "b", "c"}));
  reproduce->add_option("--n", rep_args.n)->check(CLI::Range(1, 100000));
  reproduce->add_option("--q", rep_args.q, "Fixture a: long-shot probability");
  reproduce->add_option("--M", rep_args.M, "Fixture b: scale");
  common(reproduce);

  std::string diff_a, diff_b;
  double tolerance = 0;
  auto* diff = app.add_subcommand("report-diff", "Compare two reports");
  diff->add_option("a", diff_a)->required()->check(CLI::ExistingFile);
  diff->add_option("b", diff_b)->required()->check(CLI::ExistingFile);
  diff->add_option("--tolerance", tolerance)->check(CLI::NonNegativeNumber);
  common(diff);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : polyfair::cli::kExitUsage;
  }

  if (*validate) return Emit(polyfair::cli::RunValidate(validate_path, fmt()), out);
  if (*solve) {
    if (*delta_opt) solve_args.delta = delta;
    if (*seed_opt) solve_args.seed = seed;
    if (*cap_opt) solve_args.max_scenarios = max_scenarios;
    solve_args.format = fmt();
    return Emit(polyfair::cli::RunSolve(solve_args), out);
  }
  if (*evaluate) {
    eval_args.format = fmt();
    return Emit(polyfair::cli::RunEvaluate(eval_args), out);
  }
  if (*reproduce) return Emit(polyfair::cli::RunReproduce(rep_args), out);
  if (*diff) return Emit(polyfair::cli::RunReportDiff(diff_a, diff_b, tolerance), out);
  return polyfair::cli::kExitUsage;
}
