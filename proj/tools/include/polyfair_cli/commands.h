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

// Command implementations behind the polyfair executable. Each command
// returns its exit code and the text to emit; nothing here touches stdout.

#ifndef POLYFAIR_CLI_COMMANDS_H_
#define POLYFAIR_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

namespace polyfair::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Format { kJson, kCsv };

struct CommandResult {
  int exit_code = kExitPass;
  std::string output;  // report text
  std::string message;  // diagnostics for stderr
};

CommandResult RunValidate(const std::string& path, Format format = Format::kJson);

struct SolveArgs {
  std::string path;
  std::string mode = "full";      // full | general
  std::string solver;             // auto | exact | mwu; empty means config or auto
  std::optional<double> delta;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> max_scenarios;
  std::string config;             // optional solver config JSON
  std::string numeric;            // float64 | rational; empty means instance or float64
  int threads = 1;
  Format format = Format::kJson;
};

CommandResult RunSolve(const SolveArgs& args);

struct EvaluateArgs {
  std::string path;
  std::string policy;
  std::string mode = "exact";  // exact | mc
  int samples = 100000;
  std::uint64_t seed = 1;
  std::string numeric;
  Format format = Format::kJson;
};

CommandResult RunEvaluate(const EvaluateArgs& args);

struct ReproduceArgs {
  std::string fixture;   // a | b | c
  int n = 0;             // 0 picks the fixture default
  std::string q = "1/10";
  std::string M = "64";
};

CommandResult RunReproduce(const ReproduceArgs& args);

// Exit 0 when the reports agree (numbers within tolerance), 1 otherwise.
CommandResult RunReportDiff(const std::string& a, const std::string& b, double tolerance = 0);

// Default worker count: POLYFAIR_THREADS when set and valid, else 1.
int DefaultThreads();

std::string Version();

}  // namespace polyfair::cli

#endif  // POLYFAIR_CLI_COMMANDS_H_
