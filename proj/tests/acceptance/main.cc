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

// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polyfair/general.h"
#include "polyfair/induced.h"
#include "polyfair/majorization.h"
#include "polyfair/mwu.h"
#include "polyfair/polymatroid.h"
#include "polyfair_cli/commands.h"
#include "polyfair_cli/fixtures.h"
#include "support/random_instances.h"

namespace polyfair {
namespace {

using Q = Rational;
using testing::Rng;
using testing::Uniform;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure message; later ones only bump the count.
class Tally {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Outcome Done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failures, first: " + first_};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

std::vector<Q> ForcedTieValues(int n, Rng& rng) {
  std::vector<Q> v(n);
  for (Q& x : v) x = Uniform(rng, 1, 4);
  if (n >= 2) {
    int a = Uniform(rng, 0, n - 1);
    int b = (a + Uniform(rng, 1, n - 1)) % n;
    v[b] = v[a];
  }
  return v;
}

Outcome BaseEqualsUtilities() {
  Rng rng(101);
  Tally t;
  for (int trial = 0; trial < 200; ++trial) {
    int n = Uniform(rng, 1, 5);
    auto f = testing::RandomRank<Q>(n, testing::kFamilies[trial % 4], rng);
    auto v = ForcedTieValues(n, rng);
    auto c = VerifyBaseEqualsUtilities<Q>(f, v);
    t.Expect(c.ok, "instance " + std::to_string(trial) + ": " + c.reason);
  }
  return t.Done("200 instances certified");
}

Outcome InducedRanksSubmodular() {
  Rng rng(102);
  Tally t;
  BucketScheme<Q> buckets(Q(8), Q(1));
  for (int trial = 0; trial < 100; ++trial) {
    int n = Uniform(rng, 1, 8);
    auto f = testing::RandomRank<Q>(n, testing::kFamilies[trial % 4], rng);
    auto draw = [&] {
      std::vector<Q> v(n);
      for (Q& x : v) x = Q(Uniform(rng, 4, 32), 4);
      return v;
    };
    std::string id = "instance " + std::to_string(trial);
    t.Expect(CheckSubmodularMonotone(InducedG<Q>(f, draw())).ok(), id + " induced_g");
    int k = Uniform(rng, 0, buckets.K() - 1);
    t.Expect(CheckSubmodularMonotone(InducedGHat<Q>(f, draw(), buckets, k)).ok(), id + " induced_g_hat");
    int s = Uniform(rng, 1, 4);
    auto p = testing::RandomProbabilities<Q>(s, rng);
    std::vector<WeightedVector<Q>> scenarios;
    for (int i = 0; i < s; ++i) scenarios.push_back({p[i], draw()});
    t.Expect(CheckSubmodularMonotone(ExpectedInduced<Q>(f, scenarios)).ok(), id + " expected_induced");
  }
  return t.Done("300 ranks checked exhaustively");
}

Outcome LeastPointMajorizesVertices() {
  Rng rng(103);
  Tally t;
  for (int trial = 0; trial < 100; ++trial) {
    int n = Uniform(rng, 1, 6);
    auto g = testing::RandomRank<Q>(n, testing::kFamilies[trial % 4], rng);
    auto q = PrefixSums<Q>(LeastMajorizedBasePoint(g));
    for (const auto& vertex : BaseVertices(g)) {
      auto qv = PrefixSums<Q>(vertex);
      for (int j = 0; j < n; ++j) {
        t.Expect(q[j] >= qv[j], "instance " + std::to_string(trial) + " j=" + std::to_string(j + 1));
      }
    }
  }
  return t.Done("100 ranks, all greedy vertices dominated");
}

Outcome MwuMatchesExact() {
  Rng rng(104);
  Tally t;
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    int n = Uniform(rng, 1, 4);
    int V = Uniform(rng, 2, 4);
    auto f = testing::RandomRank<Q>(n, testing::kFamilies[trial % 4], rng);
    std::vector<ValueDist<Q>> dists;
    std::int64_t count = 0;
    do {
      dists.clear();
      count = 1;
      for (int i = 0; i < n; ++i) {
        dists.push_back(testing::RandomDist<Q>(V, 3, rng));
        count *= dists.back().size();
      }
    } while (count > 16);
    auto ranks = FullRevelationRanks(f, EnumerateScenarios(dists));
    auto dranks = ToDoubleRanks(ranks);
    for (int j = 1; j <= n; ++j) {
      double exact = ToDouble(SolvePrefixLpExact(ranks, j).opt);
      double approx = BinarySearchOpt(dranks, j).opt;
      worst = std::max(worst, std::abs(exact - approx));
      t.Expect(std::abs(exact - approx) <= 0.05,
               "instance " + std::to_string(trial) + " j=" + std::to_string(j));
    }
  }
  std::ostringstream s;
  s << "max gap " << worst;
  return t.Done(s.str());
}

Outcome FromReproduction(const cli::Reproduction& r) {
  Tally t;
  for (const auto& c : r.checks) t.Expect(c.pass, c.name + " = " + c.value + ", expected " + c.expected);
  std::string summary;
  for (const auto& c : r.checks) {
    std::string v = c.value.size() > 16 ? c.value.substr(0, 16) + "..." : c.value;
    summary += (summary.empty() ? "" : "; ") + c.name + "=" + v;
  }
  return t.Done(summary);
}

Outcome MaximalMappingsDominate() {
  Rng rng(108);
  Tally t;
  for (int trial = 0; trial < 50; ++trial) {
    int n = Uniform(rng, 1, 4);
    int V = Uniform(rng, 2, 8);
    auto f = testing::RandomRank<Q>(n, testing::kFamilies[trial % 4], rng);
    std::vector<ValueDist<Q>> dists;
    for (int i = 0; i < n; ++i) dists.push_back(testing::RandomDist<Q>(V, 3, rng));
    BucketScheme<Q> buckets(Q(V), Q(1));
    for (int k = 0; k < buckets.K(); ++k) {
      auto iv = buckets.interval(k);
      std::vector<SideProbabilities<Q>> best;
      for (const auto& d : dists) best.push_back(Sides(d, MaximalMapping(d, iv), iv));
      auto gmax = ExpectedBucketRank(f, best, buckets.canonical(k));
      for (int r = 0; r < 200; ++r) {
        std::vector<SideProbabilities<Q>> rival;
        for (const auto& d : dists) rival.push_back(Sides(d, testing::RandomMapping(d, 3, rng), iv));
        auto g = ExpectedBucketRank(f, rival, buckets.canonical(k));
        for (Subset s = 0; s <= FullSet(n); ++s) {
          t.Expect(gmax(s) >= g(s), "instance " + std::to_string(trial) + " bucket " +
                                        std::to_string(k) + " set " + std::to_string(s));
        }
      }
    }
  }
  return t.Done("50 instances, 200 rivals per bucket");
}

// Utilities here are valued at canonical bucket means on both sides, and the
// rivals face the same bucketing receiver.
Outcome GeneralDominatesRivals() {
  Rng rng(109);
  Tally t;
  std::string ks;
  double slack = 1e9;
  for (int trial = 0; trial < 20; ++trial) {
    int n = Uniform(rng, 1, 4);
    int V = Uniform(rng, 2, 8);
    auto f = testing::RandomRank<Q>(n, testing::kFamilies[trial % 4], rng);
    std::vector<ValueDist<Q>> dists;
    for (int i = 0; i < n; ++i) dists.push_back(testing::RandomDist<Q>(V, 3, rng));
    BucketScheme<Q> buckets(Q(V), Q(1));
    auto sol = GeneralSolve(f, dists, buckets);
    std::string id = "instance " + std::to_string(trial);
    int expected_k = static_cast<int>(std::ceil(std::log2(V)));
    t.Expect(sol.K == expected_k, id + " K=" + std::to_string(sol.K));
    t.Expect(sol.evaluated, id + " not evaluated");
    ks += (ks.empty() ? "" : ",") + std::to_string(sol.K);
    auto q = PrefixSums<Q>(sol.canonical);
    std::vector<Policy<Q>> rivals = {NoRevelationPolicy(dists, ReceiverKind::kCanonical),
                                     FullRevelationPolicy(dists, ReceiverKind::kCanonical)};
    for (int r = 0; r < 200; ++r) {
      rivals.push_back(testing::RandomPolicy(dists, rng));
      rivals.back().receiver = ReceiverKind::kCanonical;
    }
    for (size_t r = 0; r < rivals.size(); ++r) {
      auto qr = PrefixSums<Q>(EvaluatePolicy(f, dists, rivals[r], &buckets).canonical);
      for (int j = 0; j < n; ++j) {
        Q bound = qr[j] / sol.K - Q(1, 10);
        slack = std::min(slack, ToDouble(Q(q[j] - bound)));
        t.Expect(q[j] >= bound, id + " rival " + std::to_string(r) + " j=" + std::to_string(j + 1));
      }
    }
  }
  std::ostringstream s;
  s << "20 instances, 202 rivals each, K=" << ks << ", min slack " << slack;
  return t.Done(s.str());
}

Outcome Deterministic() {
  Rng rng(110);
  Tally t;
  auto dir = std::filesystem::temp_directory_path();
  // A random four-agent instance alongside the checked-in example.
  std::string path = (dir / "polyfair_acceptance_instance.json").string();
  {
    std::ofstream out(path);
    out << R"({"V": 8, "epsilon": 1, "agents": [)";
    for (int i = 0; i < 4; ++i) {
      auto d = testing::RandomDist<Q>(8, 3, rng);
      out << (i ? "," : "") << R"({"dist": [)";
      for (int s = 0; s < d.size(); ++s) {
        out << (s ? "," : "") << "[" << d.values[s].get_str() << ", \"" << d.probs[s].get_str() << "\"]";
      }
      out << "]}";
    }
    out << R"(], "constraint": {"type": "uniform_truncation", "c": 2}})";
  }
  std::vector<std::string> paths = {std::string(POLYFAIR_TEST_DATA) + "/worked.json", path};
  int reports = 0;
  for (const auto& p : paths) {
    for (const char* mode : {"full", "general"}) {
      for (const char* solver : {"exact", "mwu"}) {
        cli::SolveArgs args;
        args.path = p;
        args.mode = mode;
        args.solver = solver;
        args.seed = 17;
        std::string first;
        for (int threads : {1, 4}) {
          for (int run = 0; run < 3; ++run) {
            args.threads = threads;
            auto r = cli::RunSolve(args);
            t.Expect(r.exit_code == 0, p + " " + mode + " " + solver + ": " + r.message);
            if (first.empty()) first = r.output;
            t.Expect(r.output == first, p + " " + mode + " " + solver + " threads=" +
                                            std::to_string(threads) + " run " + std::to_string(run));
          }
        }
        ++reports;
      }
    }
  }
  return t.Done(std::to_string(reports) + " configurations x 3 runs x threads {1,4} identical");
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace polyfair

int main() {
  using namespace polyfair;
  std::vector<Criterion> criteria = {
      {1, "base polytope equals receiver utilities", 120, BaseEqualsUtilities},
      {2, "induced ranks are submodular", 120, InducedRanksSubmodular},
      {3, "least majorized point dominates greedy vertices", 60, LeastPointMajorizesVertices},
      {4, "binary search matches exact prefix LP", 600, MwuMatchesExact},
      {5, "low-welfare example (n=100, q=1/10)", 600, [] { return FromReproduction(cli::ReproduceA(100, "1/10")); }},
      {6, "nested utility vectors need alpha >= 3.2", 600, [] { return FromReproduction(cli::ReproduceB(4, "64")); }},
      {7, "hexagon and group examples", 600, [] { return FromReproduction(cli::ReproduceC()); }},
      {8, "maximal mappings dominate rival mappings", 600, MaximalMappingsDominate},
      {9, "general solve K-majorizes rival policies", 900, GeneralDominatesRivals},
      {10, "solve reports are deterministic", 600, Deterministic},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      out.pass = false;
      out.detail += " (over time budget)";
    }
    failures += !out.pass;
    std::printf("criterion %2d %s: %s [%.1fs] %s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
