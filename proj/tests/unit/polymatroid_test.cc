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

#include <gtest/gtest.h>

#include "polyfair/error.h"
#include "polyfair/induced.h"
#include "polyfair/lp.h"
#include "polyfair/polymatroid.h"
#include "polyfair/set_function.h"
#include "polyfair_cli/fixtures.h"
#include "support/random_instances.h"

namespace polyfair {
namespace {

using Q = Rational;

Q R(const char* s) { return ParseScalar<Q>(s); }

SetFunction<Q> Table2(const char* a, const char* b, const char* ab) {
  return ExplicitTable<Q>(2, {Q(0), R(a), R(b), R(ab)}, TableCheck::kNone);
}

TEST(SetFunction, UniformTruncation) {
  auto f = UniformTruncation<Q>(3, Q(1));
  EXPECT_EQ(f(0b011), 1);
  EXPECT_EQ(f(0), 0);
  EXPECT_TRUE(f.IsSymmetric());
  EXPECT_EQ(f.EvalCount(3), 1);
}

TEST(SetFunction, ExplicitTable) {
  auto f = ExplicitTable<Q>(2, {Q(0), Q(1), Q(1), R("1.5")});
  EXPECT_EQ(f(0b11), R("1.5"));
}

TEST(SetFunction, ExplicitTableRejectsNonSubmodular) {
  try {
    ExplicitTable<Q>(2, {Q(0), Q(1), Q(1), R("2.5")});
    FAIL() << "expected a rank error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRank);
  }
}

TEST(SetFunction, RejectsOutOfRangeSubset) {
  auto f = UniformTruncation<Q>(2, Q(1));
  try {
    f(0b100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedSubset);
  }
}

TEST(SetFunction, LinearCombination) {
  auto f1 = UniformTruncation<Q>(2, Q(1));
  auto f2 = UniformTruncation<Q>(2, Q(2));
  auto g = Combine<Q>({f1, f2}, {R("0.5"), R("0.5")});
  EXPECT_EQ(g(0b11), R("1.5"));
}

TEST(SetFunction, CombineScalesAndAverages) {
  auto f = UniformTruncation<Q>(3, Q(1));
  auto twice = Combine<Q>({f}, {Q(2)});
  auto same = Combine<Q>({f, f}, {R("0.5"), R("0.5")});
  for (Subset s = 0; s < 8; ++s) {
    EXPECT_EQ(twice(s), 2 * f(s));
    EXPECT_EQ(same(s), f(s));
  }
}

TEST(SetFunction, CombineRejectsMismatchAndNegative) {
  auto f2 = UniformTruncation<Q>(2, Q(1));
  auto f3 = UniformTruncation<Q>(3, Q(1));
  EXPECT_THROW(Combine<Q>({f2, f3}, {Q(1), Q(1)}), Error);
  EXPECT_THROW(Combine<Q>({f2}, {Q(-1)}), Error);
}

TEST(SetFunction, PartitionCaps) {
  auto f = PartitionCaps<Q>(3, {{0, 1}, {2}}, {Q(1), Q(1)}, std::nullopt);
  EXPECT_EQ(f(0b011), 1);
  EXPECT_EQ(f(0b111), 2);
  EXPECT_TRUE(CheckSubmodularMonotone(f).ok());
}

TEST(CheckSubmodularMonotone, MatroidRankIsValid) {
  EXPECT_TRUE(CheckSubmodularMonotone(UniformTruncation<Q>(4, Q(1))).ok());
}

TEST(CheckSubmodularMonotone, ReportsViolatingPair) {
  ValidationReport r = CheckSubmodularMonotone(Table2("1", "1", "2.5"));
  ASSERT_FALSE(r.ok());
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().kind, Violation::Kind::kNotSubmodular);
  EXPECT_EQ(r.violations.front().a, Bit(0));
  EXPECT_EQ(r.violations.front().b, Bit(1));
}

TEST(CheckSubmodularMonotone, ReportsMonotonicityAndEmptySet) {
  auto bad = ExplicitTable<Q>(2, {Q(1), Q(2), Q(0), Q(2)}, TableCheck::kNone);
  ValidationReport r = CheckSubmodularMonotone(bad);
  bool empty = false, monotone = false;
  for (const auto& v : r.violations) {
    empty |= v.kind == Violation::Kind::kEmptyNonzero;
    monotone |= v.kind == Violation::Kind::kNotMonotone;
  }
  EXPECT_TRUE(empty);
  EXPECT_TRUE(monotone);
}

// The saturation of the nested-vector hull is max over the top coordinate
// in S, which is submodular; certification still fails because B(g) is
// larger than the hull.
TEST(CheckSubmodularMonotone, NestedVectorSaturation) {
  auto points = cli::NestedPoints<Q>(3, Q(27));
  auto g = SaturationFunction<Q>(3, points);
  EXPECT_TRUE(CheckSubmodularMonotone(g).ok());
  EXPECT_FALSE(CertifyUtilitySet(g, points).ok);
}

TEST(CheckSubmodularMonotone, SampledAboveExhaustiveLimit) {
  CheckOptions opts;
  opts.exhaustive_limit = 4;
  opts.samples = 2000;
  auto f = UniformTruncation<Q>(6, Q(2));
  ValidationReport r = CheckSubmodularMonotone(f, opts);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_TRUE(r.ok());
}

TEST(GreedyAllocation, Examples) {
  EXPECT_EQ(GreedyAllocation<Q>(UniformTruncation<Q>(3, Q(1)), std::vector<int>{0, 1, 2}),
            (std::vector<Q>{1, 0, 0}));
  EXPECT_EQ(GreedyAllocation<Q>(UniformTruncation<Q>(2, R("1.5")), std::vector<int>{1, 0}),
            (std::vector<Q>{R("0.5"), 1}));
  EXPECT_EQ(GreedyAllocation<Q>(cli::HexagonRank<Q>(), std::vector<int>{0, 1, 2}),
            (std::vector<Q>{1, R("0.9"), R("0.6")}));
}

TEST(GreedyAllocation, RejectsBadPermutation) {
  auto f = UniformTruncation<Q>(3, Q(1));
  try {
    GreedyAllocation<Q>(f, std::vector<int>{0, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPermutation);
  }
}

TEST(GreedyMaxLinear, Examples) {
  auto f = UniformTruncation<Q>(3, Q(1));
  std::vector<int> id = {0, 1, 2};
  EXPECT_EQ(GreedyMaxLinear<Q>(f, std::vector<Q>{3, 2, 1}, id), (std::vector<Q>{1, 0, 0}));
  EXPECT_EQ(GreedyMaxLinear<Q>(f, std::vector<Q>{2, 2, 1}, std::vector<int>{1, 0, 2}),
            (std::vector<Q>{0, 1, 0}));
  auto g = UniformTruncation<Q>(2, R("1.5"));
  EXPECT_EQ(GreedyMaxLinear<Q>(g, std::vector<Q>{5, 1}, std::vector<int>{0, 1}),
            (std::vector<Q>{1, R("0.5")}));
}

TEST(GreedyMaxLinear, ZeroWeightsGetNothingAndNegativeThrows) {
  auto f = UniformTruncation<Q>(2, Q(2));
  std::vector<int> id = {0, 1};
  EXPECT_EQ(GreedyMaxLinear<Q>(f, std::vector<Q>{1, 0}, id), (std::vector<Q>{1, 0}));
  EXPECT_THROW(GreedyMaxLinear<Q>(f, std::vector<Q>{1, -1}, id), Error);
}

TEST(Membership, Examples) {
  auto h = cli::HexagonRank<Q>();
  EXPECT_EQ(Membership<Q>(h, std::vector<Q>{1, R("0.6"), R("0.9")}).status, MembershipStatus::kBase);
  auto f = UniformTruncation<Q>(3, Q(1));
  auto out = Membership<Q>(f, std::vector<Q>{R("0.5"), R("0.5"), R("0.5")});
  EXPECT_EQ(out.status, MembershipStatus::kOutside);
  EXPECT_EQ(out.witness, FullSet(3));
  EXPECT_EQ(Membership<Q>(f, std::vector<Q>{R("0.5"), R("0.5"), 0}).status, MembershipStatus::kBase);
  EXPECT_EQ(Membership<Q>(f, std::vector<Q>{R("0.25"), 0, 0}).status, MembershipStatus::kIndependent);
}

TEST(MinimizeOverSubsets, RatioExample) {
  auto g = Table2("1", "2", "2.5");
  auto m = MinimizeOverSubsets<Q>([&](Subset s) -> Q { return g(s) / Cardinality(s); }, FullSet(2));
  EXPECT_EQ(m.set, Bit(0));
  EXPECT_EQ(m.value, 1);
}

TEST(MinimizeOverSubsets, TiesGoToLargestThenLastSet) {
  auto m = MinimizeOverSubsets<Q>([](Subset s) { return Q(Cardinality(s)); }, FullSet(3));
  EXPECT_EQ(m.set, Bit(2));
  auto f = UniformTruncation<Q>(3, Q(1));
  auto m2 = MinimizeOverSubsets<Q>([&](Subset s) -> Q { return f(s) - Q(Cardinality(s)); }, FullSet(3));
  EXPECT_EQ(m2.set, FullSet(3));
  EXPECT_EQ(m2.value, -2);
}

TEST(MinimizeOverSubsets, EmptyDomainThrows) {
  try {
    MinimizeOverSubsets<Q>([](Subset) { return Q(0); }, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyDomain);
  }
}

TEST(BaseVertices, HexagonHasSixVertices) {
  EXPECT_EQ(BaseVertices(cli::HexagonRank<Q>()).size(), 6u);
}

// Random ranks from every family pass the axiom check, and the double and
// rational backends agree on greedy vertices.
TEST(RandomRanks, AreRanksInBothBackends) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = testing::Uniform(rng, 1, 5);
    auto family = testing::kFamilies[trial % 4];
    testing::Rng copy = rng;
    auto fq = testing::RandomRank<Q>(n, family, rng);
    auto fd = testing::RandomRank<double>(n, family, copy);
    ASSERT_TRUE(CheckSubmodularMonotone(fq).ok()) << fq.Describe();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto xq = GreedyAllocation<Q>(fq, order);
    auto xd = GreedyAllocation<double>(fd, order);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(ToDouble(xq[i]), xd[i], 1e-12);
  }
}

TEST(LinearProgram, SmallOptimum) {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6.
  LinearProgram<Q> lp(2);
  lp.SetObjective(0, Q(1));
  lp.SetObjective(1, Q(1));
  lp.AddRow({{0, Q(1)}, {1, Q(2)}}, Sense::kLe, Q(4));
  lp.AddRow({{0, Q(3)}, {1, Q(1)}}, Sense::kLe, Q(6));
  auto sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.value, R("2.8"));
  EXPECT_EQ(sol.x[0], R("1.6"));
}

TEST(LinearProgram, InfeasibleAndUnbounded) {
  LinearProgram<double> a(1);
  a.AddRow({{0, 1.0}}, Sense::kGe, 2.0);
  a.AddRow({{0, 1.0}}, Sense::kLe, 1.0);
  EXPECT_EQ(SolveLp(a).status, LpStatus::kInfeasible);
  LinearProgram<double> b(1);
  b.SetObjective(0, 1.0);
  b.AddRow({{0, 1.0}}, Sense::kGe, 1.0);
  EXPECT_EQ(SolveLp(b).status, LpStatus::kUnbounded);
}

TEST(LinearProgram, RedundantEqualities) {
  LinearProgram<Q> lp(2);
  lp.SetObjective(0, Q(1));
  lp.AddRow({{0, Q(1)}, {1, Q(1)}}, Sense::kEq, Q(1));
  lp.AddRow({{0, Q(2)}, {1, Q(2)}}, Sense::kEq, Q(2));
  auto sol = SolveLp(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_EQ(sol.value, 1);
}

}  // namespace
}  // namespace polyfair
