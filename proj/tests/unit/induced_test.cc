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

#include "polyfair/buckets.h"
#include "polyfair/distribution.h"
#include "polyfair/error.h"
#include "polyfair/induced.h"
#include "polyfair/polymatroid.h"
#include "polyfair_cli/fixtures.h"
#include "support/random_instances.h"

namespace polyfair {
namespace {

using Q = Rational;

Q R(const char* s) { return ParseScalar<Q>(s); }

TEST(InducedG, TiedTopBlock) {
  auto f = UniformTruncation<Q>(3, Q(1));
  auto g = InducedG<Q>(f, std::vector<Q>{2, 2, 1});
  EXPECT_EQ(g(Bit(0)), 2);
  EXPECT_EQ(g(Bit(2)), 0);
  EXPECT_EQ(g(Bit(0) | Bit(2)), 2);
  EXPECT_EQ(g(FullSet(3)), 2);
}

TEST(InducedG, LowerBlockBlocked) {
  auto g = InducedG<Q>(UniformTruncation<Q>(2, Q(1)), std::vector<Q>{3, 1});
  EXPECT_EQ(g(Bit(1)), 0);
}

TEST(InducedG, WorkedScenario) {
  auto g = InducedG<Q>(UniformTruncation<Q>(2, Q(1)), std::vector<Q>{2, 3});
  EXPECT_EQ(g(Bit(1)), 3);
  EXPECT_EQ(g(Bit(0)), 0);
  EXPECT_EQ(g(FullSet(2)), 3);
}

TEST(InducedG, RejectsNonpositiveValues) {
  EXPECT_THROW(InducedG<Q>(UniformTruncation<Q>(2, Q(1)), std::vector<Q>{0, 1}), Error);
}

TEST(InducedGHat, HigherBucketBlocksLower) {
  BucketScheme<Q> b(Q(8), Q(1));
  auto f = UniformTruncation<Q>(2, R("1.5"));
  std::vector<Q> mu = {Q(3), Q(5)};  // buckets [2,4) and [4,8)
  auto low = InducedGHat<Q>(f, mu, b, 1);
  EXPECT_EQ(low(Bit(0)), 1);
  auto high = InducedGHat<Q>(f, mu, b, 2);
  EXPECT_EQ(high(Bit(1)), 4);
  EXPECT_EQ(high(Bit(0)), 0);
  EXPECT_EQ(InducedGHat<Q>(f, mu, b, 0)(FullSet(2)), 0);
}

std::vector<WeightedVector<Q>> WorkedScenarios() {
  return {{R("0.5"), {Q(2), Q(3)}}, {R("0.5"), {Q(2), Q(1)}}};
}

TEST(ExpectedInduced, WorkedInstance) {
  auto g = ExpectedInduced<Q>(UniformTruncation<Q>(2, Q(1)), WorkedScenarios());
  EXPECT_EQ(g(Bit(0)), 1);
  EXPECT_EQ(g(Bit(1)), R("1.5"));
  EXPECT_EQ(g(FullSet(2)), R("2.5"));
}

TEST(ExpectedInduced, CombineOfScenarioRanksAgrees) {
  auto f = UniformTruncation<Q>(2, Q(1));
  auto g = Combine<Q>({InducedG<Q>(f, std::vector<Q>{2, 3}), InducedG<Q>(f, std::vector<Q>{2, 1})},
                      {R("0.5"), R("0.5")});
  EXPECT_EQ(g(Bit(0)), 1);
  EXPECT_EQ(g(Bit(1)), R("1.5"));
  EXPECT_EQ(g(FullSet(2)), R("2.5"));
}

TEST(ExpectedInduced, SingleAndDuplicatedScenarios) {
  auto f = UniformTruncation<Q>(3, Q(2));
  std::vector<Q> v = {3, 1, 2};
  auto single = InducedG<Q>(f, v);
  auto one = ExpectedInduced<Q>(f, {{Q(1), v}});
  auto two = ExpectedInduced<Q>(f, {{R("0.5"), v}, {R("0.5"), v}});
  for (Subset s = 0; s < 8; ++s) {
    EXPECT_EQ(one(s), single(s));
    EXPECT_EQ(two(s), single(s));
  }
}

TEST(ExpectedInduced, RejectsBadProbabilities) {
  try {
    ExpectedInduced<Q>(UniformTruncation<Q>(2, Q(1)), {{R("0.5"), {Q(1), Q(1)}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidDistribution);
  }
}

TEST(VerifyBaseEqualsUtilities, Certified) {
  EXPECT_TRUE(VerifyBaseEqualsUtilities<Q>(UniformTruncation<Q>(3, Q(1)), std::vector<Q>{2, 2, 1}).ok);
  auto c = VerifyBaseEqualsUtilities<Q>(UniformTruncation<Q>(2, R("1.5")), std::vector<Q>{2, 2});
  EXPECT_TRUE(c.ok);
  std::vector<std::vector<Q>> expected = {{Q(1), Q(2)}, {Q(2), Q(1)}};
  auto got = c.utility_vectors;
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, expected);
}

TEST(CertifyUtilitySet, GroupHullFails) {
  Q N = 1;
  for (int k = 0; k < 7; ++k) N *= 3;
  auto points = cli::GroupPoints<Q>(3, N);
  auto g = SaturationFunction<Q>(6, points);
  EXPECT_FALSE(CertifyUtilitySet(g, points).ok);
}

TEST(CertifyUtilitySet, HexagonCutFails) {
  auto g = cli::HexagonRank<Q>();
  auto cut = cli::HexagonUtilitySet<Q>();
  auto sat = SaturationFunction<Q>(3, cut);
  for (Subset s = 0; s < 8; ++s) EXPECT_EQ(sat(s), g(s));
  auto cert = CertifyUtilitySet(g, cut);
  EXPECT_FALSE(cert.ok);
  ASSERT_TRUE(cert.failing_vertex.has_value());
  EXPECT_EQ(*cert.failing_vertex, (std::vector<Q>{1, R("0.6"), R("0.9")}));
}

// Exact receiver utilities span B(g) on random small instances.
TEST(VerifyBaseEqualsUtilities, RandomInstances) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    int n = testing::Uniform(rng, 1, 4);
    auto f = testing::RandomRank<Q>(n, testing::kFamilies[trial % 4], rng);
    std::vector<Q> v(n);
    for (Q& x : v) x = testing::Uniform(rng, 1, 3);
    auto c = VerifyBaseEqualsUtilities<Q>(f, v);
    EXPECT_TRUE(c.ok) << c.reason;
  }
}

TEST(Buckets, Examples) {
  BucketScheme<Q> b(Q(16), Q(1));
  EXPECT_EQ(b.K(), 4);
  EXPECT_EQ(b.eta(), 2);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(b.canonical(k), Q(1 << k));
  EXPECT_TRUE(b.interval(3).hi_closed);
  EXPECT_EQ(b.BucketOf(Q(16)), 3);
  EXPECT_EQ(b.BucketOf(Q(2)), 1);

  BucketScheme<Q> ten(Q(10), Q(1));
  EXPECT_EQ(ten.K(), 4);
  EXPECT_EQ(ten.interval(3).lo, 8);
  EXPECT_EQ(ten.interval(3).hi, 10);

  BucketScheme<Q> one(Q(1), Q(1));
  EXPECT_EQ(one.K(), 1);
  EXPECT_EQ(one.canonical(0), 1);
  EXPECT_EQ(one.BucketOf(Q(1)), 0);
}

TEST(Buckets, RejectsBadArguments) {
  EXPECT_THROW(BucketScheme<Q>(R("0.5"), Q(1)), Error);
  EXPECT_THROW(BucketScheme<Q>(Q(4), Q(0)), Error);
  BucketScheme<Q> b(Q(4), Q(1));
  EXPECT_THROW(b.BucketOf(Q(5)), Error);
}

TEST(Buckets, CanonicalWithinFactor) {
  BucketScheme<double> b(100.0, 0.5);
  for (double mu = 1; mu <= 100; mu += 0.37) {
    double m = b.Canonical(mu);
    EXPECT_LE(m, mu);
    EXPECT_LT(mu, 1.5 * m + 1e-12);
  }
}

}  // namespace
}  // namespace polyfair
