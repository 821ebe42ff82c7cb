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

#include <cmath>

#include "polyfair/distribution.h"
#include "polyfair/error.h"
#include "polyfair/io.h"
#include "polyfair/mapping.h"
#include "polyfair/policy.h"
#include "polyfair_cli/fixtures.h"
#include "support/random_instances.h"

namespace polyfair {
namespace {

using Q = Rational;

Q R(const char* s) { return ParseScalar<Q>(s); }

ValueDist<Q> Dist(const char* p1, const char* p4) {
  return MakeValueDist<Q>({{Q(1), R(p1)}, {Q(4), R(p4)}}, Q(8));
}

Q BayesGap(const ValueDist<Q>& d, const AgentMapping<Q>& m) {
  Q total = 0;
  for (const auto& o : SignalOutcomes(d, m)) {
    if (o.prob != 0) total += o.prob * o.posterior;
  }
  return total - d.Mean();
}

TEST(ValueDist, RejectsInvalidSupport) {
  EXPECT_THROW(MakeValueDist<Q>({{Q(1), R("0.5")}}), Error);
  EXPECT_THROW(MakeValueDist<Q>({{Q(3), R("0.5")}, {Q(3), R("0.5")}}), Error);
  EXPECT_THROW(MakeValueDist<Q>({{R("0.5"), Q(1)}}), Error);
  EXPECT_THROW(MakeValueDist<Q>({{Q(5), Q(1)}}, Q(4)), Error);
  EXPECT_EQ(Dist("0.5", "0.5").Mean(), R("2.5"));
}

TEST(Posterior, LongShotSignals) {
  auto inst = cli::LongShotInstance<Q>(100, R("0.1"));
  auto policy = cli::LongShotDesignedPolicy(inst, 100, R("0.1"));
  auto out = SignalOutcomes(inst.dists[1], policy.components[0].mappings[1]);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].posterior, R("1.8") / R("0.99"));
  EXPECT_EQ(out[1].posterior, 10);
  std::vector<int> sigma(101, 0);
  sigma[2] = 1;
  auto mu = PosteriorProfile(inst.dists, policy.components[0].mappings, sigma);
  EXPECT_EQ(mu[0], R("1.9"));
  EXPECT_EQ(mu[1], R("1.8") / R("0.99"));
  EXPECT_EQ(mu[2], 10);
}

TEST(Posterior, FullRevelationReturnsValues) {
  auto d = Dist("0.25", "0.75");
  auto out = SignalOutcomes(d, FullRevelationMapping(d));
  EXPECT_EQ(out[0].posterior, 1);
  EXPECT_EQ(out[1].posterior, 4);
}

TEST(Posterior, ZeroProbabilitySignalThrows) {
  auto d = Dist("0.5", "0.5");
  AgentMapping<Q> m{{"a", "b"}, {{Q(1), Q(0)}, {Q(1), Q(0)}}};
  std::vector<int> sigma = {1};
  EXPECT_THROW(PosteriorProfile<Q>({d}, {m}, sigma), Error);
}

TEST(MaximalMapping, Examples) {
  auto d = Dist("0.5", "0.5");
  BucketScheme<Q> b(Q(8), Q(1));
  EXPECT_EQ(InIntervalProbability(d, MaximalMapping(d, b.interval(1)), b.interval(1)), 1);
  EXPECT_EQ(InIntervalProbability(d, MaximalMapping(d, b.interval(2)), b.interval(2)), R("0.5"));
  Interval<Q> closed{Q(1), Q(2), true};
  auto m = MaximalMapping(d, closed);
  EXPECT_EQ(InIntervalProbability(d, m, closed), R("0.75"));
  EXPECT_EQ(BayesGap(d, m), 0);
}

TEST(MaximalMapping, BeatsRandomMappings) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = testing::RandomDist<Q>(16, 5, rng);
    BucketScheme<Q> b(Q(16), Q(1));
    for (int k = 0; k < b.K(); ++k) {
      auto iv = b.interval(k);
      auto best = MaximalMapping(d, iv);
      Q p = InIntervalProbability(d, best, iv);
      auto sides = Sides(d, best, iv);
      EXPECT_TRUE(sides.below == 0 || sides.above == 0);
      EXPECT_EQ(BayesGap(d, best), 0);
      for (int r = 0; r < 50; ++r) {
        auto rival = testing::RandomMapping(d, 4, rng);
        EXPECT_LE(InIntervalProbability(d, rival, iv), p);
      }
    }
  }
}

TEST(PoolOneSided, Examples) {
  Interval<Q> iv{Q(2), Q(4), false};
  auto even = Dist("0.5", "0.5");
  auto pooled = PoolOneSided(even, FullRevelationMapping(even), iv);
  EXPECT_EQ(InIntervalProbability(even, pooled, iv), 1);

  auto skew = Dist("0.75", "0.25");
  auto p2 = PoolOneSided(skew, FullRevelationMapping(skew), iv);
  EXPECT_EQ(InIntervalProbability(skew, p2, iv), R("0.5"));
  auto s = Sides(skew, p2, iv);
  EXPECT_EQ(s.above, 0);
  EXPECT_EQ(s.below, R("0.5"));
  EXPECT_EQ(BayesGap(skew, p2), 0);

  auto already = PoolOneSided(even, NoRevelationMapping(even), iv);
  EXPECT_EQ(InIntervalProbability(even, already, iv), 1);
}

TEST(PoolOneSided, RandomInputs) {
  testing::Rng rng(9);
  BucketScheme<Q> b(Q(16), Q(1));
  for (int trial = 0; trial < 200; ++trial) {
    auto d = testing::RandomDist<Q>(16, 5, rng);
    auto m = testing::RandomMapping(d, 4, rng);
    auto iv = b.interval(testing::Uniform(rng, 0, b.K() - 1));
    auto pooled = PoolOneSided(d, m, iv);
    auto s = Sides(d, pooled, iv);
    EXPECT_TRUE(s.below == 0 || s.above == 0);
    EXPECT_GE(s.in, InIntervalProbability(d, m, iv));
    EXPECT_EQ(BayesGap(d, pooled), 0);
  }
}

TEST(Scenarios, Enumerate) {
  std::vector<ValueDist<Q>> dists = {MakeValueDist<Q>({{Q(2), Q(1)}}),
                                     MakeValueDist<Q>({{Q(1), R("0.5")}, {Q(3), R("0.5")}})};
  auto s = EnumerateScenarios(dists);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].p, R("0.5"));
  EXPECT_EQ(s[1].p, R("0.5"));
  EXPECT_THROW(EnumerateScenarios(dists, 1), Error);
}

TEST(Scenarios, SampledFrequencyAndDeterminism) {
  const int n = 100;
  auto inst = cli::LongShotInstance<double>(n, 0.01);
  auto a = SampleScenarios(inst.dists, 100000, 42);
  auto b = SampleScenarios(inst.dists, 100000, 42);
  int all_low = 0;
  for (size_t s = 0; s < a.size(); ++s) {
    ASSERT_EQ(a[s].v, b[s].v);
    bool low = true;
    for (int i = 1; i <= n; ++i) low = low && a[s].v[i] == 1.0;
    all_low += low;
  }
  double freq = static_cast<double>(all_low) / a.size();
  EXPECT_NEAR(freq, std::pow(0.99, n), 0.006);
}

TEST(Receiver, CanonicalAndTies) {
  auto f = UniformTruncation<Q>(2, Q(1));
  BucketScheme<Q> b(Q(8), Q(1));
  std::vector<int> order = {0, 1};
  EXPECT_EQ(ReceiverAllocate<Q>(f, std::vector<Q>{3, 5}, &b, order), (std::vector<Q>{0, 1}));
  EXPECT_EQ(ReceiverAllocate<Q>(f, std::vector<Q>{2, 3}, &b, order), (std::vector<Q>{1, 0}));
  EXPECT_THROW(ReceiverAllocate<Q>(f, std::vector<Q>{9, 3}, &b, order), Error);
}

TEST(Receiver, ExactModeUsesRawPosteriors) {
  int n = 4;
  auto f = UniformTruncation<Q>(n, Q(1));
  std::vector<Q> mu(n, R("1.8") / R("0.99"));
  mu[0] = R("1.9");
  std::vector<int> order = {3, 2, 1, 0};
  auto x = ReceiverAllocate<Q>(f, mu, nullptr, order);
  EXPECT_EQ(x[0], 1);
}

TEST(Receiver, CanonicalWithinFactor) {
  BucketScheme<Q> b(Q(16), R("0.5"));
  for (Q mu = 1; mu <= 16; mu += R("0.3")) {
    auto w = ReceiverWeights<Q>(std::vector<Q>{mu}, ReceiverKind::kCanonical, &b);
    EXPECT_LE(w[0], mu);
    EXPECT_LE(mu, b.eta() * w[0]);
  }
}

TEST(Evaluate, WorkedFullRevelation) {
  auto inst = BuildInstance<Q>(LoadRawInstance(POLYFAIR_TEST_DATA "/worked.json"));
  auto ev = EvaluatePolicy(inst.f, inst.dists, FullRevelationPolicy(inst.dists),
                           static_cast<const BucketScheme<Q>*>(nullptr));
  EXPECT_EQ(ev.utilities, (std::vector<Q>{1, R("1.5")}));
  EXPECT_EQ(ev.welfare, R("2.5"));
}

TEST(Evaluate, NoRevelationLongShot) {
  auto inst = cli::LongShotInstance<Q>(100, R("0.1"));
  auto ev = EvaluatePolicy(inst.f, inst.dists, NoRevelationPolicy(inst.dists),
                           static_cast<const BucketScheme<Q>*>(nullptr));
  ASSERT_EQ(ev.utilities.size(), 101u);
  for (const Q& u : ev.utilities) EXPECT_EQ(u, R("1.9") / 101);
}

TEST(Evaluate, FakeUtilitiesZeroOffBucket) {
  auto inst = BuildInstance<Q>(LoadRawInstance(POLYFAIR_TEST_DATA "/worked.json"));
  BucketScheme<Q> b(inst.V, inst.epsilon);
  auto policy = NoRevelationPolicy(inst.dists, ReceiverKind::kCanonical);
  policy.components[0].active_bucket = 0;  // both means lie in [2,4)
  auto ev = EvaluatePolicy(inst.f, inst.dists, policy, &b);
  ASSERT_TRUE(ev.has_fake);
  EXPECT_EQ(ev.fake, (std::vector<Q>{0, 0}));
  policy.components[0].active_bucket = 1;
  ev = EvaluatePolicy(inst.f, inst.dists, policy, &b);
  EXPECT_EQ(ev.fake, (std::vector<Q>{1, 1}));
}

TEST(Evaluate, ExplicitPointMustBeOptimal) {
  auto inst = BuildInstance<Q>(LoadRawInstance(POLYFAIR_TEST_DATA "/worked.json"));
  auto policy = NoRevelationPolicy(inst.dists);
  auto& sel = policy.components[0].selection;
  sel.kind = SelectionKind::kExplicit;
  std::vector<int> sigma = {0, 0};
  sel.points[ProfileKey(sigma)] = {R("0.25"), R("0.75")};
  auto ev = EvaluatePolicy(inst.f, inst.dists, policy,
                           static_cast<const BucketScheme<Q>*>(nullptr));
  EXPECT_EQ(ev.utilities, (std::vector<Q>{R("0.5"), R("1.5")}));
  sel.points[ProfileKey(sigma)] = {R("0.25"), R("0.25")};
  try {
    EvaluatePolicy(inst.f, inst.dists, policy, static_cast<const BucketScheme<Q>*>(nullptr));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPolicyMismatch);
  }
}

TEST(Evaluate, MonteCarloAgreesWithExact) {
  auto inst = BuildInstance<double>(LoadRawInstance(POLYFAIR_TEST_DATA "/worked.json"));
  EvalOptions opts;
  opts.mode = EvalMode::kMonteCarlo;
  opts.samples = 40000;
  auto ev = EvaluatePolicy(inst.f, inst.dists, FullRevelationPolicy(inst.dists),
                           static_cast<const BucketScheme<double>*>(nullptr), opts);
  ASSERT_EQ(ev.std_errors.size(), 2u);
  EXPECT_NEAR(ev.utilities[0], 1.0, 5 * ev.std_errors[0] + 1e-9);
  EXPECT_NEAR(ev.utilities[1], 1.5, 5 * ev.std_errors[1] + 1e-9);
}

}  // namespace
}  // namespace polyfair
