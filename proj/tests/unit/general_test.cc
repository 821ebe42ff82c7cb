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

#include "polyfair/general.h"
#include "polyfair/induced.h"
#include "polyfair/majorization.h"
#include "polyfair_cli/fixtures.h"
#include "support/random_instances.h"

namespace polyfair {
namespace {

using Q = Rational;

Q R(const char* s) { return ParseScalar<Q>(s); }

TEST(SolveFull, WorkedInstance) {
  auto inst = BuildInstance<Q>(LoadRawInstance(POLYFAIR_TEST_DATA "/worked.json"));
  auto sol = SolveFull(inst.f, inst.dists);
  EXPECT_EQ(sol.utilities, (std::vector<Q>{1, R("1.5")}));
  EXPECT_TRUE(sol.evaluated);
  EXPECT_EQ(sol.solver, "exact");
}

TEST(GeneralSolve, UnitValuesReduceToLeastPoint) {
  auto inst = BuildInstance<Q>(LoadRawInstance(POLYFAIR_TEST_DATA "/unit_values.json"));
  BucketScheme<Q> b(inst.V, inst.epsilon);
  auto sol = GeneralSolve(inst.f, inst.dists, b);
  EXPECT_EQ(sol.K, 1);
  EXPECT_EQ(sol.utilities, LeastMajorizedBasePoint(inst.f));
  EXPECT_EQ(sol.fake, sol.utilities);
}

TEST(GeneralSolve, SingleAgentFakeUtility) {
  auto f = UniformTruncation<Q>(1, Q(1));
  std::vector<ValueDist<Q>> dists = {MakeValueDist<Q>({{Q(1), R("0.5")}, {Q(4), R("0.5")}}, Q(4))};
  BucketScheme<Q> b(Q(4), Q(1));
  auto sol = GeneralSolve(f, dists, b);
  EXPECT_EQ(sol.K, 2);
  ASSERT_TRUE(sol.has_fake);
  // (1/K) * (m_0 * Pr_0 + m_1 * Pr_1) with Pr_0 just below 3/4 (open top edge) and Pr_1 = 1.
  EXPECT_LT(sol.fake[0], R("1.375"));
  EXPECT_NEAR(ToDouble(sol.fake[0]), 1.375, 1e-4);
  EXPECT_GE(sol.utilities[0], sol.fake[0]);
  EXPECT_EQ(sol.fake, sol.target);
}

TEST(GeneralSolve, WorkedInstanceBeatsBaselinesOverK) {
  auto inst = BuildInstance<Q>(LoadRawInstance(POLYFAIR_TEST_DATA "/worked.json"));
  BucketScheme<Q> b(inst.V, inst.epsilon);
  auto sol = GeneralSolve(inst.f, inst.dists, b);
  EXPECT_EQ(sol.K, 2);
  for (size_t i = 0; i < sol.fake.size(); ++i) EXPECT_GE(sol.utilities[i], sol.fake[i]);
  auto none = EvaluatePolicy(inst.f, inst.dists, NoRevelationPolicy(inst.dists),
                             static_cast<const BucketScheme<Q>*>(nullptr));
  auto full = EvaluatePolicy(inst.f, inst.dists, FullRevelationPolicy(inst.dists),
                             static_cast<const BucketScheme<Q>*>(nullptr));
  auto q = PrefixSums<Q>(sol.utilities);
  for (const auto& rival : {none.utilities, full.utilities}) {
    auto qr = PrefixSums<Q>(rival);
    for (size_t j = 0; j < q.size(); ++j) EXPECT_GE(q[j] * sol.K, qr[j]);
  }
}

TEST(GeneralSolve, LongShotMiniature) {
  auto inst = cli::LongShotInstance<Q>(4, R("0.5"));
  BucketScheme<Q> b(inst.V, inst.epsilon);
  auto sol = GeneralSolve(inst.f, inst.dists, b);
  auto min_of = [](const std::vector<Q>& u) { return *std::min_element(u.begin(), u.end()); };
  const BucketScheme<Q>* none_b = nullptr;
  Q best = min_of(EvaluatePolicy(inst.f, inst.dists, NoRevelationPolicy(inst.dists), none_b).utilities);
  best = std::max(best, min_of(EvaluatePolicy(inst.f, inst.dists, FullRevelationPolicy(inst.dists), none_b).utilities));
  testing::Rng rng(12);
  for (int r = 0; r < 100; ++r) {
    auto rival = testing::RandomPolicy(inst.dists, rng);
    best = std::max(best, min_of(EvaluatePolicy(inst.f, inst.dists, rival, none_b).utilities));
  }
  EXPECT_GE(min_of(sol.utilities) * sol.K, best);
}

TEST(MaximalMappings, OnePerAgentAndBucket) {
  auto inst = BuildInstance<Q>(LoadRawInstance(POLYFAIR_TEST_DATA "/worked.json"));
  BucketScheme<Q> b(inst.V, inst.epsilon);
  auto maps = MaximalMappings(inst.dists, b);
  ASSERT_EQ(maps.size(), static_cast<size_t>(b.K()));
  for (const auto& per_bucket : maps) EXPECT_EQ(per_bucket.size(), inst.dists.size());
}

}  // namespace
}  // namespace polyfair
