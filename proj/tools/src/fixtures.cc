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

#include "polyfair_cli/fixtures.h"

#include <algorithm>

#include "polyfair/induced.h"
#include "polyfair/majorization.h"
#include "polyfair/polymatroid.h"

namespace polyfair::cli {

namespace {

Rational Power(const Rational& x, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

Check MakeCheck(std::string name, bool pass, const Rational& value, const std::string& expected) {
  return {std::move(name), pass, ScalarToString<Rational>(value), expected};
}

Json ChecksJson(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"expected", c.expected}});
  }
  return arr;
}

}  // namespace

bool Reproduction::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

template <class T>
Instance<T> LongShotInstance(int n, const T& q) {
  Instance<T> inst;
  inst.V = T(1) / q;
  inst.epsilon = 1;
  inst.dists.push_back(MakeValueDist<T>({{T(2) - q, T(1)}}, inst.V));
  for (int i = 0; i < n; ++i) {
    inst.dists.push_back(MakeValueDist<T>({{T(1), T(1) - q}, {T(1) / q, q}}, inst.V));
  }
  inst.f = UniformTruncation<T>(n + 1, T(1));
  return inst;
}

template <class T>
Policy<T> LongShotDesignedPolicy(const Instance<T>& instance, int n, const T& q) {
  T p = T(1) / (FromInt<T>(n) * q);
  Policy<T> policy;
  policy.kind = "custom";
  PolicyComponent<T> c;
  c.weight = 1;
  c.mappings.push_back(NoRevelationMapping(instance.dists[0]));
  for (int i = 1; i <= n; ++i) {
    AgentMapping<T> m;
    m.signals = {"LOW", "HIGH"};
    m.table = {{T(1), T(0)}, {T(1) - p, p}};
    c.mappings.push_back(std::move(m));
  }
  policy.components.push_back(std::move(c));
  return policy;
}

template <class T>
std::vector<std::vector<T>> NestedPoints(int n, const T& M) {
  std::vector<std::vector<T>> points;
  T scale = 1;
  for (int j = 1; j <= n; ++j) {
    scale *= M;
    std::vector<T> u(n, T(0));
    for (int k = j; k <= n; ++k) u[k - 1] = scale;
    points.push_back(std::move(u));
  }
  return points;
}

template <class T>
SetFunction<T> HexagonRank() {
  std::vector<T> h = {T(0), T(1), ParseScalar<T>("1.9"), ParseScalar<T>("2.5")};
  std::vector<T> table(8);
  for (Subset s = 0; s < 8; ++s) table[s] = h[Cardinality(s)];
  return ExplicitTable<T>(3, std::move(table));
}

template <class T>
std::vector<std::vector<T>> HexagonUtilitySet() {
  auto P = [](const char* x, const char* y) {
    T a = ParseScalar<T>(x), b = ParseScalar<T>(y);
    return std::vector<T>{a, b, ParseScalar<T>("2.5") - a - b};
  };
  return {P("1", "0.9"), P("0.9", "1"), P("0.6", "1"), P("0.6", "0.9"), P("0.9", "0.6"),
          P("1", "0.61"), P("0.99", "0.6")};
}

template <class T>
std::vector<std::vector<T>> GroupPoints(int n, const T& N) {
  std::vector<std::vector<T>> points;
  T base = FromInt<T>(n) * FromInt<T>(n);
  T v = 1;
  for (int i = 1; i <= n; ++i) {
    v *= base;
    std::vector<T> u(2 * n, T(0));
    u[i - 1] = v;
    u[2 * n - i] = N - v;
    points.push_back(std::move(u));
  }
  return points;
}

Reproduction ReproduceA(int n, const std::string& q_text) {
  using T = Rational;
  T q = ParseScalar<T>(q_text);
  Instance<T> inst = LongShotInstance<T>(n, q);
  Reproduction r;
  EvalOptions opts;
  opts.symmetry = EvalOptions::Symmetry::kAlways;

  Evaluation<T> none = EvaluatePolicy(inst.f, inst.dists, NoRevelationPolicy(inst.dists),
                                      static_cast<const BucketScheme<T>*>(nullptr), opts);
  Evaluation<T> full = EvaluatePolicy(inst.f, inst.dists, FullRevelationPolicy(inst.dists),
                                      static_cast<const BucketScheme<T>*>(nullptr), opts);
  Evaluation<T> designed = EvaluatePolicy(inst.f, inst.dists, LongShotDesignedPolicy(inst, n, q),
                                          static_cast<const BucketScheme<T>*>(nullptr), opts);

  T none_welfare = T(2) - q;
  T none_min = none_welfare / FromInt<T>(n + 1);
  T full_agent0 = (T(2) - q) * Power(T(1) - q, n);
  T miss = Power(T(1) - T(1) / FromInt<T>(n), n);  // no HIGH signal at all
  T designed_welfare = (T(1) / q) * (T(1) - miss) + (T(2) - q) * miss;
  T designed_min = *std::min_element(designed.utilities.begin(), designed.utilities.end());
  T none_min_seen = *std::min_element(none.utilities.begin(), none.utilities.end());
  T full_min = *std::min_element(full.utilities.begin(), full.utilities.end());

  r.checks.push_back(MakeCheck("no_revelation_welfare", none.welfare == none_welfare, none.welfare,
                               ScalarToString(none_welfare)));
  r.checks.push_back(MakeCheck("no_revelation_min_utility", none_min_seen == none_min, none_min_seen,
                               ScalarToString(none_min)));
  r.checks.push_back(MakeCheck("full_revelation_agent0_utility",
                               Abs(T(full.utilities[0] - full_agent0)) <= ParseScalar<T>("1e-12"),
                               full.utilities[0], ScalarToString(full_agent0)));
  r.checks.push_back(MakeCheck("designed_welfare",
                               Abs(T(designed.welfare - designed_welfare)) <= ParseScalar<T>("1e-12"),
                               designed.welfare, ScalarToString(designed_welfare)));
  r.checks.push_back(MakeCheck("designed_min_utility", designed_min >= ParseScalar<T>("0.06"),
                               designed_min, ">= 0.06"));

  auto summary = [](const Evaluation<T>& ev) {
    return Json{{"welfare", ToDouble(ev.welfare)},
                {"min_utility", ToDouble(*std::min_element(ev.utilities.begin(), ev.utilities.end()))},
                {"agent0_utility", ToDouble(ev.utilities[0])},
                {"other_utility", ToDouble(ev.utilities.back())}};
  };
  r.report = {{"fixture", "a"},
              {"n", n},
              {"q", q_text},
              {"no_revelation", summary(none)},
              {"full_revelation", summary(full)},
              {"designed", summary(designed)},
              {"full_revelation_min_utility", ToDouble(full_min)},
              {"checks", ChecksJson(r.checks)}};
  return r;
}

Reproduction ReproduceB(int n, const std::string& M_text) {
  using T = Rational;
  T M = ParseScalar<T>(M_text);
  auto points = NestedPoints<T>(n, M);
  FactorResult<T> best = BestMajorizationFactor(points);
  T bound = FromInt<T>(n) / (T(1) + FromInt<T>(n) * FromInt<T>(n) / M);
  Reproduction r;
  r.checks.push_back(MakeCheck("best_factor_lower_bound", best.alpha >= bound - ParseScalar<T>("1e-9"),
                               best.alpha, ">= " + ScalarToString(bound)));
  r.report = {{"fixture", "b"},
              {"n", n},
              {"M", M_text},
              {"alpha", ToDouble(best.alpha)},
              {"alpha_exact", ScalarToString(best.alpha)},
              {"bound", ToDouble(bound)},
              {"weights", ExactVectorToJson(best.weights)},
              {"checks", ChecksJson(r.checks)}};
  return r;
}

Reproduction ReproduceC() {
  using T = Rational;
  Reproduction r;
  SetFunction<T> g = HexagonRank<T>();
  auto U = HexagonUtilitySet<T>();
  std::vector<T> point = {T(1), ParseScalar<T>("0.6"), ParseScalar<T>("0.9")};
  bool in_base = Membership<T>(g, point).status == MembershipStatus::kBase;
  T gap = point[0] - point[1];
  bool in_hull = InConvexHull<T>(point, U);
  SetFunction<T> sat = SaturationFunction<T>(3, U);
  bool same_saturation = Tabulate(sat) == Tabulate(g);
  bool submodular = CheckSubmodularMonotone(sat).ok();
  Certificate<T> cert = CertifyUtilitySet(g, U);

  r.checks.push_back(MakeCheck("hexagon_point_in_base", in_base, T(in_base ? 1 : 0), "1"));
  r.checks.push_back(MakeCheck("hexagon_point_violates_cut", gap > ParseScalar<T>("0.39"), gap, "> 0.39"));
  r.checks.push_back(MakeCheck("hexagon_point_outside_utility_set", !in_hull, T(in_hull ? 1 : 0), "0"));
  r.checks.push_back(MakeCheck("hexagon_saturation_matches", same_saturation && submodular,
                               T(same_saturation && submodular ? 1 : 0), "1"));
  r.checks.push_back(MakeCheck("hexagon_certificate_rejects", !cert.ok, T(cert.ok ? 1 : 0), "0"));

  T N = 1;
  for (int k = 0; k < 7; ++k) N *= 3;
  FactorResult<T> groups = BestMajorizationFactor(GroupPoints<T>(3, N));
  T threshold = ParseScalar<T>(kGroupFactorThreshold);
  r.checks.push_back(MakeCheck("group_factor", groups.alpha >= threshold, groups.alpha,
                               ">= " + std::string(kGroupFactorThreshold)));

  r.report = {{"fixture", "c"},
              {"hexagon", {{"point", ExactVectorToJson(point)},
                           {"certificate_reason", cert.reason}}},
              {"groups", {{"n", 3},
                          {"N", ScalarToString(N)},
                          {"alpha", ToDouble(groups.alpha)},
                          {"alpha_exact", ScalarToString(groups.alpha)},
                          {"threshold", kGroupFactorThreshold}}},
              {"checks", ChecksJson(r.checks)}};
  return r;
}

#define POLYFAIR_INSTANTIATE(T)                                                        \
  template Instance<T> LongShotInstance<T>(int, const T&);                            \
  template Policy<T> LongShotDesignedPolicy<T>(const Instance<T>&, int, const T&);    \
  template std::vector<std::vector<T>> NestedPoints<T>(int, const T&);              \
  template SetFunction<T> HexagonRank<T>();                                            \
  template std::vector<std::vector<T>> HexagonUtilitySet<T>();                         \
  template std::vector<std::vector<T>> GroupPoints<T>(int, const T&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair::cli
