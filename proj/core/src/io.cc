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

#include "polyfair/io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "polyfair/error.h"

namespace polyfair {

namespace {

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, where + ": " + what);
}

const Json& Field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) Fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

int IntField(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) Fail(where, "expected an integer");
  return v.get<int>();
}

std::vector<int> IntList(const Json& v, const std::string& where) {
  if (!v.is_array()) Fail(where, "expected an array of integers");
  std::vector<int> out;
  for (size_t k = 0; k < v.size(); ++k) out.push_back(IntField(v[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace

std::string ScalarText(const Json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number_unsigned()) return std::to_string(value.get<unsigned long long>());
  if (value.is_number_float()) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, value.get<double>());
    return std::string(buf, r.ptr);
  }
  Fail(where, "expected a number");
}

template <class T>
T ParseJsonScalar(const Json& value, const std::string& where) {
  std::string text = ScalarText(value, where);
  try {
    return ParseScalar<T>(text);
  } catch (const Error& e) {
    Fail(where, "bad number \"" + text + "\"");
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RawInstance ParseRawInstance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
  RawInstance raw;
  raw.V = ScalarText(Field(j, "V", "instance"), "V");
  raw.epsilon = j.contains("epsilon") ? ScalarText(j["epsilon"], "epsilon") : "1";
  const Json& agents = Field(j, "agents", "instance");
  if (!agents.is_array() || agents.empty()) Fail("agents", "expected a nonempty array");
  for (size_t i = 0; i < agents.size(); ++i) {
    std::string where = "agents[" + std::to_string(i) + "]";
    const Json& dist = Field(agents[i], "dist", where);
    where += ".dist";
    if (!dist.is_array() || dist.empty()) Fail(where, "expected a nonempty array of [value, probability]");
    std::vector<std::pair<std::string, std::string>> support;
    for (size_t k = 0; k < dist.size(); ++k) {
      std::string at = where + "[" + std::to_string(k) + "]";
      if (!dist[k].is_array() || dist[k].size() != 2) Fail(at, "expected [value, probability]");
      support.emplace_back(ScalarText(dist[k][0], at), ScalarText(dist[k][1], at));
    }
    raw.agents.push_back(std::move(support));
  }
  raw.constraint = Field(j, "constraint", "instance");
  if (j.contains("numeric")) {
    if (!j["numeric"].is_string()) Fail("numeric", "expected \"float64\" or \"rational\"");
    raw.numeric = j["numeric"].get<std::string>();
  }
  return raw;
}

RawInstance LoadRawInstance(const std::string& path) {
  std::string text = ReadFile(path);
  try {
    return ParseRawInstance(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

template <class T>
SetFunction<T> BuildConstraint(const Json& spec, int n, TableCheck check) {
  std::string type = Field(spec, "type", "constraint").is_string()
                         ? spec["type"].get<std::string>()
                         : "";
  if (type == "uniform_truncation") {
    return UniformTruncation<T>(n, ParseJsonScalar<T>(Field(spec, "c", "constraint"), "constraint.c"));
  }
  if (type == "partition_caps") {
    const Json& groups = Field(spec, "groups", "constraint");
    if (!groups.is_array()) Fail("constraint.groups", "expected an array");
    std::vector<std::vector<int>> g;
    for (size_t k = 0; k < groups.size(); ++k) {
      g.push_back(IntList(groups[k], "constraint.groups[" + std::to_string(k) + "]"));
    }
    const Json& caps = Field(spec, "caps", "constraint");
    if (!caps.is_array()) Fail("constraint.caps", "expected an array");
    std::vector<T> c;
    for (size_t k = 0; k < caps.size(); ++k) {
      c.push_back(ParseJsonScalar<T>(caps[k], "constraint.caps[" + std::to_string(k) + "]"));
    }
    std::optional<T> global;
    if (spec.contains("global") && !spec["global"].is_null()) {
      global = ParseJsonScalar<T>(spec["global"], "constraint.global");
    }
    return PartitionCaps<T>(n, std::move(g), std::move(c), global);
  }
  if (type == "explicit") {
    if (n > kMaxEnumerationAgents) Fail("constraint", "explicit tables need at most 20 agents");
    std::vector<T> table(std::size_t{1} << n, T(0));
    if (spec.contains("table")) {
      const Json& t = spec["table"];
      if (!t.is_array() || t.size() != table.size()) {
        Fail("constraint.table", "expected " + std::to_string(table.size()) + " entries");
      }
      for (size_t k = 0; k < t.size(); ++k) {
        table[k] = ParseJsonScalar<T>(t[k], "constraint.table[" + std::to_string(k) + "]");
      }
    } else {
      const Json& values = Field(spec, "values", "constraint");
      if (!values.is_object()) Fail("constraint.values", "expected an object keyed by bitmask");
      for (const auto& [key, v] : values.items()) {
        std::string where = "constraint.values[\"" + key + "\"]";
        unsigned long long mask = 0;
        auto r = std::from_chars(key.data(), key.data() + key.size(), mask);
        if (r.ec != std::errc() || r.ptr != key.data() + key.size() || mask >= table.size()) {
          Fail(where, "key must be a decimal bitmask below 2^n");
        }
        table[mask] = ParseJsonScalar<T>(v, where);
      }
    }
    return ExplicitTable<T>(n, std::move(table), check);
  }
  if (type == "combine") {
    const Json& terms = Field(spec, "terms", "constraint");
    if (!terms.is_array() || terms.empty()) Fail("constraint.terms", "expected a nonempty array");
    std::vector<SetFunction<T>> fs;
    std::vector<T> coeffs;
    for (size_t k = 0; k < terms.size(); ++k) {
      std::string where = "constraint.terms[" + std::to_string(k) + "]";
      coeffs.push_back(ParseJsonScalar<T>(Field(terms[k], "coeff", where), where + ".coeff"));
      fs.push_back(BuildConstraint<T>(Field(terms[k], "constraint", where), n, check));
    }
    return Combine<T>(fs, coeffs);
  }
  Fail("constraint.type", "unknown constraint type \"" + type + "\"");
}

template <class T>
ValueDist<T> BuildDist(const std::vector<std::pair<std::string, std::string>>& support,
                       const T& V, const std::string& where) {
  std::vector<std::pair<T, T>> pairs;
  for (size_t k = 0; k < support.size(); ++k) {
    std::string at = where + "[" + std::to_string(k) + "]";
    try {
      pairs.emplace_back(ParseScalar<T>(support[k].first), ParseScalar<T>(support[k].second));
    } catch (const Error&) {
      Fail(at, "bad number");
    }
  }
  try {
    return MakeValueDist<T>(std::move(pairs), V);
  } catch (const Error& e) {
    throw Error(e.code(), where + ": " + e.detail());
  }
}

template <class T>
Instance<T> BuildInstance(const RawInstance& raw, TableCheck check) {
  Instance<T> inst;
  try {
    inst.V = ParseScalar<T>(raw.V);
    inst.epsilon = ParseScalar<T>(raw.epsilon);
  } catch (const Error&) {
    Fail("V/epsilon", "bad number");
  }
  if (inst.V < 1) throw Error(ErrorCode::kDomain, "V must be at least 1");
  if (!(inst.epsilon > 0)) throw Error(ErrorCode::kDomain, "epsilon must be positive");
  for (size_t i = 0; i < raw.agents.size(); ++i) {
    inst.dists.push_back(BuildDist<T>(raw.agents[i], inst.V, "agents[" + std::to_string(i) + "].dist"));
  }
  inst.f = BuildConstraint<T>(raw.constraint, inst.n(), check);
  return inst;
}

namespace {

template <class T>
Selection<T> ParseSelection(const Json& j, int n) {
  Selection<T> s;
  if (j.is_null()) return s;
  std::string type = Field(j, "type", "selection").is_string() ? j["type"].get<std::string>() : "";
  auto parse_orders = [&](const Json& arr, const std::string& where) {
    if (!arr.is_array()) Fail(where, "expected an array of {weight, order}");
    std::vector<WeightedOrder<T>> out;
    for (size_t k = 0; k < arr.size(); ++k) {
      std::string at = where + "[" + std::to_string(k) + "]";
      out.push_back({ParseJsonScalar<T>(Field(arr[k], "weight", at), at + ".weight"),
                     IntList(Field(arr[k], "order", at), at + ".order")});
    }
    return out;
  };
  if (type == "uniform") {
    s.kind = SelectionKind::kUniform;
  } else if (type == "priority") {
    s.kind = SelectionKind::kPriority;
    s.orders.push_back({T(1), IntList(Field(j, "order", "selection"), "selection.order")});
  } else if (type == "schedule") {
    s.kind = SelectionKind::kSchedule;
    s.orders = parse_orders(Field(j, "orders", "selection"), "selection.orders");
    if (j.contains("profiles")) {
      for (const auto& [key, arr] : j["profiles"].items()) {
        s.profile_orders[key] = parse_orders(arr, "selection.profiles[\"" + key + "\"]");
      }
    }
  } else if (type == "explicit") {
    s.kind = SelectionKind::kExplicit;
    const Json& points = Field(j, "points", "selection");
    if (!points.is_object()) Fail("selection.points", "expected an object keyed by signal profile");
    for (const auto& [key, arr] : points.items()) {
      std::string where = "selection.points[\"" + key + "\"]";
      if (!arr.is_array() || static_cast<int>(arr.size()) != n) Fail(where, "expected one entry per agent");
      std::vector<T> x;
      for (size_t k = 0; k < arr.size(); ++k) x.push_back(ParseJsonScalar<T>(arr[k], where));
      s.points[key] = std::move(x);
    }
  } else {
    Fail("selection.type", "unknown selection \"" + type + "\"");
  }
  return s;
}

template <class T>
AgentMapping<T> ParseMapping(const Json& j, const std::string& where) {
  AgentMapping<T> m;
  const Json& signals = Field(j, "signals", where);
  if (!signals.is_array()) Fail(where + ".signals", "expected an array of names");
  for (const auto& s : signals) {
    if (!s.is_string()) Fail(where + ".signals", "signal names must be strings");
    m.signals.push_back(s.get<std::string>());
  }
  const Json& table = Field(j, "table", where);
  if (!table.is_array()) Fail(where + ".table", "expected one row per support value");
  for (size_t v = 0; v < table.size(); ++v) {
    std::string at = where + ".table[" + std::to_string(v) + "]";
    if (!table[v].is_array() || table[v].size() != m.signals.size()) Fail(at, "expected one entry per signal");
    std::vector<T> row;
    for (const auto& x : table[v]) row.push_back(ParseJsonScalar<T>(x, at));
    m.table.push_back(std::move(row));
  }
  return m;
}

ReceiverKind ParseReceiver(const Json& j) {
  if (!j.contains("receiver")) return ReceiverKind::kExact;
  std::string r = j["receiver"].is_string() ? j["receiver"].get<std::string>() : "";
  if (r == "exact") return ReceiverKind::kExact;
  if (r == "canonical") return ReceiverKind::kCanonical;
  Fail("receiver", "expected \"exact\" or \"canonical\"");
}

std::string SelectionName(SelectionKind k) {
  switch (k) {
    case SelectionKind::kUniform: return "uniform";
    case SelectionKind::kPriority: return "priority";
    case SelectionKind::kSchedule: return "schedule";
    case SelectionKind::kExplicit: return "explicit";
  }
  return "";
}

}  // namespace

template <class T>
Policy<T> ParsePolicy(const Json& json, const Instance<T>& instance) {
  int n = instance.n();
  std::string kind = json.contains("kind") && json["kind"].is_string() ? json["kind"].get<std::string>() : "custom";
  ReceiverKind receiver = ParseReceiver(json);
  Selection<T> selection = ParseSelection<T>(json.contains("selection") ? json["selection"] : Json(), n);
  if (kind == "no_revelation") {
    Policy<T> p = NoRevelationPolicy(instance.dists, receiver);
    p.components.front().selection = selection;
    return p;
  }
  if (kind == "full_revelation" && !json.contains("components")) {
    return FullRevelationPolicy(instance.dists, receiver, selection);
  }
  Policy<T> p;
  p.kind = kind;
  p.receiver = receiver;
  const Json& comps = Field(json, "components", "policy");
  if (!comps.is_array() || comps.empty()) Fail("policy.components", "expected a nonempty array");
  for (size_t c = 0; c < comps.size(); ++c) {
    std::string where = "components[" + std::to_string(c) + "]";
    PolicyComponent<T> comp;
    comp.weight = comps[c].contains("weight") ? ParseJsonScalar<T>(comps[c]["weight"], where + ".weight") : T(1);
    if (comps[c].contains("active_bucket") && !comps[c]["active_bucket"].is_null()) {
      comp.active_bucket = IntField(comps[c]["active_bucket"], where + ".active_bucket");
    }
    const Json& maps = Field(comps[c], "mappings", where);
    if (!maps.is_array()) Fail(where + ".mappings", "expected an array");
    for (size_t i = 0; i < maps.size(); ++i) {
      comp.mappings.push_back(ParseMapping<T>(maps[i], where + ".mappings[" + std::to_string(i) + "]"));
    }
    comp.selection = comps[c].contains("selection") ? ParseSelection<T>(comps[c]["selection"], n) : selection;
    p.components.push_back(std::move(comp));
  }
  return p;
}

template <class T>
Json ScalarToJson(const T& value) {
  return ToDouble(value);
}

template <class T>
Json VectorToJson(const std::vector<T>& values) {
  Json out = Json::array();
  for (const T& v : values) out.push_back(ToDouble(v));
  return out;
}

template <class T>
Json ExactVectorToJson(const std::vector<T>& values) {
  Json out = Json::array();
  for (const T& v : values) out.push_back(ScalarToString<T>(v));
  return out;
}

template <class T>
Json PolicyToJson(const Policy<T>& policy) {
  Json j;
  j["kind"] = policy.kind;
  j["receiver"] = policy.receiver == ReceiverKind::kExact ? "exact" : "canonical";
  Json comps = Json::array();
  for (const auto& c : policy.components) {
    Json cj;
    cj["weight"] = ScalarToString<T>(c.weight);
    if (c.active_bucket) cj["active_bucket"] = *c.active_bucket;
    Json maps = Json::array();
    for (const auto& m : c.mappings) {
      Json mj;
      mj["signals"] = m.signals;
      Json rows = Json::array();
      for (const auto& row : m.table) rows.push_back(ExactVectorToJson(row));
      mj["table"] = rows;
      maps.push_back(mj);
    }
    cj["mappings"] = maps;
    Json sj;
    sj["type"] = SelectionName(c.selection.kind);
    auto orders_json = [](const std::vector<WeightedOrder<T>>& orders) {
      Json arr = Json::array();
      for (const auto& o : orders) arr.push_back({{"weight", ScalarToString<T>(o.weight)}, {"order", o.order}});
      return arr;
    };
    switch (c.selection.kind) {
      case SelectionKind::kUniform:
        break;
      case SelectionKind::kPriority:
        sj["order"] = c.selection.orders.front().order;
        break;
      case SelectionKind::kSchedule:
        sj["orders"] = orders_json(c.selection.orders);
        if (!c.selection.profile_orders.empty()) {
          for (const auto& [key, o] : c.selection.profile_orders) sj["profiles"][key] = orders_json(o);
        }
        break;
      case SelectionKind::kExplicit:
        for (const auto& [key, x] : c.selection.points) sj["points"][key] = ExactVectorToJson(x);
        break;
    }
    cj["selection"] = sj;
    comps.push_back(cj);
  }
  j["components"] = comps;
  return j;
}

std::string CanonicalDump(const Json& json) { return json.dump(2) + "\n"; }

#define POLYFAIR_INSTANTIATE(T)                                                             \
  template T ParseJsonScalar<T>(const Json&, const std::string&);                           \
  template SetFunction<T> BuildConstraint<T>(const Json&, int, TableCheck);                 \
  template ValueDist<T> BuildDist<T>(const std::vector<std::pair<std::string, std::string>>&, \
                                     const T&, const std::string&);                         \
  template Instance<T> BuildInstance<T>(const RawInstance&, TableCheck);                    \
  template Policy<T> ParsePolicy<T>(const Json&, const Instance<T>&);                       \
  template Json PolicyToJson<T>(const Policy<T>&);                                          \
  template Json ScalarToJson<T>(const T&);                                                  \
  template Json VectorToJson<T>(const std::vector<T>&);                                     \
  template Json ExactVectorToJson<T>(const std::vector<T>&);

POLYFAIR_INSTANTIATE(double)
POLYFAIR_INSTANTIATE(Rational)

#undef POLYFAIR_INSTANTIATE

}  // namespace polyfair
