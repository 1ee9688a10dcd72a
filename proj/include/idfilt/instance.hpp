/* Copyright 2026 The idfilt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#ifndef IDFILT_INSTANCE_HPP
#define IDFILT_INSTANCE_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "invariants.hpp"

namespace idfilt {

using json = nlohmann::ordered_json;

template <class K>
struct Instance {
  Instance(std::shared_ptr<const Ring<K>> r, Filtration<K> f) : ring(std::move(r)), filtration(std::move(f)) {}

  std::shared_ptr<const Ring<K>> ring;
  Filtration<K> filtration;
  int T = 12;
  int E = 0;
  std::vector<Point<K>> points;
  std::vector<NeighborhoodGroupIdx> groups;
  std::optional<uint64_t> seed;
  json header;  // char, ext_degree and modulus as read

  const Ring<K>& R() const { return *ring; }
};

// The scalar field described by an instance header.
struct FieldSpec {
  uint32_t p = 0;
  uint32_t m = 1;
  std::vector<uint32_t> modulus;
};

namespace detail {

inline std::string field_path(const std::string& base, size_t i, const std::string& key = "") {
  return base + "[" + std::to_string(i) + "]" + (key.empty() ? "" : "." + key);
}

template <class F>
auto with_field(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline std::string point_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s;
    for (auto& c : j) {
      if (!s.empty()) s += ",";
      s += c.is_string() ? c.get<std::string>() : c.dump();
    }
    return s;
  }
  throw ParseError("point must be a string or an array");
}

inline Rational level_of(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("level must be a rational written as a string, e.g. \"3/2\"");
}

}  // namespace detail

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline FieldSpec field_spec(const json& j) {
  FieldSpec fs;
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  if (!j.contains("char")) throw ParseError("char: missing");
  detail::with_field("char", [&] {
    long long p = j.at("char").get<long long>();
    if (p < 0 || p > (1 << 20)) throw ParseError("out of range");
    fs.p = static_cast<uint32_t>(p);
    return 0;
  });
  if (j.contains("ext_degree"))
    detail::with_field("ext_degree", [&] {
      long long m = j.at("ext_degree").get<long long>();
      if (m < 1 || m > 20) throw ParseError("out of range");
      fs.m = static_cast<uint32_t>(m);
      return 0;
    });
  if (j.contains("modulus"))
    detail::with_field("modulus", [&] {
      fs.modulus = j.at("modulus").get<std::vector<uint32_t>>();
      return 0;
    });
  if (fs.p == 0 && fs.m != 1) throw ParseError("ext_degree: must be 1 in characteristic 0");
  return fs;
}

template <class K>
Instance<K> parse_instance(const json& j, FieldOps<K> ops) {
  using detail::with_field;
  if (!j.contains("vars")) throw ParseError("vars: missing");
  auto vars = with_field("vars", [&] { return j.at("vars").get<std::vector<std::string>>(); });
  if (vars.empty() || vars.size() > size_t(kMaxVars))
    throw ParseError("vars: between 1 and " + std::to_string(kMaxVars) + " variables required");
  auto ring = std::make_shared<const Ring<K>>(std::move(ops), vars);
  std::vector<Generator<K>> gens;
  if (j.contains("generators")) {
    const json& g = j.at("generators");
    if (!g.is_array()) throw ParseError("generators: must be an array");
    for (size_t i = 0; i < g.size(); ++i) {
      Poly<K> f = with_field(detail::field_path("generators", i, "poly"),
                             [&] { return parse_poly(*ring, g[i].at("poly").get<std::string>()); });
      Rational a = with_field(detail::field_path("generators", i, "level"), [&] { return detail::level_of(g[i].at("level")); });
      gens.push_back({f, a});
    }
  }
  bool saturated = j.value("saturated", false);
  Instance<K> inst(ring, Filtration<K>(ring, gens, saturated));
  inst.header = json::object();
  inst.header["char"] = j.at("char");
  inst.header["ext_degree"] = j.value("ext_degree", 1);
  if (j.contains("modulus")) inst.header["modulus"] = j.at("modulus");
  if (j.contains("truncation"))
    inst.T = with_field("truncation", [&] { return j.at("truncation").get<int>(); });
  if (inst.T < 1 || inst.T > 60) throw ParseError("truncation: must be in [1, 60]");
  inst.E = default_horizon(*ring, inst.T);
  if (j.contains("horizon")) inst.E = with_field("horizon", [&] { return j.at("horizon").get<int>(); });
  if (inst.E < 0) throw ParseError("horizon: must be nonnegative");
  if (j.contains("seed")) inst.seed = with_field("seed", [&] { return j.at("seed").get<uint64_t>(); });
  auto point_index = [&](const Point<K>& P) {
    for (size_t i = 0; i < inst.points.size(); ++i)
      if (inst.points[i] == P) return i;
    inst.points.push_back(P);
    return inst.points.size() - 1;
  };
  if (j.contains("points")) {
    const json& ps = j.at("points");
    for (size_t i = 0; i < ps.size(); ++i)
      point_index(with_field(detail::field_path("points", i),
                             [&] { return parse_point(*ring, detail::point_text(ps[i])); }));
  }
  if (j.contains("groups")) {
    const json& gs = j.at("groups");
    for (size_t i = 0; i < gs.size(); ++i) {
      NeighborhoodGroupIdx grp;
      grp.limit = point_index(with_field(detail::field_path("groups", i, "limit"),
                                         [&] { return parse_point(*ring, detail::point_text(gs[i].at("limit"))); }));
      const json& ms = gs[i].at("members");
      for (size_t k = 0; k < ms.size(); ++k)
        grp.members.push_back(point_index(with_field(detail::field_path("groups", i, "members[" + std::to_string(k) + "]"),
                                                     [&] { return parse_point(*ring, detail::point_text(ms[k])); })));
      inst.groups.push_back(grp);
    }
  }
  return inst;
}

template <class K>
std::string format_point(const Ring<K>& R, const Point<K>& P) {
  std::string s;
  for (auto& c : P) {
    if (!s.empty()) s += ",";
    s += R.ops().format(c);
  }
  return s;
}

template <class K>
json instance_to_json(const Instance<K>& inst) {
  const Ring<K>& R = inst.R();
  json j = inst.header;
  j["vars"] = R.vars();
  json gens = json::array();
  for (auto& g : inst.filtration.generators())
    gens.push_back({{"poly", format_poly(R, g.f)}, {"level", g.level.str()}});
  j["generators"] = gens;
  j["saturated"] = inst.filtration.is_saturated();
  j["truncation"] = inst.T;
  j["horizon"] = inst.E;
  if (!inst.points.empty()) {
    json ps = json::array();
    for (auto& P : inst.points) ps.push_back(format_point(R, P));
    j["points"] = ps;
  }
  if (!inst.groups.empty()) {
    json gs = json::array();
    for (auto& g : inst.groups) {
      json ms = json::array();
      for (size_t m : g.members) ms.push_back(format_point(R, inst.points[m]));
      gs.push_back({{"limit", format_point(R, inst.points[g.limit])}, {"members", ms}});
    }
    j["groups"] = gs;
  }
  if (inst.seed) j["seed"] = *inst.seed;
  return j;
}

// Calls visit(Instance<Fq>) or visit(Instance<QQ>) according to the header.
template <class Visitor>
auto visit_instance(const json& j, Visitor&& visit) {
  FieldSpec fs = field_spec(j);
  if (fs.p == 0) return visit(parse_instance(j, FieldOps<QQ>()));
  const GaloisField* gf = detail::with_field("char", [&] { return &GaloisField::get(fs.p, fs.m, fs.modulus); });
  return visit(parse_instance(j, FieldOps<Fq>(*gf)));
}

}  // namespace idfilt

#endif
