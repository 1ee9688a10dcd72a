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

#ifndef IDFILT_CLI_HPP
#define IDFILT_CLI_HPP

// Command line front end. Kept out of idfilt.hpp since it pulls in CLI11.

#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idfilt.hpp"

namespace idfilt::cli {

enum ExitCode { kPass = 0, kRefuted = 1, kUsage = 2 };

struct Options {
  std::string command;
  std::string suite;
  std::string instance;
  std::string point;
  std::string poly;
  std::optional<int> truncation;
  std::optional<int> horizon;
  std::optional<uint64_t> seed;
  int trials = 20;
  std::string format = "json";
  RandomInstanceParams random;
};

struct Result {
  json report;
  int code = kPass;
};

namespace detail {

template <class K>
json sigma_json(const SigmaValue& s) {
  return json::array_t(s.sigma.begin(), s.sigma.end());
}

inline std::string mu_kind(const MuValue& m) {
  switch (m.kind) {
    case MuValue::Kind::Exact: return "exact";
    case MuValue::Kind::AtLeast: return "at-least";
    default: return "infinity-up-to-T";
  }
}

template <class K>
json lgs_json(const Ring<K>& R, const LGS<K>& H) {
  json entries = json::array();
  Point<K> back = negate_point(H.point);
  for (auto& en : H.entries)
    entries.push_back({{"h", format_poly(R, translate(R, en.h, back))}, {"e", en.e}});
  json C = json::array();
  for (auto& row : H.C) {
    json r = json::array();
    for (auto& c : row) r.push_back(R.ops().format(c));
    C.push_back(r);
  }
  return {{"entries", entries}, {"C", C}};
}

inline std::string index_str(const MultiIndex& B) {
  std::string s = "(";
  for (size_t i = 0; i < B.size(); ++i) s += (i ? "," : "") + std::to_string(B[i]);
  return s + ")";
}

// Random generators of the verification suites; one per (suite, seed).
inline Rng suite_rng(uint64_t seed, const std::string& suite) {
  uint64_t h = seed;
  for (char c : suite) h = h * 1099511628211ull + static_cast<unsigned char>(c);
  return Rng(h);
}

template <class K>
struct Context {
  const Instance<K>& inst;
  Filtration<K> F;
  Point<K> P;
  int T, E;
  uint64_t seed;
  const Options& opt;

  const Ring<K>& R() const { return F.ring(); }
};

template <class K>
json verify_uniq(const Context<K>& c, bool& ok) {
  LocalFiltration<K> L(c.F, c.P);
  json out = {{"suite", "uniq"}};
  if (!L.in_support()) {
    out["note"] = "point not in the support; vacuous";
    out["passed"] = 0;
    return out;
  }
  LGS<K> H = extract_lgs(L, c.E, c.T);
  Expander<K> X(c.R(), H, c.T);
  Rng rng = suite_rng(c.seed, "uniq");
  int passed = 0;
  json bad = json::array();
  for (int t = 0; t < c.opt.trials; ++t) {
    Poly<K> f = random_poly(c.R(), rng, 0, c.T, 1 + static_cast<int>(rng() % 6));
    Poly<K> fy = X.to_new(f);
    auto Ex = X.expand_new(fy);
    bool good = X.reassemble(Ex) == fy.truncated(c.T) && Ex.in_window();
    if (good) ++passed;
    else bad.push_back({{"trial", t}, {"f", format_poly(c.R(), f)}});
  }
  out["trials"] = c.opt.trials;
  out["passed"] = passed;
  out["counterexamples"] = bad;
  ok = ok && bad.empty();
  return out;
}

template <class K>
json verify_fcl(const Context<K>& c, bool& ok) {
  LocalFiltration<K> L(c.F, c.P);
  json out = {{"suite", "fcl"}};
  if (!L.in_support()) {
    out["note"] = "point not in the support; vacuous";
    out["passed"] = 0;
    return out;
  }
  LGS<K> H = extract_lgs(L, c.E, c.T);
  Expander<K> X(c.R(), H, c.T);
  Rng rng = suite_rng(c.seed, "fcl");
  int passed = 0;
  json bad = json::array();
  for (int t = 0; t < c.opt.trials; ++t) {
    auto [f, a] = random_member(L, rng, 2, c.T);
    auto rep = check_fcl(L, X, f, a);
    std::string why;
    if (!rep.pass) why = "coefficient not a member at " + index_str(rep.failures.front());
    if (rep.pass && X.associated()) {
      auto it = fcl_iterate(c.F, f, a, H, c.T, 4 * c.T + 8);
      if (!it.pass) why = "iteration: " + it.failure;
    }
    if (why.empty()) ++passed;
    else
      bad.push_back({{"trial", t}, {"f", format_poly(c.R(), translate(c.R(), f, negate_point(c.P)))}, {"a", a.str()},
                     {"reason", why}});
  }
  out["trials"] = c.opt.trials;
  out["passed"] = passed;
  out["counterexamples"] = bad;
  ok = ok && bad.empty();
  return out;
}

template <class K>
json verify_coeff(const Context<K>& c, bool& ok) {
  LocalFiltration<K> L(c.F, c.P);
  json out = {{"suite", "coeff"}};
  if (!L.in_support()) {
    out["note"] = "point not in the support; vacuous";
    return out;
  }
  LGS<K> H = extract_lgs(L, c.E, c.T);
  MuValue mu = mu_tilde(c.F, c.P, H, c.T, false);
  std::vector<Rational> nus = {Rational(0)};
  if (mu.is_infinite()) nus.push_back(Rational(2));
  else if (Rational(1) < mu.value) nus.push_back((Rational(1) + mu.value) / Rational(2));
  std::set<Rational> levels;
  for (auto& g : c.F.generators()) levels.insert(g.level);
  for (int k = 1; k <= 3; ++k) levels.insert(Rational(k));
  json runs = json::array();
  for (auto& nu : nus)
    for (auto& a : levels) {
      if (a > Rational(c.T)) continue;
      auto rep = check_coefficient_lemma(c.F, a, nu, H, c.T);
      runs.push_back({{"a", a.str()}, {"nu", nu.str()}, {"elements", rep.elements}, {"pass", rep.pass}});
      if (!rep.pass) {
        ok = false;
        runs.back()["failure"] = rep.failures.front();
      }
    }
  out["mu"] = mu.str();
  out["runs"] = runs;
  if (mu.is_exact()) {
    bool rejected = false;
    try {
      check_coefficient_lemma(c.F, Rational(1), mu.value, H, c.T);
    } catch (const PreconditionError&) {
      rejected = true;
    }
    out["nu_at_mu_rejected"] = rejected;
    ok = ok && rejected;
  }
  return out;
}

template <class K>
json verify_independence(const Context<K>& c, bool& ok) {
  LocalFiltration<K> L(c.F, c.P);
  json out = {{"suite", "independence"}};
  if (!L.in_support()) {
    out["note"] = "point not in the support; vacuous";
    return out;
  }
  LGS<K> H = extract_lgs(L, c.E, c.T);
  Rng rng = suite_rng(c.seed, "independence");
  std::vector<LGS<K>> cands = {H};
  int rejected = 0;
  int n = std::max(c.opt.trials, 3);
  for (int t = 0; t < n; ++t) {
    try {
      LGS<K> G = t % 2 == 0 ? lgs_linear_move(c.R(), H, rng) : lgs_perturbation(L, H, rng);
      if (validate_lgs(L, G.entries, c.E, c.T)) {
        ++rejected;
        continue;
      }
      cands.push_back(G);
    } catch (const Error&) {
      ++rejected;
    }
  }
  auto rep = check_lgs_independence(c.F, c.P, cands, c.T);
  json mus = json::array();
  for (auto& m : rep.mus) mus.push_back(m.str());
  out["candidates"] = cands.size();
  out["rejected"] = rejected;
  out["mu"] = mus;
  out["pass"] = rep.pass;
  ok = ok && rep.pass;
  return out;
}

template <class K>
json stratify_json(const Context<K>& c, const StratifyReport<K>& rep) {
  const Ring<K>& R = c.R();
  json rows = json::array();
  for (auto& r : rep.rows)
    rows.push_back({{"point", format_point(R, r.point)},
                    {"in_support", r.in_support},
                    {"sigma", sigma_json<K>(r.sigma)},
                    {"mu", r.mu.str()},
                    {"tau", r.tau}});
  json wit = json::array();
  for (auto& w : rep.witnesses)
    wit.push_back({{"limit", format_point(R, rep.rows[w.limit].point)},
                   {"member", format_point(R, rep.rows[w.member].point)},
                   {"reason", w.reason}});
  json pur = json::array();
  for (size_t i : rep.purified_at) pur.push_back(format_point(R, rep.rows[i].point));
  return {{"rows", rows},
          {"semicontinuity", {{"pass", rep.witnesses.empty()}, {"witnesses", wit}, {"undetermined", rep.undetermined}}},
          {"purification", {{"points", pur}, {"failures", rep.purification_failures}}}};
}

template <class K>
json verify_semicont(const Context<K>& c, bool& ok) {
  auto rep = stratify(c.F, c.inst.points, c.inst.groups, c.E, c.T);
  json out = stratify_json(c, rep);
  out["suite"] = "semicont";
  ok = ok && rep.pass;
  return out;
}

template <class K>
json nsp_json(const Context<K>& c, const NspReport<K>& rep) {
  const Ring<K>& R = c.R();
  json out = {{"verdict", NspReport<K>::name(rep.verdict)},
              {"mu", rep.mu.str()},
              {"sigma", sigma_json<K>(rep.sigma)},
              {"E", rep.sigma.E}};
  if (rep.lgs) out["lgs"] = lgs_json(R, *rep.lgs);
  json center = json::array();
  for (auto& p : rep.center) center.push_back(format_poly(R, p));
  out["center"] = center;
  out["center_linear"] = rep.center_linear;
  json samples = json::array();
  for (size_t i = 0; i < rep.samples.size(); ++i)
    samples.push_back({{"point", format_point(R, rep.samples[i])}, {"ok", bool(rep.sample_ok[i])}});
  out["samples"] = samples;
  out["coherent"] = rep.coherent;
  out["witnesses"] = rep.witnesses;
  return out;
}

template <class K>
json verify_nsp(const Context<K>& c, bool& ok) {
  Rng rng = suite_rng(c.seed, "nsp");
  auto rep = check_nsp(c.F, c.P, c.E, c.T, {}, rng);
  json out = nsp_json(c, rep);
  out["suite"] = "nsp";
  ok = ok && rep.verdict != NspReport<K>::Verdict::Refuted && rep.coherent;
  return out;
}

template <class K>
Poly<K> poly_arg(const Context<K>& c) {
  if (c.opt.poly.empty()) throw ParseError("--poly is required");
  try {
    return translate(c.R(), parse_poly(c.R(), c.opt.poly), c.P);
  } catch (const Error& e) {
    throw ParseError(std::string("--poly: ") + e.what());
  }
}

template <class K>
Result run(const Instance<K>& inst, const Options& opt) {
  Point<K> P = origin(inst.R());
  if (!opt.point.empty()) {
    try {
      P = parse_point(inst.R(), opt.point);
    } catch (const Error& e) {
      throw ParseError(std::string("--point: ") + e.what());
    }
    if (static_cast<int>(P.size()) != inst.R().dim()) throw ParseError("--point: wrong number of coordinates");
  }
  int T = opt.truncation.value_or(inst.T);
  if (T < 1 || T > 60) throw ParseError("--truncation: must be in [1, 60]");
  int E = opt.horizon ? *opt.horizon : (opt.truncation ? default_horizon(inst.R(), T) : inst.E);
  if (E < 0) throw ParseError("--horizon: must be nonnegative");
  uint64_t seed = opt.seed.value_or(inst.seed.value_or(0));
  Context<K> c{inst, d_saturate(inst.filtration), P, T, E, seed, opt};
  const Ring<K>& R = c.R();

  Result res;
  json& out = res.report;
  out["command"] = opt.command == "verify" ? "verify " + opt.suite : opt.command;
  if (opt.command != "saturate" && opt.command != "stratify" && !(opt.command == "verify" && opt.suite == "semicont"))
    out["point"] = format_point(R, P);
  out["precision"] = {{"T", T}, {"E", E}};

  if (opt.command == "saturate") {
    Instance<K> sat = inst;
    sat.filtration = c.F;
    out["instance"] = instance_to_json(sat);
    out["delta"] = c.F.delta();
  } else if (opt.command == "sigma") {
    SigmaValue s = sigma(c.F, P, E, T);
    out["sigma"] = sigma_json<K>(s);
    out["E"] = s.E;
    out["censored"] = s.censored;
    out["in_support"] = in_support(c.F, P);
  } else if (opt.command == "lgs") {
    LocalFiltration<K> L(c.F, P);
    if (!L.in_support()) throw PreconditionError("point is not in the support");
    out["lgs"] = lgs_json(R, extract_lgs(L, E, T));
  } else if (opt.command == "expand" || opt.command == "ordh") {
    LocalFiltration<K> L(c.F, P);
    if (!L.in_support()) throw PreconditionError("point is not in the support");
    LGS<K> H = extract_lgs(L, E, T);
    Poly<K> f = poly_arg(c);
    Expander<K> X(R, H, T);
    if (opt.command == "expand") {
      auto Ex = X.expand_local(f);
      json list = json::array();
      for (auto& [B, aB] : Ex.a)
        list.push_back({{"B", B}, {"levelBB", std::to_string(Ex.weight(B))}, {"a_B", format_poly(R, aB)}});
      out["lgs"] = lgs_json(R, H);
      out["coordinates"] = "y = C (x - P)";
      out["expansion"] = list;
    } else {
      OrdValue a = ord_h_expansion(X, f), b = ord_h_membership(R, f, H, T);
      out["ord_h"] = {{"expansion", a.str()}, {"membership", b.str()}};
      out["agree"] = a == b;
      if (!(a == b)) res.code = kRefuted;
    }
  } else if (opt.command == "mu") {
    MuValue m = mu_tilde(c.F, P, T);
    out["mu"] = m.str();
    out["kind"] = mu_kind(m);
  } else if (opt.command == "stratify") {
    auto rep = stratify(c.F, inst.points, inst.groups, E, T);
    json s = stratify_json(c, rep);
    for (auto& [k, v] : s.items()) out[k] = v;
    if (!rep.pass) res.code = kRefuted;
  } else if (opt.command == "nsp") {
    Rng rng = suite_rng(seed, "nsp");
    auto rep = check_nsp(c.F, P, E, T, {}, rng);
    json s = nsp_json(c, rep);
    for (auto& [k, v] : s.items()) out[k] = v;
    if (rep.verdict == NspReport<K>::Verdict::Refuted) res.code = kRefuted;
  } else if (opt.command == "verify") {
    bool ok = true;
    json suites = json::array();
    std::vector<std::string> names = {"uniq", "fcl", "coeff", "independence", "semicont", "nsp"};
    if (opt.suite != "all") names = {opt.suite};
    out["seed"] = seed;
    for (auto& s : names) {
      if (s == "uniq") suites.push_back(verify_uniq(c, ok));
      else if (s == "fcl") suites.push_back(verify_fcl(c, ok));
      else if (s == "coeff") suites.push_back(verify_coeff(c, ok));
      else if (s == "independence") suites.push_back(verify_independence(c, ok));
      else if (s == "semicont") suites.push_back(verify_semicont(c, ok));
      else if (s == "nsp") suites.push_back(verify_nsp(c, ok));
    }
    out["suites"] = suites;
    out["pass"] = ok;
    if (!ok) res.code = kRefuted;
  }
  return res;
}

inline bool has_object(const json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (auto& v : j)
      if (has_object(v)) return true;
  return false;
}

inline void render_text(std::ostream& os, const json& j, const std::string& prefix = "") {
  if (j.is_object()) {
    for (auto& [k, v] : j.items()) {
      if (has_object(v) && !v.empty()) {
        os << prefix << k << ":\n";
        render_text(os, v, prefix + "  ");
      } else {
        os << prefix << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) {
      os << prefix << "- [" << i << "]\n";
      render_text(os, j[i], prefix + "  ");
    }
  } else {
    os << prefix << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace detail

inline void add_common(CLI::App* sub, Options& o, bool needs_point = true) {
  sub->add_option("--instance", o.instance, "Instance JSON file")->required();
  if (needs_point) sub->add_option("--point", o.point, "Point c1,c2,... (default: origin)");
  sub->add_option("--truncation", o.truncation, "Truncation order T");
  sub->add_option("--horizon", o.horizon, "Horizon E");
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

// Runs the command line; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"idfilt: invariants of idealistic filtrations"};
  app.require_subcommand(1);
  Options o;
  struct Cmd {
    const char* name;
    const char* help;
    bool point;
    bool poly;
  };
  const Cmd cmds[] = {{"saturate", "D-saturate the instance and print it", false, false},
                      {"sigma", "sigma at a point", true, false},
                      {"lgs", "leading generator system at a point", true, false},
                      {"expand", "expansion of --poly in the LGS at a point", true, true},
                      {"ordh", "ord_H of --poly by expansion and by membership", true, true},
                      {"mu", "mu~ at a point", true, false},
                      {"stratify", "(sigma, mu~) over the instance points with semicontinuity checks", false, false},
                      {"nsp", "nonsingularity principle check at a point", true, false}};
  for (auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o, c.point);
    if (c.poly) sub->add_option("--poly", o.poly, "Polynomial in global coordinates")->required();
    sub->callback([&o, name = std::string(c.name)] { o.command = name; });
  }
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", o.suite, "Suite")
      ->required()
      ->check(CLI::IsMember({"fcl", "coeff", "uniq", "independence", "semicont", "nsp", "all"}));
  add_common(ver, o, true);
  ver->add_option("--trials", o.trials, "Trials per suite")->check(CLI::Range(1, 100000));
  ver->callback([&o] { o.command = "verify"; });

  auto* rnd = app.add_subcommand("random-instance", "Print a reproducible random instance (D-saturated)");
  auto& rp = o.random;
  rnd->add_option("--p", rp.p, "Characteristic (prime)")->required();
  rnd->add_option("--ext-degree", rp.m, "Extension degree");
  rnd->add_option("--d", rp.d, "Number of variables")->check(CLI::Range(1, kMaxVars));
  rnd->add_option("--n-gens", rp.n_gens, "Number of generators")->check(CLI::Range(0, 16));
  rnd->add_option("--max-deg", rp.max_deg, "Maximal degree")->check(CLI::Range(1, 30));
  rnd->add_option("--max-level", rp.max_level, "Maximal level")->check(CLI::Range(0, 30));
  rnd->add_option("--seed", rp.seed, "Random seed");
  rnd->add_option("--truncation", rp.truncation, "Truncation written to the instance")->check(CLI::Range(1, 60));
  rnd->add_option("--points", rp.n_points, "Number of random sample points")->check(CLI::Range(0, 64));
  rnd->add_flag("--homogeneous", rp.homogeneous, "Homogeneous generators, with a neighborhood group at the origin");
  rnd->add_flag("--half-levels", rp.half_levels, "Allow levels k/2");
  rnd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  rnd->callback([&o] { o.command = "random-instance"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    Result res;
    if (o.command == "random-instance") {
      if (!GaloisField::is_prime(rp.p)) throw ParseError("--p must be prime");
      res.report = instance_to_json(random_instance(rp));
    } else {
      json j = read_json_file(o.instance);
      res = visit_instance(j, [&](auto inst) { return detail::run(inst, o); });
    }
    if (o.format == "text") detail::render_text(out, res.report);
    else out << res.report.dump(2) << "\n";
    return res.code;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kRefuted;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace idfilt::cli

#endif
