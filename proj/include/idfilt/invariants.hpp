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

#ifndef IDFILT_INVARIANTS_HPP
#define IDFILT_INVARIANTS_HPP

#include <compare>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "expansion.hpp"

namespace idfilt {

struct MuValue {
  enum class Kind { Exact, AtLeast, InfinityUpToT };
  Kind kind = Kind::Exact;
  Rational value;  // the value, or a lower bound for the censored kinds

  static MuValue exact(Rational q) { return {Kind::Exact, q}; }
  static MuValue at_least(Rational q) { return {Kind::AtLeast, q}; }
  static MuValue infinity_up_to_T(Rational lb) { return {Kind::InfinityUpToT, lb}; }

  bool is_exact() const { return kind == Kind::Exact; }
  bool is_infinite() const { return kind == Kind::InfinityUpToT; }
  friend bool operator==(const MuValue& a, const MuValue& b) {
    if (a.kind != b.kind) return false;
    return a.kind == Kind::InfinityUpToT || a.value == b.value;
  }
  std::string str() const {
    switch (kind) {
      case Kind::Exact: return value.str();
      case Kind::AtLeast: return ">=" + value.str();
      default: return "inf";
    }
  }
};

// Ordering of mu values at finite precision; nullopt when undetermined.
inline std::optional<std::strong_ordering> compare_mu(const MuValue& a, const MuValue& b) {
  using K = MuValue::Kind;
  if (a.kind == K::Exact && b.kind == K::Exact) return a.value <=> b.value;
  if (a.kind == K::InfinityUpToT && b.kind == K::InfinityUpToT) return std::strong_ordering::equal;
  if (a.kind != K::Exact && b.kind == K::Exact) {
    if (a.value > b.value) return std::strong_ordering::greater;
    return std::nullopt;
  }
  if (a.kind == K::Exact && b.kind != K::Exact) {
    if (b.value > a.value) return std::strong_ordering::less;
    return std::nullopt;
  }
  return std::nullopt;
}

// min over saturated generators of ord_H(f)/a, with ord_H from the (star)
// constant term.
template <class K>
MuValue mu_tilde(const Filtration<K>& F, const Point<K>& P, const LGS<K>& H, int T, bool validate = true) {
  if (!F.is_saturated()) throw PreconditionError("mu_tilde requires a D-saturated filtration");
  LocalFiltration<K> L(F, P);
  if (!L.in_support()) return MuValue::exact(Rational(0));
  if (validate) {
    int E = default_horizon(F.ring(), T);
    for (auto& en : H.entries) E = std::max(E, en.e);
    if (F.ring().ppow(E) <= T)
      if (auto err = validate_lgs(L, H.entries, E, T)) throw PreconditionError("not an LGS at the point: " + *err);
  }
  Expander<K> X(F.ring(), H, T);
  std::optional<Rational> exact, lower;
  for (auto& g : L.generators()) {
    OrdValue o = ord_h_expansion(X, g.f);
    if (o.is_exact()) {
      Rational r = Rational(o.n) / g.level;
      if (!exact || r < *exact) exact = r;
    } else if (o.is_censored()) {
      Rational r = Rational(o.n) / g.level;
      if (!lower || r < *lower) lower = r;
    }
  }
  if (exact && (!lower || *exact <= *lower)) return MuValue::exact(*exact);
  if (exact) return MuValue::at_least(*lower);
  return MuValue::infinity_up_to_T(lower ? *lower : Rational(T + 1));
}

template <class K>
MuValue mu_tilde(const Filtration<K>& F, const Point<K>& P, int T) {
  LocalFiltration<K> L(F, P);
  if (!L.in_support()) return MuValue::exact(Rational(0));
  LGS<K> H = extract_lgs(L, default_horizon(F.ring(), T), T);
  return mu_tilde(F, P, H, T, false);
}

// Same as check_coefficient_lemma_unchecked after verifying nu < mu~.
template <class K>
CoeffLemmaReport check_coefficient_lemma(const Filtration<K>& F, const Rational& a, const Rational& nu, const LGS<K>& H,
                                         int T) {
  if (!F.is_saturated()) throw PreconditionError("coefficient lemma requires a D-saturated filtration");
  if (nu < Rational(0)) throw PreconditionError("nu must be nonnegative");
  MuValue mu = mu_tilde(F, H.point, H, T);
  if (mu.kind != MuValue::Kind::InfinityUpToT && !(nu < mu.value))
    throw PreconditionError("nu >= mu~ (" + nu.str() + " vs " + mu.str() + ")");
  return check_coefficient_lemma_unchecked(F, a, nu, H, T);
}

template <class K>
struct IndependenceReport {
  std::vector<MuValue> mus;
  bool pass = true;
};

template <class K>
IndependenceReport<K> check_lgs_independence(const Filtration<K>& F, const Point<K>& P,
                                             const std::vector<LGS<K>>& candidates, int T) {
  IndependenceReport<K> rep;
  for (auto& H : candidates) rep.mus.push_back(mu_tilde(F, P, H, T));
  for (auto& m : rep.mus)
    if (!(m == rep.mus.front())) rep.pass = false;
  return rep;
}

// The linear move: h_l -> sum_{e_k = e_l} g_lk h_k + sum_{e_k < e_l} c_lk h_k^{p^{e_l - e_k}}
// with g invertible.
template <class K, class Rng>
LGS<K> lgs_linear_move(const Ring<K>& R, const LGS<K>& H, Rng& rng) {
  std::vector<LGSEntry<K>> out = H.entries;
  size_t i = 0;
  while (i < H.size()) {
    size_t j = i;
    while (j < H.size() && H.entries[j].e == H.entries[i].e) ++j;
    size_t n = j - i;
    int e = H.entries[i].e;
    Matrix<K> g;
    do {
      g.assign(n, std::vector<K>(n));
      for (auto& row : g)
        for (auto& x : row) x = R.ops().random(rng);
    } while (is_zero(determinant(g, R.ops().one())));
    for (size_t a = 0; a < n; ++a) {
      Poly<K> h;
      for (size_t b = 0; b < n; ++b) h += g[a][b] * H.entries[i + b].h;
      for (size_t k = 0; k < i; ++k) {
        K c = R.ops().random(rng);
        if (is_zero(c)) continue;
        h += c * Poly<K>::pow(H.entries[k].h, static_cast<uint64_t>(R.ppow(e - H.entries[k].e)));
      }
      out[i + a].h = h;
    }
    i = j;
  }
  return make_lgs(R, H.point, out);
}

// The perturbation move: h_l -> h_l + r * s with s a product of generators
// at level >= p^{e_l} and r in m, so that the leading form is unchanged.
template <class K, class Rng>
LGS<K> lgs_perturbation(const LocalFiltration<K>& L, const LGS<K>& H, Rng& rng, int max_extra_degree = 2) {
  const Ring<K>& R = L.ring();
  std::vector<LGSEntry<K>> out = H.entries;
  for (auto& en : out) {
    long long n = R.ppow(en.e);
    auto lps = L.level_products(Rational(n), static_cast<int>(n) + 4);
    if (lps.empty()) continue;
    const auto& lp = lps[rng() % lps.size()];
    Poly<K> s = L.product(lp);
    std::vector<typename Poly<K>::Term> ts;
    for (int t = 0; t < 3; ++t) {
      std::vector<int> ex(R.dim(), 0);
      int deg = 1 + static_cast<int>(rng() % max_extra_degree);
      for (int k = 0; k < deg; ++k) ++ex[rng() % R.dim()];
      ts.push_back({Monomial(ex), R.ops().random(rng)});
    }
    Poly<K> r = Poly<K>::from_terms(ts);
    en.h += r * s;
  }
  return make_lgs(R, H.point, out);
}

struct NeighborhoodGroupIdx {
  size_t limit;
  std::vector<size_t> members;
};

template <class K>
struct StratumRow {
  Point<K> point;
  SigmaValue sigma;
  MuValue mu;
  bool in_support = false;
  std::vector<int> tau;
};

template <class K>
struct SemicontinuityWitness {
  size_t limit, member;
  std::string reason;
};

template <class K>
struct StratifyReport {
  std::vector<StratumRow<K>> rows;
  bool pass = true;
  std::vector<SemicontinuityWitness<K>> witnesses;
  size_t undetermined = 0;
  // Purification at the max-sigma points.
  std::vector<size_t> purified_at;
  std::vector<std::string> purification_failures;
};

template <class K>
StratumRow<K> stratum_row(const Filtration<K>& F, const Point<K>& P, int E, int T) {
  StratumRow<K> row;
  row.point = P;
  LocalFiltration<K> L(F, P);
  row.in_support = L.in_support();
  row.sigma = sigma_local(L, E, T);
  if (!row.in_support) {
    row.mu = MuValue::exact(Rational(0));
    return row;
  }
  row.tau = pure_dims(L, E, T).l;
  LGS<K> H = extract_lgs(L, E, T);
  row.mu = mu_tilde(F, P, H, T, false);
  return row;
}

// Lexicographic (sigma, mu~) comparison; nullopt when mu is undetermined.
template <class K>
std::optional<std::strong_ordering> compare_rows(const StratumRow<K>& a, const StratumRow<K>& b) {
  auto c = compare_sigma(a.sigma, b.sigma);
  if (c != 0) return c;
  return compare_mu(a.mu, b.mu);
}

template <class K>
StratifyReport<K> stratify(const Filtration<K>& F, const std::vector<Point<K>>& points,
                           const std::vector<NeighborhoodGroupIdx>& groups, int E, int T) {
  if (!F.is_saturated()) throw PreconditionError("stratify requires a D-saturated filtration");
  StratifyReport<K> rep;
  for (auto& P : points) rep.rows.push_back(stratum_row(F, P, E, T));
  for (auto& g : groups) {
    for (size_t m : g.members) {
      auto c = compare_rows(rep.rows[m], rep.rows[g.limit]);
      if (!c) {
        ++rep.undetermined;
        continue;
      }
      if (*c > 0) {
        rep.pass = false;
        rep.witnesses.push_back({g.limit, m, "member exceeds limit point"});
      }
    }
  }
  // Purify an LGS from the first max-sigma support point at the others.
  std::optional<size_t> top;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    if (!rep.rows[i].in_support) continue;
    if (!top || compare_sigma(rep.rows[i].sigma, rep.rows[*top].sigma) > 0) top = i;
  }
  bool trivial = top && std::all_of(rep.rows[*top].sigma.sigma.begin(), rep.rows[*top].sigma.sigma.end(),
                                    [](int s) { return s == 0; });
  if (top && !trivial) {
    LGS<K> H = extract_lgs(LocalFiltration<K>(F, points[*top]), E, T);
    for (size_t i = 0; i < rep.rows.size(); ++i) {
      if (i == *top || !rep.rows[i].in_support || !(rep.rows[i].sigma == rep.rows[*top].sigma)) continue;
      try {
        LGS<K> Hq = purify_at(F, H, points[i], E, T);
        if (auto err = validate_lgs(LocalFiltration<K>(F, points[i]), Hq.entries, E, T))
          rep.purification_failures.push_back("purified system is not an LGS: " + *err);
        else if (!(mu_tilde(F, points[i], Hq, T, false) == rep.rows[i].mu))
          rep.purification_failures.push_back("mu~ with the purified system differs");
        rep.purified_at.push_back(i);
      } catch (const Error& ex) {
        rep.purification_failures.push_back(ex.what());
      }
    }
  }
  if (!rep.purification_failures.empty()) rep.pass = false;
  return rep;
}

template <class K>
struct NspReport {
  enum class Verdict { Applicable, NotApplicable, Refuted };
  Verdict verdict = Verdict::NotApplicable;
  MuValue mu;
  std::optional<LGS<K>> lgs;
  SigmaValue sigma;
  // Global polynomials whose common zero set is the claimed center;
  // empty when the normal form attempt did not resolve every entry.
  std::vector<Poly<K>> center;
  bool center_linear = false;
  std::vector<std::string> witnesses;
  std::vector<Point<K>> samples;
  std::vector<bool> sample_ok;
  bool coherent = true;  // ord_H of every generator is censored or infinite

  static const char* name(Verdict v) {
    switch (v) {
      case Verdict::Applicable: return "applicable";
      case Verdict::NotApplicable: return "not-applicable";
      default: return "refuted";
    }
  }
};

// g with g^{p^e} = h, if h is a p^e-th power.
template <class K>
std::optional<Poly<K>> frobenius_root_poly(const Ring<K>& R, const Poly<K>& h, int e) {
  long long q = R.ppow(e);
  std::vector<typename Poly<K>::Term> ts;
  for (auto& [m, c] : h.terms()) {
    Monomial r;
    for (int l = 0; l < R.dim(); ++l) {
      if (m.e[l] % q) return std::nullopt;
      r.e[l] = static_cast<uint16_t>(m.e[l] / q);
    }
    r.deg = static_cast<uint16_t>(m.deg / q);
    ts.push_back({r, R.ops().frobenius_root(c, e)});
  }
  return Poly<K>::from_terms(ts);
}

template <class K, class Rng>
NspReport<K> check_nsp(const Filtration<K>& F, const Point<K>& P, int E, int T, std::vector<Point<K>> samples, Rng& rng,
                       int auto_samples = 5) {
  const Ring<K>& R = F.ring();
  if (!F.is_saturated()) throw PreconditionError("check_nsp requires a D-saturated filtration");
  using V = typename NspReport<K>::Verdict;
  NspReport<K> rep;
  LocalFiltration<K> L(F, P);
  rep.sigma = sigma_local(L, E, T);
  if (!L.in_support()) {
    rep.mu = MuValue::exact(Rational(0));
    return rep;
  }
  LGS<K> H = extract_lgs(L, E, T);
  rep.lgs = H;
  rep.mu = mu_tilde(F, P, H, T, false);
  if (!rep.mu.is_infinite()) return rep;
  rep.verdict = V::Applicable;
  Expander<K> X(R, H, T);
  for (auto& g : L.generators()) {
    auto Ex = X.expand_local(g.f);
    for (auto& [B, aB] : Ex.a) {
      if (!(Rational(Ex.weight(B)) < g.level)) continue;
      rep.verdict = V::Refuted;
      std::string Bs;
      for (int b : B) Bs += (Bs.empty() ? "" : ",") + std::to_string(b);
      rep.witnesses.push_back("f=" + format_poly(R, translate(R, g.f, negate_point(P))) + " a=" + g.level.str() +
                              " B=(" + Bs + ") a_B=" + format_poly(R, aB));
    }
    OrdValue o = ord_h_membership(R, g.f, H, T);
    if (o.is_exact()) rep.coherent = false;
  }
  if (rep.verdict == V::Refuted) return rep;
  // Normal form attempt: each entry, reduced against the lower ones, should
  // be the p^e-th power of a regular parameter.
  Point<K> back = negate_point(P);
  bool resolved = true, linear = true;
  for (size_t l = 0; l < H.size(); ++l) {
    Poly<K> h = H.entries[l].h;
    std::vector<LGSEntry<K>> lower;
    for (size_t k = 0; k < l; ++k)
      if (H.entries[k].e < H.entries[l].e) lower.push_back(H.entries[k]);
    auto root = frobenius_root_poly(R, h, H.entries[l].e);
    if (!root && !lower.empty()) {
      LGS<K> Hl = make_lgs(R, P, lower);
      Expander<K> Xl(R, Hl, T);
      Poly<K> aO = Xl.to_local(Xl.expand_local(h).a_O(), T);
      root = frobenius_root_poly(R, aO, H.entries[l].e);
    }
    if (!root) {
      resolved = false;
      break;
    }
    if (root->degree() > 1) linear = false;
    rep.center.push_back(translate(R, *root, back));
  }
  if (!resolved) rep.center.clear();
  rep.center_linear = resolved && linear;
  if (rep.center_linear && samples.empty()) {
    // Random points on the linear center.
    Matrix<K> A;
    std::vector<K> rhs;
    for (auto& c : rep.center) {
      std::vector<K> row(R.dim(), R.ops().zero());
      K c0 = R.ops().zero();
      for (auto& [m, v] : c.terms()) {
        if (m.deg == 0) c0 = v;
        else
          for (int j = 0; j < R.dim(); ++j)
            if (m.e[j]) row[j] = v;
      }
      A.push_back(row);
      rhs.push_back(-c0);
    }
    auto rr = row_reduce(A);
    // Distinct points while the field has enough of them.
    for (int s = 0, tries = 0; s < auto_samples && tries < 16 * auto_samples; ++tries) {
      Point<K> Q(R.dim());
      std::vector<bool> piv(R.dim(), false);
      for (int c : rr.pivot_cols) piv[c] = true;
      for (int j = 0; j < R.dim(); ++j) Q[j] = piv[j] ? R.ops().zero() : R.ops().random(rng);
      // Solve for the pivot coordinates.
      if (!solve(A, rhs, R.dim())) break;
      std::vector<K> b = rhs;
      for (size_t i = 0; i < A.size(); ++i)
        for (int j = 0; j < R.dim(); ++j)
          if (!piv[j]) b[i] = b[i] - A[i][j] * Q[j];
      Matrix<K> Ap;
      for (auto& row : A) {
        std::vector<K> r;
        for (int c : rr.pivot_cols) r.push_back(row[c]);
        Ap.push_back(r);
      }
      auto x = solve(Ap, b, rr.pivot_cols.size());
      if (!x) break;
      for (size_t k = 0; k < rr.pivot_cols.size(); ++k) Q[rr.pivot_cols[k]] = (*x)[k];
      bool seen = std::find(samples.begin(), samples.end(), Q) != samples.end();
      if (seen && tries + 1 < 16 * auto_samples) continue;
      samples.push_back(Q);
      ++s;
    }
  }
  for (auto& Q : samples) {
    bool on = true;
    for (auto& c : rep.center) on = on && is_zero(evaluate(R, c, Q));
    LocalFiltration<K> LQ(F, Q);
    bool ok = on && LQ.in_support() && sigma_local(LQ, E, T) == rep.sigma;
    rep.samples.push_back(Q);
    rep.sample_ok.push_back(ok);
    if (!ok) {
      rep.verdict = V::Refuted;
      rep.witnesses.push_back("sample point off support or with different sigma");
    }
  }
  return rep;
}

}  // namespace idfilt

#endif
