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

#ifndef IDFILT_LEADING_HPP
#define IDFILT_LEADING_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "filtration.hpp"

namespace idfilt {

// Default horizon: the largest E with p^E <= T.
template <class K>
int default_horizon(const Ring<K>& R, int T) {
  if (R.characteristic() == 0) return 0;
  int E = 0;
  while (R.ppow(E + 1) <= T) ++E;
  return E;
}

// Echelon form of the degree-p^e parts of the level-p^e slice.
template <class K>
Echelon<K> leading_space(const LocalFiltration<K>& L, int e) {
  const Ring<K>& R = L.ring();
  int n = static_cast<int>(R.ppow(e));
  const Slice<K>& s = L.slice(Rational(n), n);
  size_t b = s.basis->degree_begin(n), end = s.basis->degree_end(n);
  Echelon<K> ech(end - b);
  for (auto& row : s.ech.rows()) ech.insert(std::vector<K>(row.begin() + b, row.begin() + end));
  return ech;
}

template <class K>
int leading_dim(const LocalFiltration<K>& L, int e, int T) {
  if (L.ring().ppow(e) > T) throw CensoringError("p^e exceeds the truncation order");
  return static_cast<int>(leading_space(L, e).rank());
}

// Number of monomials prod v^b of degree p^e in variables of weight
// p^{e_i} (one per unit of increment at jump e_i < e), excluding the
// single-variable ones.
inline int mixed_count(const std::vector<std::pair<int, int>>& jumps, int e, long long p) {
  long long target = 1;
  for (int i = 0; i < e; ++i) target *= p;
  std::vector<long long> ways(target + 1, 0);
  ways[0] = 1;
  long long singles = 0;
  for (auto& [ei, inc] : jumps) {
    if (ei >= e) throw PreconditionError("mixed_count: jump not below e");
    long long w = 1;
    for (int i = 0; i < ei; ++i) w *= p;
    for (int v = 0; v < inc; ++v) {
      for (long long s = w; s <= target; ++s) ways[s] += ways[s - w];
      ++singles;
    }
  }
  return static_cast<int>(ways[target] - singles);
}

struct LeadingDims {
  std::vector<int> l, mixed, pure;
  std::vector<std::pair<int, int>> jumps;  // (e, increment of l^pure)
};

template <class K>
LeadingDims pure_dims(const LocalFiltration<K>& L, int E, int T) {
  const Ring<K>& R = L.ring();
  if (R.characteristic() == 0 && E > 0) throw DomainError("characteristic zero has only the e = 0 layer");
  if (R.ppow(E) > T) throw CensoringError("p^E exceeds the truncation order");
  LeadingDims D;
  int d = R.dim();
  for (int e = 0; e <= E; ++e) {
    Echelon<K> space = leading_space(L, e);
    int l = static_cast<int>(space.rank());
    int mixed = e == 0 ? 0 : mixed_count(D.jumps, e, R.characteristic());
    int pure = l - mixed;
    // Direct intersection with span{x_j^{p^e}}.
    int n = static_cast<int>(R.ppow(e));
    auto B = JetBasis::get(d, n);
    size_t b = B->degree_begin(n);
    Echelon<K> both = space;
    for (int j = 0; j < d; ++j) {
      std::vector<K> v(space.ncols(), K{});
      v[B->index(Monomial::var(j, n)) - b] = R.ops().one();
      both.insert(v);
    }
    int direct = l + d - static_cast<int>(both.rank());
    if (direct != pure)
      throw InvariantViolation("pure part mismatch at e=" + std::to_string(e) + ": l - l_mixed = " +
                               std::to_string(pure) + ", direct = " + std::to_string(direct));
    int prev = D.pure.empty() ? 0 : D.pure.back();
    if (pure < prev) throw InvariantViolation("pure dimension decreased");
    if (pure > prev) D.jumps.push_back({e, pure - prev});
    D.l.push_back(l);
    D.mixed.push_back(mixed);
    D.pure.push_back(pure);
  }
  return D;
}

struct SigmaValue {
  std::vector<int> sigma;
  int E = 0;
  bool censored = false;
  friend bool operator==(const SigmaValue& a, const SigmaValue& b) { return a.sigma == b.sigma && a.E == b.E; }
};

inline std::strong_ordering compare_sigma(const SigmaValue& a, const SigmaValue& b) {
  if (a.E != b.E) throw PreconditionError("sigma values with different horizons");
  return a.sigma <=> b.sigma;
}

template <class K>
SigmaValue sigma_local(const LocalFiltration<K>& L, int E, int T) {
  if (!L.is_saturated()) throw PreconditionError("sigma requires a D-saturated filtration");
  SigmaValue s;
  s.E = E;
  if (L.ring().ppow(E) > T) throw CensoringError("p^E exceeds the truncation order");
  if (!L.in_support()) {
    s.sigma.assign(E + 1, 0);
    return s;
  }
  auto D = pure_dims(L, E, T);
  for (int e = 0; e <= E; ++e) s.sigma.push_back(L.ring().dim() - D.pure[e]);
  return s;
}

template <class K>
SigmaValue sigma(const Filtration<K>& F, const Point<K>& P, int E, int T) {
  return sigma_local(LocalFiltration<K>(F, P), E, T);
}

template <class K>
struct LGSEntry {
  Poly<K> h;  // local coordinates at the base point
  int e = 0;
};

// Leading generator system at a point. y = C x are coordinates in which the
// leading form of h_l is y_l^{p^{e_l}}.
template <class K>
struct LGS {
  Point<K> point;
  std::vector<LGSEntry<K>> entries;
  Matrix<K> C;

  size_t size() const { return entries.size(); }
  std::vector<long long> weights(const Ring<K>& R) const {
    std::vector<long long> w;
    for (auto& en : entries) w.push_back(R.ppow(en.e));
    return w;
  }
};

// Coefficients of x_j^{p^e} in h if h is in m^{p^e} with pure degree-p^e part.
template <class K>
std::optional<std::vector<K>> pure_lead(const Ring<K>& R, const Poly<K>& h, int e) {
  int n = static_cast<int>(R.ppow(e));
  if (h.is_zero() || h.ord() < n) return std::nullopt;
  std::vector<K> w(R.dim(), K{});
  bool any = false;
  for (auto& [m, c] : h.terms()) {
    if (m.deg != n) break;
    int var = -1;
    for (int j = 0; j < R.dim(); ++j)
      if (m.e[j] == n) var = j;
    if (var < 0) return std::nullopt;
    w[var] = c;
    any = true;
  }
  if (!any) return std::nullopt;
  return w;
}

template <class K>
std::vector<K> frobenius_vector(const Ring<K>& R, std::vector<K> w, int k) {
  for (auto& x : w) x = R.ops().frobenius(x, k);
  return w;
}

// Associated coordinates for the given entries: Frobenius roots of the pure
// leading vectors, completed by standard basis vectors.
template <class K>
Matrix<K> associated_coordinates(const Ring<K>& R, const std::vector<LGSEntry<K>>& entries) {
  int d = R.dim();
  Matrix<K> C;
  Echelon<K> ech(d);
  for (auto& en : entries) {
    auto w = pure_lead(R, en.h, en.e);
    if (!w) throw PreconditionError("LGS entry with non-pure leading form");
    std::vector<K> v(d);
    for (int j = 0; j < d; ++j) v[j] = R.ops().frobenius_root((*w)[j], en.e);
    if (ech.insert(v) < 0) throw PreconditionError("LGS leading forms are dependent");
    C.push_back(v);
  }
  for (int j = 0; j < d && int(C.size()) < d; ++j) {
    std::vector<K> v(d, K{});
    v[j] = R.ops().one();
    if (ech.insert(v) >= 0) C.push_back(v);
  }
  for (auto& row : C)
    for (auto& x : row)
      if (is_zero(x)) x = R.ops().zero();
  return C;
}

template <class K>
LGS<K> make_lgs(const Ring<K>& R, const Point<K>& P, std::vector<LGSEntry<K>> entries) {
  for (size_t i = 1; i < entries.size(); ++i)
    if (entries[i].e < entries[i - 1].e) throw PreconditionError("LGS entries must be sorted by level");
  LGS<K> H;
  H.point = P;
  H.C = associated_coordinates(R, entries);
  H.entries = std::move(entries);
  return H;
}

template <class K>
Point<K> negate_point(const Point<K>& P) {
  Point<K> r = P;
  for (auto& x : r) x = -x;
  return r;
}

// Checks the LGS conditions of H at L's point up to horizon E. Returns the
// first failure, or nullopt.
template <class K>
std::optional<std::string> validate_lgs(const LocalFiltration<K>& L, const std::vector<LGSEntry<K>>& entries,
                                        int E, int T) {
  const Ring<K>& R = L.ring();
  for (size_t i = 0; i < entries.size(); ++i) {
    auto& en = entries[i];
    if (i && en.e < entries[i - 1].e) return "entries not sorted by level";
    if (en.e > E) return "entry beyond the horizon";
    if (!L.contains(en.h, Rational(R.ppow(en.e)), T)) return "entry " + std::to_string(i) + " not in the filtration";
    if (!pure_lead(R, en.h, en.e)) return "entry " + std::to_string(i) + " has non-pure leading form";
  }
  auto D = pure_dims(L, E, T);
  for (int e = 0; e <= E; ++e) {
    Echelon<K> ech(R.dim());
    int count = 0;
    for (auto& en : entries) {
      if (en.e > e) continue;
      ++count;
      if (ech.insert(frobenius_vector(R, *pure_lead(R, en.h, en.e), e - en.e)) < 0)
        return "Frobenius powers dependent at e=" + std::to_string(e);
    }
    if (count != D.pure[e]) return "entry count differs from pure dimension at e=" + std::to_string(e);
  }
  return std::nullopt;
}

template <class K>
LGS<K> extract_lgs(const LocalFiltration<K>& L, int E, int T) {
  const Ring<K>& R = L.ring();
  if (!L.is_saturated()) throw PreconditionError("extract_lgs requires a D-saturated filtration");
  if (!L.in_support()) throw PreconditionError("extract_lgs requires a point in the support");
  int d = R.dim();
  auto D = pure_dims(L, E, T);
  std::vector<LGSEntry<K>> entries;
  for (int e = 0; e <= E; ++e) {
    int n = static_cast<int>(R.ppow(e));
    int want = D.pure[e] - (e ? D.pure[e - 1] : 0);
    if (want == 0) continue;
    auto lps = L.level_products(Rational(n), n);
    std::vector<Poly<K>> cands;
    for (auto& lp : lps)
      if (lp.ord == n) cands.push_back(L.product(lp));
    auto B = JetBasis::get(d, n);
    size_t b0 = B->degree_begin(n), b1 = B->degree_end(n);
    // Mixed-part matrix: rows are non-pure monomials of degree n.
    Matrix<K> mixed;
    for (size_t i = b0; i < b1; ++i) {
      const Monomial& m = B->monomial(i);
      bool pure = false;
      for (int j = 0; j < d; ++j) pure = pure || m.e[j] == n;
      if (pure) continue;
      std::vector<K> row;
      for (auto& c : cands) row.push_back(c.coeff(m));
      mixed.push_back(row);
    }
    Echelon<K> span(d);
    for (auto& en : entries) span.insert(frobenius_vector(R, *pure_lead(R, en.h, en.e), e - en.e));
    int got = 0;
    for (auto& kv : nullspace(mixed, cands.size(), R.ops().one())) {
      if (got == want) break;
      Poly<K> h;
      for (size_t k = 0; k < cands.size(); ++k)
        if (!is_zero(kv[k])) h += kv[k] * cands[k];
      auto w = pure_lead(R, h, e);
      if (!w) continue;
      if (span.insert(*w) < 0) continue;
      entries.push_back({h, e});
      ++got;
    }
    if (got != want)
      throw InvariantViolation("pure part at e=" + std::to_string(e) + " not realized by slice elements");
  }
  LGS<K> H = make_lgs(R, L.point(), entries);
  if (auto err = validate_lgs(L, H.entries, E, T)) throw InvariantViolation("extracted LGS invalid: " + *err);
  return H;
}

// Multi-indices B over the entries of H with |[B]| = n, supported on
// entries with e < e_max, and no single factor of weight n.
template <class K>
std::vector<std::vector<int>> mixed_indices(const Ring<K>& R, const LGS<K>& H, int e_max, long long n) {
  std::vector<std::vector<int>> out;
  auto w = H.weights(R);
  std::vector<int> B(H.size(), 0);
  std::function<void(size_t, long long)> rec = [&](size_t l, long long left) {
    if (l == H.size()) {
      if (left != 0) return;
      for (size_t k = 0; k < B.size(); ++k)
        if (w[k] * B[k] == n) return;
      out.push_back(B);
      return;
    }
    if (H.entries[l].e >= e_max) {
      rec(l + 1, left);
      return;
    }
    for (long long b = left / w[l]; b >= 0; --b) {
      B[l] = static_cast<int>(b);
      rec(l + 1, left - b * w[l]);
    }
    B[l] = 0;
  };
  rec(0, n);
  return out;
}

template <class K>
Poly<K> lgs_power(const std::vector<Poly<K>>& hs, const std::vector<int>& B, const K& one,
                  int T = std::numeric_limits<int>::max()) {
  Poly<K> r = Poly<K>::constant(one);
  for (size_t l = 0; l < B.size(); ++l)
    if (B[l]) r = Poly<K>::mul(r, Poly<K>::pow(hs[l], B[l], T), T);
  return r;
}

// Modifies H (an LGS at P) so that its leading forms at Q are pure.
template <class K>
LGS<K> purify_at(const Filtration<K>& F, const LGS<K>& H, const Point<K>& Q, int E, int T) {
  const Ring<K>& R = F.ring();
  LocalFiltration<K> LP(F, H.point), LQ(F, Q);
  if (!LQ.in_support()) throw PreconditionError("purify_at: Q not in the support");
  if (!(sigma_local(LP, E, T) == sigma_local(LQ, E, T))) throw PreconditionError("purify_at: sigma(Q) != sigma(P)");
  int d = R.dim();
  Point<K> back = negate_point(H.point);
  std::vector<Poly<K>> global;
  for (auto& en : H.entries) global.push_back(translate(R, en.h, back));
  std::vector<LGSEntry<K>> out;
  for (size_t i = 0; i < H.size(); ++i) {
    int e = H.entries[i].e;
    int n = static_cast<int>(R.ppow(e));
    auto mix = mixed_indices(R, H, e, n);
    if (mix.empty()) {
      out.push_back({translate(R, global[i], Q), e});
      continue;
    }
    // Taylor coefficients at Q of the degree-n mixed monomials.
    std::vector<Monomial> mixX;
    for (auto& m : monomials_of_degree(d, n)) {
      bool pure = false;
      for (int j = 0; j < d; ++j) pure = pure || m.e[j] == n;
      if (!pure) mixX.push_back(m);
    }
    std::vector<Poly<K>> HB;
    for (auto& B : mix) HB.push_back(translate(R, lgs_power(global, B, R.ops().one()), Q, n));
    Poly<K> hQ = translate(R, global[i], Q, n);
    Matrix<K> A;
    std::vector<K> rhs;
    for (auto& I : mixX) {
      std::vector<K> row;
      for (auto& p : HB) row.push_back(p.coeff(I));
      A.push_back(row);
      rhs.push_back(hQ.coeff(I));
    }
    if (rank(A) != mix.size()) throw InvariantViolation("purification system singular");
    auto c = solve(A, rhs, mix.size());
    if (!c) throw InvariantViolation("purification system inconsistent");
    Poly<K> h = global[i];
    for (size_t k = 0; k < mix.size(); ++k)
      if (!is_zero((*c)[k])) h -= (*c)[k] * lgs_power(global, mix[k], R.ops().one());
    out.push_back({translate(R, h, Q), e});
  }
  return make_lgs(R, Q, out);
}

struct PurityRow {
  bool in_filtration = true;   // (1)
  bool sigma_bounded = true;   // (2)
  bool lgs_at_point = true;    // (4), only where sigma(Q) = sigma(P) and Q in Supp
  bool checked_lgs = false;
  std::string failure;
  bool pass() const { return in_filtration && sigma_bounded && lgs_at_point; }
};

// Condition (3) concerns openness and is not observable on a finite sample.
template <class K>
std::vector<PurityRow> check_uniform_purity(const Filtration<K>& F, const LGS<K>& H, const std::vector<Point<K>>& points,
                                            int E, int T) {
  const Ring<K>& R = F.ring();
  std::vector<PurityRow> rows;
  SigmaValue sP = sigma(F, H.point, E, T);
  Point<K> back = negate_point(H.point);
  for (auto& Q : points) {
    PurityRow row;
    LocalFiltration<K> LQ(F, Q);
    std::vector<LGSEntry<K>> atQ;
    for (auto& en : H.entries) atQ.push_back({translate(R, translate(R, en.h, back), Q), en.e});
    for (auto& en : atQ)
      if (!LQ.contains(en.h, Rational(R.ppow(en.e)), T)) {
        row.in_filtration = false;
        row.failure = "condition (1): entry not in the filtration at Q";
      }
    SigmaValue sQ = sigma_local(LQ, E, T);
    if (compare_sigma(sQ, sP) > 0) {
      row.sigma_bounded = false;
      if (row.failure.empty()) row.failure = "condition (2): sigma(Q) > sigma(P)";
    }
    if (sQ == sP && LQ.in_support()) {
      row.checked_lgs = true;
      if (auto err = validate_lgs(LQ, atQ, E, T)) {
        row.lgs_at_point = false;
        if (row.failure.empty()) row.failure = "condition (4): " + *err;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace idfilt

#endif
