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

#ifndef IDFILT_EXPANSION_HPP
#define IDFILT_EXPANSION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leading.hpp"

namespace idfilt {

using MultiIndex = std::vector<int>;

inline long long weight_of(const MultiIndex& B, const std::vector<long long>& w) {
  long long s = 0;
  for (size_t l = 0; l < B.size(); ++l) s += w[l] * B[l];
  return s;
}

// [B] as an exponent vector in the first N coordinates.
inline Monomial bracket(const MultiIndex& B, const std::vector<long long>& w) {
  Monomial m;
  for (size_t l = 0; l < B.size(); ++l) {
    m.e[l] = static_cast<uint16_t>(w[l] * B[l]);
    m.deg = static_cast<uint16_t>(m.deg + m.e[l]);
  }
  return m;
}

// f = sum_B a_B H^B modulo m^{T+1}, in the expansion coordinates.
template <class K>
struct Expansion {
  std::map<MultiIndex, Poly<K>> a;
  std::vector<long long> w;
  int T = 0;

  long long weight(const MultiIndex& B) const { return weight_of(B, w); }
  Poly<K> a_O() const {
    auto it = a.find(MultiIndex(w.size(), 0));
    return it == a.end() ? Poly<K>() : it->second;
  }
  // Every coefficient only involves y_l^k with k < p^{e_l} for l <= N.
  bool in_window() const {
    for (auto& [B, aB] : a)
      for (auto& [m, c] : aB.terms())
        for (size_t l = 0; l < w.size(); ++l)
          if (m.e[l] >= w[l]) return false;
    return true;
  }
};

// Precomputed data for expanding jets with respect to an LGS in a fixed
// coordinate system y = coords * x.
template <class K>
class Expander {
 public:
  Expander(const Ring<K>& R, const LGS<K>& H, int T) : Expander(R, H, H.C, T) {}

  Expander(const Ring<K>& R, const LGS<K>& H, Matrix<K> coords, int T)
      : R_(R), H_(H), C_(std::move(coords)), T_(T), w_(H.weights(R)) {
    auto inv = inverse(C_, R.ops().one());
    if (!inv) throw PreconditionError("coordinate change is not invertible");
    Cinv_ = *inv;
    for (auto& en : H.entries) hy_.push_back(linear_substitute(R, en.h, Cinv_, T));
    basis_ = JetBasis::get(R.dim(), T);
    build();
  }

  const Ring<K>& ring() const { return R_; }
  const LGS<K>& lgs() const { return H_; }
  int T() const { return T_; }
  const std::vector<long long>& weights() const { return w_; }
  const std::vector<Poly<K>>& h_new() const { return hy_; }
  bool associated() const { return associated_; }

  Poly<K> to_new(const Poly<K>& f_local) const { return linear_substitute(R_, f_local, Cinv_, T_); }
  Poly<K> to_local(const Poly<K>& g_new, int T = std::numeric_limits<int>::max()) const {
    return linear_substitute(R_, g_new, C_, T);
  }

  // H^B in the expansion coordinates, truncated at T.
  const Poly<K>& power(const MultiIndex& B) const {
    auto it = powers_.find(B);
    if (it != powers_.end()) return it->second;
    Poly<K> r;
    size_t l = 0;
    while (l < B.size() && B[l] == 0) ++l;
    if (l == B.size()) {
      r = Poly<K>::constant(R_.ops().one());
    } else {
      MultiIndex prev = B;
      --prev[l];
      r = Poly<K>::mul(power(prev), hy_[l], T_);
    }
    return powers_.emplace(B, r).first->second;
  }

  // Expansion of g, given in the expansion coordinates.
  Expansion<K> expand_new(const Poly<K>& g) const {
    Expansion<K> out;
    out.w = w_;
    out.T = T_;
    const JetBasis& JB = *basis_;
    std::vector<K> r = JB.dense(g.truncated(T_));
    std::map<MultiIndex, std::vector<typename Poly<K>::Term>> acc;
    for (int s = 0; s <= T_; ++s) {
      size_t b0 = JB.degree_begin(s), b1 = JB.degree_end(s);
      std::vector<K> c(r.begin() + b0, r.begin() + b1);
      if (!associated_) {
        std::vector<K> t(c.size(), K{});
        const auto& M = degree_inverse_[s];
        for (size_t i = 0; i < c.size(); ++i)
          for (size_t j = 0; j < c.size(); ++j)
            if (!is_zero(M[i][j]) && !is_zero(c[j])) t[i] = t[i] + M[i][j] * c[j];
        c = t;
      }
      for (size_t i = 0; i < c.size(); ++i) {
        if (is_zero(c[i])) continue;
        const Piece& pc = pieces_[b0 + i];
        for (auto& [k, v] : pc.psi) r[k] = r[k] - c[i] * v;
        acc[pc.B].push_back({pc.rest, c[i]});
      }
    }
    for (auto& x : r)
      if (!is_zero(x)) throw InvariantViolation("expansion residue not exhausted");
    for (auto& [B, ts] : acc) {
      Poly<K> p = Poly<K>::from_terms(std::move(ts));
      if (!p.is_zero()) out.a.emplace(B, std::move(p));
    }
    return out;
  }

  Expansion<K> expand_local(const Poly<K>& f_local) const { return expand_new(to_new(f_local)); }

  Poly<K> reassemble(const Expansion<K>& E) const {
    Poly<K> s;
    for (auto& [B, aB] : E.a) s += Poly<K>::mul(aB, power(B), T_);
    return s;
  }

 private:
  // Decomposition of the exponent I = [B] + K + J and the sparse jet of
  // Y^{K+J} H^B.
  struct Piece {
    MultiIndex B;
    Monomial rest;
    std::vector<std::pair<size_t, K>> psi;
  };

  void build() {
    const JetBasis& JB = *basis_;
    size_t N = H_.size();
    associated_ = true;
    pieces_.resize(JB.size());
    for (size_t i = 0; i < JB.size(); ++i) {
      const Monomial& I = JB.monomial(i);
      Piece pc;
      pc.B.assign(N, 0);
      pc.rest = I;
      for (size_t l = 0; l < N; ++l) {
        pc.B[l] = static_cast<int>(I.e[l] / w_[l]);
        pc.rest.e[l] = static_cast<uint16_t>(I.e[l] % w_[l]);
      }
      pc.rest.deg = 0;
      for (auto x : pc.rest.e) pc.rest.deg = static_cast<uint16_t>(pc.rest.deg + x);
      Poly<K> psi = power(pc.B).shifted(pc.rest).truncated(T_);
      for (auto& [m, c] : psi.terms()) {
        pc.psi.push_back({static_cast<size_t>(JB.index(m)), c});
        if (m.deg == I.deg && (m != I || c != R_.ops().one())) associated_ = false;
        if (m.deg < I.deg) associated_ = false;
      }
      if (psi.coeff(I) != R_.ops().one()) associated_ = false;
      pieces_[i] = std::move(pc);
    }
    if (associated_) return;
    degree_inverse_.resize(T_ + 1);
    for (int s = 0; s <= T_; ++s) {
      size_t b0 = JB.degree_begin(s), b1 = JB.degree_end(s), n = b1 - b0;
      Matrix<K> M(n, std::vector<K>(n, K{}));
      for (size_t j = 0; j < n; ++j)
        for (auto& [k, v] : pieces_[b0 + j].psi) {
          if (k < b0) throw PreconditionError("coordinates not weakly associated");
          if (k < b1) M[k - b0][j] = v;
        }
      auto inv = inverse(M, R_.ops().one());
      if (!inv) throw PreconditionError("coordinates not weakly associated");
      degree_inverse_[s] = *inv;
    }
  }

  const Ring<K>& R_;
  LGS<K> H_;
  Matrix<K> C_, Cinv_;
  int T_;
  std::vector<long long> w_;
  std::vector<Poly<K>> hy_;
  std::shared_ptr<const JetBasis> basis_;
  std::vector<Piece> pieces_;
  bool associated_ = true;
  std::vector<Matrix<K>> degree_inverse_;
  mutable std::map<MultiIndex, Poly<K>> powers_;
};

// In the LGS coordinates each h_l is y_l^{p^{e_l}} modulo m^{p^{e_l}+1}.
template <class K>
bool check_associated(const Ring<K>& R, const LGS<K>& H) {
  auto inv = inverse(H.C, R.ops().one());
  if (!inv) return false;
  for (size_t l = 0; l < H.size(); ++l) {
    int n = static_cast<int>(R.ppow(H.entries[l].e));
    if (int(l) >= R.dim()) return false;
    Poly<K> hy = linear_substitute(R, H.entries[l].h, *inv, n);
    if (hy != Poly<K>::monomial(Monomial::var(static_cast<int>(l), n), R.ops().one())) return false;
  }
  return true;
}

// det[coefficient of y_i^{p^e} in h_l^{p^{e-e_l}}]_{i,l <= L_e} != 0 for
// every level e of H.
template <class K>
bool check_weakly_associated(const Ring<K>& R, const LGS<K>& H, const Matrix<K>& coords) {
  auto inv = inverse(coords, R.ops().one());
  if (!inv) return false;
  std::set<int> levels;
  for (auto& en : H.entries) levels.insert(en.e);
  for (int e : levels) {
    int n = static_cast<int>(R.ppow(e));
    std::vector<size_t> idx;
    for (size_t l = 0; l < H.size(); ++l)
      if (H.entries[l].e <= e) idx.push_back(l);
    if (idx.size() > size_t(R.dim())) return false;
    Matrix<K> M(idx.size(), std::vector<K>(idx.size(), K{}));
    for (size_t c = 0; c < idx.size(); ++c) {
      auto& en = H.entries[idx[c]];
      Poly<K> hy = linear_substitute(R, en.h, *inv, n);
      Poly<K> pw = Poly<K>::pow(hy, static_cast<uint64_t>(R.ppow(e - en.e)), n);
      for (size_t i = 0; i < idx.size(); ++i) M[i][c] = pw.coeff(Monomial::var(static_cast<int>(i), n));
    }
    if (is_zero(determinant(M, R.ops().one()))) return false;
  }
  return true;
}

template <class K>
Expansion<K> expand(const Ring<K>& R, const Poly<K>& f_local, const LGS<K>& H, int T) {
  return Expander<K>(R, H, T).expand_local(f_local);
}

template <class K>
OrdValue ord_h_expansion(const Expander<K>& X, const Poly<K>& f_local) {
  if (f_local.is_zero()) return OrdValue::infinity();
  Poly<K> aO = X.expand_local(f_local).a_O();
  if (aO.is_zero()) return OrdValue::at_least(X.T() + 1);
  return OrdValue::exact(aO.ord());
}

template <class K>
OrdValue ord_h_expansion(const Ring<K>& R, const Poly<K>& f_local, const LGS<K>& H, int T) {
  return ord_h_expansion(Expander<K>(R, H, T), f_local);
}

// The ideal (h_1..h_N) + m^{T+1} as a row-reduced jet space.
template <class K>
Slice<K> lgs_ideal(const Ring<K>& R, const std::vector<Poly<K>>& hs, int T) {
  Slice<K> s;
  s.basis = JetBasis::get(R.dim(), T);
  s.ech = Echelon<K>(s.basis->size());
  LocalFiltration<K>::close_ideal(s, [&](auto&& add) {
    for (auto& h : hs) add(h.truncated(T));
  });
  return s;
}

// Largest n <= T+1 with f in m^n + (H).
template <class K>
OrdValue ord_h_membership(const Ring<K>& R, const Poly<K>& f_local, const LGS<K>& H, int T) {
  if (f_local.is_zero()) return OrdValue::infinity();
  std::vector<Poly<K>> hs;
  for (auto& en : H.entries) hs.push_back(en.h);
  Slice<K> s = lgs_ideal(R, hs, T);
  std::vector<K> v = s.basis->dense(f_local.truncated(T));
  s.ech.reduce(v);
  for (size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) return OrdValue::exact(s.basis->monomial(i).deg);
  return OrdValue::at_least(T + 1);
}

struct CoefficientCheck {
  MultiIndex B;
  long long weight = 0;
  Rational level;
  bool member = true;
  bool ord_ok = true;
  bool ord_censored = false;
};

struct FclReport {
  int T = 0;
  bool pass = true;
  std::vector<CoefficientCheck> coefficients;
  std::vector<MultiIndex> failures;
};

// Every coefficient a_B of f lies at level a - |[B]|, modulo m^{T+1-|[B]|}.
template <class K>
FclReport check_fcl(const Filtration<K>& F, const Poly<K>& f_local, const Rational& a, const LGS<K>& H, int T) {
  if (!F.is_saturated()) throw PreconditionError("check_fcl requires a D-saturated filtration");
  LocalFiltration<K> L(F, H.point);
  if (!L.contains(f_local, a, T)) throw PreconditionError("check_fcl: (f, a) is not in the filtration");
  Expander<K> X(F.ring(), H, T);
  return check_fcl(L, X, f_local, a);
}

template <class K>
FclReport check_fcl(const LocalFiltration<K>& L, const Expander<K>& X, const Poly<K>& f_local, const Rational& a) {
  FclReport rep;
  rep.T = X.T();
  auto E = X.expand_local(f_local);
  for (auto& [B, aB] : E.a) {
    CoefficientCheck c;
    c.B = B;
    c.weight = E.weight(B);
    c.level = a - Rational(c.weight);
    int prec = X.T() - static_cast<int>(c.weight);
    c.member = L.contains(X.to_local(aB, prec), c.level, prec);
    if (!c.member) {
      rep.pass = false;
      rep.failures.push_back(B);
    }
    rep.coefficients.push_back(c);
  }
  return rep;
}

struct FclStep {
  int ord = 0;
  MultiIndex B;
  bool in_ideal = true;   // (0)_n
  bool member = true;     // (1)_n
  bool increased = true;  // (2)_n
};

struct FclIterReport {
  int T = 0;
  std::vector<FclStep> steps;
  bool exhausted = false;  // ord(g_n) > T reached
  bool pass = true;
  bool certified = false;  // (a_O, a) verified mod m^{T+1}
  std::string failure;
};

// The operator iteration g_n = (1 - H^{B_o} d_{[B_o]}) g_{n-1}, g_0 = f - a_O.
template <class K>
FclIterReport fcl_iterate(const Filtration<K>& F, const Poly<K>& f_local, const Rational& a, const LGS<K>& H, int T,
                          int max_steps) {
  const Ring<K>& R = F.ring();
  if (!F.is_saturated()) throw PreconditionError("fcl_iterate requires a D-saturated filtration");
  LocalFiltration<K> L(F, H.point);
  if (!L.contains(f_local, a, T)) throw PreconditionError("fcl_iterate: (f, a) is not in the filtration");
  Expander<K> X(R, H, T);
  if (!X.associated()) throw PreconditionError("fcl_iterate needs associated coordinates");
  FclIterReport rep;
  rep.T = T;
  Poly<K> fy = X.to_new(f_local);
  Expansion<K> Ef = X.expand_new(fy);
  Poly<K> aO = Ef.a_O();
  Poly<K> g = fy - aO;
  Slice<K> ideal = lgs_ideal(R, X.h_new(), T);
  auto in_ideal = [&](const Poly<K>& p) {
    std::vector<K> v = ideal.basis->dense(p);
    ideal.ech.reduce(v);
    return std::all_of(v.begin(), v.end(), [](const K& x) { return is_zero(x); });
  };
  auto eta = [&](const Poly<K>& p, int& ord, MultiIndex& Bmin) {
    ord = p.ord();
    auto E = X.expand_new(p);
    bool found = false;
    for (auto& [B, aB] : E.a) {
      if (aB.ord() + E.weight(B) != ord) continue;
      if (!found || B < Bmin) Bmin = B;
      found = true;
    }
    if (!found) throw InvariantViolation("eta: no coefficient realizes ord(g)");
  };
  int prev_ord = -1;
  MultiIndex prev_B;
  for (int n = 0; n <= max_steps; ++n) {
    if (g.is_zero()) {
      rep.exhausted = true;
      break;
    }
    FclStep st;
    eta(g, st.ord, st.B);
    st.in_ideal = in_ideal(g);
    st.member = L.contains(X.to_local(aO + g, T), a, T);
    if (prev_ord >= 0) st.increased = std::make_pair(prev_ord, prev_B) < std::make_pair(st.ord, st.B);
    rep.steps.push_back(st);
    if (!st.in_ideal || !st.member || !st.increased) {
      rep.pass = false;
      rep.failure = !st.in_ideal ? "(0)_n failed" : (!st.member ? "(1)_n failed" : "(2)_n failed");
      return rep;
    }
    if (n == max_steps) break;
    if (std::all_of(st.B.begin(), st.B.end(), [](int b) { return b == 0; }))
      throw InvariantViolation("B_o = O although g is in (H)");
    prev_ord = st.ord;
    prev_B = st.B;
    Poly<K> dg = hasse(R, g, bracket(st.B, X.weights()));
    g = g - Poly<K>::mul(X.power(st.B), dg, T);
  }
  rep.certified = rep.exhausted && L.contains(X.to_local(aO, T), a, T);
  if (rep.exhausted && !rep.certified) {
    rep.pass = false;
    rep.failure = "a_O not in the filtration";
  }
  return rep;
}

struct CoeffLemmaReport {
  int T = 0;
  bool pass = true;
  size_t elements = 0;
  std::vector<std::string> failures;
};

// phi(C): lower C, largest weights first, until a <= |[B]| < a + p^{e_N}.
inline MultiIndex phi_reduce(MultiIndex C, const std::vector<long long>& w, const Rational& a) {
  long long top = w.back();
  for (size_t l = C.size(); l-- > 0;)
    while (C[l] > 0 && !(Rational(weight_of(C, w)) < a + Rational(top))) --C[l];
  return C;
}

// Checks both inclusions of I_a = sum_B I'_{a-|[B]|} H^B on a basis of the
// level-a slice; I'_t = I_t meet m^{ceil(nu t)}. The caller guarantees
// nu < mu~.
template <class K>
CoeffLemmaReport check_coefficient_lemma_unchecked(const Filtration<K>& F, const Rational& a, const Rational& nu,
                                                   const LGS<K>& H, int T) {
  const Ring<K>& R = F.ring();
  LocalFiltration<K> L(F, H.point);
  Expander<K> X(R, H, T);
  CoeffLemmaReport rep;
  rep.T = T;
  if (H.size() == 0 || a <= Rational(0)) return rep;
  const auto& w = X.weights();
  Rational top(w.back());
  for (auto& jet : L.slice(a, T).jets()) {
    ++rep.elements;
    Poly<K> fy = X.to_new(jet.poly);
    auto E = X.expand_new(fy);
    std::map<MultiIndex, Poly<K>> primed;
    Poly<K> total;
    for (auto& [B, aB] : E.a) {
      long long wb = E.weight(B);
      Rational lev = a - Rational(wb);
      int prec = T - static_cast<int>(wb);
      if (lev > Rational(0)) {
        if (!L.contains(X.to_local(aB, prec), lev, prec))
          rep.failures.push_back("coefficient at level " + lev.str() + " not a member");
        long long need = (nu * lev).ceil();
        if (aB.ord() < need) rep.failures.push_back("coefficient order below ceil(nu t)");
        primed[B] += aB;
      } else if (Rational(wb) < a + top) {
        primed[B] += aB;
      } else {
        MultiIndex Bc = phi_reduce(B, w, a);
        MultiIndex D(B.size());
        for (size_t l = 0; l < B.size(); ++l) D[l] = B[l] - Bc[l];
        primed[Bc] += Poly<K>::mul(aB, X.power(D), T);
      }
    }
    for (auto& [B, c] : primed) {
      long long wb = weight_of(B, w);
      if (!(Rational(wb) < a + top)) rep.failures.push_back("index outside |[B]| < a + p^{e_N}");
      Poly<K> prod = Poly<K>::mul(c, X.power(B), T);
      total += prod;
      if (!L.contains(X.to_local(prod, T), a, T)) rep.failures.push_back("product not in the level-a slice");
    }
    if (total != fy.truncated(T)) rep.failures.push_back("decomposition does not sum to the element");
  }
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace idfilt

#endif
