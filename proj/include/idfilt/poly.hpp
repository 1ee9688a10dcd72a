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

#ifndef IDFILT_POLY_HPP
#define IDFILT_POLY_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace idfilt {

inline constexpr int kMaxVars = 8;

// Exponent vector. Ordered by total degree, then lexicographically
// descending, so x^2 < xy < y^2 in two variables.
struct Monomial {
  std::array<uint16_t, kMaxVars> e{};
  uint16_t deg = 0;

  Monomial() = default;
  explicit Monomial(const std::vector<int>& exps) {
    if (exps.size() > kMaxVars) throw DomainError("too many variables");
    for (size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] > 60000) throw DomainError("bad exponent");
      e[i] = static_cast<uint16_t>(exps[i]);
      deg = static_cast<uint16_t>(deg + exps[i]);
    }
  }
  static Monomial var(int i, int power = 1) {
    Monomial m;
    m.e[i] = static_cast<uint16_t>(power);
    m.deg = static_cast<uint16_t>(power);
    return m;
  }

  int operator[](int i) const { return e[i]; }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(a.e[i] + b.e[i]);
    r.deg = static_cast<uint16_t>(a.deg + b.deg);
    return r;
  }
  // Caller guarantees b divides a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint16_t>(a.e[i] - b.e[i]);
    r.deg = static_cast<uint16_t>(a.deg - b.deg);
    return r;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.e > b.e;
  }
  std::vector<int> exponents(int d) const { return std::vector<int>(e.begin(), e.begin() + d); }
};

struct MonomialHash {
  size_t operator()(const Monomial& m) const {
    uint64_t h = 1469598103934665603ull;
    for (auto x : m.e) h = (h ^ x) * 1099511628211ull;
    return static_cast<size_t>(h);
  }
};

// All monomials of total degree n in d variables, in ascending order.
inline std::vector<Monomial> monomials_of_degree(int d, int n) {
  std::vector<Monomial> out;
  std::vector<int> ex(d, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == d - 1) {
      ex[i] = left;
      out.push_back(Monomial(ex));
      return;
    }
    for (int k = left; k >= 0; --k) {
      ex[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (d == 0) {
    if (n == 0) out.push_back(Monomial());
    return out;
  }
  rec(0, n);
  return out;
}

// Polynomial ring K[x_1..x_d] with its variable names.
template <class K>
class Ring {
 public:
  Ring(FieldOps<K> ops, std::vector<std::string> vars) : ops_(std::move(ops)), vars_(std::move(vars)) {
    if (vars_.empty() || vars_.size() > size_t(kMaxVars))
      throw DomainError("number of variables must be in 1..8");
  }
  int dim() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const FieldOps<K>& ops() const { return ops_; }
  uint32_t characteristic() const { return ops_.characteristic(); }
  // p^e, or 1 when e == 0; characteristic zero admits only e == 0.
  long long ppow(int e) const {
    if (e == 0) return 1;
    if (characteristic() == 0) throw DomainError("p^e with e > 0 in characteristic zero");
    long long r = 1;
    for (int i = 0; i < e; ++i) {
      r *= characteristic();
      if (r > (1ll << 40)) throw DomainError("p^e overflow");
    }
    return r;
  }

 private:
  FieldOps<K> ops_;
  std::vector<std::string> vars_;
};

template <class K>
using Point = std::vector<K>;

// Sparse polynomial; terms sorted ascending, no stored zeros.
template <class K>
class Poly {
 public:
  using Term = std::pair<Monomial, K>;

  Poly() = default;
  static Poly constant(const K& c) {
    Poly p;
    if (!idfilt::is_zero(c)) p.terms_.push_back({Monomial(), c});
    return p;
  }
  static Poly monomial(const Monomial& m, const K& c) {
    Poly p;
    if (!idfilt::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  static Poly from_map(std::unordered_map<Monomial, K, MonomialHash>&& acc) {
    Poly p;
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!idfilt::is_zero(c)) p.terms_.push_back({m, c});
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    return p;
  }
  static Poly from_terms(std::vector<Term> terms) {
    std::unordered_map<Monomial, K, MonomialHash> acc;
    for (auto& [m, c] : terms) acc[m] += c;
    return from_map(std::move(acc));
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  // Order of vanishing at the origin; -1 for the zero polynomial.
  int ord() const { return terms_.empty() ? -1 : terms_.front().first.deg; }
  int degree() const { return terms_.empty() ? -1 : terms_.back().first.deg; }
  K coeff(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return t.first < x; });
    if (it != terms_.end() && it->first == m) return it->second;
    return K{};
  }

  Poly truncated(int T) const {
    Poly r;
    for (auto& t : terms_)
      if (t.first.deg <= T) r.terms_.push_back(t);
    return r;
  }
  Poly homogeneous_part(int n) const {
    Poly r;
    for (auto& t : terms_)
      if (t.first.deg == n) r.terms_.push_back(t);
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  friend Poly operator*(const Poly& a, const Poly& b) { return mul(a, b, std::numeric_limits<int>::max()); }
  friend Poly operator*(const K& c, const Poly& a) {
    if (idfilt::is_zero(c)) return Poly();
    Poly r = a;
    for (auto& t : r.terms_) t.second = c * t.second;
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second)
        return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly shifted(const Monomial& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.first = t.first * m;
    return r;
  }

  // Product keeping only terms of degree <= T.
  static Poly mul(const Poly& a, const Poly& b, int T) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::unordered_map<Monomial, K, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (auto& [ma, ca] : a.terms_) {
      if (ma.deg > T) break;
      for (auto& [mb, cb] : b.terms_) {
        if (ma.deg + mb.deg > T) break;
        acc[ma * mb] += ca * cb;
      }
    }
    return from_map(std::move(acc));
  }
  static Poly pow(const Poly& a, uint64_t n, int T = std::numeric_limits<int>::max()) {
    Poly r = constant_one_like(a);
    Poly b = a.truncated(T);
    if (r.is_zero()) return n == 0 ? r : Poly();
    while (n) {
      if (n & 1) r = mul(r, b, T);
      n >>= 1;
      if (n) b = mul(b, b, T);
    }
    return r;
  }

  // Leading coefficient with respect to the ascending order; used to
  // normalize generators.
  const K& first_coeff() const { return terms_.front().second; }

 private:
  // A one with the same field pointer as a's coefficients.
  static Poly constant_one_like(const Poly& a) {
    if (a.is_zero()) return Poly();
    const K& c = a.terms_.front().second;
    return constant(c / c);
  }
  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    Poly r;
    r.terms_.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a.terms_[i].first < b.terms_[j].first)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || b.terms_[j].first < a.terms_[i].first) {
        K c = subtract ? -b.terms_[j].second : b.terms_[j].second;
        r.terms_.push_back({b.terms_[j].first, c});
        ++j;
      } else {
        K c = subtract ? a.terms_[i].second - b.terms_[j].second : a.terms_[i].second + b.terms_[j].second;
        if (!idfilt::is_zero(c)) r.terms_.push_back({a.terms_[i].first, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

// Hasse derivative: d_{X^I} X^J = prod C(j_l, i_l) X^{J-I}.
template <class K>
Poly<K> hasse(const Ring<K>& R, const Poly<K>& f, const Monomial& I) {
  std::unordered_map<Monomial, K, MonomialHash> acc;
  for (auto& [m, c] : f.terms()) {
    if (!I.divides(m)) continue;
    K coef = c;
    for (int l = 0; l < R.dim() && !is_zero(coef); ++l)
      if (I.e[l]) coef = coef * R.ops().binomial(m.e[l], I.e[l]);
    if (!is_zero(coef)) acc[m / I] += coef;
  }
  return Poly<K>::from_map(std::move(acc));
}

template <class K>
K evaluate(const Ring<K>& R, const Poly<K>& f, const Point<K>& P) {
  if (P.size() != size_t(R.dim())) throw DomainError("point dimension mismatch");
  K r = R.ops().zero();
  for (auto& [m, c] : f.terms()) {
    K t = c;
    for (int l = 0; l < R.dim(); ++l)
      if (m.e[l]) t = t * R.ops().pow(P[l], m.e[l]);
    r = r + t;
  }
  return r;
}

// f(x + P): the Taylor expansion of f at P written in local coordinates.
template <class K>
Poly<K> translate(const Ring<K>& R, const Poly<K>& f, const Point<K>& P, int T = std::numeric_limits<int>::max()) {
  if (P.size() != size_t(R.dim())) throw DomainError("point dimension mismatch");
  bool origin = std::all_of(P.begin(), P.end(), [](const K& a) { return is_zero(a); });
  if (origin) return f.truncated(T);
  std::unordered_map<Monomial, K, MonomialHash> acc;
  for (auto& [m, c] : f.terms()) {
    // (x_l + P_l)^{j_l} = sum_k C(j_l, k) P_l^{j_l - k} x_l^k
    std::vector<std::vector<std::pair<int, K>>> factors(R.dim());
    for (int l = 0; l < R.dim(); ++l) {
      int j = m.e[l];
      for (int k = 0; k <= j; ++k) {
        K v = R.ops().binomial(j, k) * R.ops().pow(P[l], j - k);
        if (!is_zero(v)) factors[l].push_back({k, v});
      }
    }
    std::vector<int> ex(R.dim(), 0);
    std::function<void(int, int, K)> rec = [&](int l, int deg, K coef) {
      if (deg > T) return;
      if (l == R.dim()) {
        acc[Monomial(ex)] += c * coef;
        return;
      }
      for (auto& [k, v] : factors[l]) {
        ex[l] = k;
        rec(l + 1, deg + k, coef * v);
      }
      ex[l] = 0;
    };
    rec(0, 0, R.ops().one());
  }
  return Poly<K>::from_map(std::move(acc));
}

template <class K>
using Matrix = std::vector<std::vector<K>>;

// f(Mx): substitute x_i -> sum_j M[i][j] x_j.
template <class K>
Poly<K> linear_substitute(const Ring<K>& R, const Poly<K>& f, const Matrix<K>& M,
                          int T = std::numeric_limits<int>::max()) {
  int d = R.dim();
  std::vector<Poly<K>> forms(d);
  for (int i = 0; i < d; ++i) {
    std::vector<typename Poly<K>::Term> ts;
    for (int j = 0; j < d; ++j)
      if (!is_zero(M[i][j])) ts.push_back({Monomial::var(j), M[i][j]});
    forms[i] = Poly<K>::from_terms(ts);
  }
  std::vector<std::vector<Poly<K>>> powers(d, std::vector<Poly<K>>{Poly<K>::constant(R.ops().one())});
  auto power = [&](int i, int k) -> const Poly<K>& {
    while (int(powers[i].size()) <= k) powers[i].push_back(Poly<K>::mul(powers[i].back(), forms[i], T));
    return powers[i][k];
  };
  Poly<K> out;
  std::unordered_map<Monomial, K, MonomialHash> acc;
  for (auto& [m, c] : f.terms()) {
    if (m.deg > T) continue;
    Poly<K> t = Poly<K>::constant(c);
    for (int i = 0; i < d && !t.is_zero(); ++i)
      if (m.e[i]) t = Poly<K>::mul(t, power(i, m.e[i]), T);
    for (auto& [mm, cc] : t.terms()) acc[mm] += cc;
  }
  return Poly<K>::from_map(std::move(acc));
}

template <class K>
std::string format_poly(const Ring<K>& R, const Poly<K>& f) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : f.terms()) {
    std::string cs = R.ops().format(c);
    bool neg = false;
    if (R.characteristic() == 0 && !cs.empty() && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    if (!first) s += neg ? "-" : "+";
    else if (neg) s += "-";
    first = false;
    std::string mono;
    for (int l = 0; l < R.dim(); ++l) {
      if (!m.e[l]) continue;
      if (!mono.empty()) mono += "*";
      mono += R.vars()[l];
      if (m.e[l] > 1) mono += "^" + std::to_string(m.e[l]);
    }
    if (mono.empty()) s += cs;
    else if (cs == "1") s += mono;
    else s += cs + "*" + mono;
  }
  return s;
}

inline std::string strip_spaces(const std::string& s) {
  std::string r;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) r += c;
  return r;
}

// Grammar: terms joined by + or -; a term is factors joined by *; a factor
// is a scalar or var[^n]. Scalars: integers, num/den, or #code for F_q.
template <class K>
Poly<K> parse_poly(const Ring<K>& R, const std::string& text) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty polynomial");
  std::vector<std::pair<bool, std::string>> terms;
  size_t start = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    start = 1;
  }
  for (size_t i = start; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '+' || s[i] == '-') {
      if (i == start) throw ParseError("empty term in '" + text + "'");
      terms.push_back({neg, s.substr(start, i - start)});
      if (i < s.size()) neg = s[i] == '-';
      start = i + 1;
    }
  }
  std::unordered_map<Monomial, K, MonomialHash> acc;
  for (auto& [negative, term] : terms) {
    K coef = R.ops().one();
    std::vector<int> ex(R.dim(), 0);
    size_t a = 0;
    while (a <= term.size()) {
      size_t b = term.find('*', a);
      if (b == std::string::npos) b = term.size();
      std::string factor = term.substr(a, b - a);
      if (factor.empty()) throw ParseError("empty factor in '" + text + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0])) || factor[0] == '#') {
        coef = coef * R.ops().parse(factor);
      } else {
        std::string name = factor, pw = "1";
        auto k = factor.find('^');
        if (k != std::string::npos) {
          name = factor.substr(0, k);
          pw = factor.substr(k + 1);
        }
        auto it = std::find(R.vars().begin(), R.vars().end(), name);
        if (it == R.vars().end()) throw ParseError("unknown variable '" + name + "'");
        if (pw.empty() || !std::all_of(pw.begin(), pw.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw ParseError("bad exponent in '" + factor + "'");
        int e = std::stoi(pw);
        ex[it - R.vars().begin()] += e;
      }
      a = b + 1;
    }
    if (negative) coef = -coef;
    acc[Monomial(ex)] += coef;
  }
  return Poly<K>::from_map(std::move(acc));
}

template <class K>
Point<K> parse_point(const Ring<K>& R, const std::string& text) {
  std::string s = strip_spaces(text);
  Point<K> P;
  size_t a = 0;
  while (a <= s.size()) {
    size_t b = s.find(',', a);
    if (b == std::string::npos) b = s.size();
    P.push_back(R.ops().parse(s.substr(a, b - a)));
    a = b + 1;
  }
  if (P.size() != size_t(R.dim())) throw ParseError("point has wrong dimension");
  return P;
}

template <class K>
Point<K> origin(const Ring<K>& R) {
  return Point<K>(R.dim(), R.ops().zero());
}

}  // namespace idfilt

#endif
