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

#ifndef IDFILT_JET_HPP
#define IDFILT_JET_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "poly.hpp"

namespace idfilt {

// Order of vanishing, possibly censored by a truncation.
struct OrdValue {
  enum class Kind { Exact, AtLeast, Infinity };
  Kind kind = Kind::Infinity;
  int n = 0;

  static OrdValue exact(int n) { return {Kind::Exact, n}; }
  static OrdValue at_least(int n) { return {Kind::AtLeast, n}; }
  static OrdValue infinity() { return {Kind::Infinity, 0}; }

  bool is_exact() const { return kind == Kind::Exact; }
  bool is_censored() const { return kind == Kind::AtLeast; }
  bool is_infinite() const { return kind == Kind::Infinity; }
  // Lower bound; large for infinity.
  int lower() const { return kind == Kind::Infinity ? 1 << 30 : n; }

  friend bool operator==(const OrdValue& a, const OrdValue& b) {
    return a.kind == b.kind && (a.kind == Kind::Infinity || a.n == b.n);
  }
  std::string str() const {
    switch (kind) {
      case Kind::Exact: return std::to_string(n);
      case Kind::AtLeast: return ">=" + std::to_string(n);
      default: return "inf";
    }
  }
};

// ord of f modulo m^{T+1}. Only the zero polynomial has infinite order.
template <class K>
OrdValue ord_mod(const Poly<K>& f, int T) {
  if (f.is_zero()) return OrdValue::infinity();
  if (f.ord() <= T) return OrdValue::exact(f.ord());
  return OrdValue::at_least(T + 1);
}

// Element of K[x]/m^{T+1}. exact marks jets known to be full polynomials.
template <class K>
struct Jet {
  Poly<K> poly;
  int T = 0;
  bool exact = false;

  Jet() = default;
  Jet(Poly<K> p, int T_, bool exact_ = false) : poly(p.truncated(T_)), T(T_), exact(exact_ && p.degree() <= T_) {}

  OrdValue ord() const {
    if (poly.is_zero()) return exact ? OrdValue::infinity() : OrdValue::at_least(T + 1);
    return OrdValue::exact(poly.ord());
  }
  friend Jet operator+(const Jet& a, const Jet& b) {
    check(a, b);
    return Jet(a.poly + b.poly, a.T, a.exact && b.exact);
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    check(a, b);
    return Jet(a.poly - b.poly, a.T, a.exact && b.exact);
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    check(a, b);
    Poly<K> full = a.exact && b.exact ? a.poly * b.poly : Poly<K>::mul(a.poly, b.poly, a.T);
    return Jet(full, a.T, a.exact && b.exact);
  }

 private:
  static void check(const Jet& a, const Jet& b) {
    if (a.T != b.T) throw DomainError("jets with different truncation orders");
  }
};

// Dense indexing of the monomials of degree <= T in d variables, in
// ascending monomial order.
class JetBasis {
 public:
  static std::shared_ptr<const JetBasis> get(int d, int T) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const JetBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{d, T}];
    if (!slot) slot = std::shared_ptr<const JetBasis>(new JetBasis(d, T));
    return slot;
  }

  int dim() const { return d_; }
  int T() const { return T_; }
  size_t size() const { return monos_.size(); }
  const Monomial& monomial(size_t i) const { return monos_[i]; }
  const std::vector<Monomial>& monomials() const { return monos_; }
  // Index range [begin, end) of the degree-n monomials.
  size_t degree_begin(int n) const { return starts_[n]; }
  size_t degree_end(int n) const { return starts_[n + 1]; }
  // Index of x_j * monomial(i), or -1 beyond degree T.
  long times_var(size_t i, int j) const { return up_[i][j]; }
  long index(const Monomial& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : static_cast<long>(it->second);
  }

  template <class K>
  std::vector<K> dense(const Poly<K>& f) const {
    std::vector<K> v(size(), K{});
    for (auto& [m, c] : f.terms()) {
      if (m.deg > T_) break;
      v[index_.at(m)] = c;
    }
    return v;
  }
  template <class K>
  Poly<K> sparse(const std::vector<K>& v) const {
    std::vector<typename Poly<K>::Term> ts;
    for (size_t i = 0; i < v.size(); ++i)
      if (!is_zero(v[i])) ts.push_back({monos_[i], v[i]});
    Poly<K> p = Poly<K>::from_terms(std::move(ts));
    return p;
  }

 private:
  JetBasis(int d, int T) : d_(d), T_(T) {
    for (int n = 0; n <= T; ++n) {
      starts_.push_back(monos_.size());
      for (auto& m : monomials_of_degree(d, n)) monos_.push_back(m);
    }
    starts_.push_back(monos_.size());
    for (size_t i = 0; i < monos_.size(); ++i) index_[monos_[i]] = i;
    up_.resize(monos_.size());
    for (size_t i = 0; i < monos_.size(); ++i)
      for (int j = 0; j < kMaxVars; ++j)
        up_[i][j] = j < d_ ? index(monos_[i] * Monomial::var(j)) : -1;
  }
  int d_, T_;
  std::vector<Monomial> monos_;
  std::vector<size_t> starts_;
  std::unordered_map<Monomial, size_t, MonomialHash> index_;
  std::vector<std::array<long, kMaxVars>> up_;
};

}  // namespace idfilt

#endif
