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

#ifndef IDFILT_FILTRATION_HPP
#define IDFILT_FILTRATION_HPP

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <vector>

#include "jet.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace idfilt {

template <class K>
struct Generator {
  Poly<K> f;
  Rational level;
};

// Idealistic filtration given by finitely many generators (f, a).
template <class K>
class Filtration {
 public:
  Filtration(Ring<K> ring, std::vector<Generator<K>> gens, bool saturated = false)
      : ring_(std::make_shared<const Ring<K>>(std::move(ring))), saturated_(saturated) {
    set_generators(std::move(gens));
  }
  Filtration(std::shared_ptr<const Ring<K>> ring, std::vector<Generator<K>> gens, bool saturated = false)
      : ring_(std::move(ring)), saturated_(saturated) {
    set_generators(std::move(gens));
  }

  const Ring<K>& ring() const { return *ring_; }
  std::shared_ptr<const Ring<K>> ring_ptr() const { return ring_; }
  const std::vector<Generator<K>>& generators() const { return gens_; }
  bool is_saturated() const { return saturated_; }

  // Product of the level numerators.
  long long delta() const {
    long long d = 1;
    for (auto& g : gens_) d *= g.level.num();
    return d;
  }

 private:
  // Normalize, drop zero polynomials and levels <= 0, and keep the highest
  // level for each normalized polynomial.
  void set_generators(std::vector<Generator<K>> gens) {
    std::vector<Generator<K>> out;
    for (auto& g : gens) {
      if (g.f.is_zero() || g.level <= Rational(0)) continue;
      K c = g.f.first_coeff();
      Poly<K> f = (c / c / c) * g.f;
      bool merged = false;
      for (auto& o : out)
        if (o.f == f) {
          if (o.level < g.level) o.level = g.level;
          merged = true;
          break;
        }
      if (!merged) out.push_back({f, g.level});
    }
    gens_ = std::move(out);
  }

  std::shared_ptr<const Ring<K>> ring_;
  std::vector<Generator<K>> gens_;
  bool saturated_;
};

template <class K>
Filtration<K> generate(const Ring<K>& R, std::vector<Generator<K>> gens) {
  return Filtration<K>(R, std::move(gens), false);
}

// Closure under (f, a) -> (d_{X^I} f, a - |I|) for 0 < |I| < a.
template <class K>
Filtration<K> d_saturate(const Filtration<K>& F) {
  if (F.is_saturated()) return F;
  const Ring<K>& R = F.ring();
  std::vector<Generator<K>> all = F.generators();
  std::deque<size_t> todo;
  for (size_t i = 0; i < all.size(); ++i) todo.push_back(i);
  auto normalized = [](const Poly<K>& f) {
    K c = f.first_coeff();
    return (c / c / c) * f;
  };
  auto known = [&](const Poly<K>& f, const Rational& a) {
    for (auto& g : all)
      if (g.f == f && g.level >= a) return true;
    return false;
  };
  while (!todo.empty()) {
    Generator<K> g = all[todo.front()];
    todo.pop_front();
    int maxI = static_cast<int>(g.level.ceil()) - 1;
    maxI = std::min(maxI, g.f.degree());
    for (int n = 1; n <= maxI; ++n) {
      for (auto& I : monomials_of_degree(R.dim(), n)) {
        Poly<K> h = hasse(R, g.f, I);
        if (h.is_zero()) continue;
        Rational lev = g.level - Rational(n);
        if (lev <= Rational(0)) continue;
        h = normalized(h);
        if (known(h, lev)) continue;
        all.push_back({h, lev});
        todo.push_back(all.size() - 1);
      }
    }
  }
  return Filtration<K>(F.ring_ptr(), std::move(all), true);
}

// Row-reduced basis of a level slice modulo m^{T+1}.
template <class K>
struct Slice {
  std::shared_ptr<const JetBasis> basis;
  Echelon<K> ech;
  bool whole = false;     // the slice is the unit ideal
  bool complete = true;   // false if some generator level exceeds T

  std::vector<Jet<K>> jets() const {
    std::vector<Jet<K>> out;
    for (auto& row : ech.rows()) out.push_back(Jet<K>(basis->sparse(row), basis->T()));
    return out;
  }
};

// Product of generators realizing a level.
template <class K>
struct LevelProduct {
  std::vector<int> factors;  // indices into the local generator list
  Rational level;
  int ord = 0;               // sum of factor orders at the point
};

// A filtration written in local coordinates at a point, with cached slices.
template <class K>
class LocalFiltration {
 public:
  LocalFiltration(const Filtration<K>& F, Point<K> P) : ring_(F.ring_ptr()), point_(std::move(P)), saturated_(F.is_saturated()) {
    for (auto& g : F.generators()) {
      Poly<K> f = translate(*ring_, g.f, point_);
      if (f.is_zero()) continue;
      gens_.push_back({f, g.level});
      ords_.push_back(f.ord());
    }
    cache_ = std::make_shared<Cache>();
  }

  const Ring<K>& ring() const { return *ring_; }
  std::shared_ptr<const Ring<K>> ring_ptr() const { return ring_; }
  const Point<K>& point() const { return point_; }
  const std::vector<Generator<K>>& generators() const { return gens_; }
  const std::vector<int>& ords() const { return ords_; }
  bool is_saturated() const { return saturated_; }

  // Every generator of positive level vanishes to order >= its level.
  bool in_support() const {
    for (size_t i = 0; i < gens_.size(); ++i)
      if (Rational(ords_[i]) < gens_[i].level) return false;
    return true;
  }
  bool has_unit() const {
    for (size_t i = 0; i < gens_.size(); ++i)
      if (ords_[i] == 0) return true;
    return false;
  }

  // Minimal multisets of generators with level sum >= t whose product does
  // not vanish modulo m^{T+1}.
  std::vector<LevelProduct<K>> level_products(const Rational& t, int T) const {
    std::vector<LevelProduct<K>> out;
    if (t <= Rational(0)) return out;
    std::vector<int> cur;
    std::function<void(size_t, Rational, int)> rec = [&](size_t start, Rational lev, int ord) {
      for (size_t i = start; i < gens_.size(); ++i) {
        int o = ord + ords_[i];
        if (o > T) continue;
        Rational l = lev + gens_[i].level;
        cur.push_back(static_cast<int>(i));
        if (l >= t) {
          Rational minlev = gens_[cur[0]].level;
          for (int k : cur) minlev = std::min(minlev, gens_[k].level);
          if (l - minlev < t) out.push_back({cur, l, o});
        } else if (ords_[i] > 0 || o == 0) {
          rec(i, l, o);
        }
        cur.pop_back();
      }
    };
    rec(0, Rational(0), 0);
    return out;
  }

  Poly<K> product(const LevelProduct<K>& lp, int T = std::numeric_limits<int>::max()) const {
    Poly<K> r = Poly<K>::constant(ring_->ops().one());
    for (int i : lp.factors) r = Poly<K>::mul(r, gens_[i].f, T);
    return r;
  }

  const Slice<K>& slice(const Rational& t, int T) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto key = std::make_pair(t, T);
    auto it = cache_->slices.find(key);
    if (it != cache_->slices.end()) return *it->second;
    auto s = std::make_unique<Slice<K>>(build_slice(t, T));
    auto& ref = *s;
    cache_->slices.emplace(key, std::move(s));
    return ref;
  }

  // f is given in local coordinates.
  bool contains(const Poly<K>& f, const Rational& t, int T) const {
    if (t <= Rational(0)) return true;
    const Slice<K>& s = slice(t, T);
    if (s.whole) return true;
    std::vector<K> v = s.basis->dense(f.truncated(T));
    s.ech.reduce(v);
    return std::all_of(v.begin(), v.end(), [](const K& x) { return is_zero(x); });
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::pair<Rational, int>, std::unique_ptr<Slice<K>>> slices;
  };

  Slice<K> build_slice(const Rational& t, int T) const {
    Slice<K> s;
    s.basis = JetBasis::get(ring_->dim(), T);
    s.ech = Echelon<K>(s.basis->size());
    for (auto& g : gens_)
      if (g.level > Rational(T)) s.complete = false;
    if (t <= Rational(0)) {
      s.whole = true;
    } else {
      for (size_t i = 0; i < gens_.size(); ++i)
        if (ords_[i] == 0) s.whole = true;
    }
    if (s.whole) {
      for (size_t i = 0; i < s.basis->size(); ++i) {
        std::vector<K> v(s.basis->size(), K{});
        v[i] = ring_->ops().one();
        s.ech.insert(v);
      }
      return s;
    }
    close_ideal(s, [&](auto&& add) {
      for (auto& lp : level_products(t, T)) add(product(lp, T));
    });
    return s;
  }

 public:
  // Span of all monomial multiples of the given polynomials mod m^{T+1}.
  template <class Feed>
  static void close_ideal(Slice<K>& s, Feed&& feed) {
    const JetBasis& B = *s.basis;
    int d = B.dim();
    std::deque<int> fresh;
    feed([&](const Poly<K>& p) {
      int r = s.ech.insert(B.dense(p));
      if (r >= 0) fresh.push_back(r);
    });
    while (!fresh.empty()) {
      std::vector<K> row = s.ech.rows()[fresh.front()];
      fresh.pop_front();
      for (int j = 0; j < d; ++j) {
        std::vector<K> v(B.size(), K{});
        bool any = false;
        for (size_t i = 0; i < row.size(); ++i) {
          if (is_zero(row[i])) continue;
          long k = B.times_var(i, j);
          if (k < 0) continue;
          v[k] = row[i];
          any = true;
        }
        if (!any) continue;
        int r = s.ech.insert(std::move(v));
        if (r >= 0) fresh.push_back(r);
      }
    }
  }

 private:
  std::shared_ptr<const Ring<K>> ring_;
  Point<K> point_;
  bool saturated_;
  std::vector<Generator<K>> gens_;
  std::vector<int> ords_;
  std::shared_ptr<Cache> cache_;
};

template <class K>
LocalFiltration<K> localize(const Filtration<K>& F, const Point<K>& P) {
  return LocalFiltration<K>(F, P);
}

template <class K>
bool in_support(const Filtration<K>& F, const Point<K>& P) {
  if (!F.is_saturated()) throw PreconditionError("support requires a D-saturated filtration");
  return LocalFiltration<K>(F, P).in_support();
}

// f in global coordinates; membership of its germ at P modulo m^{T+1}.
template <class K>
bool membership(const Filtration<K>& F, const Poly<K>& f, const Rational& t, const Point<K>& P, int T) {
  LocalFiltration<K> L(F, P);
  return L.contains(translate(F.ring(), f, P, T), t, T);
}

template <class K>
std::vector<Jet<K>> level_slice_basis(const Filtration<K>& F, const Rational& t, const Point<K>& P, int T) {
  LocalFiltration<K> L(F, P);
  return L.slice(t, T).jets();
}

}  // namespace idfilt

#endif
