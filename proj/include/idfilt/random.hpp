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

#ifndef IDFILT_RANDOM_HPP
#define IDFILT_RANDOM_HPP

#include <random>
#include <string>
#include <vector>

#include "instance.hpp"

namespace idfilt {

// All sampling goes through rng() with modulo reduction so results do not
// depend on the standard library's distribution implementations.
using Rng = std::mt19937_64;

inline uint64_t uniform(Rng& rng, uint64_t lo, uint64_t hi) { return lo + rng() % (hi - lo + 1); }

inline Monomial random_monomial(Rng& rng, int d, int deg) {
  std::vector<int> ex(d, 0);
  for (int k = 0; k < deg; ++k) ++ex[rng() % d];
  return Monomial(ex);
}

// Random polynomial with up to n_terms terms of degree in [min_deg, max_deg].
template <class K>
Poly<K> random_poly(const Ring<K>& R, Rng& rng, int min_deg, int max_deg, int n_terms, bool homogeneous = false) {
  std::vector<typename Poly<K>::Term> ts;
  int hdeg = static_cast<int>(uniform(rng, min_deg, max_deg));
  for (int i = 0; i < n_terms; ++i) {
    int deg = homogeneous ? hdeg : static_cast<int>(uniform(rng, min_deg, max_deg));
    K c = R.ops().random(rng);
    if (is_zero(c)) c = R.ops().one();
    ts.push_back({random_monomial(rng, R.dim(), deg), c});
  }
  return Poly<K>::from_terms(ts);
}

struct RandomInstanceParams {
  uint32_t p = 2;
  uint32_t m = 1;
  int d = 2;
  int n_gens = 1;
  int max_deg = 3;
  int max_level = 2;
  uint64_t seed = 0;
  int truncation = 10;
  bool homogeneous = false;
  bool half_levels = false;  // allow levels k/2
  int n_points = 4;
};

// Generators vanish at the origin to order >= their level, so the origin is
// a support point. Always returned D-saturated. For homogeneous instances
// a neighborhood group with limit at the origin is declared: the invariants
// are constant on punctured lines through the origin.
inline Instance<Fq> random_instance(const RandomInstanceParams& prm) {
  Rng rng(prm.seed);
  const GaloisField& gf = GaloisField::get(prm.p, prm.m);
  std::vector<std::string> vars;
  const char* names[] = {"x", "y", "z", "w", "u", "v", "s", "t"};
  for (int i = 0; i < prm.d; ++i) vars.push_back(names[i]);
  auto ring = std::make_shared<const Ring<Fq>>(FieldOps<Fq>(gf), vars);
  std::vector<Generator<Fq>> gens;
  if (prm.max_level > 0) {
    for (int i = 0; i < prm.n_gens; ++i) {
      long long den = prm.half_levels && rng() % 2 ? 2 : 1;
      long long num = static_cast<long long>(uniform(rng, 1, prm.max_level * den));
      Rational a(num, den);
      int lo = static_cast<int>(a.ceil());
      int hi = std::max(lo, prm.max_deg);
      Poly<Fq> f = random_poly(*ring, rng, lo, hi, static_cast<int>(uniform(rng, 1, 3)), prm.homogeneous);
      gens.push_back({f, a});
    }
  }
  Instance<Fq> inst(ring, d_saturate(Filtration<Fq>(ring, gens)));
  inst.T = prm.truncation;
  inst.E = default_horizon(*ring, inst.T);
  inst.seed = prm.seed;
  inst.header = json::object();
  inst.header["char"] = prm.p;
  inst.header["ext_degree"] = prm.m;
  inst.points.push_back(origin(*ring));
  for (int k = 0; k < prm.n_points; ++k) {
    Point<Fq> P(prm.d);
    for (auto& c : P) c = ring->ops().random(rng);
    bool dup = false;
    for (auto& Q : inst.points) dup = dup || Q == P;
    if (!dup) inst.points.push_back(P);
  }
  if (prm.homogeneous && inst.points.size() > 1) {
    NeighborhoodGroupIdx g;
    g.limit = 0;
    for (size_t i = 1; i < inst.points.size(); ++i) g.members.push_back(i);
    inst.groups.push_back(g);
  }
  return inst;
}

// An element of the filtration at a point: r times a product of local
// generators, with its level. Returned in local coordinates.
template <class K>
std::pair<Poly<K>, Rational> random_member(const LocalFiltration<K>& L, Rng& rng, int max_factors, int T) {
  const Ring<K>& R = L.ring();
  Poly<K> f = Poly<K>::constant(R.ops().one());
  Rational a(0);
  const auto& gs = L.generators();
  if (!gs.empty()) {
    int n = static_cast<int>(uniform(rng, 1, max_factors));
    for (int k = 0; k < n; ++k) {
      const auto& g = gs[rng() % gs.size()];
      f = Poly<K>::mul(f, g.f, T);
      a = a + g.level;
    }
  }
  Poly<K> r = random_poly(R, rng, 0, 2, 3);
  return {Poly<K>::mul(f, r, T), a};
}

}  // namespace idfilt

#endif
