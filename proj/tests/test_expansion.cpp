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

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace idfilt;
using namespace idfilt::testing;

namespace {

LGS<Fq> worked_lgs(const Filtration<Fq>& W) { return extract_lgs(LocalFiltration<Fq>(W, origin(W.ring())), 2, 12); }

// Largest n <= T+1 with f in m^n + (hs), by dense linear algebra mod p.
OrdValue oracle_ord_h(const Poly<Fq>& f, const std::vector<Poly<Fq>>& hs, int d, int T, int64_t p) {
  if (f.is_zero()) return OrdValue::infinity();
  auto build = [&](int n) {
    ModSpan s(d, T, p);
    for (auto& h : hs)
      for (auto& e : all_exps(d, T)) s.add(dense_mul(to_dense(h, d), {{e, 1}}, p, T));
    for (auto& e : all_exps(d, T))
      if (deg(e) >= n) s.add({{e, 1}});
    return s;
  };
  Dense fd = to_dense(f.truncated(T), d);
  for (int n = 1; n <= T + 1; ++n)
    if (!build(n).contains(fd)) return OrdValue::exact(n - 1);
  return OrdValue::at_least(T + 1);
}

LGS<Fq> raw_lgs(const Ring<Fq>& R, std::vector<LGSEntry<Fq>> entries) {
  LGS<Fq> H;
  H.point = origin(R);
  H.entries = std::move(entries);
  H.C = Matrix<Fq>(R.dim(), std::vector<Fq>(R.dim(), R.ops().zero()));
  for (int i = 0; i < R.dim(); ++i) H.C[i][i] = R.ops().one();
  return H;
}

TEST(Associated, Examples) {
  auto W = worked_example();
  const auto& R = W.ring();
  auto H = worked_lgs(W);
  EXPECT_TRUE(check_associated(R, H));
  EXPECT_TRUE(check_weakly_associated(R, H, H.C));
  Fq o = R.ops().one(), z = R.ops().zero();
  EXPECT_FALSE(check_weakly_associated(R, H, Matrix<Fq>{{z, o}, {o, z}}));
  auto bad = raw_lgs(R, {{P(R, "x*y"), 1}});
  EXPECT_FALSE(check_associated(R, bad));
  EXPECT_FALSE(check_weakly_associated(R, bad, bad.C));
  EXPECT_THROW(Expander<Fq>(R, H, Matrix<Fq>{{z, o}, {o, z}}, 6), PreconditionError);
}

TEST(Expand, Examples) {
  auto W = worked_example();
  const auto& R = W.ring();
  auto H = worked_lgs(W);
  auto E = expand(R, P(R, "x^4"), H, 12);
  ASSERT_EQ(E.a.size(), 2u);
  EXPECT_EQ(E.a.at(MultiIndex{2}), P(R, "1"));
  EXPECT_EQ(E.a.at(MultiIndex{0}), P(R, "y^6"));
  Expander<Fq> X(R, H, 12);
  EXPECT_EQ(X.reassemble(E), P(R, "x^4"));
  auto Eh = expand(R, P(R, "x^2+y^3"), H, 12);
  ASSERT_EQ(Eh.a.size(), 1u);
  EXPECT_EQ(Eh.a.at(MultiIndex{1}), P(R, "1"));
  auto Ey = expand(R, P(R, "y^2"), H, 12);
  ASSERT_EQ(Ey.a.size(), 1u);
  EXPECT_EQ(Ey.a_O(), P(R, "y^2"));
  EXPECT_TRUE(expand(R, Poly<Fq>(), H, 12).a.empty());
}

TEST(OrdH, Examples) {
  auto W = worked_example();
  const auto& R = W.ring();
  auto H = worked_lgs(W);
  for (auto* fn : {&ord_h_expansion<Fq>, &ord_h_membership<Fq>}) {
    OrdValue (*f)(const Ring<Fq>&, const Poly<Fq>&, const LGS<Fq>&, int) = fn;
    EXPECT_EQ(f(R, Poly<Fq>(), H, 12), OrdValue::infinity());
    EXPECT_EQ(f(R, P(R, "y^2"), H, 12), OrdValue::exact(2));
    EXPECT_EQ(f(R, P(R, "x^4"), H, 12), OrdValue::exact(6));
    EXPECT_EQ(f(R, P(R, "x^2+y^3"), H, 12), OrdValue::at_least(13));
    EXPECT_EQ(f(R, P(R, "1+x"), H, 12), OrdValue::exact(0));
  }
}

// Instances with an LGS at the origin; some are moved by a random linear
// change so the coordinates are not the identity.
struct Case {
  Instance<Fq> inst;
  LGS<Fq> H;
  uint64_t seed;
};

std::vector<Case> cases(uint64_t base, int n, int T) {
  std::vector<Case> out;
  for (uint64_t seed = 1; seed <= uint64_t(n); ++seed) {
    RandomInstanceParams prm;
    prm.p = seed % 3 == 0 ? 3 : 2;
    prm.m = seed % 5 == 4 ? 2 : 1;
    prm.seed = base + seed;
    prm.n_gens = 1 + static_cast<int>(seed % 3);
    prm.max_level = 3;
    prm.max_deg = 4;
    prm.truncation = T;
    auto inst = random_instance(prm);
    LocalFiltration<Fq> L(inst.filtration, origin(*inst.ring));
    auto H = extract_lgs(L, default_horizon(*inst.ring, T), T);
    if (seed % 2 == 0) {
      Rng rng(seed);
      H = lgs_linear_move(*inst.ring, H, rng);
    }
    out.push_back({inst, H, prm.seed});
  }
  return out;
}

TEST(Expand, RoundTripWindowAndOrdEstimate) {
  int T = 9;
  for (auto& [inst, H, seed] : cases(2000, 16, T)) {
    const auto& R = *inst.ring;
    Expander<Fq> X(R, H, T);
    Rng rng(seed);
    for (int k = 0; k < 30; ++k) {
      Poly<Fq> g = random_poly(R, rng, 0, T + 2, 6);
      auto E = X.expand_new(g);
      ASSERT_EQ(X.reassemble(E), g.truncated(T)) << "seed " << seed;
      EXPECT_TRUE(E.in_window());
      if (g.truncated(T).is_zero()) continue;
      int o = g.truncated(T).ord();
      for (auto& [B, aB] : E.a) EXPECT_GE(aB.ord(), o - E.weight(B));
      for (auto& [B, aB] : E.a) EXPECT_LE(E.weight(B), T);
    }
  }
}

TEST(Expand, WeaklyAssociatedCoordinates) {
  int T = 8, tried = 0, weak = 0;
  for (auto& [inst, H, seed] : cases(2100, 12, T)) {
    const auto& R = *inst.ring;
    Rng rng(seed + 5);
    for (int k = 0; k < 6; ++k) {
      Matrix<Fq> M(R.dim(), std::vector<Fq>(R.dim()));
      for (auto& row : M)
        for (auto& c : row) c = R.ops().random(rng);
      if (!inverse(M, R.ops().one())) continue;
      ++tried;
      if (!check_weakly_associated(R, H, M)) {
        EXPECT_THROW(Expander<Fq>(R, H, M, T), PreconditionError);
        continue;
      }
      ++weak;
      Expander<Fq> X(R, H, M, T);
      for (int j = 0; j < 10; ++j) {
        Poly<Fq> g = random_poly(R, rng, 0, T, 5);
        auto E = X.expand_new(g);
        ASSERT_EQ(X.reassemble(E), g.truncated(T));
        EXPECT_TRUE(E.in_window());
      }
    }
  }
  EXPECT_GT(tried, 20);
  EXPECT_GT(weak, 5);
}

TEST(OrdH, ExpansionAgreesWithMembership) {
  int T = 8, compared = 0;
  for (auto& [inst, H, seed] : cases(2200, 20, T)) {
    const auto& R = *inst.ring;
    Expander<Fq> X(R, H, T);
    LocalFiltration<Fq> L(inst.filtration, origin(R));
    Rng rng(seed);
    std::vector<Poly<Fq>> hs;
    for (auto& en : H.entries) hs.push_back(en.h);
    for (int k = 0; k < 25; ++k) {
      Poly<Fq> f = k % 2 ? random_member(L, rng, 2, T).first : random_poly(R, rng, 0, T, 4);
      OrdValue a = ord_h_expansion(X, f), b = ord_h_membership(R, f, H, T);
      ASSERT_EQ(a, b) << "seed " << seed << " f " << format_poly(R, f);
      if (inst.ring->ops().order() == inst.ring->characteristic() && k < 6) {
        EXPECT_EQ(b, oracle_ord_h(f, hs, R.dim(), T, R.characteristic()));
      }
      ++compared;
    }
  }
  EXPECT_GE(compared, 500);
}

TEST(OrdH, WeaklyMultiplicative) {
  int T = 10;
  for (auto& [inst, H, seed] : cases(2300, 12, T)) {
    const auto& R = *inst.ring;
    Expander<Fq> X(R, H, T);
    Rng rng(seed);
    for (int k = 0; k < 20; ++k) {
      Poly<Fq> f = random_poly(R, rng, 0, 4, 3), g = random_poly(R, rng, 0, 4, 3);
      OrdValue a = ord_h_expansion(X, f), b = ord_h_expansion(X, g), c = ord_h_expansion(X, f * g);
      if (!a.is_exact() || !b.is_exact()) continue;
      // a censored product (>= T+1) cannot refute the bound
      if (c.is_exact()) {
        EXPECT_GE(c.n, a.n + b.n);
      }
      else EXPECT_FALSE(c.is_infinite() && !(f * g).is_zero());
    }
  }
  // Strict witness: x^1 * x^1 = x^2 with e = 1.
  auto W = worked_example();
  const auto& R = W.ring();
  auto H = worked_lgs(W);
  EXPECT_EQ(ord_h_expansion(R, P(R, "x"), H, 12), OrdValue::exact(1));
  EXPECT_EQ(ord_h_expansion(R, P(R, "x^2"), H, 12), OrdValue::exact(3));
}

TEST(Fcl, Examples) {
  auto W = worked_example();
  const auto& R = W.ring();
  auto H = worked_lgs(W);
  auto rep = check_fcl(W, P(R, "y^2*x^2+y^5"), Rational(3), H, 12);
  EXPECT_TRUE(rep.pass);
  bool saw = false;
  for (auto& c : rep.coefficients)
    if (c.B == MultiIndex{1}) {
      saw = true;
      EXPECT_EQ(c.level, Rational(1));
    }
  EXPECT_TRUE(saw);
  EXPECT_TRUE(check_fcl(W, P(R, "x^2+y^3"), Rational(2), H, 12).pass);
  EXPECT_THROW(check_fcl(W, P(R, "y"), Rational(1), H, 12), PreconditionError);
  EXPECT_THROW(check_fcl(W, P(R, "x^2+y^3"), Rational(3), H, 12), PreconditionError);
}

TEST(Fcl, RandomMembersPass) {
  int T = 8, pairs = 0;
  for (auto& [inst, H, seed] : cases(2400, 20, T)) {
    LocalFiltration<Fq> L(inst.filtration, origin(*inst.ring));
    Rng rng(seed);
    for (int k = 0; k < 6; ++k) {
      auto [f, a] = random_member(L, rng, 2, T);
      auto rep = check_fcl(inst.filtration, f, a, H, T);
      EXPECT_TRUE(rep.pass) << "seed " << seed << " f " << format_poly(*inst.ring, f) << " a " << a.str();
      ++pairs;
    }
  }
  EXPECT_GE(pairs, 100);
}

TEST(FclIterate, Examples) {
  auto W = worked_example();
  const auto& R = W.ring();
  auto H = worked_lgs(W);
  auto r0 = fcl_iterate(W, P(R, "y^2"), Rational(1), H, 12, 50);
  EXPECT_TRUE(r0.pass);
  EXPECT_TRUE(r0.steps.empty());
  EXPECT_TRUE(r0.certified);
  auto r1 = fcl_iterate(W, P(R, "x^2+y^3"), Rational(2), H, 12, 50);
  EXPECT_TRUE(r1.pass);
  ASSERT_EQ(r1.steps.size(), 1u);
  EXPECT_EQ(r1.steps[0].B, MultiIndex{1});
  EXPECT_TRUE(r1.exhausted);
}

TEST(FclIterate, EtaIncreases) {
  int T = 8, runs = 0;
  for (auto& [inst, H, seed] : cases(2500, 20, T)) {
    if (!check_associated(*inst.ring, H)) continue;
    LocalFiltration<Fq> L(inst.filtration, origin(*inst.ring));
    Rng rng(seed);
    for (int k = 0; k < 5; ++k) {
      auto [f, a] = random_member(L, rng, 2, T);
      auto rep = fcl_iterate(inst.filtration, f, a, H, T, 400);
      ASSERT_TRUE(rep.pass) << rep.failure;
      for (size_t i = 1; i < rep.steps.size(); ++i)
        EXPECT_LT(std::make_pair(rep.steps[i - 1].ord, rep.steps[i - 1].B), std::make_pair(rep.steps[i].ord, rep.steps[i].B));
      EXPECT_TRUE(rep.exhausted);
      ++runs;
    }
  }
  EXPECT_GE(runs, 30);
}

TEST(CoefficientLemma, Examples) {
  auto W = worked_example();
  auto H = worked_lgs(W);
  EXPECT_TRUE(check_coefficient_lemma(W, Rational(2), Rational(3, 2), H, 12).pass);
  EXPECT_TRUE(check_coefficient_lemma(W, Rational(2), Rational(0), H, 12).pass);
  EXPECT_TRUE(check_coefficient_lemma(W, Rational(3), Rational(1), H, 12).pass);
  EXPECT_THROW(check_coefficient_lemma(W, Rational(2), Rational(2), H, 12), PreconditionError);
  EXPECT_THROW(check_coefficient_lemma(W, Rational(2), Rational(-1), H, 12), PreconditionError);
}

}  // namespace
