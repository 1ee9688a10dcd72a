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

// Direct enumeration of exponent vectors b with sum w_i b_i = p^e and no
// single w_i b_i = p^e.
int brute_mixed(const std::vector<std::pair<int, int>>& jumps, int e, long long p) {
  std::vector<long long> w;
  for (auto& [ei, inc] : jumps)
    for (int k = 0; k < inc; ++k) w.push_back(static_cast<long long>(std::pow(p, ei) + 0.5));
  long long n = static_cast<long long>(std::pow(p, e) + 0.5);
  int count = 0;
  std::function<void(size_t, long long, bool)> rec = [&](size_t i, long long left, bool single) {
    if (i == w.size()) {
      if (left == 0 && !single) ++count;
      return;
    }
    for (long long b = 0; b * w[i] <= left; ++b) rec(i + 1, left - b * w[i], single || b * w[i] == n);
  };
  rec(0, n, false);
  return count;
}

TEST(MixedCount, Examples) {
  EXPECT_EQ(mixed_count({}, 1, 2), 0);
  EXPECT_EQ(mixed_count({{0, 1}}, 1, 2), 0);
  EXPECT_EQ(mixed_count({{0, 2}}, 1, 2), 1);
  EXPECT_THROW(mixed_count({{1, 1}}, 1, 2), PreconditionError);
}

TEST(MixedCount, AgreesWithEnumeration) {
  for (long long p : {2, 3, 5})
    for (int e = 1; e <= 3; ++e)
      for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 2; ++b) {
          std::vector<std::pair<int, int>> jumps;
          if (a) jumps.push_back({0, a});
          if (b && e > 1) jumps.push_back({1, b});
          if (p == 5 && e == 3 && a + b > 3) continue;  // keep enumeration small
          EXPECT_EQ(mixed_count(jumps, e, p), brute_mixed(jumps, e, p)) << p << " " << e << " " << a << " " << b;
        }
}

TEST(LeadingDim, Examples) {
  auto R = prime_ring(2, {"x", "y"});
  LocalFiltration<Fq> Lx(filt(R, {{"x", "1"}}), origin(*R));
  EXPECT_EQ(leading_dim(Lx, 0, 4), 1);
  auto W = worked_example();
  LocalFiltration<Fq> LW(W, origin(W.ring()));
  EXPECT_EQ(leading_dim(LW, 0, 12), 0);
  EXPECT_EQ(leading_dim(LW, 1, 12), 1);
  EXPECT_THROW(leading_dim(LW, 4, 12), CensoringError);
  // unit filtration: the full space of degree p^e forms
  LocalFiltration<Fq> LU(filt(R, {{"1", "1"}}), origin(*R));
  for (int e = 0; e <= 2; ++e) EXPECT_EQ(leading_dim(LU, e, 4), static_cast<int>(R->ppow(e)) + 1);
}

TEST(LeadingDim, AgreesWithBruteForce) {
  int checked = 0;
  for (uint64_t seed = 1; seed <= 16; ++seed) {
    RandomInstanceParams prm;
    prm.p = seed % 2 ? 2 : 3;
    prm.seed = 700 + seed;
    prm.n_gens = 1 + static_cast<int>(seed % 3);
    prm.max_level = 3;
    prm.max_deg = 3;
    prm.half_levels = seed % 4 == 1;
    prm.n_points = 2;
    auto inst = random_instance(prm);
    for (auto& Q : inst.points) {
      LocalFiltration<Fq> L(inst.filtration, Q);
      auto og = oracle_local_gens(inst.filtration, Q);
      for (int e = 0; inst.ring->ppow(e) <= 4; ++e) {
        int n = static_cast<int>(inst.ring->ppow(e));
        EXPECT_EQ(static_cast<size_t>(leading_dim(L, e, n)), oracle_leading_dim(og, n, 2, prm.p)) << "seed " << seed;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 50);
}

TEST(PureDims, Examples) {
  auto W = worked_example();
  auto D = pure_dims(LocalFiltration<Fq>(W, origin(W.ring())), 2, 12);
  EXPECT_EQ(D.pure, (std::vector<int>{0, 1, 1}));
  auto R = prime_ring(2, {"x", "y"});
  EXPECT_EQ(pure_dims(LocalFiltration<Fq>(filt(R, {{"x", "1"}}), origin(*R)), 2, 8).pure,
            (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(pure_dims(LocalFiltration<Fq>(filt(R, {{"1", "1"}}), origin(*R)), 2, 8).pure,
            (std::vector<int>{2, 2, 2}));
}

TEST(Sigma, Examples) {
  auto W = worked_example();
  auto s = sigma(W, origin(W.ring()), 2, 12);
  EXPECT_EQ(s.sigma, (std::vector<int>{2, 1, 1}));
  EXPECT_EQ(s.E, 2);
  EXPECT_EQ(sigma(W, pt(W.ring(), "1,0"), 2, 12).sigma, (std::vector<int>{0, 0, 0}));
  auto R = prime_ring(2, {"x", "y"});
  EXPECT_EQ(sigma(filt(R, {{"x", "1"}}), origin(*R), 2, 8).sigma, (std::vector<int>{1, 1, 1}));
  EXPECT_THROW(sigma(filt(R, {{"x^2+y^3", "2"}}, false), origin(*R), 2, 12), PreconditionError);
  EXPECT_THROW(sigma(W, origin(W.ring()), 3, 7), CensoringError);
}

TEST(Sigma, CompareLexicographic) {
  SigmaValue a{{2, 1, 1}, 2, false}, b{{1, 1, 1}, 2, false}, z{{0, 0, 0}, 2, false};
  EXPECT_EQ(compare_sigma(a, a), std::strong_ordering::equal);
  EXPECT_EQ(compare_sigma(a, b), std::strong_ordering::greater);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      for (int k = 0; k <= 2; ++k) EXPECT_NE(compare_sigma(z, SigmaValue{{i, j, k}, 2, false}), std::strong_ordering::greater);
  EXPECT_THROW(compare_sigma(a, SigmaValue{{2, 1}, 1, false}), PreconditionError);
}

TEST(ExtractLgs, Examples) {
  auto R = prime_ring(2, {"x", "y"});
  auto H = extract_lgs(LocalFiltration<Fq>(filt(R, {{"x", "1"}}), origin(*R)), 2, 8);
  ASSERT_EQ(H.size(), 1u);
  EXPECT_EQ(H.entries[0].h, P(*R, "x"));
  EXPECT_EQ(H.entries[0].e, 0);
  auto W = worked_example();
  auto HW = extract_lgs(LocalFiltration<Fq>(W, origin(W.ring())), 2, 12);
  ASSERT_EQ(HW.size(), 1u);
  EXPECT_EQ(HW.entries[0].h, P(W.ring(), "x^2+y^3"));
  EXPECT_EQ(HW.entries[0].e, 1);
  Fq o = R->ops().one(), z = R->ops().zero();
  EXPECT_EQ(HW.C, (Matrix<Fq>{{o, z}, {z, o}}));
  for (uint32_t p : {2u, 3u, 5u}) {
    auto Rp = prime_ring(p, {"x", "y"});
    std::string xp = "x^" + std::to_string(p);
    auto Hp = extract_lgs(LocalFiltration<Fq>(filt(Rp, {{xp, std::to_string(p)}}), origin(*Rp)), 1, static_cast<int>(p));
    ASSERT_EQ(Hp.size(), 1u) << p;
    EXPECT_EQ(Hp.entries[0].e, 1);
    EXPECT_EQ(Hp.entries[0].h, P(*Rp, xp));
  }
  EXPECT_THROW(extract_lgs(LocalFiltration<Fq>(W, pt(W.ring(), "1,1")), 2, 12), PreconditionError);
}

// LGS condition (ii) re-checked with the integer oracle: for each e the
// degree-p^e parts of h_l^{p^{e-e_l}} are independent and there are
// exactly l^pure of them.
TEST(ExtractLgs, FrobeniusPowersIndependent) {
  int seen = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    RandomInstanceParams prm;
    prm.p = seed % 2 ? 2 : 3;
    prm.seed = 900 + seed;
    prm.n_gens = 1 + static_cast<int>(seed % 3);
    prm.max_level = 3;
    prm.d = 2 + static_cast<int>(seed % 2);
    prm.truncation = 9;
    auto inst = random_instance(prm);
    int d = prm.d, T = 9, E = default_horizon(*inst.ring, T);
    for (auto& Q : inst.points) {
      LocalFiltration<Fq> L(inst.filtration, Q);
      if (!L.in_support()) continue;
      auto H = extract_lgs(L, E, T);
      auto D = pure_dims(L, E, T);
      for (int e = 0; e <= E; ++e) {
        int n = static_cast<int>(inst.ring->ppow(e));
        ModSpan span(d, n, prm.p);
        size_t count = 0;
        for (auto& en : H.entries) {
          if (en.e > e) continue;
          ++count;
          Dense h = to_dense(en.h, d), pw = {{Exps(d, 0), 1}};
          for (long long k = 0; k < inst.ring->ppow(e - en.e); ++k) pw = dense_mul(pw, h, prm.p, n);
          Dense top;
          for (auto& [ex, c] : pw)
            if (deg(ex) == n) top[ex] = c;
          EXPECT_TRUE(span.add(top)) << "seed " << seed;
        }
        EXPECT_EQ(count, static_cast<size_t>(D.pure[e]));
        EXPECT_TRUE(L.contains(H.entries.empty() ? Poly<Fq>() : H.entries.back().h,
                               Rational(inst.ring->ppow(H.entries.empty() ? 0 : H.entries.back().e)), T));
      }
      ++seen;
    }
  }
  EXPECT_GE(seen, 20);
}

std::shared_ptr<const Ring<Fq>> d4_ring() { return prime_ring(2, {"x1", "x2", "y", "z"}); }

TEST(Purify, CorrectsMixedTerm) {
  auto R = d4_ring();
  auto F = filt(R, {{"x1", "1"}, {"x2", "1"}, {"y^2+z*x1*x2", "2"}});
  auto P0 = origin(*R);
  auto H = make_lgs(*R, P0, std::vector<LGSEntry<Fq>>{{P(*R, "x1"), 0}, {P(*R, "x2"), 0}, {P(*R, "y^2+z*x1*x2"), 1}});
  Point<Fq> Q = pt(*R, "0,0,0,1");
  auto before = check_uniform_purity(F, H, {Q}, 2, 6);
  ASSERT_EQ(before.size(), 1u);
  EXPECT_FALSE(before[0].pass());
  EXPECT_FALSE(before[0].lgs_at_point);
  auto HQ = purify_at(F, H, Q, 2, 6);
  Poly<Fq> third;
  for (auto& en : HQ.entries)
    if (en.e == 1) third = translate(*R, en.h, negate_point(Q));
  EXPECT_EQ(third, P(*R, "y^2+z*x1*x2+x1*x2"));
  auto after = check_uniform_purity(F, HQ, {Q}, 2, 6);
  EXPECT_TRUE(after[0].pass()) << after[0].failure;
  // leading form at Q is pure
  for (auto& en : HQ.entries) EXPECT_TRUE(pure_lead(*R, en.h, en.e).has_value());
}

TEST(Purify, AlreadyPureAndSingleEntryUnchanged) {
  auto R = prime_ring(3, {"x", "y"});
  auto F = filt(R, {{"x", "1"}});
  auto H = extract_lgs(LocalFiltration<Fq>(F, origin(*R)), 1, 6);
  for (std::string q : {"0,1", "0,2"}) {
    Point<Fq> Q = pt(*R, q);
    auto HQ = purify_at(F, H, Q, 1, 6);
    ASSERT_EQ(HQ.size(), 1u);
    EXPECT_EQ(HQ.entries[0].h, P(*R, "x"));
  }
  EXPECT_THROW(purify_at(F, H, pt(*R, "1,0"), 1, 6), PreconditionError);
  auto rows = check_uniform_purity(F, H, {pt(*R, "0,1"), pt(*R, "0,2"), origin(*R)}, 1, 6);
  for (auto& r : rows) EXPECT_TRUE(r.pass()) << r.failure;
  EXPECT_TRUE(check_uniform_purity(F, H, {}, 1, 6).empty());
}

TEST(Sigma, BoundedNonIncreasingAndDeterminesTau) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    RandomInstanceParams prm;
    prm.p = seed % 2 ? 2 : 3;
    prm.seed = 1100 + seed;
    prm.n_gens = 1 + static_cast<int>(seed % 3);
    prm.max_level = 3;
    prm.homogeneous = seed % 2 == 0;
    prm.truncation = 9;
    prm.n_points = 6;
    auto inst = random_instance(prm);
    int T = 9, E = default_horizon(*inst.ring, T);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> st;
    for (auto& Q : inst.points) {
      auto s = sigma(inst.filtration, Q, E, T);
      ASSERT_EQ(s.sigma.size(), static_cast<size_t>(E + 1));
      for (size_t e = 0; e < s.sigma.size(); ++e) {
        EXPECT_GE(s.sigma[e], 0);
        EXPECT_LE(s.sigma[e], prm.d);
        if (e) {
          EXPECT_LE(s.sigma[e], s.sigma[e - 1]);
        }
      }
      LocalFiltration<Fq> L(inst.filtration, Q);
      if (L.in_support()) st.push_back({s.sigma, pure_dims(L, E, T).l});
    }
    for (auto& a : st)
      for (auto& b : st) EXPECT_EQ(a.first == b.first, a.second == b.second) << "seed " << seed;
  }
}

TEST(Sigma, EmbeddingInvariance) {
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    RandomInstanceParams prm;
    prm.p = seed % 2 ? 2 : 3;
    prm.seed = 1300 + seed;
    prm.n_gens = 2;
    prm.max_level = 3;
    prm.truncation = 8;
    auto inst = random_instance(prm);
    int d = prm.d, T = 8, E = default_horizon(*inst.ring, T);
    auto vars = inst.ring->vars();
    vars.push_back("w");
    auto R2 = std::make_shared<const Ring<Fq>>(inst.ring->ops(), vars);
    std::vector<Generator<Fq>> gens = inst.filtration.generators();
    gens.push_back({Poly<Fq>::monomial(Monomial::var(d), R2->ops().one()), Rational(1)});
    auto F2 = d_saturate(Filtration<Fq>(R2, gens));
    for (auto& Q : inst.points) {
      Point<Fq> Q2 = Q;
      Q2.push_back(R2->ops().zero());
      LocalFiltration<Fq> L1(inst.filtration, Q), L2(F2, Q2);
      EXPECT_EQ(sigma_local(L1, E, T).sigma, sigma_local(L2, E, T).sigma) << "seed " << seed;
      if (!L1.in_support()) continue;
      auto p1 = pure_dims(L1, E, T).pure, p2 = pure_dims(L2, E, T).pure;
      for (int e = 0; e <= E; ++e) EXPECT_EQ(p2[e], p1[e] + 1);
    }
  }
}

}  // namespace
