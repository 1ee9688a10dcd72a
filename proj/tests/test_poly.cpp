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

TEST(Monomials, OfDegree) {
  auto m = monomials_of_degree(2, 2);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], Monomial({2, 0}));
  EXPECT_EQ(m[1], Monomial({1, 1}));
  EXPECT_EQ(m[2], Monomial({0, 2}));
  auto z = monomials_of_degree(1, 0);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].deg, 0);
  EXPECT_EQ(monomials_of_degree(3, 2).size(), 6u);
  for (int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 6; ++n) {
      auto ms = monomials_of_degree(d, n);
      EXPECT_EQ(static_cast<int64_t>(ms.size()), pascal_binomial(n + d - 1, d - 1, 1000003));
      for (size_t i = 1; i < ms.size(); ++i) EXPECT_TRUE(ms[i - 1] < ms[i]);
    }
}

TEST(Poly, ParseFormatRoundTrip) {
  auto R = prime_ring(5, {"x1", "x2", "x3"});
  for (std::string s : {"x1", "3*x1^2*x2+4*x3", "1", "0", "2*x1*x2*x3+x2^7"}) {
    Poly<Fq> f = P(*R, s);
    EXPECT_EQ(P(*R, format_poly(*R, f)), f) << s;
  }
  EXPECT_EQ(P(*R, "x1 + x1"), P(*R, "2*x1"));
  EXPECT_EQ(P(*R, "5*x1"), Poly<Fq>());
  EXPECT_EQ(P(*R, "-x2"), P(*R, "4*x2"));
  EXPECT_THROW(P(*R, "x4"), ParseError);
  EXPECT_THROW(P(*R, "x1^"), ParseError);
  EXPECT_THROW(P(*R, "x1**2"), ParseError);
}

TEST(Poly, ParseOverRationals) {
  Ring<QQ> R(FieldOps<QQ>(), {"x", "y"});
  Poly<QQ> f = parse_poly(R, "1/2*x^2-3*y");
  EXPECT_EQ(format_poly(R, f), "-3*y+1/2*x^2");
  EXPECT_EQ(hasse(R, f, Monomial({2, 0})), Poly<QQ>::constant(QQ(QQ::rep(1, 2))));
}

TEST(Poly, TruncateAndOrder) {
  auto R = prime_ring(3, {"x", "y"});
  EXPECT_EQ(P(*R, "x^3+x").truncated(2), P(*R, "x"));
  EXPECT_EQ(Poly<Fq>().truncated(5), Poly<Fq>());
  EXPECT_EQ(P(*R, "x^2*y+y^2").truncated(3), P(*R, "x^2*y+y^2"));
  EXPECT_EQ(Jet<Fq>(P(*R, "x^2*y+y^5"), 8).ord(), OrdValue::exact(3));
  EXPECT_EQ(Jet<Fq>(Poly<Fq>(), 8, true).ord(), OrdValue::infinity());
  EXPECT_EQ(Jet<Fq>(Poly<Fq>(), 8).ord(), OrdValue::at_least(9));
  EXPECT_EQ(Jet<Fq>(P(*R, "x^9"), 8, true).ord(), OrdValue::at_least(9));
  EXPECT_THROW(Jet<Fq>(P(*R, "x"), 3) + Jet<Fq>(P(*R, "x"), 4), DomainError);
}

TEST(Hasse, Examples) {
  auto R = prime_ring(2, {"x", "y"});
  EXPECT_EQ(hasse(*R, P(*R, "x"), Monomial({1, 0})), P(*R, "1"));
  EXPECT_EQ(hasse(*R, P(*R, "x^5"), Monomial({2, 0})), Poly<Fq>());
  EXPECT_EQ(hasse(*R, P(*R, "x^2+y^3"), Monomial({0, 1})), P(*R, "y^2"));
  EXPECT_EQ(hasse(*R, P(*R, "x^2+y^3"), Monomial({2, 0})), P(*R, "1"));
}

class HasseRandom : public ::testing::TestWithParam<uint32_t> {};

TEST_P(HasseRandom, AgreesWithDefinition) {
  uint32_t p = GetParam();
  auto R = prime_ring(p, {"x", "y", "z"});
  Rng rng(11 + p);
  for (int t = 0; t < 300; ++t) {
    Poly<Fq> f = random_poly(*R, rng, 0, 12, 6);
    Monomial I = random_monomial(rng, 3, static_cast<int>(rng() % 8));
    Exps Ie = {I.e[0], I.e[1], I.e[2]};
    ASSERT_EQ(hasse(*R, f, I), from_dense(*R, dense_hasse(to_dense(f, 3), Ie, p)));
    // ord(d_I f) >= ord f - |I|
    Poly<Fq> g = hasse(*R, f, I);
    if (!g.is_zero()) {
      EXPECT_GE(g.ord(), f.ord() - I.deg);
    }
  }
}

TEST_P(HasseRandom, CompositionLaw) {
  uint32_t p = GetParam();
  auto R = prime_ring(p, {"x", "y"});
  Rng rng(101 + p);
  for (int t = 0; t < 1000; ++t) {
    Poly<Fq> f = random_poly(*R, rng, 0, 14, 5);
    Monomial I = random_monomial(rng, 2, static_cast<int>(rng() % 6));
    Monomial J = random_monomial(rng, 2, static_cast<int>(rng() % 6));
    Fq c = R->ops().one();
    for (int l = 0; l < 2; ++l) c = c * R->ops().binomial(I.e[l] + J.e[l], I.e[l]);
    ASSERT_EQ(hasse(*R, hasse(*R, f, J), I), c * hasse(*R, f, I * J));
  }
}

TEST_P(HasseRandom, GeneralizedProductRule) {
  uint32_t p = GetParam();
  auto R = prime_ring(p, {"x", "y"});
  Rng rng(202 + p);
  for (int t = 0; t < 1000; ++t) {
    Poly<Fq> f = random_poly(*R, rng, 0, 8, 4), g = random_poly(*R, rng, 0, 8, 4);
    Monomial K = random_monomial(rng, 2, static_cast<int>(rng() % 6));
    Poly<Fq> rhs;
    for (int i0 = 0; i0 <= K.e[0]; ++i0)
      for (int i1 = 0; i1 <= K.e[1]; ++i1) {
        Monomial I({i0, i1});
        rhs += hasse(*R, f, K / I) * hasse(*R, g, I);
      }
    ASSERT_EQ(hasse(*R, f * g, K), rhs);
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, HasseRandom, ::testing::Values(2u, 3u, 5u));

TEST(Translate, Examples) {
  auto R1 = prime_ring(5, {"x"});
  EXPECT_EQ(translate(*R1, P(*R1, "x"), pt(*R1, "3")), P(*R1, "x+3"));
  auto R = prime_ring(2, {"x", "y"});
  EXPECT_EQ(translate(*R, P(*R, "x^2+y^3"), pt(*R, "0,0")), P(*R, "x^2+y^3"));
  EXPECT_EQ(translate(*R, P(*R, "y^2"), pt(*R, "0,1")), P(*R, "y^2+1"));
}

TEST(Translate, HomomorphismAndInverse) {
  for (uint32_t p : {2u, 3u, 7u}) {
    auto R = prime_ring(p, {"x", "y", "z"});
    Rng rng(7 * p);
    for (int t = 0; t < 200; ++t) {
      Poly<Fq> f = random_poly(*R, rng, 0, 6, 4), g = random_poly(*R, rng, 0, 6, 4);
      Point<Fq> Q = {R->ops().random(rng), R->ops().random(rng), R->ops().random(rng)};
      Poly<Fq> tf = translate(*R, f, Q);
      std::vector<int64_t> Qi = {Q[0].value(), Q[1].value(), Q[2].value()};
      ASSERT_EQ(tf, from_dense(*R, dense_translate(to_dense(f, 3), Qi, p)));
      EXPECT_EQ(translate(*R, tf, negate_point(Q)), f);
      EXPECT_EQ(translate(*R, f * g, Q), tf * translate(*R, g, Q));
      EXPECT_EQ(translate(*R, f + g, Q), tf + translate(*R, g, Q));
      EXPECT_EQ(evaluate(*R, tf, origin(*R)), evaluate(*R, f, Q));
      EXPECT_EQ(tf.degree(), f.degree());
    }
  }
}

TEST(Poly, ArithmeticAgreesWithDenseOracle) {
  auto R = prime_ring(3, {"x", "y"});
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    Poly<Fq> f = random_poly(*R, rng, 0, 7, 5), g = random_poly(*R, rng, 0, 7, 5);
    ASSERT_EQ(f * g, from_dense(*R, dense_mul(to_dense(f, 2), to_dense(g, 2), 3)));
    ASSERT_EQ(f + g, from_dense(*R, dense_add(to_dense(f, 2), to_dense(g, 2), 3)));
    ASSERT_EQ(f - g, from_dense(*R, dense_add(to_dense(f, 2), to_dense(g, 2), 3, -1)));
    ASSERT_EQ(Poly<Fq>::mul(f, g, 6), from_dense(*R, dense_mul(to_dense(f, 2), to_dense(g, 2), 3, 6)));
    if (!f.is_zero() && !g.is_zero()) {
      EXPECT_EQ((f * g).ord(), f.ord() + g.ord());
    }
  }
}

TEST(Poly, FrobeniusPowerInCharP) {
  auto R = prime_ring(3, {"x", "y"}, 2);
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    Poly<Fq> f = random_poly(*R, rng, 0, 4, 4);
    Poly<Fq> cube = Poly<Fq>::pow(f, 3);
    std::vector<Poly<Fq>::Term> ts;
    for (auto& [m, c] : f.terms()) ts.push_back({m * m * m, R->ops().frobenius(c, 1)});
    EXPECT_EQ(cube, Poly<Fq>::from_terms(ts));
  }
}

TEST(Poly, LinearSubstitution) {
  auto R = prime_ring(5, {"x", "y"});
  Fq o = R->ops().one(), z = R->ops().zero();
  Matrix<Fq> swap = {{z, o}, {o, z}};
  EXPECT_EQ(linear_substitute(*R, P(*R, "x^2+3*y"), swap, 10), P(*R, "y^2+3*x"));
  Matrix<Fq> M = {{o, R->ops().from_int(2)}, {z, o}};
  EXPECT_EQ(linear_substitute(*R, P(*R, "x"), M, 10), P(*R, "x+2*y"));
  auto Minv = inverse(M, o);
  ASSERT_TRUE(Minv);
  Poly<Fq> f = P(*R, "x^3*y+2*x*y^2+4");
  EXPECT_EQ(linear_substitute(*R, linear_substitute(*R, f, M, 10), *Minv, 10), f);
}

}  // namespace
