/*
   Copyright 2026 The trimat Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "trimat/cpoly.hpp"
#include "trimat/field.hpp"
#include "trimat/roots.hpp"

using namespace trimat;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 2001) - 1000;
  long den = static_cast<long>(rng() % 97) + 1;
  return Rational(num, den);
}

VarSetPtr three_vars() { return std::make_shared<const VarSet>(std::vector<std::string>{"u", "v", "w"}); }

CPolynomial<Rational> random_cpoly(std::mt19937_64& rng, const VarSetPtr& vs) {
  CPolynomial<Rational> p(vs);
  int terms = static_cast<int>(rng() % 5);
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (std::uint32_t v = 0; v < 3; ++v) m = m * Monomial::var(v, static_cast<std::uint32_t>(rng() % 3));
    p.add_term(m, random_rational(rng));
  }
  return p;
}

}  // namespace

TEST(Rational, LowestTermsPositiveDenominator) {
  Rational r(6, -4);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(4, 2).to_string(), "2");
  EXPECT_EQ(Rational::parse("10/-4").to_string(), "-5/2");
}

TEST(Rational, Inverse) {
  EXPECT_EQ(Rational(2).inverse(), Rational(1, 2));
  EXPECT_THROW(Rational(0).inverse(), Error);
  try {
    Rational(0).inverse();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroInverse);
  }
}

TEST(Rational, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!a.is_zero()) EXPECT_EQ(a * inverse(a), Rational(1));
  }
}

TEST(PrimeField, InverseOfThreeModSeven) {
  FqField f(7);
  EXPECT_EQ(f.from_int(3).inverse().value(), 5u);
  EXPECT_THROW(f.zero().inverse(), Error);
}

TEST(PrimeField, RejectsComposite) {
  EXPECT_THROW(FqField(8), Error);
  EXPECT_THROW(FieldSpec::parse("Fq:9"), Error);
  EXPECT_EQ(FieldSpec::parse("Fq:13").q, 13u);
}

TEST(PrimeField, MismatchedModuli) {
  EXPECT_THROW(Fp(1, 5) + Fp(1, 7), Error);
  EXPECT_EQ((Fp() + Fp(3, 5)).value(), 3u);
}

TEST(PrimeField, AxiomsExhaustiveSmall) {
  const std::uint64_t q = 11;
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b) {
      Fp x(a, q), y(b, q);
      EXPECT_EQ((x * y).value(), (a * b) % q);
      EXPECT_EQ((x - y + y).value(), a);
      if (a) EXPECT_EQ((x * x.inverse()).value(), 1u);
    }
}

TEST(PrimeField, ReducesRationals) {
  EXPECT_EQ(Fp::from_rational(Rational(1, 2), 7).value(), 4u);
  EXPECT_EQ(Fp::from_rational(Rational(-1), 7).value(), 6u);
  EXPECT_THROW(Fp::from_rational(Rational(1, 7), 7), Error);
}

TEST(Complex, InverseWithinTolerance) {
  Complex z(0.3, -1.7);
  EXPECT_LT(std::abs(z * inverse(z) - 1.0), 1e-12);
  EXPECT_THROW(inverse(Complex(0, 0)), Error);
}

TEST(Complex, SerializationRoundTrip) {
  Complex z(1.0 / 3.0, -2.5e-7);
  Complex back = parse_complex(complex_to_string(z));
  EXPECT_EQ(back, z);
  EXPECT_EQ(parse_complex("2"), Complex(2, 0));
  EXPECT_EQ(parse_complex("-3i"), Complex(0, -3));
  EXPECT_EQ(parse_complex("1-i"), Complex(1, -1));
}

TEST(FieldSpec, ParseAndPrint) {
  for (const char* s : {"Q", "C", "Fq:101"}) EXPECT_EQ(FieldSpec::parse(s).to_string(), s);
  EXPECT_THROW(FieldSpec::parse("R"), Error);
}

TEST(CPolynomial, EvalProductOfVariables) {
  auto vs = three_vars();
  auto u = CPolynomial<Rational>::variable(vs, 0, Rational(1)), v = CPolynomial<Rational>::variable(vs, 1, Rational(1));
  std::map<std::size_t, Rational> at{{0, Rational(2)}, {1, Rational(3)}};
  EXPECT_EQ((u * v).eval(at), Rational(6));
}

TEST(CPolynomial, ZeroEvaluatesToZero) {
  CPolynomial<Rational> z(three_vars());
  EXPECT_TRUE(z.eval(std::map<std::size_t, Rational>{}).is_zero());
}

TEST(CPolynomial, AntisymmetricDifferenceVanishes) {
  auto vs = three_vars();
  auto d = CPolynomial<Rational>::variable(vs, 0, Rational(1)) - CPolynomial<Rational>::variable(vs, 1, Rational(1));
  std::map<std::size_t, Rational> at{{0, Rational(5, 3)}, {1, Rational(5, 3)}};
  EXPECT_TRUE(d.eval(at).is_zero());
}

TEST(CPolynomial, MissingVariableListsNames) {
  auto vs = three_vars();
  auto q = CPolynomial<Rational>::variable(vs, 0, Rational(1)) * CPolynomial<Rational>::variable(vs, 2, Rational(1));
  try {
    q.eval(std::map<std::size_t, Rational>{{0, Rational(1)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingVariable);
    EXPECT_NE(std::string(e.what()).find("w"), std::string::npos);
  }
}

TEST(CPolynomial, NoStoredZeroCoefficients) {
  auto vs = three_vars();
  auto u = CPolynomial<Rational>::variable(vs, 0, Rational(1));
  auto z = u - u;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.size(), 0u);
}

TEST(CPolynomial, GradedLexPrinting) {
  auto vs = three_vars();
  auto u = CPolynomial<Rational>::variable(vs, 0, Rational(1)), v = CPolynomial<Rational>::variable(vs, 1, Rational(1)),
       w = CPolynomial<Rational>::variable(vs, 2, Rational(1));
  auto p = w + v * v + Rational(3) * u * v - u * u * w;
  EXPECT_EQ(p.to_string(), "-u^2*w + 3*u*v + v^2 + w");
}

TEST(CPolynomial, RingMismatch) {
  auto a = CPolynomial<Rational>::variable(three_vars(), 0, Rational(1));
  auto b = CPolynomial<Rational>::variable(three_vars(), 0, Rational(1));
  EXPECT_THROW(a + b, Error);
}

TEST(CPolynomial, MultiplicationCommutesWithEvaluation) {
  std::mt19937_64 rng(7);
  auto vs = three_vars();
  for (int k = 0; k < 500; ++k) {
    auto p = random_cpoly(rng, vs), q = random_cpoly(rng, vs);
    std::map<std::size_t, Rational> at{{0, random_rational(rng)}, {1, random_rational(rng)}, {2, random_rational(rng)}};
    EXPECT_EQ((p * q).eval(at), p.eval(at) * q.eval(at));
    EXPECT_EQ((p + q).eval(at), p.eval(at) + q.eval(at));
  }
}

TEST(CPolynomial, PartialSubstitution) {
  auto vs = three_vars();
  auto u = CPolynomial<Rational>::variable(vs, 0, Rational(1)), v = CPolynomial<Rational>::variable(vs, 1, Rational(1));
  auto p = u * u * v + v;
  auto s = p.substitute(std::map<std::size_t, Rational>{{0, Rational(2)}});
  EXPECT_EQ(s, Rational(5) * v);
  auto c = s.univariate(1);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1], Rational(5));
}

TEST(Roots, RationalSquareMinusOne) {
  auto r = univariate_roots(std::vector<Rational>{Rational(-1), Rational(0), Rational(1)});
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_EQ(r.roots[0], Rational(1));
  EXPECT_EQ(r.roots[1], Rational(-1));
  EXPECT_EQ(r.residual_degree, 0u);
}

TEST(Roots, RationalNoRoot) {
  auto r = univariate_roots(std::vector<Rational>{Rational(-2), Rational(0), Rational(1)});
  EXPECT_TRUE(r.roots.empty());
  EXPECT_TRUE(r.no_rational_root);
  EXPECT_EQ(r.residual_degree, 2u);
}

TEST(Roots, RationalFractionalAndZeroRoots) {
  // 6x^3 - 5x^2 + x = x(2x - 1)(3x - 1)
  auto r = univariate_roots(std::vector<Rational>{Rational(0), Rational(1), Rational(-5), Rational(6)});
  ASSERT_EQ(r.roots.size(), 3u);
  EXPECT_EQ(r.roots[0], Rational(0));
  EXPECT_EQ(r.roots[1], Rational(1, 3));
  EXPECT_EQ(r.roots[2], Rational(1, 2));
}

TEST(Roots, ComplexSquarePlusOne) {
  auto r = univariate_roots(std::vector<Complex>{1.0, 0.0, 1.0});
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_LT(std::abs(r.roots[0] - Complex(0, -1)), 1e-10);
  EXPECT_LT(std::abs(r.roots[1] - Complex(0, 1)), 1e-10);
}

TEST(Roots, ComplexResidualsOnRandomCubics) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int k = 0; k < 50; ++k) {
    std::vector<Complex> c{{d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}, {1.0, 0.0}};
    auto r = univariate_roots(c);
    ASSERT_EQ(r.roots.size(), 3u);
    for (const auto& z : r.roots) {
      Complex v = ((c[3] * z + c[2]) * z + c[1]) * z + c[0];
      EXPECT_LT(std::abs(v), 1e-10);
    }
  }
}

TEST(Roots, PrimeFieldQuadratic) {
  FqField f(5);
  auto r = univariate_roots(std::vector<Fp>{f.zero(), f.from_int(-1), f.one()});
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_EQ(r.roots[0].value(), 0u);
  EXPECT_EQ(r.roots[1].value(), 1u);
}

TEST(Roots, PrimeFieldAgreesWithExhaustiveEvaluation) {
  std::mt19937_64 rng(11);
  const std::uint64_t q = 13;
  for (int k = 0; k < 100; ++k) {
    std::vector<Fp> c;
    for (int i = 0; i < 4; ++i) c.emplace_back(static_cast<std::int64_t>(rng() % q), q);
    c.back() = Fp(1, q);
    auto r = univariate_roots(c);
    std::vector<std::uint64_t> expect;
    for (std::uint64_t x = 0; x < q; ++x) {
      std::uint64_t v = (c[0].value() + c[1].value() * x + c[2].value() * x * x + x * x * x) % q;
      if (v == 0) expect.push_back(x);
    }
    std::vector<std::uint64_t> got;
    for (const auto& z : r.roots) got.push_back(z.value());
    EXPECT_EQ(got, expect);
  }
}

TEST(Roots, ZeroPolynomialRejected) {
  try {
    univariate_roots(std::vector<Rational>{Rational(0), Rational(0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroPolynomial);
  }
}
