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

#include <random>

#include "trimat/oracle.hpp"
#include "trimat/witness.hpp"

using namespace trimat;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

Rational small_rational(std::mt19937_64& rng, bool nonzero = false) {
  for (;;) {
    Rational r(static_cast<long>(rng() % 19) - 9, static_cast<long>(1 + rng() % 4));
    if (!nonzero || !r.is_zero()) return r;
  }
}

// Entries at distance >= t; distance-t entries are nonzero when pattern is set, others may vanish.
QMatrix stratum_target(std::mt19937_64& rng, std::size_t m, std::size_t t, bool pattern) {
  QMatrix x(m);
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + t; j <= m; ++j) x(i, j) = (pattern && j == i + t) ? small_rational(rng, true) : small_rational(rng);
  return x;
}

NcPolynomial commutator_product(std::size_t m) {
  NcPolynomial p;
  for (std::uint32_t k = 0; k < m; ++k) {
    auto c = NcPolynomial::commutator(NcPolynomial::variable(2 * k + 1), NcPolynomial::variable(2 * k + 2));
    p = k ? p * c : c;
  }
  return p.with_nvars(2 * m);
}

QMatrix unit(std::size_t m, std::initializer_list<std::pair<std::size_t, std::size_t>> at) {
  QMatrix x(m);
  for (auto [i, j] : at) x(i, j) = Rational(1);
  return x;
}

}  // namespace

TEST(Witness, CommutatorOnT3) {
  NcPolynomial p = parse_ncpoly("[x1,x2]");
  QMatrix x = unit(3, {{1, 2}, {2, 3}, {1, 3}});
  QWitness w = witness(p, x, order(p));
  EXPECT_TRUE(w.verified);
  EXPECT_EQ(w.branch, Branch::Order1);
  EXPECT_EQ(evaluate(p, w.u), x);
}

TEST(Witness, TopCase) {
  NcPolynomial p = parse_ncpoly("[x1,x2]*[x3,x4]");
  QMatrix x(3);
  x(1, 3) = Rational(7);
  QWitness w = witness(p, x, order(p));
  EXPECT_EQ(w.branch, Branch::Top);
  EXPECT_EQ(evaluate(p, w.u), x);
}

TEST(Witness, ZeroTarget) {
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  QWitness w = witness(p, QMatrix(5), order(p));
  EXPECT_TRUE(w.verified);
  for (const auto& u : w.u) EXPECT_TRUE(u.is_zero_matrix());
}

TEST(Witness, OutsideStratum) {
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  EXPECT_EQ(code_of([&] { witness(p, unit(4, {{1, 2}}), order(p)); }), Errc::NotInStratum);
}

TEST(Witness, CounterexampleTargetIsNotConstructible) {
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  EXPECT_EQ(code_of([&] { witness(p, unit(5, {{1, 3}, {3, 5}}), order(p)); }), Errc::NotConstructible);
}

TEST(Witness, RoundTripCommutatorRandom) {
  std::mt19937_64 rng(1);
  NcPolynomial p = parse_ncpoly("[x1,x2]");
  WitnessEngine engine(p);
  for (std::size_t m = 2; m <= 5; ++m)
    for (int k = 0; k < 20; ++k) {
      QMatrix x = stratum_target(rng, m, 1, false);
      QWitness w = engine.witness(x);
      EXPECT_EQ(evaluate(p, w.u), x);
    }
}

TEST(Witness, RoundTripSquareOfCommutatorPattern) {
  std::mt19937_64 rng(2);
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  WitnessEngine engine(p);
  for (std::size_t m = 3; m <= 5; ++m)
    for (int k = 0; k < 10; ++k) {
      QMatrix x = stratum_target(rng, m, 2, true);
      QWitness w = engine.witness(x);
      EXPECT_EQ(evaluate(p, w.u), x);
    }
}

TEST(Witness, MirroredTargetsFromReversal) {
  // p(X1..Xn)^flip = p^rev(X1^flip..Xn^flip); witnesses for flipped targets come from p^rev.
  std::mt19937_64 rng(3);
  NcPolynomial p = parse_ncpoly("x1*x2*x1 - x2*x1^2");
  OrderReport r = order(p);
  ASSERT_EQ(r.order, 1u);
  WitnessEngine fwd(p), rev(p.reversed());
  for (int k = 0; k < 10; ++k) {
    QMatrix x = stratum_target(rng, 4, 1, true);
    QWitness w = rev.witness(flip(x));
    std::vector<QMatrix> back;
    for (const auto& u : w.u) back.push_back(flip(u));
    EXPECT_EQ(evaluate(p, back), x);
    EXPECT_EQ(evaluate(p, fwd.witness(x).u), x);
  }
}

TEST(Waring, CounterexampleNeedsTwo) {
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  OrderReport r = order(p);
  WaringDecomposition d = waring_decompose(p, unit(5, {{1, 3}, {3, 5}}), r, support_index(p, r));
  EXPECT_TRUE(d.verified);
  EXPECT_EQ(d.d, 2u);
  QMatrix sum(5);
  for (const auto& s : d.summands) {
    EXPECT_EQ(evaluate(p, s.witness.u), s.x);
    sum += s.x;
  }
  EXPECT_EQ(sum, unit(5, {{1, 3}, {3, 5}}));
}

TEST(Waring, FullPatternIsDirect) {
  std::mt19937_64 rng(4);
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  WitnessEngine engine(p);
  QMatrix x = stratum_target(rng, 5, 2, true);
  WaringDecomposition d = engine.waring(x);
  EXPECT_EQ(d.d, 1u);
  EXPECT_EQ(d.branch, "direct");
}

TEST(Waring, ZeroTarget) {
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  WaringDecomposition d = WitnessEngine(p).waring(QMatrix(5));
  EXPECT_EQ(d.d, 0u);
  EXPECT_TRUE(d.verified);
}

TEST(Waring, OrderRange) {
  NcPolynomial p = parse_ncpoly("[x1,x2]");
  EXPECT_EQ(code_of([&] { WitnessEngine(p).waring(QMatrix(4)); }), Errc::OrderOutOfRange);
}

TEST(Waring, BoundOnCommutatorProducts) {
  std::mt19937_64 rng(5);
  for (auto [m, t] : std::vector<std::pair<std::size_t, std::size_t>>{{5, 2}, {6, 2}, {6, 3}, {7, 3}}) {
    NcPolynomial p = commutator_product(t);
    WitnessEngine engine(p);
    for (int k = 0; k < 3; ++k) {
      QMatrix x = stratum_target(rng, m, t, false);
      for (std::size_t i = 1; i + t <= m; ++i)
        if (rng() % 2) x(i, i + t) = Rational(0);
      WaringDecomposition d = engine.waring(x);
      EXPECT_TRUE(d.verified);
      EXPECT_LE(d.d, std::min(t, m - t)) << "m=" << m << " t=" << t;
      QMatrix sum(m);
      for (const auto& s : d.summands) {
        EXPECT_EQ(evaluate(p, s.witness.u), s.x);
        sum += s.x;
      }
      EXPECT_EQ(sum, x);
    }
  }
}

TEST(Diagonalize, TwoByTwo) {
  QMatrix x(2);
  x(1, 1) = Rational(1);
  x(1, 2) = Rational(5);
  x(2, 2) = Rational(2);
  auto [v, d] = conjugate_to_diagonal(x, QField{});
  QMatrix expect_v = QMatrix::identity(2, Rational(1));
  expect_v(1, 2) = Rational(-5);
  EXPECT_EQ(v, expect_v);
  EXPECT_EQ(d, QMatrix::diagonal({Rational(1), Rational(2)}));
}

TEST(Diagonalize, AlreadyDiagonal) {
  QMatrix x = QMatrix::diagonal({Rational(3), Rational(-1), Rational(2)});
  auto [v, d] = conjugate_to_diagonal(x, QField{});
  EXPECT_EQ(v, QMatrix::identity(3, Rational(1)));
  EXPECT_EQ(d, x);
}

TEST(Diagonalize, RandomRoundTrip) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 50; ++k) {
    QMatrix x(5);
    for (std::size_t i = 1; i <= 5; ++i) {
      x(i, i) = Rational(static_cast<long>(i) * 3 - 7, 2);
      for (std::size_t j = i + 1; j <= 5; ++j) x(i, j) = small_rational(rng);
    }
    auto [v, d] = conjugate_to_diagonal(x, QField{});
    EXPECT_EQ(multiply(multiply(v, x), inverse(v)), d);
    EXPECT_EQ(d, QMatrix::diagonal(x.diag()));
  }
}

TEST(Diagonalize, RepeatedDiagonalRejected) {
  QMatrix x = QMatrix::diagonal({Rational(2), Rational(2)});
  EXPECT_EQ(code_of([&] { conjugate_to_diagonal(x, QField{}); }), Errc::RepeatedDiagonal);
}

TEST(Order0, PerfectSquares) {
  NcPolynomial p = parse_ncpoly("x1^2");
  auto w = witness_order0(p, QMatrix::diagonal({Rational(1), Rational(4), Rational(9)}), QField{});
  ASSERT_EQ(w.u.size(), 1u);
  EXPECT_EQ(w.u[0], QMatrix::diagonal({Rational(1), Rational(2), Rational(3)}));
}

TEST(Order0, ComplexSquares) {
  NcPolynomial p = parse_ncpoly("x1^2");
  auto x = UTMatrix<Complex>::diagonal({2.0, 3.0, 5.0}, Complex(0, 0));
  x(1, 3) = Complex(1, -2);
  auto w = witness_order0(p, x, CField{});
  EXPECT_TRUE(w.verified);
  EXPECT_LT(w.residual, 1e-9);
}

TEST(Order0, NoRationalRoot) {
  NcPolynomial p = parse_ncpoly("x1^2");
  EXPECT_EQ(code_of([&] { witness_order0(p, QMatrix::diagonal({Rational(2), Rational(3)}), QField{}); }),
            Errc::ScalarEquationUnsolvable);
}

TEST(Order0, MultivariateOverQ) {
  std::mt19937_64 rng(7);
  NcPolynomial p = parse_ncpoly("x1^2 + x2 + x3");
  for (int k = 0; k < 20; ++k) {
    QMatrix x(4);
    for (std::size_t i = 1; i <= 4; ++i) {
      x(i, i) = Rational(static_cast<long>(i) * 2 - 5);
      for (std::size_t j = i + 1; j <= 4; ++j) x(i, j) = small_rational(rng);
    }
    auto w = witness_order0(p, x, QField{});
    EXPECT_EQ(evaluate(p, w.u), x);
  }
}

TEST(Order0, CommutatorRejected) {
  EXPECT_EQ(code_of([] { witness_order0(parse_ncpoly("[x1,x2]"), QMatrix::diagonal({Rational(1), Rational(2)}), QField{}); }),
            Errc::OrderOutOfRange);
}

TEST(WordWitness, SquareRoots) {
  GroupWord w = GroupWord::parse("x1^2");
  auto r = word_witness(w, QMatrix::diagonal({Rational(4), Rational(9), Rational(25)}), QField{});
  EXPECT_EQ(r.u[0], QMatrix::diagonal({Rational(2), Rational(3), Rational(5)}));
}

TEST(WordWitness, ComplexRandomTargets) {
  std::mt19937_64 rng(8);
  GroupWord w = GroupWord::parse("x1^2");
  for (int k = 0; k < 30; ++k) {
    auto x = detail::random_matrix(rng, 3, CField{}, true);
    auto r = word_witness(w, x, CField{});
    EXPECT_LT(r.residual, 1e-9);
  }
}

TEST(WordWitness, MixedExponents) {
  GroupWord w = GroupWord::parse("x1^3*x2^-2*x1^-1");
  QMatrix x = QMatrix::diagonal({Rational(1, 4), Rational(1, 9)});
  x(1, 2) = Rational(3);
  auto r = word_witness(w, x, QField{});
  EXPECT_EQ(evaluate_word(w, r.u, Rational(1)), x);
}

TEST(WordWitness, CommutatorNeedsUnitDiagonal) {
  GroupWord w = GroupWord::parse("x1*x2*x1^-1*x2^-1");
  EXPECT_EQ(code_of([&] { word_witness(w, QMatrix::diagonal({Rational(2), Rational(3)}), QField{}); }),
            Errc::ScalarEquationUnsolvable);
}

TEST(WordWitness, SingularTarget) {
  GroupWord w = GroupWord::parse("x1^2");
  EXPECT_EQ(code_of([&] { word_witness(w, QMatrix::diagonal({Rational(0), Rational(3)}), QField{}); }), Errc::NonInvertibleTarget);
}
