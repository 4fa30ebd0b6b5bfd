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

#include "trimat/classify.hpp"
#include "trimat/inductive.hpp"

using namespace trimat;

namespace {

NcPolynomial random_poly(std::mt19937_64& rng, std::uint32_t n, std::size_t deg) {
  NcPolynomial p(n);
  while (p.is_zero()) {
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < terms; ++t) {
      Word w;
      std::size_t len = 1 + rng() % deg;
      for (std::size_t s = 0; s < len; ++s) w.push_back(static_cast<std::uint32_t>(1 + rng() % n));
      p.add_term(w, Rational(static_cast<long>(rng() % 7) - 3));
    }
  }
  return p.with_nvars(n);
}

std::vector<FamilyKey> all_keys(std::size_t m, std::size_t n) {
  std::vector<FamilyKey> out;
  std::vector<std::size_t> chain;
  auto slots = [&](const std::vector<std::size_t>& c) {
    std::vector<std::uint32_t> s(c.size() - 1, 1);
    for (;;) {
      out.push_back({c, s});
      std::size_t k = 0;
      while (k < s.size() && s[k] == n) s[k++] = 1;
      if (k == s.size()) return;
      ++s[k];
    }
  };
  for (std::size_t a = 1; a <= m; ++a) {
    auto grow = [&](auto&& self, std::vector<std::size_t> c) -> void {
      slots(c);
      for (std::size_t b = c.back() + 1; b <= m; ++b) {
        auto d = c;
        d.push_back(b);
        self(self, d);
      }
    };
    grow(grow, {a});
  }
  return out;
}

}  // namespace

TEST(FamilyKey, ParsePrintRoundTrip) {
  FamilyKey k = FamilyKey::parse("1<2<4;(1,2)");
  EXPECT_EQ(k.chain, (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_EQ(k.slots, (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(k.to_string(), "1<2<4;(1,2)");
  EXPECT_EQ(FamilyKey::parse("3;()").to_string(), "3;()");
  EXPECT_THROW(FamilyKey::parse("2<1;(1)"), Error);
  EXPECT_THROW(FamilyKey::parse("1<2;(1,1)"), Error);
}

TEST(Family, SumOfSquareAndLinearGolden) {
  InductiveFamily fam = extract_family(parse_ncpoly("x1^2 + x2 + x3"), 4);
  const GenericRing& r = *fam.ring();
  for (const FamilyKey& k : all_keys(4, 3)) {
    QPoly expect(r.vars());
    const std::size_t a = k.alpha(), b = k.beta();
    if (k.slots.empty()) {
      expect = r.entry(a, a, 1) * r.entry(a, a, 1) + r.entry(a, a, 2) + r.entry(a, a, 3);
    } else if (k.slots.size() == 1) {
      expect = k.slots[0] == 1 ? r.entry(a, a, 1) + r.entry(b, b, 1) : QPoly::constant(r.vars(), Rational(1));
    } else if (k.slots.size() == 2 && k.slots[0] == 1 && k.slots[1] == 1) {
      expect = QPoly::constant(r.vars(), Rational(1));
    }
    EXPECT_EQ(fam.coefficient(k), expect) << k.to_string();
  }
}

TEST(Family, AnticommutatorGolden) {
  InductiveFamily fam = extract_family(parse_ncpoly("x1*x2 + x2*x1"), 4);
  const GenericRing& r = *fam.ring();
  for (const FamilyKey& k : all_keys(4, 2)) {
    QPoly expect(r.vars());
    const std::size_t a = k.alpha(), b = k.beta();
    if (k.slots.empty()) {
      expect = Rational(2) * r.entry(a, a, 1) * r.entry(a, a, 2);
    } else if (k.slots.size() == 1) {
      const std::size_t other = k.slots[0] == 1 ? 2 : 1;
      expect = r.entry(a, a, other) + r.entry(b, b, other);
    } else if (k.slots.size() == 2 && k.slots[0] != k.slots[1]) {
      expect = QPoly::constant(r.vars(), Rational(1));
    }
    EXPECT_EQ(fam.coefficient(k), expect) << k.to_string();
  }
}

TEST(Family, LinearMonomial) {
  InductiveFamily fam = extract_family(parse_ncpoly("x1"), 4);
  for (const FamilyKey& k : all_keys(4, 1)) {
    if (k.slots.size() == 1) EXPECT_EQ(fam.coefficient(k), QPoly::constant(fam.ring()->vars(), Rational(1)));
    if (k.slots.size() >= 2) EXPECT_TRUE(fam.coefficient(k).is_zero());
  }
}

TEST(Family, ReconstructionMatchesGenericEvaluation) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 15; ++n) {
    NcPolynomial p = random_poly(rng, 1 + rng() % 3, 3);
    const std::size_t m = 1 + rng() % 4;
    InductiveFamily fam = extract_family(p, m);
    GenericEvaluation g = generic_evaluate(p, m);
    for (std::size_t a = 1; a <= m; ++a)
      for (std::size_t b = a; b <= m; ++b) EXPECT_EQ(fam.reconstruct(a, b), g.value(a, b)) << p.to_string();
  }
}

TEST(Family, ShiftInvariance) {
  // Coefficients depend on the chain only through the diagonal variables at its nodes.
  NcPolynomial p = parse_ncpoly("x1*x2*x1 - 2*x2^2 + x1*x2");
  InductiveFamily fam = extract_family(p, 5);
  UniversalCoefficients uc(p);
  for (const auto& [k, c] : fam.coefficients())
    if (!k.slots.empty()) EXPECT_EQ(uc.instantiate(k, *fam.ring()), c) << k.to_string();
}

TEST(Support, SquareOfCommutator) {
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  SupportIndex s = support_index(p);
  EXPECT_EQ(s.t, 2u);
  EXPECT_EQ(s.ip, 1u);
  InductiveFamily fam = extract_family(p, 3);
  EXPECT_FALSE(fam.coefficient(FamilyKey::parse("1<2<3;(1,1)")).is_zero());
}

TEST(Support, Commutator) {
  SupportIndex s = support_index(parse_ncpoly("[x1,x2]"));
  EXPECT_EQ(s.ip, 1u);
  EXPECT_EQ(s.witnesses, (std::vector<std::vector<std::uint32_t>>{{1}, {2}}));
  InductiveFamily fam = extract_family(parse_ncpoly("[x1,x2]"), 2);
  const GenericRing& r = *fam.ring();
  EXPECT_EQ(fam.coefficient(FamilyKey::parse("1<2;(1)")), r.entry(2, 2, 2) - r.entry(1, 1, 2));
}

TEST(Support, RelabelInvariant) {
  NcPolynomial p = parse_ncpoly("x1*x2 - x2*x1");
  EXPECT_EQ(support_index(p.relabeled({2, 1})).ip, support_index(p).ip);
}

TEST(Support, OrderZeroRejected) {
  try {
    support_index(parse_ncpoly("x1"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OrderZero);
  }
}

TEST(Support, ProductOfCommutatorsNeedsDistinctSlots) {
  SupportIndex s = support_index(parse_ncpoly("[x1,x2]*[x3,x4]"));
  EXPECT_EQ(s.t, 2u);
  EXPECT_EQ(s.ip, 2u);
}

TEST(Assignment, DistinctValues) {
  GenericRing r(1, 2);
  QPoly d = r.entry(1, 1, 1) - r.entry(1, 1, 2);
  auto pt = find_nonzero_assignment({d});
  EXPECT_FALSE(d.eval(pt).is_zero());
  EXPECT_EQ(pt.at(r.var(1, 1, 1)), Rational(0));
  EXPECT_EQ(pt.at(r.var(1, 1, 2)), Rational(1));
}

TEST(Assignment, SimultaneousNonzero) {
  NcPolynomial p = parse_ncpoly("(x1*x2 - x2*x1)^2");
  InductiveFamily fam = extract_family(p, 5);
  std::vector<QPoly> qs;
  for (const char* key : {"1<2<3;(1,2)", "2<3<4;(2,1)", "3<4<5;(1,2)", "1<3;(1)"}) {
    QPoly c = fam.coefficient(FamilyKey::parse(key));
    if (!c.is_zero()) qs.push_back(c);
  }
  ASSERT_GE(qs.size(), 3u);
  auto pt = find_nonzero_assignment(qs);
  for (const auto& q : qs) EXPECT_FALSE(q.substitute(pt).is_zero());
  std::vector<std::optional<Rational>> dense(fam.ring()->vars()->size(), Rational(0));
  for (const auto& [v, c] : pt) dense[v] = c;
  for (const auto& q : qs) EXPECT_FALSE(q.eval(dense).is_zero());
}

TEST(Assignment, ZeroPolynomialRejected) {
  GenericRing r(1, 1);
  try {
    find_nonzero_assignment({QPoly(r.vars())});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroPolynomialInList);
  }
}

TEST(Assignment, RandomProductsOfLinearForms) {
  std::mt19937_64 rng(4);
  GenericRing r(2, 2);
  for (int n = 0; n < 50; ++n) {
    std::vector<QPoly> qs;
    for (int k = 0; k < 3; ++k) {
      QPoly q = QPoly::constant(r.vars(), Rational(1));
      for (int f = 0; f < 2; ++f) {
        QPoly lin = QPoly::constant(r.vars(), Rational(static_cast<long>(rng() % 3)));
        for (std::size_t v = 0; v < r.vars()->size(); ++v)
          lin += Rational(static_cast<long>(rng() % 5) - 2) * QPoly::variable(r.vars(), v, Rational(1));
        if (lin.is_zero()) lin = QPoly::constant(r.vars(), Rational(1));
        q *= lin;
      }
      qs.push_back(q);
    }
    auto pt = find_nonzero_assignment(qs);
    std::vector<std::optional<Rational>> dense(r.vars()->size(), Rational(0));
    for (const auto& [v, c] : pt) dense[v] = c;
    for (const auto& q : qs) EXPECT_FALSE(q.eval(dense).is_zero());
  }
}
