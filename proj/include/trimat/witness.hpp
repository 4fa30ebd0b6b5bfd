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

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trimat/classify.hpp"
#include "trimat/error.hpp"
#include "trimat/field.hpp"
#include "trimat/generic.hpp"
#include "trimat/inductive.hpp"
#include "trimat/ncpoly.hpp"
#include "trimat/roots.hpp"
#include "trimat/utm.hpp"

namespace trimat {

enum class Branch { Order0Diag, Order1, OrderTPattern, Top, WaringSummand };

constexpr std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::Order0Diag: return "order0-diag";
    case Branch::Order1: return "order1";
    case Branch::OrderTPattern: return "order-t-pattern";
    case Branch::Top: return "top";
    case Branch::WaringSummand: return "waring-summand";
  }
  return "?";
}

template <class K>
struct WitnessResult {
  std::vector<UTMatrix<K>> u;
  bool verified = false;
  Branch branch = Branch::Order1;
  std::string routing;
  double residual = 0.0;
};

using QMatrix = UTMatrix<Rational>;
using QWitness = WitnessResult<Rational>;

/// One off-diagonal entry (row, col) of matrix u_slot.
struct Link {
  std::uint32_t slot;
  std::size_t row, col;
};

/// Which entries are fixed and in what order the unknowns are solved.
struct Routing {
  struct Step {
    std::size_t alpha, beta;
    Link unknown;
    FamilyKey primary;
  };
  std::string name;
  std::vector<std::pair<Link, Rational>> fixed;
  std::vector<Step> steps;
};

inline std::string slots_to_string(const std::vector<std::uint32_t>& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + ")";
}

inline std::vector<std::uint32_t> rotated(const std::vector<std::uint32_t>& s, std::size_t by) {
  std::vector<std::uint32_t> r(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) r[k] = s[(k + by) % s.size()];
  return r;
}

/// Link l lives in matrix I[(l-1) mod t]; links 1..t-1 are 1 and each later
/// link closes a t-link chain starting t-1 rows above.
inline Routing cyclic_routing(std::size_t m, std::size_t t, const std::vector<std::uint32_t>& I) {
  Routing r;
  r.name = "cyclic" + slots_to_string(I);
  auto c = [&](std::size_t l) { return I[(l - 1) % t]; };
  for (std::size_t l = 1; l < t && l < m; ++l) r.fixed.push_back({{c(l), l, l + 1}, Rational(1)});
  for (std::size_t d = t; d < m; ++d)
    for (std::size_t a = 1; a + d <= m; ++a) {
      FamilyKey key;
      for (std::size_t k = 0; k < t; ++k) {
        key.chain.push_back(a + k);
        key.slots.push_back(c(a + k));
      }
      key.chain.push_back(a + d);
      r.steps.push_back({a, a + d, {c(a + t - 1), a + t - 1, a + d}, key});
    }
  return r;
}

/// All superdiagonal links in u_{i0} are 1; the closing link of every chain
/// sits in u_{j0}.
inline Routing anchor_routing(std::size_t m, std::size_t t, std::uint32_t i0, std::uint32_t j0) {
  Routing r;
  r.name = "anchor(" + std::to_string(i0) + "," + std::to_string(j0) + ")";
  for (std::size_t l = 1; l + 1 < m; ++l) r.fixed.push_back({{i0, l, l + 1}, Rational(1)});
  for (std::size_t d = t; d < m; ++d)
    for (std::size_t a = 1; a + d <= m; ++a) {
      FamilyKey key;
      for (std::size_t k = 0; k < t; ++k) {
        key.chain.push_back(a + k);
        key.slots.push_back(k + 1 < t ? i0 : j0);
      }
      key.chain.push_back(a + d);
      r.steps.push_back({a, a + d, {j0, a + t - 1, a + d}, key});
    }
  return r;
}

/// Only rows r = a mod t carry chains: links r..r+t-2 are 1 in u_{I_1..I_{t-1}}
/// and the closing link sits in u_{I_t}.
inline Routing row_residue_routing(std::size_t m, std::size_t t, const std::vector<std::uint32_t>& I, std::size_t a) {
  Routing r;
  r.name = "row-residue" + slots_to_string(I) + "[" + std::to_string(a) + "]";
  std::vector<std::size_t> rows;
  for (std::size_t row = a; row + t <= m; row += t) rows.push_back(row);
  for (std::size_t row : rows)
    for (std::size_t j = 1; j < t; ++j) r.fixed.push_back({{I[j - 1], row + j - 1, row + j}, Rational(1)});
  for (std::size_t d = t; d < m; ++d)
    for (std::size_t row : rows) {
      if (row + d > m) continue;
      FamilyKey key;
      for (std::size_t k = 0; k < t; ++k) key.chain.push_back(row + k);
      key.slots = I;
      key.chain.push_back(row + d);
      r.steps.push_back({row, row + d, {I[t - 1], row + t - 1, row + d}, key});
    }
  return r;
}

/// Fills a routing: diagonals at a point where every primary coefficient is
/// nonzero, then each unknown from the affine residual f(1) - f(0).
inline std::optional<std::vector<QMatrix>> solve_routing(const NcPolynomial& p, const UniversalCoefficients& coeffs,
                                                         const QMatrix& x, const Routing& routing, std::size_t retries = 6) {
  const std::size_t m = x.size(), n = p.nvars();
  GenericRing ring(m, n);
  std::vector<QPoly> polys;
  std::set<FamilyKey> seen;
  for (const auto& s : routing.steps)
    if (seen.insert(s.primary).second) {
      polys.push_back(coeffs.instantiate(s.primary, ring));
      if (polys.back().is_zero()) return std::nullopt;
    }
  for (std::size_t attempt = 0; attempt < retries; ++attempt) {
    std::map<std::size_t, Rational> point = polys.empty() ? std::map<std::size_t, Rational>{} : find_nonzero_assignment(polys, attempt);
    std::vector<QMatrix> u(n, QMatrix(m));
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t e = 1; e <= m; ++e) {
        auto it = point.find(ring.var(e, e, i));
        if (it != point.end()) u[i - 1](e, e) = it->second;
      }
    for (const auto& [link, v] : routing.fixed) u[link.slot - 1](link.row, link.col) = v;
    bool ok = true;
    for (const auto& s : routing.steps) {
      Rational& entry = u[s.unknown.slot - 1](s.unknown.row, s.unknown.col);
      entry = Rational(0);
      Rational f0 = evaluate(p, u)(s.alpha, s.beta);
      entry = Rational(1);
      Rational lambda = evaluate(p, u)(s.alpha, s.beta) - f0;
      if (lambda.is_zero()) {
        ok = false;
        break;
      }
      entry = (x(s.alpha, s.beta) - f0) / lambda;
    }
    if (ok && evaluate(p, u) == x) return u;
  }
  return std::nullopt;
}

struct WaringSummand {
  QMatrix x;
  QWitness witness;
};

struct WaringDecomposition {
  std::vector<WaringSummand> summands;
  std::size_t d = 0;
  std::string branch;
  bool verified = false;
};

/// Witness and Waring constructions for one polynomial of order t >= 1. Keeps
/// coefficient caches for p and for its word reversal, which handles targets
/// through the anti-automorphism A -> J A^T J.
class WitnessEngine {
 public:
  explicit WitnessEngine(const NcPolynomial& p, std::optional<OrderReport> report = std::nullopt)
      : p_(p), rev_(p.reversed()), report_(report ? *report : order(p)), fwd_coeffs_(p), rev_coeffs_(rev_) {
    if (report_.order == 0) throw Error(Errc::OrderZero, "use the order-0 witness for polynomials with nonzero abelianization");
    fwd_support_ = support_index(p_, report_);
    rev_support_ = support_index(rev_, report_);
  }

  const OrderReport& report() const { return report_; }
  const SupportIndex& support() const { return fwd_support_; }
  std::size_t t() const { return report_.order; }

  /// Routings that apply to x in one orientation, in the order they are tried.
  std::vector<Routing> candidates(const QMatrix& x, bool mirrored) const {
    const std::size_t m = x.size(), t = this->t();
    const SupportIndex& sup = mirrored ? rev_support_ : fwd_support_;
    const UniversalCoefficients& co = mirrored ? rev_coeffs_ : fwd_coeffs_;
    std::vector<Routing> out;
    bool pattern = true;
    if (t >= 2)
      for (std::size_t a = 1; a + t < m; ++a) pattern = pattern && !x(a, a + t).is_zero();
    if (pattern)
      for (const auto& I : sup.witnesses) {
        bool rotations = true;
        for (std::size_t a = 1; a + t <= m && a <= t; ++a) rotations = rotations && co.nonzero(rotated(I, a - 1));
        if (rotations) out.push_back(cyclic_routing(m, t, I));
      }
    if (t >= 2)
      for (const auto& I : sup.witnesses) {
        bool shape = I.back() != I.front();
        for (std::size_t k = 0; k + 1 < t; ++k) shape = shape && I[k] == I.front();
        if (shape) out.push_back(anchor_routing(m, t, I.front(), I.back()));
      }
    return out;
  }

  QWitness witness(const QMatrix& x) const {
    const std::size_t m = x.size(), t = this->t();
    check_target(x);
    QWitness w;
    w.branch = t == 1 ? Branch::Order1 : (t + 1 == m ? Branch::Top : Branch::OrderTPattern);
    if (x.is_zero_matrix()) {
      w.u.assign(p_.nvars(), QMatrix(m));
      w.routing = "zero";
      w.verified = evaluate(p_, w.u) == x;
      return w;
    }
    for (bool mirrored : {false, true}) {
      const QMatrix xo = mirrored ? flip(x) : x;
      for (const auto& r : candidates(xo, mirrored)) {
        auto u = try_routing(xo, r, mirrored);
        if (!u) continue;
        w.u = std::move(*u);
        w.routing = (mirrored ? "mirrored-" : "") + r.name;
        w.verified = true;
        return w;
      }
    }
    throw Error(Errc::NotConstructible, "no routing applies to this target; try waring_decompose");
  }

  WaringDecomposition waring(const QMatrix& x) const {
    const std::size_t m = x.size(), t = this->t();
    if (!(1 < t && t + 1 < m)) throw Error(Errc::OrderOutOfRange, "Waring decomposition needs 1 < t < m-1");
    check_target(x);
    WaringDecomposition out;
    if (x.is_zero_matrix()) {
      out.branch = "zero";
      out.verified = true;
      return out;
    }
    try {
      QWitness w = witness(x);
      w.branch = Branch::WaringSummand;
      out.summands.push_back({x, std::move(w)});
      out.branch = "direct";
      return finish(std::move(out), x);
    } catch (const Error& e) {
      if (e.code() != Errc::NotConstructible) throw;
    }
    std::string split;
    if (fwd_support_.ip == 1) split = "ip1-split";
    else if (t == 2) split = "ord2-split";
    else if (has_cyclic_support()) split = "cyclic-split";
    if (!split.empty()) {
      auto [x1, x2] = nonzero_split(x);
      try {
        QWitness w1 = witness(x1), w2 = witness(x2);
        w1.branch = w2.branch = Branch::WaringSummand;
        out.summands.push_back({x1, std::move(w1)});
        out.summands.push_back({x2, std::move(w2)});
        out.branch = split;
        return finish(std::move(out), x);
      } catch (const Error& e) {
        if (e.code() != Errc::NotConstructible) throw;
      }
    }
    return finish(row_residue(x), x);
  }

  /// X = X1 + X2 with every stratum entry nonzero in both parts.
  std::pair<QMatrix, QMatrix> nonzero_split(const QMatrix& x) const {
    const std::size_t m = x.size(), t = this->t();
    QMatrix x1(m);
    for (std::size_t a = 1; a <= m; ++a)
      for (std::size_t b = a + t; b <= m; ++b) x1(a, b) = x(a, b).is_zero() ? Rational(1) : x(a, b) / Rational(2);
    return {x1, x - x1};
  }

 private:
  void check_target(const QMatrix& x) const {
    if (!stratum_contains(x, static_cast<long>(t()) - 1))
      throw Error(Errc::NotInStratum, "target has a nonzero entry at distance below " + std::to_string(t()));
  }

  bool has_cyclic_support() const {
    for (const auto& I : fwd_support_.witnesses) {
      bool all = true;
      for (std::size_t k = 0; k < t(); ++k) all = all && fwd_coeffs_.nonzero(rotated(I, k));
      if (all) return true;
    }
    return false;
  }

  std::optional<std::vector<QMatrix>> try_routing(const QMatrix& xo, const Routing& r, bool mirrored) const {
    auto u = solve_routing(mirrored ? rev_ : p_, mirrored ? rev_coeffs_ : fwd_coeffs_, xo, r);
    if (u && mirrored)
      for (auto& a : *u) a = flip(a);
    return u;
  }

  WaringDecomposition row_residue(const QMatrix& x) const {
    const std::size_t m = x.size(), t = this->t(), d = std::min(t, m - t);
    std::vector<QMatrix> parts;
    for (std::size_t a = 1; a <= d; ++a) {
      QMatrix xa(m);
      for (std::size_t row = a; row + t <= m; row += t)
        for (std::size_t b = row + t; b <= m; ++b) xa(row, b) = x(row, b);
      parts.push_back(xa);
    }
    std::string failure;
    for (bool mirrored : {false, true})
      for (const auto& I : (mirrored ? rev_support_ : fwd_support_).witnesses) {
        WaringDecomposition out;
        out.branch = std::string(mirrored ? "mirrored-" : "") + "row-residue";
        bool ok = true;
        for (std::size_t a = 1; a <= d && ok; ++a) {
          const QMatrix& xa = parts[a - 1];
          if (xa.is_zero_matrix()) continue;
          Routing r = row_residue_routing(m, t, I, a);
          auto u = try_routing(mirrored ? flip(xa) : xa, r, mirrored);
          if (!u) {
            ok = false;
            failure = "residue class " + std::to_string(a) + " with slots " + slots_to_string(I) +
                      (mirrored ? " (mirrored)" : "") + ": re-evaluation differs from the summand";
            break;
          }
          QWitness w;
          w.u = std::move(*u);
          w.verified = true;
          w.branch = Branch::WaringSummand;
          w.routing = (mirrored ? "mirrored-" : "") + r.name;
          out.summands.push_back({xa, std::move(w)});
        }
        if (ok) return out;
      }
    throw Error(Errc::SummandConstructionFailed, failure.empty() ? "no witness slots available" : failure);
  }

  WaringDecomposition finish(WaringDecomposition out, const QMatrix& x) const {
    QMatrix sum(x.size());
    bool all = true;
    for (const auto& s : out.summands) {
      sum += s.x;
      all = all && s.witness.verified && evaluate(p_, s.witness.u) == s.x;
    }
    out.d = out.summands.size();
    out.verified = all && sum == x;
    if (!out.verified) throw Error(Errc::SummandConstructionFailed, "summands do not re-evaluate to the target");
    return out;
  }

  NcPolynomial p_, rev_;
  OrderReport report_;
  UniversalCoefficients fwd_coeffs_, rev_coeffs_;
  SupportIndex fwd_support_, rev_support_;
};

inline QWitness witness(const NcPolynomial& p, const QMatrix& x, const OrderReport& report) {
  return WitnessEngine(p, report).witness(x);
}

inline WaringDecomposition waring_decompose(const NcPolynomial& p, const QMatrix& x, const OrderReport& report,
                                            const SupportIndex& support) {
  WitnessEngine engine(p, report);
  if (engine.support().witnesses != support.witnesses) throw Error(Errc::InvalidArgument, "support index does not belong to p");
  return engine.waring(x);
}

template <class K>
struct Diagonalization {
  UTMatrix<K> v, d;
};

template <class K>
void check_distinct_diagonal(const UTMatrix<K>& x) {
  for (std::size_t i = 1; i <= x.size(); ++i)
    for (std::size_t j = i + 1; j <= x.size(); ++j)
      if (x(i, i) == x(j, j))
        throw Error(Errc::RepeatedDiagonal, "diagonal entries " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

/// Clears off-diagonal entries in increasing j - i with (I + tE_ij)(.)(I - tE_ij).
template <class Field>
Diagonalization<typename Field::value_type> conjugate_to_diagonal(const UTMatrix<typename Field::value_type>& x, const Field& f) {
  using K = typename Field::value_type;
  const std::size_t m = x.size();
  check_distinct_diagonal(x);
  UTMatrix<K> a = x, v = UTMatrix<K>::identity(m, f.one(), f.zero());
  for (std::size_t d = 1; d < m; ++d)
    for (std::size_t i = 1; i + d <= m; ++i) {
      const std::size_t j = i + d;
      if (is_zero(a(i, j))) continue;
      K t = -(a(i, j) / (a(j, j) - a(i, i)));
      UTMatrix<K> e = UTMatrix<K>::identity(m, f.one(), f.zero()), einv = e;
      e(i, j) = t;
      einv(i, j) = -t;
      a = multiply(multiply(e, a), einv);
      a(i, j) = f.zero();
      v = multiply(e, v);
    }
  return {v, a};
}

template <class Field>
double max_abs_diff(const UTMatrix<typename Field::value_type>& a, const UTMatrix<typename Field::value_type>& b, const Field& f) {
  double r = 0;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = i; j <= a.size(); ++j) r = std::max(r, f.abs(a(i, j) - b(i, j)));
  return r;
}

namespace detail {

template <class K>
bool root_less(const K& a, const K& b) {
  if constexpr (std::is_same_v<K, Rational>) return rational_root_less(a, b);
  else if constexpr (std::is_same_v<K, Complex>) return complex_less(a, b);
  else return a.value() < b.value();
}

template <class Field>
std::vector<std::optional<typename Field::value_type>> fixing(std::size_t n, std::size_t free, std::size_t round, const Field& f) {
  std::vector<std::optional<typename Field::value_type>> vals(n);
  for (std::size_t j = 0; j < n; ++j)
    if (j != free) vals[j] = f.from_int(round == 0 ? 0 : grid_point(round + j));
  return vals;
}

}  // namespace detail

/// Solves p(a_1..a_n) = c in the field by fixing all but one variable.
template <class Field>
std::vector<typename Field::value_type> solve_scalar(const CPolynomial<typename Field::value_type>& abel, std::size_t n,
                                                     const typename Field::value_type& c, const Field& f,
                                                     std::size_t budget = 64) {
  using K = typename Field::value_type;
  for (std::size_t k = 0; k < budget; ++k) {
    const std::size_t free = k % n, round = k / n;
    auto vals = detail::fixing(n, free, round, f);
    CPolynomial<K> g = abel.substitute(vals) - CPolynomial<K>::constant(abel.vars(), c);
    if (g.is_zero()) {
      std::vector<K> point;
      for (std::size_t j = 0; j < n; ++j) point.push_back(j == free ? f.zero() : *vals[j]);
      return point;
    }
    if (g.degree_in(free) == 0) continue;
    auto roots = univariate_roots(g.univariate(free));
    if (roots.roots.empty()) continue;
    K best = roots.roots.front();
    for (const auto& r : roots.roots)
      if (detail::root_less(r, best)) best = r;
    std::vector<K> point;
    for (std::size_t j = 0; j < n; ++j) point.push_back(j == free ? best : *vals[j]);
    return point;
  }
  throw Error(Errc::ScalarEquationUnsolvable, "no root of p = " + f.to_string(c) + " found within " + std::to_string(budget) + " fixings");
}

template <class Field>
CPolynomial<typename Field::value_type> abelianization(const NcPolynomial& p, const Field& f) {
  using K = typename Field::value_type;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= p.nvars(); ++i) names.push_back("x" + std::to_string(i));
  auto vs = std::make_shared<const VarSet>(names);
  CPolynomial<K> out(vs);
  for (const auto& [e, c] : p.abelianized()) {
    Monomial mono;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j]) mono = mono * Monomial::var(static_cast<std::uint32_t>(j), e[j]);
    out.add_term(mono, f.from_rational(c));
  }
  return out;
}

template <class Field>
WitnessResult<typename Field::value_type> witness_order0(const NcPolynomial& p, const UTMatrix<typename Field::value_type>& x,
                                                         const Field& f, double tolerance = 1e-9) {
  using K = typename Field::value_type;
  const std::size_t m = x.size(), n = p.nvars();
  auto abel = abelianization(p, f);
  if (abel.is_zero()) throw Error(Errc::OrderOutOfRange, "abelianization vanishes; order is at least 1");
  auto [v, d] = conjugate_to_diagonal(x, f);
  UTMatrix<K> vinv = inverse(v);
  std::vector<std::vector<K>> diag(n, std::vector<K>(m));
  for (std::size_t i = 1; i <= m; ++i) {
    auto point = solve_scalar(abel, n, d(i, i), f);
    for (std::size_t j = 0; j < n; ++j) diag[j][i - 1] = point[j];
  }
  WitnessResult<K> w;
  w.branch = Branch::Order0Diag;
  w.routing = "diagonalize";
  for (std::size_t j = 0; j < n; ++j) w.u.push_back(multiply(multiply(vinv, UTMatrix<K>::diagonal(diag[j], f.zero())), v));
  UTMatrix<K> back = evaluate(p, w.u);
  w.residual = max_abs_diff(back, x, f);
  w.verified = Field::exact ? back == x : w.residual < tolerance;
  if (!w.verified) throw Error(Errc::ScalarEquationUnsolvable, "re-evaluation misses the target by " + std::to_string(w.residual));
  return w;
}

namespace detail {

inline std::optional<Rational> exact_root(const Rational& c, unsigned long k) {
  if (c.sign() < 0 && k % 2 == 0) return std::nullopt;
  mpz_class num = abs(c.num()), den = c.den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k)) return std::nullopt;
  Rational r(mpq_class(rn, rd));
  return c.sign() < 0 ? -r : r;
}

template <class Field>
std::optional<typename Field::value_type> kth_root(const typename Field::value_type& c, unsigned long k, const Field& f) {
  using K = typename Field::value_type;
  if constexpr (std::is_same_v<K, Rational>) {
    return exact_root(c, k);
  } else if constexpr (std::is_same_v<K, Complex>) {
    const double r = std::pow(std::abs(c), 1.0 / static_cast<double>(k)), th = std::arg(c);
    std::optional<Complex> best;
    for (unsigned long j = 0; j < k; ++j) {
      Complex z = std::polar(r, (th + 2 * M_PI * static_cast<double>(j)) / static_cast<double>(k));
      if (!best || complex_less(z, *best)) best = z;
    }
    return best;
  } else {
    for (std::uint64_t v = 1; v < f.q; ++v) {
      Fp z(static_cast<std::int64_t>(v), f.q);
      if (z.pow(k) == c) return z;
    }
    return std::nullopt;
  }
}

}  // namespace detail

template <class Field>
WitnessResult<typename Field::value_type> word_witness(const GroupWord& w, const UTMatrix<typename Field::value_type>& x,
                                                       const Field& f, std::size_t nvars = 0, double tolerance = 1e-9) {
  using K = typename Field::value_type;
  const std::size_t m = x.size(), n = std::max<std::size_t>({nvars, w.nvars(), 1});
  for (std::size_t i = 1; i <= m; ++i)
    if (is_zero(x(i, i))) throw Error(Errc::NonInvertibleTarget, "zero diagonal entry at " + std::to_string(i));
  auto [v, d] = conjugate_to_diagonal(x, f);
  UTMatrix<K> vinv = inverse(v);
  const std::vector<long> e = w.exponent_sums(n);
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < n; ++j)
    if (e[j]) order.push_back(j);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return std::labs(e[a]) < std::labs(e[b]); });
  std::vector<std::vector<K>> diag(n, std::vector<K>(m, f.one()));
  for (std::size_t i = 1; i <= m; ++i) {
    const K c = d(i, i);
    bool solved = order.empty() && c == f.one();
    for (std::size_t j : order) {
      if (solved) break;
      const K target = e[j] > 0 ? c : inverse(c);
      auto z = detail::kth_root(target, static_cast<unsigned long>(std::labs(e[j])), f);
      if (z) {
        diag[j][i - 1] = *z;
        solved = true;
      }
    }
    if (!solved) throw Error(Errc::ScalarEquationUnsolvable, "w = " + f.to_string(c) + " has no solution at slot " + std::to_string(i));
  }
  WitnessResult<K> out;
  out.branch = Branch::Order0Diag;
  out.routing = "diagonalize";
  for (std::size_t j = 0; j < n; ++j) out.u.push_back(multiply(multiply(vinv, UTMatrix<K>::diagonal(diag[j], f.zero())), v));
  UTMatrix<K> back = evaluate_word(w, out.u, f.one());
  out.residual = max_abs_diff(back, x, f);
  out.verified = Field::exact ? back == x : out.residual < tolerance;
  if (!out.verified) throw Error(Errc::ScalarEquationUnsolvable, "re-evaluation misses the target by " + std::to_string(out.residual));
  return out;
}

}  // namespace trimat
