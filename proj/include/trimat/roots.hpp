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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "trimat/error.hpp"
#include "trimat/field.hpp"
#include "trimat/prime_field.hpp"
#include "trimat/rational.hpp"

namespace trimat {

template <class K>
struct RootSet {
  std::vector<K> roots;
  /// Degree of what is left after dividing out the roots found (rational scans only).
  std::size_t residual_degree = 0;
  bool no_rational_root = false;
};

namespace detail {

template <class K>
std::vector<K> trimmed(std::vector<K> c) {
  while (!c.empty() && is_zero(c.back())) c.pop_back();
  if (c.empty()) throw Error(Errc::ZeroPolynomial, "root finding on the zero polynomial");
  return c;
}

template <class K>
K horner(const std::vector<K>& c, const K& x) {
  K acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

template <class K>
std::vector<K> deflate(const std::vector<K>& c, const K& r) {
  std::vector<K> q(c.size() - 1);
  K carry = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = c[i] + carry * r;
  }
  return q;
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Orders rationals by absolute value, positive before negative.
inline bool rational_root_less(const Rational& a, const Rational& b) {
  Rational aa = a.sign() < 0 ? -a : a, bb = b.sign() < 0 ? -b : b;
  if (aa != bb) return aa < bb;
  return a.sign() > b.sign();
}

inline bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace detail

inline RootSet<Rational> univariate_roots(const std::vector<Rational>& coeffs) {
  std::vector<Rational> c = detail::trimmed(coeffs);
  RootSet<Rational> out;
  if (c.size() == 1) {
    out.no_rational_root = true;
    return out;
  }
  if (c[0].is_zero()) {
    out.roots.emplace_back(0);
    while (c[0].is_zero()) c.erase(c.begin());
  }
  if (c.size() > 1) {
    mpz_class l = 1;
    for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    std::vector<mpz_class> z;
    for (const auto& x : c) z.push_back(x.num() * (l / x.den()));
    std::vector<Rational> cand;
    for (const auto& p : detail::divisors(z.front()))
      for (const auto& q : detail::divisors(z.back())) {
        Rational r(mpq_class(p, q));
        cand.push_back(r);
        cand.push_back(-r);
      }
    std::sort(cand.begin(), cand.end(), detail::rational_root_less);
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const auto& r : cand)
      if (detail::horner(c, r).is_zero()) out.roots.push_back(r);
  }
  std::vector<Rational> rest = detail::trimmed(coeffs);
  for (const auto& r : out.roots)
    while (rest.size() > 1 && detail::horner(rest, r).is_zero()) rest = detail::deflate(rest, r);
  std::sort(out.roots.begin(), out.roots.end(), detail::rational_root_less);
  out.residual_degree = rest.size() - 1;
  out.no_rational_root = out.roots.empty();
  return out;
}

/// Exhaustive scan over F_q.
inline RootSet<Fp> univariate_roots(const std::vector<Fp>& coeffs) {
  std::vector<Fp> c = detail::trimmed(coeffs);
  std::uint64_t q = 0;
  for (const auto& x : c) q = std::max(q, x.modulus());
  if (q == 0) throw Error(Errc::FieldMismatch, "coefficients carry no modulus");
  RootSet<Fp> out;
  if (c.size() == 1) return out;
  for (std::uint64_t v = 0; v < q; ++v) {
    Fp x(static_cast<std::int64_t>(v), q);
    if (detail::horner(c, x).is_zero()) out.roots.push_back(x);
  }
  return out;
}

namespace detail {

inline std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -monic[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()[i];
  return out;
}

inline Complex newton_polish(const std::vector<Complex>& c, Complex z) {
  std::vector<Complex> dc(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = c[i] * static_cast<double>(i);
  for (int it = 0; it < 8; ++it) {
    Complex d = horner(dc, z);
    if (std::abs(d) == 0.0) break;
    Complex step = horner(c, z) / d;
    z -= step;
    if (std::abs(step) < 1e-16 * (1 + std::abs(z))) break;
  }
  return z;
}

}  // namespace detail

/// All deg-many complex roots by Aberth iteration, with an eigenvalue fallback.
inline RootSet<Complex> univariate_roots(const std::vector<Complex>& coeffs, double residual_tol = 1e-10) {
  std::vector<Complex> c = detail::trimmed(coeffs);
  RootSet<Complex> out;
  const std::size_t n = c.size() - 1;
  if (n == 0) return out;
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  std::vector<Complex> dc(n);
  for (std::size_t i = 1; i <= n; ++i) dc[i - 1] = c[i] * static_cast<double>(i);

  double radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 0.5 * (1 + radius);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(radius, 2 * M_PI * static_cast<double>(k) / n + 0.4);

  bool converged = false;
  for (int it = 0; it < 1000 && !converged; ++it) {
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex pz = detail::horner(c, z[k]), dz = detail::horner(dc, z[k]);
      if (std::abs(pz) == 0.0) continue;
      Complex ratio = pz / dz, sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      Complex w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / (1 + std::abs(z[k])));
    }
    converged = worst < 1e-12;
  }
  auto residual_ok = [&](const std::vector<Complex>& rs) {
    for (const auto& r : rs)
      if (!(std::abs(detail::horner(c, r)) < residual_tol)) return false;
    return true;
  };
  for (auto& r : z) r = detail::newton_polish(c, r);
  if (!converged || !residual_ok(z)) {
    std::vector<Complex> alt = detail::companion_roots(c);
    for (auto& r : alt) r = detail::newton_polish(c, r);
    if (residual_ok(alt) || !residual_ok(z)) z = alt;
  }
  std::sort(z.begin(), z.end(), detail::complex_less);
  out.roots = std::move(z);
  return out;
}

}  // namespace trimat
