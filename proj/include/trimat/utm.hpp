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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "trimat/error.hpp"
#include "trimat/ncpoly.hpp"
#include "trimat/rational.hpp"

namespace trimat {

/// Upper triangular m x m matrix with 1-based indexing; only the upper
/// triangle is stored.
template <class R>
class UTMatrix {
 public:
  using value_type = R;

  UTMatrix() = default;
  explicit UTMatrix(std::size_t m, const R& zero = R{}) : m_(m), e_(m * (m + 1) / 2, zero) {}

  static UTMatrix identity(std::size_t m, const R& one, const R& zero = R{}) {
    UTMatrix a(m, zero);
    for (std::size_t i = 1; i <= m; ++i) a(i, i) = one;
    return a;
  }
  static UTMatrix diagonal(const std::vector<R>& d, const R& zero = R{}) {
    UTMatrix a(d.size(), zero);
    for (std::size_t i = 1; i <= d.size(); ++i) a(i, i) = d[i - 1];
    return a;
  }

  std::size_t size() const { return m_; }

  R& operator()(std::size_t i, std::size_t j) { return e_[index(i, j)]; }
  const R& operator()(std::size_t i, std::size_t j) const { return e_[index(i, j)]; }

  /// Entry (i, j) for any 1 <= i, j <= m, zero below the diagonal.
  R get(std::size_t i, std::size_t j) const {
    if (i > j && i <= m_) return zero_like(e_.front());
    return (*this)(i, j);
  }

  R zero() const { return e_.empty() ? R{} : zero_like(e_.front()); }

  bool is_zero_matrix() const {
    return std::all_of(e_.begin(), e_.end(), [](const R& x) { return is_zero(x); });
  }

  std::vector<R> diag() const {
    std::vector<R> d;
    for (std::size_t i = 1; i <= m_; ++i) d.push_back((*this)(i, i));
    return d;
  }

  template <class G, class Fn>
  UTMatrix<G> map(Fn fn) const {
    UTMatrix<G> r(m_);
    for (std::size_t i = 1; i <= m_; ++i)
      for (std::size_t j = i; j <= m_; ++j) r(i, j) = fn((*this)(i, j));
    return r;
  }

  UTMatrix operator-() const {
    UTMatrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
  }
  UTMatrix& operator+=(const UTMatrix& o) {
    same_size(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
  }
  UTMatrix& operator-=(const UTMatrix& o) {
    same_size(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
  }
  friend UTMatrix operator+(UTMatrix a, const UTMatrix& b) { return a += b; }
  friend UTMatrix operator-(UTMatrix a, const UTMatrix& b) { return a -= b; }
  friend UTMatrix operator*(const UTMatrix& a, const UTMatrix& b) { return multiply(a, b); }
  UTMatrix& operator*=(const UTMatrix& o) { return *this = multiply(*this, o); }
  friend UTMatrix operator*(const Rational& s, const UTMatrix& a) {
    UTMatrix r = a;
    for (auto& x : r.e_) x = s * x;
    return r;
  }
  UTMatrix scaled(const R& s) const {
    UTMatrix r = *this;
    for (auto& x : r.e_) x = x * s;
    return r;
  }
  friend bool operator==(const UTMatrix& a, const UTMatrix& b) { return a.m_ == b.m_ && a.e_ == b.e_; }
  friend bool operator!=(const UTMatrix& a, const UTMatrix& b) { return !(a == b); }

  friend UTMatrix multiply(const UTMatrix& a, const UTMatrix& b) {
    a.same_size(b);
    UTMatrix c(a.m_, a.zero());
    for (std::size_t i = 1; i <= a.m_; ++i)
      for (std::size_t j = i; j <= a.m_; ++j) {
        R acc = a(i, i) * b(i, j);
        for (std::size_t k = i + 1; k <= j; ++k) acc += a(i, k) * b(k, j);
        c(i, j) = std::move(acc);
      }
    return c;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i < 1 || j < i || j > m_)
      throw Error(Errc::IndexOutOfRange, "(" + std::to_string(i) + "," + std::to_string(j) + ") in T_" + std::to_string(m_));
    return (i - 1) * m_ - (i - 1) * (i - 2) / 2 + (j - i);
  }
  void same_size(const UTMatrix& o) const {
    if (m_ != o.m_) throw Error(Errc::SizeMismatch, "T_" + std::to_string(m_) + " vs T_" + std::to_string(o.m_));
  }

  std::size_t m_ = 0;
  std::vector<R> e_;
};

template <class R>
bool is_zero(const UTMatrix<R>& a) {
  return a.is_zero_matrix();
}
template <class R>
UTMatrix<R> zero_like(const UTMatrix<R>& a) {
  return UTMatrix<R>(a.size(), a.zero());
}

/// X lies in the stratum T^(t): every entry with j - i <= t vanishes.
template <class R>
bool stratum_contains(const UTMatrix<R>& x, long t) {
  for (std::size_t i = 1; i <= x.size(); ++i)
    for (std::size_t j = i; j <= x.size() && static_cast<long>(j - i) <= t; ++j)
      if (!is_zero(x(i, j))) return false;
  return true;
}

/// Largest t with X in T^(t); the zero matrix reports m - 1.
template <class R>
long depth(const UTMatrix<R>& x) {
  long best = static_cast<long>(x.size()) - 1;
  for (std::size_t i = 1; i <= x.size(); ++i)
    for (std::size_t j = i; j <= x.size(); ++j)
      if (!is_zero(x(i, j))) best = std::min(best, static_cast<long>(j - i) - 1);
  return best;
}

/// Entry (alpha, beta) of ms[0] * ... * ms[k-1], summed chain by chain: each
/// chain alpha = eta_0 < ... < eta_r = beta carries its links at increasing
/// positions, diagonal factors in between.
template <class R>
R product_entry(const std::vector<UTMatrix<R>>& ms, std::size_t alpha, std::size_t beta) {
  if (ms.empty()) throw Error(Errc::InvalidArgument, "empty product");
  const std::size_t m = ms.front().size(), k = ms.size();
  for (const auto& a : ms)
    if (a.size() != m) throw Error(Errc::SizeMismatch, "factors of different sizes");
  if (alpha < 1 || beta < alpha || beta > m)
    throw Error(Errc::IndexOutOfRange, "(" + std::to_string(alpha) + "," + std::to_string(beta) + ") in T_" + std::to_string(m));
  const R zero = ms.front().zero();
  auto diag_run = [&](std::size_t eta, std::size_t from, std::size_t to) -> std::optional<R> {
    std::optional<R> acc;
    for (std::size_t s = from; s < to; ++s) acc = acc ? (*acc) * ms[s](eta, eta) : ms[s](eta, eta);
    return acc;
  };
  auto times = [](const std::optional<R>& a, const R& b) -> R { return a ? (*a) * b : b; };

  if (alpha == beta) return *diag_run(alpha, 0, k);

  const std::size_t gamma = std::min(beta - alpha, k);
  R total = zero;
  std::vector<std::size_t> chain{alpha};
  auto chain_sum = [&]() {
    const std::size_t r = chain.size() - 1;
    // e[s] = sum over placements of links 1..j with link j at position s.
    std::vector<std::optional<R>> e(k);
    for (std::size_t s = 0; s < k; ++s) e[s] = times(diag_run(chain[0], 0, s), ms[s](chain[0], chain[1]));
    for (std::size_t j = 1; j < r; ++j) {
      std::vector<std::optional<R>> next(k);
      for (std::size_t s = j; s < k; ++s) {
        std::optional<R> acc;
        for (std::size_t sp = j - 1; sp < s; ++sp) {
          if (!e[sp]) continue;
          auto between = diag_run(chain[j], sp + 1, s);
          R run = between ? (*e[sp]) * (*between) : *e[sp];
          R term = run * ms[s](chain[j], chain[j + 1]);
          if (acc) *acc += term;
          else acc = std::move(term);
        }
        next[s] = std::move(acc);
      }
      e = std::move(next);
    }
    for (std::size_t s = r - 1; s < k; ++s) {
      if (!e[s]) continue;
      auto tail = diag_run(beta, s + 1, k);
      total += tail ? (*e[s]) * (*tail) : *e[s];
    }
  };
  auto descend = [&](auto&& self, std::size_t eta) -> void {
    for (std::size_t next = eta + 1; next <= beta; ++next) {
      chain.push_back(next);
      if (next == beta) chain_sum();
      else if (chain.size() - 1 < gamma) self(self, next);
      chain.pop_back();
    }
  };
  descend(descend, alpha);
  return total;
}

/// Back-substitution inverse over a field.
template <class K>
UTMatrix<K> inverse(const UTMatrix<K>& a) {
  const std::size_t m = a.size();
  UTMatrix<K> n(m, a.zero());
  for (std::size_t i = 1; i <= m; ++i) {
    if (is_zero(a(i, i))) throw Error(Errc::NonInvertible, "zero diagonal entry at " + std::to_string(i));
    n(i, i) = inverse(a(i, i));
  }
  for (std::size_t d = 1; d < m; ++d)
    for (std::size_t i = 1; i + d <= m; ++i) {
      const std::size_t j = i + d;
      K acc = a(i, i + 1) * n(i + 1, j);
      for (std::size_t k = i + 2; k <= j; ++k) acc += a(i, k) * n(k, j);
      n(i, j) = -(n(i, i) * acc);
    }
  return n;
}

/// v A v^{-1}.
template <class K>
UTMatrix<K> conjugate(const UTMatrix<K>& v, const UTMatrix<K>& a) {
  return multiply(multiply(v, a), inverse(v));
}

/// The anti-automorphism A -> J A^T J, i.e. entry (i, j) -> (m+1-j, m+1-i).
template <class R>
UTMatrix<R> flip(const UTMatrix<R>& a) {
  const std::size_t m = a.size();
  UTMatrix<R> r(m, a.zero());
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i; j <= m; ++j) r(m + 1 - j, m + 1 - i) = a(i, j);
  return r;
}

template <class K>
UTMatrix<K> evaluate_word(const GroupWord& w, const std::vector<UTMatrix<K>>& args, const K& one) {
  if (args.empty()) throw Error(Errc::ArityMismatch, "no arguments");
  for (std::size_t a = 0; a < args.size(); ++a)
    for (std::size_t i = 1; i <= args[a].size(); ++i)
      if (is_zero(args[a](i, i)))
        throw Error(Errc::NonInvertibleArgument, "argument " + std::to_string(a + 1) + " has a zero diagonal entry");
  return evaluate_word(w, args, UTMatrix<K>::identity(args.front().size(), one, args.front().zero()));
}

}  // namespace trimat
