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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trimat/error.hpp"
#include "trimat/field.hpp"
#include "trimat/rational.hpp"

namespace trimat {

inline std::string scalar_to_string(const Rational& r) { return r.to_string(); }
inline std::string scalar_to_string(const Fp& a) { return a.to_string(); }
inline std::string scalar_to_string(const Complex& z) { return "(" + complex_to_string(z) + ")"; }

/// Names of the commuting indeterminates of a polynomial ring.
class VarSet {
 public:
  explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
  }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  std::optional<std::size_t> find(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;

/// Sparse exponent vector: (variable, exponent) pairs sorted by variable.
struct Monomial {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> f;
  std::uint32_t deg = 0;

  static Monomial one() { return {}; }
  static Monomial var(std::uint32_t v, std::uint32_t e = 1) {
    Monomial m;
    if (e) {
      m.f.emplace_back(v, e);
      m.deg = e;
    }
    return m;
  }

  std::uint32_t exponent(std::uint32_t v) const {
    auto it = std::lower_bound(f.begin(), f.end(), std::make_pair(v, 0u));
    return (it != f.end() && it->first == v) ? it->second : 0;
  }

  /// Drops variable v, returning its exponent.
  std::uint32_t remove(std::uint32_t v) {
    auto it = std::lower_bound(f.begin(), f.end(), std::make_pair(v, 0u));
    if (it == f.end() || it->first != v) return 0;
    std::uint32_t e = it->second;
    f.erase(it);
    deg -= e;
    return e;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f.reserve(a.f.size() + b.f.size());
    std::size_t i = 0, j = 0;
    while (i < a.f.size() || j < b.f.size()) {
      if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first)) r.f.push_back(a.f[i++]);
      else if (i == a.f.size() || b.f[j].first < a.f[i].first) r.f.push_back(b.f[j++]);
      else {
        r.f.emplace_back(a.f[i].first, a.f[i].second + b.f[j].second);
        ++i, ++j;
      }
    }
    r.deg = a.deg + b.deg;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f == b.f; }
};

/// Graded lexicographic order with variable 0 largest; the map keeps the
/// leading term first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.deg != b.deg) return a.deg > b.deg;
    std::size_t n = std::min(a.f.size(), b.f.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (a.f[k].first != b.f[k].first) return a.f[k].first < b.f[k].first;
      if (a.f[k].second != b.f[k].second) return a.f[k].second > b.f[k].second;
    }
    return a.f.size() > b.f.size();
  }
};

/// Sparse commutative polynomial with coefficients in F. A default-constructed
/// polynomial is a ring-less zero compatible with every ring.
template <class F>
class CPolynomial {
 public:
  using TermMap = std::map<Monomial, F, GrlexGreater>;

  CPolynomial() = default;
  explicit CPolynomial(VarSetPtr vs) : vars_(std::move(vs)) {}

  static CPolynomial constant(VarSetPtr vs, const F& c) {
    CPolynomial p(std::move(vs));
    p.add_term(Monomial::one(), c);
    return p;
  }
  static CPolynomial variable(VarSetPtr vs, std::size_t v, const F& one) {
    if (v >= vs->size()) throw Error(Errc::IndexOutOfRange, "variable index " + std::to_string(v));
    CPolynomial p(std::move(vs));
    p.add_term(Monomial::var(static_cast<std::uint32_t>(v)), one);
    return p;
  }

  const VarSetPtr& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const F& c) {
    if (trimat::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (trimat::is_zero(it->second)) terms_.erase(it);
    }
  }

  F coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? F{} : it->second;
  }

  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.deg; }
  std::uint32_t degree_in(std::size_t v) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(static_cast<std::uint32_t>(v)));
    return d;
  }

  std::vector<std::size_t> variables() const {
    std::vector<std::size_t> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.f) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  CPolynomial operator-() const {
    CPolynomial r(vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  CPolynomial& operator+=(const CPolynomial& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  CPolynomial& operator-=(const CPolynomial& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend CPolynomial operator+(CPolynomial a, const CPolynomial& b) { return a += b; }
  friend CPolynomial operator-(CPolynomial a, const CPolynomial& b) { return a -= b; }
  friend CPolynomial operator*(const CPolynomial& a, const CPolynomial& b) {
    CPolynomial r;
    r.vars_ = joint(a, b);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  CPolynomial& operator*=(const CPolynomial& o) { return *this = *this * o; }

  friend CPolynomial operator*(const Rational& s, const CPolynomial& a) {
    CPolynomial r(a.vars_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
    return r;
  }
  CPolynomial scaled(const F& s) const {
    CPolynomial r(vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
  }

  friend bool operator==(const CPolynomial& a, const CPolynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    for (auto j = b.terms_.begin(); j != b.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || !(i->second == j->second)) return false;
    return true;
  }
  friend bool operator!=(const CPolynomial& a, const CPolynomial& b) { return !(a == b); }

  /// Evaluates with values[v] for every variable v present; unassigned
  /// variables raise MissingVariable.
  F eval(const std::vector<std::optional<F>>& values) const {
    check_assigned(values);
    F acc{};
    for (const auto& [m, c] : terms_) {
      F t = c;
      for (const auto& [v, e] : m.f) t *= power(*values[v], e);
      acc += t;
    }
    return acc;
  }
  F eval(const std::map<std::size_t, F>& values) const { return eval(dense(values)); }

  /// Substitutes the assigned variables and keeps the rest symbolic.
  CPolynomial substitute(const std::vector<std::optional<F>>& values) const {
    CPolynomial r(vars_);
    for (const auto& [m, c] : terms_) {
      Monomial rest;
      F t = c;
      for (const auto& [v, e] : m.f) {
        if (v < values.size() && values[v]) t *= power(*values[v], e);
        else {
          rest.f.emplace_back(v, e);
          rest.deg += e;
        }
      }
      r.add_term(rest, t);
    }
    return r;
  }
  CPolynomial substitute(const std::map<std::size_t, F>& values) const { return substitute(dense(values)); }

  /// Coefficients c_0..c_d of a polynomial in the single variable v.
  std::vector<F> univariate(std::size_t v) const {
    std::vector<F> out(degree_in(v) + 1);
    for (const auto& [m, c] : terms_) {
      if (m.f.size() > 1 || (m.f.size() == 1 && m.f[0].first != v))
        throw Error(Errc::InvalidArgument, "polynomial is not univariate in " + name_of(v));
      out[m.deg] += c;
    }
    return out;
  }

  /// Re-homes the polynomial in another ring; old variable v becomes map[v].
  CPolynomial rename(VarSetPtr target, const std::vector<std::size_t>& map) const {
    CPolynomial r(std::move(target));
    for (const auto& [m, c] : terms_) {
      Monomial nm = Monomial::one();
      for (const auto& [v, e] : m.f) nm = nm * Monomial::var(static_cast<std::uint32_t>(map.at(v)), e);
      r.add_term(nm, c);
    }
    return r;
  }

  template <class G, class Conv>
  CPolynomial<G> map_coefficients(Conv conv) const {
    CPolynomial<G> r(vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, conv(c));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = scalar_to_string(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs.erase(0, 1);
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      bool unit = cs == "1";
      if (m.f.empty()) {
        os << cs;
        continue;
      }
      if (!unit) os << cs << "*";
      for (std::size_t k = 0; k < m.f.size(); ++k) {
        if (k) os << "*";
        os << name_of(m.f[k].first);
        if (m.f[k].second > 1) os << "^" << m.f[k].second;
      }
    }
    return os.str();
  }

 private:
  template <class G>
  friend class CPolynomial;

  static F power(F base, std::uint32_t e) {
    F acc = base;
    for (std::uint32_t k = 1; k < e; ++k) acc *= base;
    return acc;
  }

  std::string name_of(std::size_t v) const {
    if (vars_ && v < vars_->size()) return vars_->name(v);
    return "v" + std::to_string(v);
  }

  std::vector<std::optional<F>> dense(const std::map<std::size_t, F>& values) const {
    std::size_t n = vars_ ? vars_->size() : 0;
    for (const auto& [v, x] : values) n = std::max(n, v + 1);
    std::vector<std::optional<F>> out(n);
    for (const auto& [v, x] : values) out[v] = x;
    return out;
  }

  void check_assigned(const std::vector<std::optional<F>>& values) const {
    std::vector<std::string> missing;
    for (std::size_t v : variables())
      if (v >= values.size() || !values[v]) missing.push_back(name_of(v));
    if (!missing.empty()) {
      std::string msg = "unassigned:";
      for (const auto& s : missing) msg += " " + s;
      throw Error(Errc::MissingVariable, msg);
    }
  }

  static VarSetPtr joint(const CPolynomial& a, const CPolynomial& b) {
    if (!a.vars_) return b.vars_;
    if (!b.vars_ || a.vars_ == b.vars_) return a.vars_;
    throw Error(Errc::RingMismatch, "polynomials from different rings");
  }
  void adopt(const CPolynomial& o) { vars_ = joint(*this, o); }

  VarSetPtr vars_;
  TermMap terms_;
};

template <class F>
bool is_zero(const CPolynomial<F>& p) {
  return p.is_zero();
}
template <class F>
CPolynomial<F> zero_like(const CPolynomial<F>& p) {
  return CPolynomial<F>(p.vars());
}

}  // namespace trimat
