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
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trimat/error.hpp"
#include "trimat/field.hpp"
#include "trimat/rational.hpp"

namespace trimat {

/// Sequence of 1-based variable indices.
using Word = std::vector<std::uint32_t>;

/// Polynomial in noncommuting variables x1..xn with zero constant term.
class NcPolynomial {
 public:
  using TermMap = std::map<Word, Rational>;

  NcPolynomial() = default;
  explicit NcPolynomial(std::size_t nvars) : nvars_(nvars) {}

  static NcPolynomial variable(std::uint32_t i, std::size_t nvars = 0) {
    NcPolynomial p(std::max<std::size_t>(nvars, i));
    p.add_term({i}, Rational(1));
    return p;
  }
  static NcPolynomial commutator(const NcPolynomial& a, const NcPolynomial& b) { return a * b - b * a; }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  void add_term(const Word& w, const Rational& c) {
    if (w.empty()) {
      if (!c.is_zero()) throw Error(Errc::NonzeroConstantTerm, "constant term " + c.to_string());
      return;
    }
    for (auto v : w) {
      if (v == 0) throw Error(Errc::VariableIndexOutOfRange, "variable index 0");
      nvars_ = std::max<std::size_t>(nvars_, v);
    }
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Widens the declared arity; shrinking below the largest used index fails.
  NcPolynomial with_nvars(std::size_t n) const {
    std::size_t used = 0;
    for (const auto& [w, c] : terms_)
      for (auto v : w) used = std::max<std::size_t>(used, v);
    if (n < used) throw Error(Errc::VariableIndexOutOfRange, "x" + std::to_string(used) + " exceeds arity " + std::to_string(n));
    NcPolynomial r = *this;
    r.nvars_ = n;
    return r;
  }

  NcPolynomial operator-() const {
    NcPolynomial r(nvars_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }
  NcPolynomial& operator+=(const NcPolynomial& o) {
    nvars_ = std::max(nvars_, o.nvars_);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NcPolynomial& operator-=(const NcPolynomial& o) { return *this += -o; }
  friend NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b) { return a += b; }
  friend NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b) { return a -= b; }
  friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
    NcPolynomial r(std::max(a.nvars_, b.nvars_));
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add_term(w, ca * cb);
      }
    return r;
  }
  friend NcPolynomial operator*(const Rational& s, const NcPolynomial& a) {
    NcPolynomial r(a.nvars_);
    for (const auto& [w, c] : a.terms_) r.add_term(w, s * c);
    return r;
  }
  friend bool operator==(const NcPolynomial& a, const NcPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NcPolynomial& a, const NcPolynomial& b) { return !(a == b); }

  /// Reverses every word; p(u)^op corresponds to reversed(p) on the opposite algebra.
  NcPolynomial reversed() const {
    NcPolynomial r(nvars_);
    for (const auto& [w, c] : terms_) r.add_term(Word(w.rbegin(), w.rend()), c);
    return r;
  }

  /// Substitutes x_i -> x_{perm[i-1]}.
  NcPolynomial relabeled(const std::vector<std::uint32_t>& perm) const {
    NcPolynomial r(nvars_);
    for (const auto& [w, c] : terms_) {
      Word nw;
      for (auto v : w) nw.push_back(perm.at(v - 1));
      r.add_term(nw, c);
    }
    return r;
  }

  /// Commutative image: sum of coefficients per exponent vector.
  std::map<std::vector<std::uint32_t>, Rational> abelianized() const {
    std::map<std::vector<std::uint32_t>, Rational> out;
    for (const auto& [w, c] : terms_) {
      std::vector<std::uint32_t> e(nvars_, 0);
      for (auto v : w) ++e[v - 1];
      out[e] += c;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  /// Canonical text: terms by length then lexicographically, runs as powers.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const TermMap::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->first.size() < b->first.size(); });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
      const Rational& c = t->second;
      bool neg = c.sign() < 0;
      Rational mag = neg ? -c : c;
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      if (!mag.is_one()) os << mag.to_string() << "*";
      const Word& w = t->first;
      for (std::size_t k = 0; k < w.size();) {
        std::size_t run = 1;
        while (k + run < w.size() && w[k + run] == w[k]) ++run;
        if (k) os << "*";
        os << "x" << w[k];
        if (run > 1) os << "^" << run;
        k += run;
      }
    }
    return os.str();
  }

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

namespace detail {

class NcParser {
 public:
  static constexpr std::uint32_t kMaxVariables = 64;
  static constexpr std::uint32_t kMaxExponent = 64;

  explicit NcParser(const std::string& s) : s_(s) {}

  using Expr = std::map<Word, Rational>;

  Expr parse_all() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  static void add(Expr& e, const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = e.try_emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) e.erase(it);
    }
  }
  static Expr mul(const Expr& a, const Expr& b) {
    Expr r;
    for (const auto& [wa, ca] : a)
      for (const auto& [wb, cb] : b) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        add(r, w, ca * cb);
      }
    return r;
  }
  static Expr sub(Expr a, const Expr& b) {
    for (const auto& [w, c] : b) add(a, w, -c);
    return a;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("expected '") + c + "'");
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(pos_, "expected digits");
    return s_.substr(start, pos_ - start);
  }

  Expr expr() {
    skip();
    Expr acc;
    bool neg = false;
    if (accept('-')) neg = true;
    else accept('+');
    Expr t = term();
    acc = neg ? sub({}, t) : t;
    for (;;) {
      if (accept('+')) {
        for (const auto& [w, c] : term()) add(acc, w, c);
      } else if (accept('-')) {
        acc = sub(acc, term());
      } else {
        return acc;
      }
    }
  }
  Expr term() {
    Expr acc = factor();
    while (accept('*')) acc = mul(acc, factor());
    return acc;
  }
  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      std::size_t at = pos_;
      std::string d = digits();
      if (d.size() > 3 || std::stoul(d) == 0 || std::stoul(d) > kMaxExponent)
        throw SyntaxError(at, "exponent must be a positive integer at most " + std::to_string(kMaxExponent));
      Expr r = b;
      for (unsigned long k = 1; k < std::stoul(d); ++k) r = mul(r, b);
      return r;
    }
    return b;
  }
  Expr base() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == 'x') {
      ++pos_;
      std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) throw SyntaxError(at, "expected variable index after 'x'");
      std::string d = digits();
      unsigned long v = d.size() > 4 ? 99999 : std::stoul(d);
      if (v == 0 || v > kMaxVariables) throw Error(Errc::VariableIndexOutOfRange, "x" + d + " at position " + std::to_string(at));
      Expr e;
      e.emplace(Word{static_cast<std::uint32_t>(v)}, Rational(1));
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string text = num;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t at = pos_;
        std::string den = digits();
        if (mpz_class(den) == 0) throw SyntaxError(at, "zero denominator");
        text += "/" + den;
      }
      Expr e;
      add(e, Word{}, Rational::parse(text));
      return e;
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '[') {
      ++pos_;
      Expr a = expr();
      expect(',');
      Expr b = expr();
      expect(']');
      return sub(mul(a, b), mul(b, a));
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses and fully expands; over F_q coefficients are reduced to [0, q).
inline NcPolynomial parse_ncpoly(const std::string& text, const FieldSpec& field = FieldSpec::rationals()) {
  detail::NcParser parser(text);
  auto expr = parser.parse_all();
  std::size_t arity = 0;
  for (const auto& [w, c] : expr)
    for (auto v : w) arity = std::max<std::size_t>(arity, v);
  NcPolynomial p(arity);
  for (const auto& [w, c] : expr) {
    Rational coef = c;
    if (field.kind == FieldSpec::Kind::Fq) coef = Rational(static_cast<long>(Fp::from_rational(c, field.q).value()));
    if (w.empty()) {
      if (!coef.is_zero()) throw Error(Errc::NonzeroConstantTerm, "expansion has constant term " + coef.to_string());
      continue;
    }
    p.add_term(w, coef);
  }
  return p;
}

namespace detail {

template <class R>
std::optional<R> eval_trie(NcPolynomial::TermMap::const_iterator lo, NcPolynomial::TermMap::const_iterator hi,
                           std::size_t depth, const std::vector<R>& args) {
  std::optional<R> acc;
  auto it = lo;
  while (it != hi) {
    const std::uint32_t letter = it->first[depth];
    const R& x = args[letter - 1];
    std::optional<Rational> coef;
    if (it->first.size() == depth + 1) {
      coef = it->second;
      ++it;
    }
    auto sub_lo = it;
    while (it != hi && it->first[depth] == letter) ++it;
    std::optional<R> term;
    if (coef) term = (*coef) * x;
    if (sub_lo != it) {
      std::optional<R> sub = eval_trie(sub_lo, it, depth + 1, args);
      if (sub) {
        R prod = x * (*sub);
        if (term) *term += prod;
        else term = std::move(prod);
      }
    }
    if (term) {
      if (acc) *acc += *term;
      else acc = std::move(term);
    }
  }
  return acc;
}

}  // namespace detail

/// Evaluates p at args in any ring supporting +, * and Rational scaling.
/// Shared prefixes of words are multiplied once.
template <class R>
R evaluate(const NcPolynomial& p, const std::vector<R>& args) {
  if (args.size() != p.nvars())
    throw Error(Errc::ArityMismatch, "expected " + std::to_string(p.nvars()) + " arguments, got " + std::to_string(args.size()));
  auto r = detail::eval_trie(p.terms().begin(), p.terms().end(), 0, args);
  if (r) return *r;
  if (args.empty()) return R{};
  return zero_like(args.front());
}

/// Reduced word in the free group, e.g. "x1^2*x2^-1".
class GroupWord {
 public:
  using Letter = std::pair<std::uint32_t, long>;

  GroupWord() = default;
  explicit GroupWord(std::vector<Letter> letters) {
    for (const auto& l : letters) push(l);
  }

  static GroupWord parse(const std::string& text) {
    GroupWord w;
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&](bool allow_sign) -> long {
      skip();
      bool neg = false;
      if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos || pos - start > 6) throw SyntaxError(start, "expected integer");
      long v = std::stol(text.substr(start, pos - start));
      return neg ? -v : v;
    };
    skip();
    if (text.substr(pos) == "1" || pos == text.size()) return w;
    for (;;) {
      skip();
      if (pos >= text.size() || text[pos] != 'x') throw SyntaxError(pos, "expected 'x'");
      ++pos;
      std::size_t at = pos;
      long v = read_int(false);
      if (v <= 0 || v > 64) throw Error(Errc::VariableIndexOutOfRange, "x" + std::to_string(v) + " at position " + std::to_string(at));
      long e = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        bool brace = pos < text.size() && text[pos] == '{';
        if (brace) ++pos;
        e = read_int(true);
        skip();
        if (brace) {
          if (pos >= text.size() || text[pos] != '}') throw SyntaxError(pos, "expected '}'");
          ++pos;
        }
      }
      w.push({static_cast<std::uint32_t>(v), e});
      skip();
      if (pos == text.size()) break;
      if (text[pos] != '*') throw SyntaxError(pos, "expected '*'");
      ++pos;
    }
    return w;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t nvars() const {
    std::size_t n = 0;
    for (const auto& [v, e] : letters_) n = std::max<std::size_t>(n, v);
    return n;
  }
  bool is_identity() const { return letters_.empty(); }

  /// Exponent sum per variable (the image in the abelianization Z^n).
  std::vector<long> exponent_sums(std::size_t n = 0) const {
    std::vector<long> s(std::max(n, nvars()), 0);
    for (const auto& [v, e] : letters_) s[v - 1] += e;
    return s;
  }

  std::string to_string() const {
    if (letters_.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < letters_.size(); ++k) {
      if (k) out += "*";
      out += "x" + std::to_string(letters_[k].first);
      if (letters_[k].second != 1) out += "^" + std::to_string(letters_[k].second);
    }
    return out;
  }

 private:
  void push(const Letter& l) {
    if (l.second == 0) return;
    if (!letters_.empty() && letters_.back().first == l.first) {
      letters_.back().second += l.second;
      if (letters_.back().second == 0) letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }

  std::vector<Letter> letters_;
};

/// Evaluates w at group elements; inverse() is found by argument lookup and
/// must reject non-invertible arguments.
template <class G>
G evaluate_word(const GroupWord& w, const std::vector<G>& args, const G& one) {
  if (args.size() < w.nvars())
    throw Error(Errc::ArityMismatch, "word uses x" + std::to_string(w.nvars()) + " but got " + std::to_string(args.size()) + " arguments");
  std::vector<std::optional<G>> inv(args.size());
  G acc = one;
  for (const auto& [v, e] : w.letters()) {
    const G* base = &args[v - 1];
    if (e < 0) {
      if (!inv[v - 1]) inv[v - 1] = inverse(args[v - 1]);
      base = &*inv[v - 1];
    }
    for (long k = 0; k < (e < 0 ? -e : e); ++k) acc = acc * (*base);
  }
  return acc;
}

}  // namespace trimat
