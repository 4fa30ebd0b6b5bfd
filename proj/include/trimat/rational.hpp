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

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

#include "trimat/error.hpp"

namespace trimat {

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw Error(Errc::ZeroInverse, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(const mpz_class& z) : q_(z) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Accepts "n" or "n/d" with an optional sign.
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw Error(Errc::InvalidArgument, "bad rational '" + s + "'");
    if (q.get_den() == 0) throw Error(Errc::ZeroInverse, "zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  Rational inverse() const {
    if (is_zero()) throw Error(Errc::ZeroInverse, "inverse of 0");
    return Rational(mpq_class(1) / q_);
  }

  std::string to_string() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Errc::ZeroInverse, "division by 0");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class q_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline Rational zero_like(const Rational&) { return Rational(); }
inline Rational inverse(const Rational& r) { return r.inverse(); }

}  // namespace trimat
