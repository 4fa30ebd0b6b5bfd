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

#include <cstdint>
#include <ostream>
#include <string>

#include "trimat/error.hpp"
#include "trimat/rational.hpp"

namespace trimat {

inline bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// Residue modulo a prime q < 2^32. A default-constructed value is an unbound
/// zero that takes the modulus of whatever it is combined with.
class Fp {
 public:
  static constexpr std::uint64_t kMaxModulus = 0xFFFFFFFBull;

  Fp() = default;
  /// The modulus is assumed prime here; validate it once with check_modulus.
  Fp(std::int64_t v, std::uint64_t q) : q_(q) {
    std::int64_t r = v % static_cast<std::int64_t>(q);
    if (r < 0) r += static_cast<std::int64_t>(q);
    v_ = static_cast<std::uint64_t>(r);
  }

  static void check_modulus(std::uint64_t q) {
    if (q > kMaxModulus || !is_prime(q)) throw Error(Errc::InvalidArgument, std::to_string(q) + " is not a supported prime");
  }

  /// Reduces a rational into F_q; fails if q divides the denominator.
  static Fp from_rational(const Rational& r, std::uint64_t q) {
    mpz_class mq(static_cast<unsigned long>(q));
    mpz_class n = r.num() % mq, d = r.den() % mq;
    if (n < 0) n += mq;
    if (d == 0) throw Error(Errc::FieldMismatch, "denominator divisible by " + std::to_string(q));
    Fp num(static_cast<std::int64_t>(n.get_ui()), q), den(static_cast<std::int64_t>(d.get_ui()), q);
    return num * den.inverse();
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return q_; }
  bool bound() const { return q_ != 0; }
  bool is_zero() const { return v_ == 0; }

  Fp inverse() const {
    if (v_ == 0) throw Error(Errc::ZeroInverse, "inverse of 0 in F_" + std::to_string(q_));
    return pow(q_ - 2);
  }
  Fp pow(std::uint64_t e) const {
    Fp base = *this, acc(1, q_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  std::string to_string() const { return std::to_string(v_); }

  Fp operator-() const { Fp r = *this; if (v_) r.v_ = q_ - v_; return r; }
  Fp& operator+=(const Fp& o) { adopt(o); v_ += o.v_; if (v_ >= q_ && q_) v_ -= q_; return *this; }
  Fp& operator-=(const Fp& o) { adopt(o); v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + q_ - o.v_; return *this; }
  Fp& operator*=(const Fp& o) { adopt(o); v_ = q_ ? (v_ * o.v_) % q_ : 0; return *this; }
  Fp& operator/=(const Fp& o) { adopt(o); return *this *= o.inverse(); }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.q_ && b.q_ && a.q_ != b.q_) throw Error(Errc::FieldMismatch, "comparing residues of different moduli");
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  friend bool operator<(const Fp& a, const Fp& b) { return a.v_ < b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

  friend Fp operator*(const Rational& r, const Fp& a) {
    if (!a.q_) return a;
    return from_rational(r, a.q_) * a;
  }

 private:
  void adopt(const Fp& o) {
    if (!q_) q_ = o.q_;
    else if (o.q_ && o.q_ != q_) throw Error(Errc::FieldMismatch, "F_" + std::to_string(q_) + " vs F_" + std::to_string(o.q_));
  }

  std::uint64_t v_ = 0;
  std::uint64_t q_ = 0;
};

inline bool is_zero(const Fp& a) { return a.is_zero(); }
inline Fp zero_like(const Fp& a) { return a.bound() ? Fp(0, a.modulus()) : Fp(); }
inline Fp inverse(const Fp& a) { return a.inverse(); }

}  // namespace trimat
