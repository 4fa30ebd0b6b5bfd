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

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "trimat/error.hpp"
#include "trimat/prime_field.hpp"
#include "trimat/rational.hpp"

namespace trimat {

using Complex = std::complex<double>;

inline bool is_zero(const Complex& z) { return z.real() == 0.0 && z.imag() == 0.0; }
inline Complex zero_like(const Complex&) { return Complex(0.0, 0.0); }
inline Complex inverse(const Complex& z) {
  if (is_zero(z)) throw Error(Errc::ZeroInverse, "inverse of 0");
  return 1.0 / z;
}
inline Complex operator*(const Rational& r, const Complex& z) { return r.to_double() * z; }

inline std::string complex_to_string(const Complex& z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

/// Accepts "a", "bi", "a+bi", "a-bi" with decimal or exponent notation.
inline Complex parse_complex(const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  if (s.empty()) throw Error(Errc::InvalidArgument, "empty complex literal");
  if (s == "i" || s == "+i") return {0, 1};
  if (s == "-i") return {0, -1};
  double a = std::strtod(p, &end);
  if (end == p) throw Error(Errc::InvalidArgument, "bad complex literal '" + s + "'");
  if (*end == '\0') return {a, 0};
  if (*end == 'i' && end[1] == '\0') return {0, a};
  const char* q = end;
  double b;
  if ((q[0] == '+' || q[0] == '-') && q[1] == 'i' && q[2] == '\0') {
    b = q[0] == '+' ? 1.0 : -1.0;
    end = const_cast<char*>(q + 1);
  } else {
    b = std::strtod(q, &end);
    if (end == q) throw Error(Errc::InvalidArgument, "bad complex literal '" + s + "'");
  }
  if (*end != 'i' || end[1] != '\0') throw Error(Errc::InvalidArgument, "bad complex literal '" + s + "'");
  return {a, b};
}

/// Field spec strings: "Q", "Fq:<prime>", "C".
struct FieldSpec {
  enum class Kind { Q, Fq, C };
  Kind kind = Kind::Q;
  std::uint64_t q = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t q) {
    Fp::check_modulus(q);
    return {Kind::Fq, q};
  }
  static FieldSpec complex() { return {Kind::C, 0}; }

  static FieldSpec parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s == "C") return complex();
    if (s.rfind("Fq:", 0) == 0) {
      const std::string digits = s.substr(3);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw Error(Errc::InvalidArgument, "bad field spec '" + s + "'");
      return prime(std::stoull(digits));
    }
    throw Error(Errc::InvalidArgument, "bad field spec '" + s + "'");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Q: return "Q";
      case Kind::C: return "C";
      case Kind::Fq: return "Fq:" + std::to_string(q);
    }
    return "?";
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.kind == b.kind && a.q == b.q; }
};

/// Field objects give constants, conversions and serialization for one element type.
struct QField {
  using value_type = Rational;
  static constexpr bool exact = true;
  Rational zero() const { return Rational(); }
  Rational one() const { return Rational(1); }
  Rational from_rational(const Rational& r) const { return r; }
  Rational from_int(long v) const { return Rational(v); }
  Rational parse(const std::string& s) const { return Rational::parse(s); }
  std::string to_string(const Rational& r) const { return r.to_string(); }
  FieldSpec spec() const { return FieldSpec::rationals(); }
  double abs(const Rational& r) const { return std::fabs(r.to_double()); }
};

struct FqField {
  using value_type = Fp;
  static constexpr bool exact = true;
  std::uint64_t q;
  explicit FqField(std::uint64_t modulus) : q(modulus) { Fp::check_modulus(q); }
  Fp zero() const { return Fp(0, q); }
  Fp one() const { return Fp(1, q); }
  Fp from_rational(const Rational& r) const { return Fp::from_rational(r, q); }
  Fp from_int(long v) const { return Fp(v, q); }
  Fp parse(const std::string& s) const { return from_rational(Rational::parse(s)); }
  std::string to_string(const Fp& a) const { return a.to_string(); }
  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::Fq, q}; }
  double abs(const Fp& a) const { return a.is_zero() ? 0.0 : 1.0; }
};

struct CField {
  using value_type = Complex;
  static constexpr bool exact = false;
  Complex zero() const { return {0, 0}; }
  Complex one() const { return {1, 0}; }
  Complex from_rational(const Rational& r) const { return {r.to_double(), 0}; }
  Complex from_int(long v) const { return {static_cast<double>(v), 0}; }
  Complex parse(const std::string& s) const {
    if (s.find_first_of("i.eE") == std::string::npos && s.find('/') != std::string::npos) return from_rational(Rational::parse(s));
    return parse_complex(s);
  }
  std::string to_string(const Complex& z) const { return complex_to_string(z); }
  FieldSpec spec() const { return FieldSpec::complex(); }
  double abs(const Complex& z) const { return std::abs(z); }
};

}  // namespace trimat
