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

#include <optional>
#include <string>

#include "trimat/error.hpp"
#include "trimat/field.hpp"
#include "trimat/generic.hpp"
#include "trimat/ncpoly.hpp"

namespace trimat {

struct OrderReport {
  std::size_t order = 0;
  std::size_t cap = 0;
  /// Lexicographically smallest nonzero entry of the generic evaluation on T_{order+1}.
  std::size_t row = 1, col = 1;
  QPoly witness;
  GenericRingPtr ring;
};

/// Generic evaluation vanishes iff p is an identity of T_m over an infinite field.
inline bool is_identity_generic(const NcPolynomial& p, std::size_t m, const FieldSpec& field = FieldSpec::rationals()) {
  if (field.kind != FieldSpec::Kind::Q)
    throw Error(Errc::FieldNotCharZero, "identity testing by generic evaluation needs Q, got " + field.to_string());
  if (m < 1) throw Error(Errc::InvalidArgument, "m must be at least 1");
  return generic_evaluate(p, m).value.is_zero_matrix();
}

inline OrderReport order(const NcPolynomial& p, std::optional<std::size_t> m_cap = std::nullopt) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "order of the zero polynomial");
  const std::size_t cap = m_cap.value_or(p.degree() + 1);
  if (cap < 1) throw Error(Errc::InvalidArgument, "cap must be at least 1");
  for (std::size_t m = 1; m <= cap; ++m) {
    GenericEvaluation g = generic_evaluate(p, m);
    for (std::size_t a = 1; a <= m; ++a)
      for (std::size_t b = a; b <= m; ++b)
        if (!g.value(a, b).is_zero()) {
          OrderReport r;
          r.order = m - 1;
          r.cap = cap;
          r.row = a;
          r.col = b;
          r.witness = g.value(a, b);
          r.ring = g.ring;
          return r;
        }
  }
  throw Error(Errc::OrderExceedsCap, "order >= " + std::to_string(cap));
}

}  // namespace trimat
