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

#include <memory>
#include <string>
#include <vector>

#include "trimat/cpoly.hpp"
#include "trimat/ncpoly.hpp"
#include "trimat/rational.hpp"
#include "trimat/utm.hpp"

namespace trimat {

using QPoly = CPolynomial<Rational>;
using QPolyMatrix = UTMatrix<QPoly>;

/// Polynomial ring Q[a_{ab}(i) : 1 <= a <= b <= m, 1 <= i <= n] of generic entries.
class GenericRing {
 public:
  struct Slot {
    std::size_t row, col, index;
  };

  GenericRing(std::size_t m, std::size_t n) : m_(m), n_(n) {
    std::vector<std::string> names;
    for (std::size_t a = 1; a <= m; ++a)
      for (std::size_t b = a; b <= m; ++b)
        for (std::size_t i = 1; i <= n; ++i) {
          slots_.push_back({a, b, i});
          names.push_back(m <= 9 ? "a" + std::to_string(a) + std::to_string(b) + "(" + std::to_string(i) + ")"
                                 : "a(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(i) + ")");
        }
    vars_ = std::make_shared<VarSet>(std::move(names));
  }

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  const VarSetPtr& vars() const { return vars_; }

  std::size_t var(std::size_t a, std::size_t b, std::size_t i) const {
    if (a < 1 || b < a || b > m_ || i < 1 || i > n_) throw Error(Errc::IndexOutOfRange, "generic entry out of range");
    return ((a - 1) * m_ - (a - 1) * (a - 2) / 2 + (b - a)) * n_ + (i - 1);
  }
  const Slot& slot(std::size_t v) const { return slots_.at(v); }
  bool is_diagonal(std::size_t v) const { return slots_.at(v).row == slots_.at(v).col; }

  QPoly entry(std::size_t a, std::size_t b, std::size_t i) const { return QPoly::variable(vars_, var(a, b, i), Rational(1)); }

  QPolyMatrix matrix(std::size_t i) const {
    QPolyMatrix u(m_, QPoly(vars_));
    for (std::size_t a = 1; a <= m_; ++a)
      for (std::size_t b = a; b <= m_; ++b) u(a, b) = entry(a, b, i);
    return u;
  }
  std::vector<QPolyMatrix> matrices() const {
    std::vector<QPolyMatrix> out;
    for (std::size_t i = 1; i <= n_; ++i) out.push_back(matrix(i));
    return out;
  }

 private:
  std::size_t m_, n_;
  std::vector<Slot> slots_;
  VarSetPtr vars_;
};

using GenericRingPtr = std::shared_ptr<const GenericRing>;

struct GenericEvaluation {
  GenericRingPtr ring;
  QPolyMatrix value;
};

/// p evaluated at n generic m x m upper triangular matrices.
inline GenericEvaluation generic_evaluate(const NcPolynomial& p, std::size_t m) {
  auto ring = std::make_shared<const GenericRing>(m, p.nvars());
  if (p.nvars() == 0) return {ring, QPolyMatrix(m, QPoly(ring->vars()))};
  return {ring, evaluate(p, ring->matrices())};
}

}  // namespace trimat
