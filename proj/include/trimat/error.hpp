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

#include <stdexcept>
#include <string>
#include <string_view>

namespace trimat {

enum class Errc {
  ZeroInverse,
  ZeroPolynomial,
  MissingVariable,
  FieldMismatch,
  RingMismatch,
  SyntaxError,
  NonzeroConstantTerm,
  VariableIndexOutOfRange,
  ArityMismatch,
  NonInvertibleArgument,
  SizeMismatch,
  IndexOutOfRange,
  NonInvertible,
  FieldNotCharZero,
  OrderExceedsCap,
  OrderZero,
  ZeroPolynomialInList,
  BudgetExhausted,
  NotInStratum,
  NotConstructible,
  LambdaZero,
  RepeatedDiagonal,
  ScalarEquationUnsolvable,
  NonInvertibleTarget,
  OrderOutOfRange,
  SummandConstructionFailed,
  BudgetExceeded,
  InvalidArgument,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::MissingVariable: return "MissingVariable";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case Errc::VariableIndexOutOfRange: return "VariableIndexOutOfRange";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::NonInvertibleArgument: return "NonInvertibleArgument";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NonInvertible: return "NonInvertible";
    case Errc::FieldNotCharZero: return "FieldNotCharZero";
    case Errc::OrderExceedsCap: return "OrderExceedsCap";
    case Errc::OrderZero: return "OrderZero";
    case Errc::ZeroPolynomialInList: return "ZeroPolynomialInList";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::NotInStratum: return "NotInStratum";
    case Errc::NotConstructible: return "NotConstructible";
    case Errc::LambdaZero: return "LambdaZero";
    case Errc::RepeatedDiagonal: return "RepeatedDiagonal";
    case Errc::ScalarEquationUnsolvable: return "ScalarEquationUnsolvable";
    case Errc::NonInvertibleTarget: return "NonInvertibleTarget";
    case Errc::OrderOutOfRange: return "OrderOutOfRange";
    case Errc::SummandConstructionFailed: return "SummandConstructionFailed";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

/// Parse failures also report the byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& what)
      : Error(Errc::SyntaxError, what + " at position " + std::to_string(pos)), pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace trimat
