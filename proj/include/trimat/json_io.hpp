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
#include <string>

#include "json.hpp"
#include "trimat/error.hpp"
#include "trimat/field.hpp"
#include "trimat/utm.hpp"

namespace trimat {

using json = nlohmann::json;

inline FieldSpec matrix_field(const json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidArgument, "matrix JSON must be an object");
  return j.contains("field") ? FieldSpec::parse(j.at("field").get<std::string>()) : FieldSpec::rationals();
}

/// {"m": 4, "field": "Q", "entries": {"1,2": "5/3"}}; omitted entries are zero.
template <class Field>
UTMatrix<typename Field::value_type> matrix_from_json(const json& j, const Field& f) {
  using K = typename Field::value_type;
  if (!j.is_object() || !j.contains("m") || !j.at("m").is_number_unsigned())
    throw Error(Errc::InvalidArgument, "matrix JSON needs a positive integer 'm'");
  const std::size_t m = j.at("m").get<std::size_t>();
  if (m == 0 || m > 64) throw Error(Errc::InvalidArgument, "matrix size out of range");
  UTMatrix<K> x(m, f.zero());
  if (!j.contains("entries")) return x;
  if (!j.at("entries").is_object()) throw Error(Errc::InvalidArgument, "'entries' must be an object");
  for (const auto& [key, val] : j.at("entries").items()) {
    auto comma = key.find(',');
    std::size_t row = 0, col = 0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument(key);
      std::size_t used = 0;
      row = std::stoul(key.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument(key);
      col = std::stoul(key.substr(comma + 1), &used);
      if (used != key.size() - comma - 1) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument, "bad entry key '" + key + "'");
    }
    if (row < 1 || col > m || col < row) throw Error(Errc::IndexOutOfRange, "entry key '" + key + "' is not in the upper triangle");
    std::string text;
    if (val.is_string()) text = val.template get<std::string>();
    else if (val.is_number_integer()) text = std::to_string(val.template get<long long>());
    else if (val.is_number_float() && !Field::exact) text = std::to_string(val.template get<double>());
    else throw Error(Errc::InvalidArgument, "entry '" + key + "' must be a string or integer");
    x(row, col) = f.parse(text);
  }
  return x;
}

template <class Field>
json matrix_to_json(const UTMatrix<typename Field::value_type>& x, const Field& f) {
  json entries = json::object();
  for (std::size_t i = 1; i <= x.size(); ++i)
    for (std::size_t j = i; j <= x.size(); ++j)
      if (!is_zero(x(i, j))) entries[std::to_string(i) + "," + std::to_string(j)] = f.to_string(x(i, j));
  return json{{"m", x.size()}, {"field", f.spec().to_string()}, {"entries", entries}};
}

}  // namespace trimat
