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
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trimat/classify.hpp"
#include "trimat/error.hpp"
#include "trimat/generic.hpp"
#include "trimat/ncpoly.hpp"

namespace trimat {

/// A chain eta_0 < ... < eta_{r+1} of positions with one variable slot per link.
struct FamilyKey {
  std::vector<std::size_t> chain;
  std::vector<std::uint32_t> slots;

  std::size_t alpha() const { return chain.front(); }
  std::size_t beta() const { return chain.back(); }

  friend bool operator<(const FamilyKey& a, const FamilyKey& b) {
    if (a.chain.front() != b.chain.front()) return a.chain.front() < b.chain.front();
    if (a.chain.back() != b.chain.back()) return a.chain.back() < b.chain.back();
    if (a.chain != b.chain) return a.chain < b.chain;
    return a.slots < b.slots;
  }
  friend bool operator==(const FamilyKey& a, const FamilyKey& b) { return a.chain == b.chain && a.slots == b.slots; }

  /// "1<2<4;(1,2)"
  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < chain.size(); ++k) s += (k ? "<" : "") + std::to_string(chain[k]);
    s += ";(";
    for (std::size_t k = 0; k < slots.size(); ++k) s += (k ? "," : "") + std::to_string(slots[k]);
    return s + ")";
  }

  static FamilyKey parse(const std::string& text) {
    FamilyKey key;
    auto semi = text.find(';');
    if (semi == std::string::npos) throw Error(Errc::InvalidArgument, "key needs 'chain;(slots)': " + text);
    std::string chain = text.substr(0, semi), slots = text.substr(semi + 1);
    std::size_t pos = 0;
    while (pos <= chain.size()) {
      auto next = chain.find('<', pos);
      std::string part = chain.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (part.empty() || part.find_first_not_of("0123456789 ") != std::string::npos)
        throw Error(Errc::InvalidArgument, "bad chain in key: " + text);
      key.chain.push_back(std::stoul(part));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (slots.size() < 2 || slots.front() != '(' || slots.back() != ')') throw Error(Errc::InvalidArgument, "bad slots in key: " + text);
    slots = slots.substr(1, slots.size() - 2);
    pos = 0;
    while (!slots.empty() && pos <= slots.size()) {
      auto next = slots.find(',', pos);
      std::string part = slots.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (part.empty() || part.find_first_not_of("0123456789 ") != std::string::npos)
        throw Error(Errc::InvalidArgument, "bad slots in key: " + text);
      key.slots.push_back(static_cast<std::uint32_t>(std::stoul(part)));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    for (std::size_t k = 1; k < key.chain.size(); ++k)
      if (key.chain[k] <= key.chain[k - 1]) throw Error(Errc::InvalidArgument, "chain must increase: " + text);
    if (key.slots.size() + 1 != key.chain.size()) throw Error(Errc::InvalidArgument, "need one slot per link: " + text);
    return key;
  }
};

/// Coefficient polynomials in diagonal generic entries, one per (chain, slots).
class InductiveFamily {
 public:
  InductiveFamily(GenericRingPtr ring) : ring_(std::move(ring)) {}

  std::size_t m() const { return ring_->m(); }
  std::size_t n() const { return ring_->n(); }
  const GenericRingPtr& ring() const { return ring_; }
  const std::map<FamilyKey, QPoly>& coefficients() const { return coeffs_; }

  QPoly coefficient(const FamilyKey& key) const {
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? QPoly(ring_->vars()) : it->second;
  }

  void add(const FamilyKey& key, const Monomial& m, const Rational& c) {
    auto [it, fresh] = coeffs_.try_emplace(key, QPoly(ring_->vars()));
    it->second.add_term(m, c);
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  /// Sum over keys of coefficient times the product of the link variables.
  QPoly reconstruct(std::size_t alpha, std::size_t beta) const {
    QPoly out(ring_->vars());
    for (const auto& [key, c] : coeffs_) {
      if (key.alpha() != alpha || key.beta() != beta) continue;
      QPoly term = c;
      for (std::size_t l = 0; l < key.slots.size(); ++l) term = term * ring_->entry(key.chain[l], key.chain[l + 1], key.slots[l]);
      out += term;
    }
    return out;
  }

 private:
  GenericRingPtr ring_;
  std::map<FamilyKey, QPoly> coeffs_;
};

/// Splits every monomial of the generic evaluation into its off-diagonal
/// chain and diagonal cofactor.
inline InductiveFamily extract_family(const NcPolynomial& p, std::size_t m) {
  if (m < 1) throw Error(Errc::InvalidArgument, "m must be at least 1");
  GenericEvaluation g = generic_evaluate(p, m);
  const GenericRing& ring = *g.ring;
  InductiveFamily fam(g.ring);
  for (std::size_t a = 1; a <= m; ++a)
    for (std::size_t b = a; b <= m; ++b)
      for (const auto& [mono, c] : g.value(a, b).terms()) {
        Monomial diag;
        std::vector<GenericRing::Slot> links;
        for (const auto& [v, e] : mono.f) {
          if (ring.is_diagonal(v)) {
            diag.f.emplace_back(v, e);
            diag.deg += e;
          } else {
            if (e != 1) throw Error(Errc::InvalidArgument, "repeated link variable in entry (" + std::to_string(a) + "," + std::to_string(b) + ")");
            links.push_back(ring.slot(v));
          }
        }
        std::sort(links.begin(), links.end(), [](const auto& x, const auto& y) { return x.row < y.row; });
        FamilyKey key;
        key.chain.push_back(a);
        for (const auto& s : links) {
          if (s.row != key.chain.back()) throw Error(Errc::InvalidArgument, "off-diagonal variables do not form a chain");
          key.chain.push_back(s.col);
          key.slots.push_back(static_cast<std::uint32_t>(s.index));
        }
        if (key.chain.back() != b) throw Error(Errc::InvalidArgument, "chain does not end at the entry column");
        fam.add(key, diag, c);
      }
  return fam;
}

/// Chain-independent coefficients P_J, computed once on T_{|J|+1} along the
/// consecutive chain and transported to any chain of the same length.
class UniversalCoefficients {
 public:
  explicit UniversalCoefficients(NcPolynomial p) : p_(std::move(p)) {}

  const NcPolynomial& polynomial() const { return p_; }

  const InductiveFamily& family(std::size_t links) const {
    auto it = cache_.find(links);
    if (it == cache_.end()) it = cache_.emplace(links, std::make_shared<InductiveFamily>(extract_family(p_, links + 1))).first;
    return *it->second;
  }

  QPoly universal(const std::vector<std::uint32_t>& slots) const {
    const InductiveFamily& fam = family(slots.size());
    FamilyKey key;
    for (std::size_t k = 1; k <= slots.size() + 1; ++k) key.chain.push_back(k);
    key.slots = slots;
    return fam.coefficient(key);
  }

  bool nonzero(const std::vector<std::uint32_t>& slots) const { return !universal(slots).is_zero(); }

  /// P_J with a_{kk}(i) replaced by a_{eta_{k-1} eta_{k-1}}(i) in the target ring.
  QPoly instantiate(const FamilyKey& key, const GenericRing& target) const {
    const InductiveFamily& fam = family(key.slots.size());
    const GenericRing& src = *fam.ring();
    QPoly u = universal(key.slots);
    std::vector<std::size_t> map(src.vars()->size(), 0);
    for (std::size_t v = 0; v < map.size(); ++v) {
      const auto& s = src.slot(v);
      if (s.row == s.col && s.index <= target.n()) map[v] = target.var(key.chain[s.row - 1], key.chain[s.row - 1], s.index);
    }
    return u.rename(target.vars(), map);
  }

 private:
  NcPolynomial p_;
  mutable std::map<std::size_t, std::shared_ptr<InductiveFamily>> cache_;
};

struct SupportIndex {
  std::size_t t = 0;
  std::size_t ip = 0;
  /// Slot tuples of length t with a nonzero coefficient, in lexicographic order.
  std::vector<std::vector<std::uint32_t>> witnesses;
};

inline std::size_t distinct_count(const std::vector<std::uint32_t>& slots) {
  return std::set<std::uint32_t>(slots.begin(), slots.end()).size();
}

inline SupportIndex support_index(const NcPolynomial& p, const OrderReport& report) {
  if (report.order == 0) throw Error(Errc::OrderZero, "support index needs order at least 1");
  SupportIndex s;
  s.t = report.order;
  InductiveFamily fam = extract_family(p, s.t + 1);
  for (const auto& [key, c] : fam.coefficients())
    if (key.slots.size() == s.t && key.alpha() == 1 && key.beta() == s.t + 1) s.witnesses.push_back(key.slots);
  std::sort(s.witnesses.begin(), s.witnesses.end());
  if (s.witnesses.empty()) throw Error(Errc::InvalidArgument, "no nonzero length-t coefficient; order report inconsistent");
  s.ip = s.t;
  for (const auto& w : s.witnesses) s.ip = std::min(s.ip, distinct_count(w));
  return s;
}

inline SupportIndex support_index(const NcPolynomial& p) { return support_index(p, order(p)); }

/// k-th point of the grid 0, 1, -1, 2, -2, ...
inline long grid_point(std::size_t k) { return k % 2 ? static_cast<long>((k + 1) / 2) : -static_cast<long>(k / 2); }

/// Fixes variables one at a time to the first grid value keeping every
/// polynomial nonzero; each polynomial has at most deg_v roots in v, so the
/// search is finite. offset shifts the starting grid point for retries.
inline std::map<std::size_t, Rational> find_nonzero_assignment(const std::vector<QPoly>& qs, std::size_t offset = 0,
                                                              std::size_t budget = 1000000) {
  std::vector<QPoly> cur = qs;
  std::set<std::size_t> vars;
  for (std::size_t k = 0; k < cur.size(); ++k) {
    if (cur[k].is_zero()) throw Error(Errc::ZeroPolynomialInList, "entry " + std::to_string(k) + " is the zero polynomial");
    for (auto v : cur[k].variables()) vars.insert(v);
  }
  std::map<std::size_t, Rational> out;
  std::size_t spent = 0;
  for (std::size_t v : vars) {
    bool done = false;
    for (std::size_t k = offset; !done; ++k) {
      if (++spent > budget) throw Error(Errc::BudgetExhausted, "no nonzero point found within budget");
      Rational c(grid_point(k));
      std::map<std::size_t, Rational> one{{v, c}};
      std::vector<QPoly> next;
      next.reserve(cur.size());
      bool ok = true;
      for (const auto& q : cur) {
        next.push_back(q.degree_in(v) ? q.substitute(one) : q);
        if (next.back().is_zero()) {
          ok = false;
          break;
        }
      }
      if (ok) {
        cur = std::move(next);
        out[v] = c;
        done = true;
      }
    }
  }
  return out;
}

}  // namespace trimat
