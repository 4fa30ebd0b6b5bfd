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
#include <random>
#include <string>
#include <vector>

#include "trimat/classify.hpp"
#include "trimat/generic.hpp"
#include "trimat/ncpoly.hpp"
#include "trimat/oracle.hpp"
#include "trimat/parallel.hpp"
#include "trimat/witness.hpp"

namespace trimat {

/// End-to-end check that E13 + E35 escapes the image of [x1,x2]^2 on T_5 yet
/// is a sum of two image elements.
struct CounterexampleReport {
  std::string poly;
  std::size_t order = 0;
  bool factorization_ok = false;
  std::uint64_t q = 101, samples = 0, outer_nonzero = 0, violations = 0;
  std::string single_witness;
  std::size_t waring_d = 0;
  std::string waring_branch;
  bool waring_verified = false;
  WaringDecomposition decomposition;
  bool verified = false;
};

/// The commutator entry [X1, X2]_{k,k+1} written out from the generic entries.
inline QPoly commutator_link(const GenericRing& r, std::size_t k) {
  auto a = [&](std::size_t i, std::size_t j, std::size_t s) { return r.entry(i, j, s); };
  return a(k, k, 1) * a(k, k + 1, 2) - a(k, k, 2) * a(k, k + 1, 1) + a(k, k + 1, 1) * a(k + 1, k + 1, 2) -
         a(k, k + 1, 2) * a(k + 1, k + 1, 1);
}

inline CounterexampleReport verify_counterexample(std::uint64_t samples = 1000000, std::uint64_t seed = 0, std::size_t threads = 0) {
  CounterexampleReport rep;
  rep.poly = "(x1*x2 - x2*x1)^2";
  const NcPolynomial p = parse_ncpoly(rep.poly);
  OrderReport ord = order(p);
  rep.order = ord.order;

  GenericEvaluation g = generic_evaluate(p, 5);
  const GenericRing& ring = *g.ring;
  std::vector<QPoly> c;
  for (std::size_t k = 1; k <= 4; ++k) c.push_back(commutator_link(ring, k));
  rep.factorization_ok = g.value(1, 3) == c[0] * c[1] && g.value(2, 4) == c[1] * c[2] && g.value(3, 5) == c[2] * c[3];

  FastEvaluator ev(p, 5, rep.q);
  const std::uint64_t chunk_len = 8192, chunks = (samples + chunk_len - 1) / chunk_len;
  std::vector<std::uint64_t> outer(chunks), bad(chunks);
  const std::uint32_t i13 = ev.index(1, 3), i24 = ev.index(2, 4), i35 = ev.index(3, 5);
  for_each_chunk(chunks, resolve_threads(threads), [&](std::size_t ch) {
    std::mt19937_64 rng(mix_seed(seed, ch));
    auto scratch = ev.scratch();
    std::vector<std::uint32_t> arg(2 * ev.entries());
    std::vector<std::uint64_t> val(ev.entries());
    for (std::uint64_t k = ch * chunk_len; k < std::min(samples, (ch + 1) * chunk_len); ++k) {
      for (auto& a : arg) a = static_cast<std::uint32_t>(rng() % rep.q);
      ev.eval(arg.data(), val.data(), scratch);
      if (val[i13] && val[i35]) {
        ++outer[ch];
        if (!val[i24]) ++bad[ch];
      }
    }
  });
  rep.samples = samples;
  for (std::uint64_t ch = 0; ch < chunks; ++ch) {
    rep.outer_nonzero += outer[ch];
    rep.violations += bad[ch];
  }

  QMatrix x(5);
  x(1, 3) = Rational(1);
  x(3, 5) = Rational(1);
  WitnessEngine engine(p, ord);
  try {
    engine.witness(x);
    rep.single_witness = "constructed";
  } catch (const Error& e) {
    rep.single_witness = std::string(errc_name(e.code()));
  }
  rep.decomposition = engine.waring(x);
  rep.waring_d = rep.decomposition.d;
  rep.waring_branch = rep.decomposition.branch;
  rep.waring_verified = rep.decomposition.verified;
  rep.verified = rep.order == 2 && rep.factorization_ok && rep.violations == 0 && rep.single_witness == "NotConstructible" &&
                 rep.waring_d == 2 && rep.waring_verified;
  return rep;
}

}  // namespace trimat
