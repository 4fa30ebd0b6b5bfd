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
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trimat/classify.hpp"
#include "trimat/error.hpp"
#include "trimat/field.hpp"
#include "trimat/ncpoly.hpp"
#include "trimat/parallel.hpp"
#include "trimat/utm.hpp"
#include "trimat/witness.hpp"

namespace trimat {

/// Evaluates p on T_m(F_q) with packed uint32 entries.
class FastEvaluator {
 public:
  struct Scratch {
    std::vector<std::vector<std::uint64_t>> sub, prod;
  };

  FastEvaluator(const NcPolynomial& p, std::size_t m, std::uint64_t q) : m_(m), q_(q), n_(p.nvars()), big_(q > (1ull << 28)) {
    Fp::check_modulus(q);
    N_ = m * (m + 1) / 2;
    nodes_.push_back({});
    for (const auto& [w, c] : p.terms()) {
      std::size_t at = 0;
      for (auto letter : w) {
        std::size_t found = 0;
        for (auto ch : nodes_[at].children)
          if (nodes_[ch].letter == letter) found = ch;
        if (!found) {
          nodes_.push_back({letter, 0, {}});
          found = nodes_.size() - 1;
          nodes_[at].children.push_back(found);
        }
        at = found;
      }
      nodes_[at].coef = Fp::from_rational(c, q).value();
      depth_ = std::max(depth_, w.size());
    }
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = i; j <= m; ++j) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (std::size_t k = i; k <= j; ++k) pairs.emplace_back(index(i, k), index(k, j));
        plan_.push_back(std::move(pairs));
      }
  }

  std::size_t m() const { return m_; }
  std::uint64_t q() const { return q_; }
  std::size_t nvars() const { return n_; }
  std::size_t entries() const { return N_; }
  std::uint32_t index(std::size_t i, std::size_t j) const {
    return static_cast<std::uint32_t>((i - 1) * m_ - (i - 1) * (i - 2) / 2 + (j - i));
  }

  Scratch scratch() const {
    Scratch s;
    s.sub.assign(depth_ + 1, std::vector<std::uint64_t>(N_));
    s.prod.assign(depth_ + 1, std::vector<std::uint64_t>(N_));
    return s;
  }

  /// args holds n consecutive packed matrices; out receives N entries in [0, q).
  void eval(const std::uint32_t* args, std::uint64_t* out, Scratch& s) const { eval_node(0, 0, args, out, s); }

 private:
  struct Node {
    std::uint32_t letter = 0;
    std::uint64_t coef = 0;
    std::vector<std::size_t> children;
  };

  void eval_node(std::size_t node, std::size_t depth, const std::uint32_t* args, std::uint64_t* out, Scratch& s) const {
    std::fill(out, out + N_, 0);
    for (std::size_t ch : nodes_[node].children) {
      const Node& c = nodes_[ch];
      const std::uint32_t* x = args + (c.letter - 1) * N_;
      if (c.coef)
        for (std::size_t k = 0; k < N_; ++k) out[k] = (out[k] + c.coef * x[k]) % q_;
      if (!c.children.empty()) {
        std::uint64_t* sub = s.sub[depth].data();
        eval_node(ch, depth + 1, args, sub, s);
        for (std::size_t e = 0; e < N_; ++e) {
          std::uint64_t acc = 0;
          for (const auto& [a, b] : plan_[e]) {
            acc += static_cast<std::uint64_t>(x[a]) * sub[b];
            if (big_) acc %= q_;
          }
          out[e] = (out[e] + acc) % q_;
        }
      }
    }
  }

  std::size_t m_;
  std::uint64_t q_;
  std::size_t n_, N_ = 0, depth_ = 0;
  bool big_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> plan_;
};

/// Image of a polynomial map on T_m(F_q), one bit per encoded matrix.
class ImageSet {
 public:
  ImageSet(std::size_t m, std::uint64_t q, std::size_t n) : m_(m), q_(q), n_(n), N_(m * (m + 1) / 2) {
    long double states = std::pow(static_cast<long double>(q), static_cast<long double>(N_));
    if (states > 4294967296.0L) throw Error(Errc::BudgetExceeded, "T_m(F_q) has more than 2^32 elements");
    states_ = static_cast<std::uint64_t>(std::llround(static_cast<double>(states)));
    bits_.assign((states_ + 63) / 64, 0);
  }

  std::size_t m() const { return m_; }
  std::uint64_t q() const { return q_; }
  std::size_t n() const { return n_; }
  std::uint64_t states() const { return states_; }
  std::uint64_t evaluation_count = 0;
  bool exhaustive = true;

  void insert(std::uint64_t code) { bits_[code >> 6] |= 1ull << (code & 63); }
  bool contains(std::uint64_t code) const { return (bits_[code >> 6] >> (code & 63)) & 1; }
  void merge(const ImageSet& o) {
    for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] |= o.bits_[k];
  }

  std::uint64_t size() const {
    std::uint64_t c = 0;
    for (auto w : bits_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
  }
  std::vector<std::uint64_t> members() const {
    std::vector<std::uint64_t> out;
    for (std::size_t k = 0; k < bits_.size(); ++k)
      for (std::uint64_t w = bits_[k]; w; w &= w - 1) out.push_back(k * 64 + static_cast<std::uint64_t>(__builtin_ctzll(w)));
    return out;
  }

  /// Packed entry k is the base-q digit of weight q^k.
  template <class Digit>
  std::uint64_t encode_digits(const Digit* d) const {
    std::uint64_t c = 0;
    for (std::size_t k = N_; k-- > 0;) c = c * q_ + static_cast<std::uint64_t>(d[k]);
    return c;
  }
  std::vector<std::uint32_t> decode_digits(std::uint64_t c) const {
    std::vector<std::uint32_t> d(N_);
    for (std::size_t k = 0; k < N_; ++k) {
      d[k] = static_cast<std::uint32_t>(c % q_);
      c /= q_;
    }
    return d;
  }
  UTMatrix<Fp> decode(std::uint64_t c) const {
    auto d = decode_digits(c);
    UTMatrix<Fp> x(m_, Fp(0, q_));
    std::size_t k = 0;
    for (std::size_t i = 1; i <= m_; ++i)
      for (std::size_t j = i; j <= m_; ++j) x(i, j) = Fp(d[k++], q_);
    return x;
  }
  std::uint64_t encode(const UTMatrix<Fp>& x) const {
    std::vector<std::uint32_t> d;
    for (std::size_t i = 1; i <= m_; ++i)
      for (std::size_t j = i; j <= m_; ++j) d.push_back(static_cast<std::uint32_t>(x(i, j).value()));
    return encode_digits(d.data());
  }

  /// Whether code lies in T^(t).
  bool in_stratum(std::uint64_t code, long t) const {
    auto d = decode_digits(code);
    std::size_t k = 0;
    for (std::size_t i = 1; i <= m_; ++i)
      for (std::size_t j = i; j <= m_; ++j, ++k)
        if (static_cast<long>(j - i) <= t && d[k]) return false;
    return true;
  }
  std::uint64_t stratum_size(long t) const {
    std::uint64_t c = 1;
    for (std::size_t i = 1; i <= m_; ++i)
      for (std::size_t j = i; j <= m_; ++j)
        if (static_cast<long>(j - i) > t) c *= q_;
    return c;
  }

 private:
  std::size_t m_;
  std::uint64_t q_;
  std::size_t n_, N_;
  std::uint64_t states_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct StratumComparison {
  long t = -1;
  std::uint64_t image_size = 0, stratum_size = 0;
  bool contained = false, equal = false;
};

inline StratumComparison compare_with_stratum(const ImageSet& s, long t) {
  StratumComparison c;
  c.t = t;
  c.image_size = s.size();
  c.stratum_size = s.stratum_size(t);
  c.contained = true;
  for (auto code : s.members()) c.contained = c.contained && s.in_stratum(code, t);
  c.equal = c.contained && c.image_size == c.stratum_size;
  return c;
}

/// Exhaustive image over all n-tuples of T_m(F_q).
inline ImageSet enumerate_image(const NcPolynomial& p, std::size_t m, std::uint64_t q, std::uint64_t budget = 100000000,
                                std::size_t threads = 0) {
  FastEvaluator ev(p, m, q);
  const std::size_t n = p.nvars(), N = ev.entries(), digits = n * N;
  ImageSet out(m, q, n);
  long double total = std::pow(static_cast<long double>(q), static_cast<long double>(digits));
  if (total > static_cast<long double>(budget))
    throw Error(Errc::BudgetExceeded, "q^(n*m(m+1)/2) exceeds the budget of " + std::to_string(budget) + "; use --sample");
  const std::uint64_t count = static_cast<std::uint64_t>(std::llround(static_cast<double>(total)));
  if (n == 0) {
    out.insert(0);
    return out;
  }
  const std::uint64_t chunk_len = 1 << 16, chunks = (count + chunk_len - 1) / chunk_len;
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), chunks);
  std::vector<ImageSet> local(workers, ImageSet(m, q, n));
  for_each_chunk(workers, workers, [&](std::size_t w) {
    auto scratch = ev.scratch();
    std::vector<std::uint32_t> arg(digits);
    std::vector<std::uint64_t> val(N);
    for (std::uint64_t c = w; c < chunks; c += workers) {
      std::uint64_t start = c * chunk_len, stop = std::min(count, start + chunk_len), rem = start;
      for (std::size_t k = 0; k < digits; ++k) {
        arg[k] = static_cast<std::uint32_t>(rem % q);
        rem /= q;
      }
      for (std::uint64_t idx = start; idx < stop; ++idx) {
        ev.eval(arg.data(), val.data(), scratch);
        local[w].insert(out.encode_digits(val.data()));
        for (std::size_t k = 0; k < digits && ++arg[k] == q; ++k) arg[k] = 0;
      }
    }
  });
  for (const auto& l : local) out.merge(l);
  out.evaluation_count = count;
  return out;
}

/// Image of trials uniformly random tuples; a subset of the true image.
inline ImageSet sample_image_fq(const NcPolynomial& p, std::size_t m, std::uint64_t q, std::uint64_t trials, std::uint64_t seed,
                                std::size_t threads = 0) {
  FastEvaluator ev(p, m, q);
  const std::size_t n = p.nvars(), N = ev.entries();
  ImageSet out(m, q, n);
  out.exhaustive = false;
  out.insert(0);
  const std::uint64_t chunk_len = 4096, chunks = (trials + chunk_len - 1) / chunk_len;
  std::vector<std::vector<std::uint64_t>> found(chunks);
  for_each_chunk(chunks, resolve_threads(threads), [&](std::size_t c) {
    std::mt19937_64 rng(mix_seed(seed, c));
    auto scratch = ev.scratch();
    std::vector<std::uint32_t> arg(n * N);
    std::vector<std::uint64_t> val(N);
    for (std::uint64_t k = c * chunk_len; k < std::min(trials, (c + 1) * chunk_len); ++k) {
      for (auto& a : arg) a = static_cast<std::uint32_t>(rng() % q);
      ev.eval(arg.data(), val.data(), scratch);
      found[c].push_back(out.encode_digits(val.data()));
    }
  });
  for (const auto& f : found)
    for (auto code : f) out.insert(code);
  out.evaluation_count = trials;
  return out;
}

/// Smallest d <= d_max whose d-fold sumset covers T^(t), by iterated closure.
inline std::optional<std::size_t> waring_number(const ImageSet& s, long t, std::size_t d_max) {
  const std::vector<std::uint64_t> base = s.members();
  std::vector<std::vector<std::uint32_t>> base_digits;
  for (auto c : base) base_digits.push_back(s.decode_digits(c));
  const std::uint64_t q = s.q();
  auto covers = [&](const ImageSet& cur) {
    std::uint64_t hits = 0;
    for (auto c : cur.members()) hits += s.in_stratum(c, t) ? 1 : 0;
    return hits == s.stratum_size(t);
  };
  ImageSet cur = s;
  for (std::size_t d = 1; d <= d_max; ++d) {
    if (covers(cur)) return d;
    if (d == d_max) break;
    ImageSet next = cur;
    std::vector<std::uint32_t> sum(base_digits.empty() ? 0 : base_digits.front().size());
    for (auto c : cur.members()) {
      auto cd = s.decode_digits(c);
      for (const auto& bd : base_digits) {
        for (std::size_t k = 0; k < cd.size(); ++k) sum[k] = static_cast<std::uint32_t>((cd[k] + bd[k]) % q);
        next.insert(s.encode_digits(sum.data()));
      }
    }
    cur = std::move(next);
  }
  return std::nullopt;
}

struct SampleStats {
  std::string mode;
  std::uint64_t trials = 0, successes = 0;
  double max_residual = 0.0;
  long stratum = -1;
  std::uint64_t in_stratum = 0;
  std::map<long, std::uint64_t> depth_histogram;
  double success_fraction() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

namespace detail {

template <class Field>
typename Field::value_type random_element(std::mt19937_64& rng, const Field& f) {
  using K = typename Field::value_type;
  if constexpr (std::is_same_v<K, Complex>) {
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    double re = unit(), im = unit();
    return {re, im};
  } else if constexpr (std::is_same_v<K, Fp>) {
    return Fp(static_cast<std::int64_t>(rng() % f.q), f.q);
  } else {
    long num = static_cast<long>(rng() % 19) - 9, den = static_cast<long>(rng() % 4) + 1;
    return Rational(num, den);
  }
}

template <class Field>
UTMatrix<typename Field::value_type> random_matrix(std::mt19937_64& rng, std::size_t m, const Field& f, bool distinct_diag) {
  using K = typename Field::value_type;
  UTMatrix<K> x(m, f.zero());
  for (;;) {
    for (std::size_t i = 1; i <= m; ++i)
      for (std::size_t j = i; j <= m; ++j) x(i, j) = random_element(rng, f);
    if (!distinct_diag) return x;
    bool ok = true;
    for (std::size_t i = 1; i <= m && ok; ++i)
      for (std::size_t j = i + 1; j <= m && ok; ++j) ok = !(x(i, i) == x(j, j));
    if (ok) return x;
  }
}

}  // namespace detail

/// Order 0: witness success on random distinct-diagonal targets. Order >= 1:
/// depth histogram of images of random tuples.
template <class Field>
SampleStats sample_image(const NcPolynomial& p, std::size_t m, const Field& f, std::uint64_t trials, std::uint64_t seed = 0,
                         std::size_t threads = 0) {
  using K = typename Field::value_type;
  SampleStats st;
  st.trials = trials;
  const bool order0 = !abelianization(p, f).is_zero();
  st.mode = order0 ? "order0-density" : "stratum-histogram";
  if (!order0) st.stratum = static_cast<long>(order(p).order) - 1;
  const std::uint64_t chunk_len = 64, chunks = (trials + chunk_len - 1) / chunk_len;
  std::vector<SampleStats> part(chunks);
  for_each_chunk(chunks, resolve_threads(threads), [&](std::size_t c) {
    std::mt19937_64 rng(mix_seed(seed, c));
    SampleStats& s = part[c];
    for (std::uint64_t k = c * chunk_len; k < std::min(trials, (c + 1) * chunk_len); ++k) {
      if (order0) {
        UTMatrix<K> x = detail::random_matrix(rng, m, f, true);
        try {
          auto w = witness_order0(p, x, f);
          if (w.verified) ++s.successes;
          s.max_residual = std::max(s.max_residual, w.residual);
        } catch (const Error&) {
        }
      } else {
        std::vector<UTMatrix<K>> args;
        for (std::size_t i = 0; i < p.nvars(); ++i) args.push_back(detail::random_matrix(rng, m, f, false));
        long dep = depth(evaluate(p, args));
        ++s.depth_histogram[dep];
        if (dep >= st.stratum) ++s.in_stratum;
      }
    }
  });
  for (const auto& s : part) {
    st.successes += s.successes;
    st.in_stratum += s.in_stratum;
    st.max_residual = std::max(st.max_residual, s.max_residual);
    for (const auto& [d, c] : s.depth_histogram) st.depth_histogram[d] += c;
  }
  if (!order0) st.successes = st.in_stratum;
  return st;
}

}  // namespace trimat
