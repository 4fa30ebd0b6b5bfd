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

// trimat command line driver. Every command prints one JSON document.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "trimat/json_io.hpp"
#include "trimat/trimat.hpp"

namespace {

using namespace trimat;

struct Options {
  std::string poly, field = "Q", target, json_out, key, word;
  std::size_t m = 0, threads = 0, cap = 0, nvars = 0;
  std::uint64_t q = 0, seed = 0, budget = 100000000, sample = 0, trials = 0;
  bool dump = false;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_target(const Options& o) {
  if (o.target.empty()) throw Error(Errc::InvalidArgument, "--target is required");
  try {
    return json::parse(slurp(o.target));
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("target is not valid JSON: ") + e.what());
  }
}

template <class Field>
json matrices_to_json(const std::vector<UTMatrix<typename Field::value_type>>& us, const Field& f) {
  json arr = json::array();
  for (const auto& u : us) arr.push_back(matrix_to_json(u, f));
  return arr;
}

json order_json(const OrderReport& r) {
  return json{{"order", r.order}, {"cap", r.cap}, {"entry", {r.row, r.col}}, {"entry_poly", r.witness.to_string()}};
}

json run_classify(const Options& o) {
  NcPolynomial p = parse_ncpoly(o.poly);
  OrderReport r = o.cap ? order(p, o.cap) : order(p);
  json out = order_json(r);
  out["poly"] = p.to_string();
  if (r.order >= 1) {
    SupportIndex s = support_index(p, r);
    json ws = json::array();
    for (const auto& w : s.witnesses) ws.push_back(slots_to_string(w));
    out["support_index"] = s.ip;
    out["support_witnesses"] = ws;
  }
  out["verified"] = true;
  return out;
}

json run_inductive(const Options& o) {
  if (o.m < 1) throw Error(Errc::InvalidArgument, "--m must be at least 1");
  NcPolynomial p = parse_ncpoly(o.poly);
  InductiveFamily fam = extract_family(p, o.m);
  json out{{"m", o.m}, {"poly", p.to_string()}};
  if (!o.key.empty()) {
    FamilyKey k = FamilyKey::parse(o.key);
    if (k.beta() > o.m) throw Error(Errc::IndexOutOfRange, "key leaves T_" + std::to_string(o.m));
    out["key"] = k.to_string();
    out["coefficient"] = fam.coefficient(k).to_string();
  } else {
    json coeffs = json::object();
    for (const auto& [k, c] : fam.coefficients()) coeffs[k.to_string()] = c.to_string();
    out["coefficients"] = coeffs;
  }
  GenericEvaluation g = generic_evaluate(p, o.m);
  bool ok = true;
  for (std::size_t a = 1; a <= o.m; ++a)
    for (std::size_t b = a; b <= o.m; ++b) ok = ok && fam.reconstruct(a, b) == g.value(a, b);
  out["reconstruction_ok"] = ok;
  out["verified"] = ok;
  return out;
}

template <class Field>
json order0_witness(const NcPolynomial& p, const json& target, const Field& f) {
  auto x = matrix_from_json(target, f);
  auto w = witness_order0(p, x, f);
  return json{{"order", 0},         {"branch", branch_name(w.branch)}, {"routing", w.routing},
              {"residual", w.residual}, {"u", matrices_to_json(w.u, f)},  {"verified", w.verified}};
}

json run_witness(const Options& o) {
  NcPolynomial p = parse_ncpoly(o.poly);
  json target = load_target(o);
  FieldSpec fs = matrix_field(target);
  OrderReport r = order(p);
  if (r.order == 0) {
    switch (fs.kind) {
      case FieldSpec::Kind::Q: return order0_witness(p, target, QField{});
      case FieldSpec::Kind::C: return order0_witness(p, target, CField{});
      case FieldSpec::Kind::Fq: return order0_witness(p, target, FqField(fs.q));
    }
  }
  if (fs.kind != FieldSpec::Kind::Q) throw Error(Errc::FieldNotCharZero, "order >= 1 witnesses are built over Q");
  QField f;
  QMatrix x = matrix_from_json(target, f);
  QWitness w = witness(p, x, r);
  return json{{"order", r.order},      {"branch", branch_name(w.branch)}, {"routing", w.routing},
              {"u", matrices_to_json(w.u, f)}, {"verified", w.verified}};
}

json run_waring(const Options& o) {
  NcPolynomial p = parse_ncpoly(o.poly);
  json target = load_target(o);
  if (matrix_field(target).kind != FieldSpec::Kind::Q) throw Error(Errc::FieldNotCharZero, "Waring decompositions are built over Q");
  QField f;
  QMatrix x = matrix_from_json(target, f);
  WitnessEngine engine(p);
  WaringDecomposition d = engine.waring(x);
  json summands = json::array();
  for (const auto& s : d.summands)
    summands.push_back(json{{"x", matrix_to_json(s.x, f)}, {"routing", s.witness.routing}, {"u", matrices_to_json(s.witness.u, f)}});
  return json{{"order", engine.t()}, {"d", d.d}, {"branch", d.branch}, {"summands", summands}, {"verified", d.verified}};
}

template <class Field>
json density_payload(const NcPolynomial& p, const Options& o, const Field& f) {
  SampleStats st = sample_image(p, o.m, f, o.trials, o.seed, o.threads);
  json out{{"mode", st.mode}, {"m", o.m}, {"trials", st.trials}, {"field", f.spec().to_string()}};
  if (st.mode == "order0-density") {
    out["successes"] = st.successes;
    out["success_fraction"] = st.success_fraction();
    out["max_residual"] = st.max_residual;
    out["verified"] = st.successes == st.trials;
  } else {
    json hist = json::object();
    for (const auto& [d, c] : st.depth_histogram) hist[std::to_string(d)] = c;
    out["stratum"] = st.stratum;
    out["in_stratum"] = st.in_stratum;
    out["depth_histogram"] = hist;
    out["verified"] = st.in_stratum == st.trials;
  }
  return out;
}

json run_density(const Options& o) {
  if (o.m < 1) throw Error(Errc::InvalidArgument, "--m must be at least 1");
  FieldSpec fs = FieldSpec::parse(o.field);
  if (fs.kind == FieldSpec::Kind::Fq) throw Error(Errc::InvalidArgument, "density sampling runs over Q or C; use image-enum for F_q");
  NcPolynomial p = parse_ncpoly(o.poly);
  if (fs.kind == FieldSpec::Kind::C) return density_payload(p, o, CField{});
  return density_payload(p, o, QField{});
}

template <class Field>
json word_payload(const GroupWord& w, const json& target, const Options& o, const Field& f) {
  auto x = matrix_from_json(target, f);
  auto r = word_witness(w, x, f, o.nvars);
  return json{{"word", w.to_string()},      {"branch", branch_name(r.branch)}, {"residual", r.residual},
              {"u", matrices_to_json(r.u, f)}, {"verified", r.verified}};
}

json run_word_witness(const Options& o) {
  GroupWord w = GroupWord::parse(o.word);
  json target = load_target(o);
  FieldSpec fs = matrix_field(target);
  switch (fs.kind) {
    case FieldSpec::Kind::C: return word_payload(w, target, o, CField{});
    case FieldSpec::Kind::Fq: return word_payload(w, target, o, FqField(fs.q));
    default: return word_payload(w, target, o, QField{});
  }
}

json run_image_enum(const Options& o) {
  if (o.m < 1) throw Error(Errc::InvalidArgument, "--m must be at least 1");
  if (o.q == 0) throw Error(Errc::InvalidArgument, "--q is required");
  Fp::check_modulus(o.q);
  NcPolynomial p = parse_ncpoly(o.poly, FieldSpec::prime(o.q));
  ImageSet img = o.sample ? sample_image_fq(p, o.m, o.q, o.sample, o.seed, o.threads)
                          : enumerate_image(p, o.m, o.q, o.budget, o.threads);
  std::size_t t = 0;
  try {
    t = order(parse_ncpoly(o.poly)).order;
  } catch (const Error& e) {
    if (e.code() != Errc::OrderExceedsCap) throw;
    t = o.m;
  }
  StratumComparison c = compare_with_stratum(img, static_cast<long>(t) - 1);
  json out{{"m", o.m},
           {"q", o.q},
           {"mode", o.sample ? "sample" : "exhaustive"},
           {"evaluations", img.evaluation_count},
           {"image_size", c.image_size},
           {"order_over_Q", t},
           {"stratum", c.t},
           {"stratum_size", c.stratum_size},
           {"contained", c.contained},
           {"equal", c.equal}};
  if (c.contained && !c.equal && !o.sample && t >= 1) {
    auto d = waring_number(img, c.t, 4);
    out["waring_number"] = d ? json(*d) : json(nullptr);
  }
  if (o.dump) {
    json members = json::array();
    for (auto code : img.members()) members.push_back(img.decode_digits(code));
    out["members"] = members;
  }
  out["verified"] = c.contained;
  return out;
}

json run_counterexample(const Options& o) {
  CounterexampleReport r = verify_counterexample(o.trials ? o.trials : 1000000, o.seed, o.threads);
  QField f;
  json summands = json::array();
  for (const auto& s : r.decomposition.summands)
    summands.push_back(json{{"x", matrix_to_json(s.x, f)}, {"routing", s.witness.routing}, {"u", matrices_to_json(s.witness.u, f)}});
  return json{{"poly", r.poly},
              {"order", r.order},
              {"factorization_ok", r.factorization_ok},
              {"q", r.q},
              {"samples", r.samples},
              {"outer_nonzero", r.outer_nonzero},
              {"violations", r.violations},
              {"single_witness", r.single_witness},
              {"waring_d", r.waring_d},
              {"waring_branch", r.waring_branch},
              {"waring_verified", r.waring_verified},
              {"summands", summands},
              {"verified", r.verified}};
}

std::string digest_inputs(const std::string& cmd, const Options& o) {
  std::ostringstream s;
  s << cmd << '\n' << o.poly << '\n' << o.field << '\n' << o.m << '\n' << o.q << '\n' << o.seed << '\n' << o.budget << '\n'
    << o.cap << '\n' << o.key << '\n' << o.sample << '\n' << o.dump << '\n' << o.word << '\n' << o.trials << '\n' << o.nvars << '\n';
  if (!o.target.empty()) {
    try {
      s << slurp(o.target);
    } catch (const Error&) {
    }
  }
  return hex64(fnv1a(s.str()));
}

void emit(const json& doc, const Options& o) {
  const std::string text = doc.dump(2) + "\n";
  std::cout << text;
  if (!o.json_out.empty()) {
    std::ofstream out(o.json_out, std::ios::binary);
    if (!out) std::cerr << "trimat: cannot write " << o.json_out << "\n";
    out << text;
  }
}

bool all_verified(const json& j) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if ((k == "verified" || k == "consistent") && v.is_boolean() && !v.get<bool>()) return false;
      if (!all_verified(v)) return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Polynomial images on upper triangular matrices"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
    sub->add_option("--threads", o.threads, "worker threads (0: TRIMAT_THREADS or hardware)");
    sub->add_option("--json-out", o.json_out, "also write the JSON result here");
  };
  auto with_poly = [&](CLI::App* sub) { sub->add_option("--poly", o.poly, "noncommutative polynomial")->required(); };

  auto* classify = app.add_subcommand("classify", "order of a polynomial");
  with_poly(classify);
  classify->add_option("--cap", o.cap, "largest order tried");
  auto* inductive = app.add_subcommand("inductive", "inductive family on T_m");
  with_poly(inductive);
  inductive->add_option("--m", o.m)->required();
  inductive->add_option("--key", o.key, "single coefficient, e.g. '1<2<4;(1,2)'");
  auto* witness_cmd = app.add_subcommand("witness", "preimage of a target");
  with_poly(witness_cmd);
  witness_cmd->add_option("--target", o.target)->required();
  auto* waring_cmd = app.add_subcommand("waring", "sum of images equal to a target");
  with_poly(waring_cmd);
  waring_cmd->add_option("--target", o.target)->required();
  auto* density = app.add_subcommand("density", "random sampling of the image");
  with_poly(density);
  density->add_option("--m", o.m)->required();
  density->add_option("--field", o.field)->capture_default_str();
  density->add_option("--trials", o.trials)->required();
  auto* word = app.add_subcommand("word-witness", "preimage under a group word");
  word->add_option("--word", o.word, "e.g. 'x1^2*x2^-1'")->required();
  word->add_option("--target", o.target)->required();
  word->add_option("--nvars", o.nvars, "arity if larger than the word's");
  auto* image = app.add_subcommand("image-enum", "image over a finite field");
  with_poly(image);
  image->add_option("--m", o.m)->required();
  image->add_option("--q", o.q)->required();
  image->add_option("--budget", o.budget, "evaluation budget")->capture_default_str();
  image->add_option("--sample", o.sample, "sample this many tuples instead of enumerating");
  image->add_flag("--dump", o.dump, "list image members");
  auto* counter = app.add_subcommand("verify-counterexample", "T_5 analysis of (x1*x2-x2*x1)^2");
  counter->add_option("--trials", o.trials, "F_101 samples (default 1000000)");
  for (auto* sub : {classify, inductive, witness_cmd, waring_cmd, density, word, image, counter}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  json doc{{"schema", "trimat.v1"}, {"command", cmd}, {"inputs_digest", digest_inputs(cmd, o)}, {"seed", o.seed}};
  try {
    json payload;
    if (cmd == "classify") payload = run_classify(o);
    else if (cmd == "inductive") payload = run_inductive(o);
    else if (cmd == "witness") payload = run_witness(o);
    else if (cmd == "waring") payload = run_waring(o);
    else if (cmd == "density") payload = run_density(o);
    else if (cmd == "word-witness") payload = run_word_witness(o);
    else if (cmd == "image-enum") payload = run_image_enum(o);
    else payload = run_counterexample(o);
    doc["result"] = payload;
    emit(doc, o);
    return all_verified(payload) ? 0 : 1;
  } catch (const Error& e) {
    doc["error"] = json{{"code", errc_name(e.code())}, {"message", e.detail()}};
    if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) doc["error"]["position"] = se->position();
    emit(doc, o);
    std::cerr << "trimat: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    doc["error"] = json{{"code", "Internal"}, {"message", e.what()}};
    emit(doc, o);
    std::cerr << "trimat: " << e.what() << "\n";
    return 1;
  }
}
