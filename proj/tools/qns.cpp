// Copyright 2026 The qns authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end. Every verb prints one structured report to stdout;
// exit codes: 0 pass, 1 verification fail, 2 input error, 3 solver
// non-convergence.

#include <cstdint>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qns/channel.hpp"
#include "qns/correlation.hpp"
#include "qns/games.hpp"
#include "qns/io.hpp"
#include "qns/rand.hpp"
#include "qns/simulate.hpp"
#include "qns/stochastic.hpp"
#include "qns/tensor.hpp"
#include "qns/tracial.hpp"
#include "qns/valuation.hpp"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct Ctx {
  double tol = qns::kDefaultTol;
  std::uint64_t seed = 0;
  std::string out;
  bool pretty = false;
};

struct Report {
  ojson inputs = ojson::object();
  ojson verdicts = ojson::object();
  ojson violations = ojson::object();
  ojson artifacts = ojson::array();

  std::string render(const std::string& command, bool pretty) const {
    ojson j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["verdicts"] = verdicts;
    j["violations"] = violations;
    j["artifacts"] = artifacts;
    return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
  }
};

std::string read_input(const std::string& path, Report& rep) {
  std::string text = qns::load_text(path);
  rep.inputs[path] = qns::fnv1a_hex(text);
  return text;
}

void write_artifact(const std::string& path, const std::string& text,
                    Report& rep) {
  qns::save_text(path, text);
  rep.artifacts.push_back(path);
}

int emit(const Ctx& ctx, const std::string& command, const Report& rep,
         int rc, bool report_to_out = false) {
  std::string text = rep.render(command, ctx.pretty);
  std::cout << text;
  if (report_to_out && !ctx.out.empty()) qns::save_text(ctx.out, text);
  return rc;
}

bool all_verdicts_pass(const Report& rep) {
  for (const auto& [k, v] : rep.verdicts.items())
    if (v.is_boolean() && !v.get<bool>()) return false;
  return true;
}

const std::string& require_out(const Ctx& ctx) {
  if (ctx.out.empty()) throw qns::input_error("this verb requires --out");
  return ctx.out;
}

qns::StochOpMatrix renamed_stoch(const qns::StochOpMatrix& e,
                                 const std::vector<std::string>& x_names,
                                 const std::vector<std::string>& a_names) {
  return qns::make_stoch(e.x_legs.renamed(x_names), e.a_legs.renamed(a_names),
                         e.ancilla, e.block.entries());
}

// Kind-dispatched loaders for documents that may arrive in more than one
// encoding.

qns::Correlation load_correlation(const std::string& text) {
  const std::string kind = qns::peek_kind(text);
  if (kind == "correlation") return qns::correlation_from_json(text);
  if (kind == "channel")
    return qns::make_correlation(qns::channel_from_json(text));
  throw qns::input_error("expected a correlation or channel document, got \"" +
                         kind + "\"");
}

qns::Channel load_channel(const std::string& text) {
  const std::string kind = qns::peek_kind(text);
  if (kind == "channel") return qns::channel_from_json(text);
  if (kind == "correlation") return qns::correlation_from_json(text).ch;
  if (kind == "sqns") return qns::sqns_from_json(text).ch;
  throw qns::input_error("expected a channel-like document, got \"" + kind +
                         "\"");
}

qns::VectorSubspace load_graph(const std::string& text) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded()) throw qns::input_error("malformed JSON");
  const std::string kind = j.value("kind", "");
  if (kind == "graph") {
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at(0).get<std::size_t>(),
                         e.at(1).get<std::size_t>());
    return qns::graph_subspace(n, edges);
  }
  if (kind == "subspace") {
    const std::size_t n1 = j.at("n1").get<std::size_t>();
    const std::size_t n2 = j.at("n2").get<std::size_t>();
    std::vector<qns::Vec> basis;
    for (const auto& b : j.at("basis")) {
      qns::Vec v(b.size());
      for (std::size_t k = 0; k < b.size(); ++k)
        v(static_cast<Eigen::Index>(k)) =
            qns::cplx(b[k].at(0).get<double>(), b[k].at(1).get<double>());
      basis.push_back(std::move(v));
    }
    return qns::make_vector_subspace(n1, n2, basis);
  }
  throw qns::input_error("expected a graph or subspace document, got \"" +
                         kind + "\"");
}

// verify -------------------------------------------------------------------

void fill_channel_report(const qns::ChannelReport& r, Report& rep) {
  rep.verdicts["cptp"] = r.pass;
  rep.violations["psd"] = r.psd_violation;
  rep.violations["trace_preserving"] = r.tp_violation;
  rep.violations["hermiticity"] = r.hermiticity;
}

int run_verify(const Ctx& ctx, const std::string& kind,
               const std::vector<std::string>& files) {
  Report rep;
  std::vector<std::string> texts;
  for (const auto& f : files) texts.push_back(read_input(f, rep));
  auto need = [&](std::size_t n) {
    if (texts.size() != n)
      throw qns::input_error("verify " + kind + " takes " + std::to_string(n) +
                             " file(s)");
  };

  if (kind == "ns") {
    need(1);
    qns::QnsReport r = qns::is_qns(load_correlation(texts[0]), ctx.tol);
    rep.verdicts["qns"] = r.pass;
    fill_channel_report(r.channel, rep);
    rep.violations["a_side"] = r.a_side;
    rep.violations["b_side"] = r.b_side;
    rep.violations["max"] = r.max_violation;
  } else if (kind == "sns") {
    need(1);
    const std::string doc = qns::peek_kind(texts[0]);
    if (doc == "classical") {
      qns::ClassicalTable t = qns::table_from_json(texts[0]);
      std::vector<double> v = qns::table_ns_violations(t);
      double worst = qns::table_normalization_violation(t);
      rep.violations["normalization"] = worst;
      for (std::size_t k = 0; k < v.size(); ++k) {
        rep.violations["pair_" + std::to_string(k)] = v[k];
        worst = std::max(worst, v[k]);
      }
      rep.violations["max"] = worst;
      rep.verdicts["sns"] = worst <= ctx.tol;
    } else {
      qns::SqnsReport r = qns::is_sqns(qns::sqns_from_json(texts[0]), ctx.tol);
      rep.verdicts["sqns"] = r.pass;
      fill_channel_report(r.channel, rep);
      for (std::size_t k = 0; k < 4; ++k)
        rep.violations["pair_" + std::to_string(k)] = r.pair_violation[k];
      rep.violations["max"] = r.max_violation;
    }
  } else if (kind == "stochastic" || kind == "strongly-stochastic") {
    need(1);
    qns::StochOpMatrix e = qns::stoch_from_json(texts[0]);
    if (kind == "stochastic") {
      qns::StochReport r = qns::verify_stochastic(e, ctx.tol);
      rep.verdicts["stochastic"] = r.pass;
      rep.violations["psd"] = r.psd_violation;
      rep.violations["hermiticity"] = r.hermiticity;
      rep.violations["row"] = r.row_violation;
    } else {
      qns::StrongStochReport r = qns::verify_strongly_stochastic(e, ctx.tol);
      rep.verdicts["strongly_stochastic"] = r.pass;
      rep.violations["psd"] = r.base.psd_violation;
      rep.violations["hermiticity"] = r.base.hermiticity;
      rep.violations["row"] = r.base.row_violation;
      rep.violations["first_pair"] = r.first_pair_violation;
      rep.violations["second_pair"] = r.second_pair_violation;
    }
  } else if (kind == "bicorrelation") {
    need(1);
    qns::BicorrReport r;
    if (qns::peek_kind(texts[0]) == "sqns")
      r = qns::is_bicorrelation(qns::sqns_from_json(texts[0]), ctx.tol);
    else
      r = qns::is_bicorrelation(load_correlation(texts[0]), ctx.tol);
    rep.verdicts["bicorrelation"] = r.pass;
    rep.violations["forward"] = r.forward_violation;
    rep.violations["unital"] = r.unital_violation;
    rep.violations["adjoint"] = r.adjoint_violation;
  } else if (kind == "concurrent") {
    need(1);
    qns::ConcurrencyReport r =
        qns::is_concurrent(load_channel(texts[0]), ctx.tol);
    rep.verdicts["concurrent"] = r.pass;
    rep.violations["max"] = r.violation;
  } else if (kind == "perfect") {
    need(2);
    qns::Correlation c = load_correlation(texts[0]);
    qns::GameVariant g = qns::game_from_json(texts[1]);
    qns::PerfectReport r = std::visit(
        [&](const auto& game) { return qns::is_perfect(c, game); }, g);
    rep.verdicts["perfect"] = r.pass;
    rep.verdicts["value_pass"] = r.value_pass;
    rep.verdicts["kraus_pass"] = r.kraus_pass;
    rep.violations["value"] = r.value;
    rep.violations["value_gap"] = r.value_gap;
    rep.violations["kraus_residual"] = r.max_kraus_residual;
  } else if (kind == "graph") {
    need(1);
    qns::GraphCheckReport r =
        qns::quantum_graph_check(load_graph(texts[0]), ctx.tol);
    rep.verdicts["quantum_graph"] = r.pass;
    rep.violations["skew"] = r.skew_violation;
    rep.violations["flip"] = r.flip_violation;
  } else if (kind == "relations") {
    need(1);
    qns::RelationsReport r =
        qns::verify_cxyab_relations(qns::stoch_from_json(texts[0]), ctx.tol);
    rep.verdicts["relations"] = r.pass;
    for (std::size_t k = 0; k < r.violation.size(); ++k)
      rep.violations["relation_" + std::to_string(k)] = r.violation[k];
    rep.violations["max"] = r.max_violation;
  } else {
    throw qns::input_error("unknown verify kind \"" + kind + "\"");
  }
  const bool pass = all_verdicts_pass(rep);
  return emit(ctx, "verify " + kind, rep, pass ? kExitPass : kExitFail, true);
}

// build --------------------------------------------------------------------

ojson parse_doc(const std::string& text) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded()) throw qns::input_error("malformed JSON");
  return j;
}

ojson spec_body(const std::string& text, const std::string& type) {
  ojson j = parse_doc(text);
  if (j.value("kind", "") != "build-spec")
    throw qns::input_error("expected a build-spec document");
  if (j.contains("type") && j.at("type").get<std::string>() != type)
    throw qns::input_error("build-spec type mismatch: expected \"" + type +
                           "\"");
  return j;
}

int run_build(const Ctx& ctx, const std::string& kind,
              const std::string& file, const std::string& target) {
  Report rep;
  const std::string text = read_input(file, rep);
  const std::string& out = require_out(ctx);

  auto finish_corr = [&](const qns::Correlation& c) {
    qns::QnsReport r = qns::is_qns(c, ctx.tol);
    rep.verdicts["qns"] = r.pass;
    rep.violations["max"] = r.max_violation;
    write_artifact(out, qns::to_json(c), rep);
  };
  auto finish_sqns = [&](const qns::SqnsCorrelation& c) {
    qns::SqnsReport r = qns::is_sqns(c, ctx.tol);
    rep.verdicts["sqns"] = r.pass;
    rep.violations["max"] = r.max_violation;
    write_artifact(out, qns::to_json(c), rep);
  };

  if (kind == "tracial") {
    qns::TraceRep r = qns::peek_kind(text) == "trace-rep"
                          ? qns::trace_rep_from_json(text)
                          : qns::trace_rep_from_json(
                                spec_body(text, kind).at("rep").dump());
    finish_corr(qns::tracial_correlation(r));
  } else if (kind == "jointly-tracial") {
    ojson j = spec_body(text, kind);
    finish_sqns(qns::jointly_tracial_correlation(
        qns::trace_rep_from_json(j.at("rx").dump()),
        qns::trace_rep_from_json(j.at("ra").dump())));
  } else if (kind == "classical-embed") {
    qns::ClassicalTable t =
        qns::peek_kind(text) == "classical"
            ? qns::table_from_json(text)
            : qns::table_from_json(spec_body(text, kind).at("table").dump());
    qns::ClassTag tag = qns::verify_table_ns(t, ctx.tol)
                            ? (target == "sns" ? qns::ClassTag::sns
                                               : qns::ClassTag::ns)
                            : qns::ClassTag::unknown;
    if (target == "sns")
      finish_sqns(qns::classical_embed_sqns(t, tag));
    else
      finish_corr(qns::classical_embed_corr(t, tag));
  } else if (kind == "local") {
    ojson j = spec_body(text, kind);
    std::vector<double> weights = j.at("weights").get<std::vector<double>>();
    const ojson& comps = j.at("components");
    if (comps.empty()) throw qns::input_error("build local: no components");
    const std::size_t arity = comps[0].size();
    if (arity == 2) {
      std::vector<std::array<qns::Channel, 2>> terms;
      for (const auto& term : comps)
        terms.push_back({qns::channel_from_json(term.at(0).dump()),
                         qns::channel_from_json(term.at(1).dump())});
      finish_corr(qns::build_local(weights, terms, ctx.tol));
    } else if (arity == 4) {
      std::vector<std::array<qns::Channel, 4>> terms;
      for (const auto& term : comps)
        terms.push_back({qns::channel_from_json(term.at(0).dump()),
                         qns::channel_from_json(term.at(1).dump()),
                         qns::channel_from_json(term.at(2).dump()),
                         qns::channel_from_json(term.at(3).dump())});
      finish_sqns(qns::build_local(weights, terms, ctx.tol));
    } else {
      throw qns::input_error("build local: components must have 2 or 4 parts");
    }
  } else if (kind == "quantum") {
    ojson j = spec_body(text, kind);
    if (j.contains("e")) {
      finish_corr(qns::build_q_corr(qns::stoch_from_json(j.at("e").dump()),
                                    qns::stoch_from_json(j.at("f").dump()),
                                    qns::vec_from_json(j.at("eta").dump()),
                                    ctx.tol));
    } else {
      finish_sqns(qns::build_quantum(qns::stoch_from_json(j.at("m").dump()),
                                     qns::stoch_from_json(j.at("n").dump()),
                                     qns::vec_from_json(j.at("xi").dump()),
                                     ctx.tol));
    }
  } else if (kind == "qc") {
    ojson j = spec_body(text, kind);
    if (j.contains("e")) {
      finish_corr(qns::build_qc_corr(qns::stoch_from_json(j.at("e").dump()),
                                     qns::stoch_from_json(j.at("f").dump()),
                                     qns::vec_from_json(j.at("eta").dump()),
                                     ctx.tol));
    } else {
      finish_sqns(qns::build_qc(qns::stoch_from_json(j.at("ex").dump()),
                                qns::stoch_from_json(j.at("ey").dump()),
                                qns::stoch_from_json(j.at("fa").dump()),
                                qns::stoch_from_json(j.at("fb").dump()),
                                qns::vec_from_json(j.at("xi").dump()),
                                ctx.tol));
    }
  } else {
    throw qns::input_error("unknown build kind \"" + kind + "\"");
  }
  const bool pass = all_verdicts_pass(rep);
  return emit(ctx, "build " + kind, rep, pass ? kExitPass : kExitFail);
}

// gen ----------------------------------------------------------------------

qns::ClassicalGame chsh_game() {
  qns::LegSystem in({{"x", 2}, {"y", 2}});
  qns::LegSystem out({{"a", 2}, {"b", 2}});
  std::vector<std::vector<char>> allowed(4, std::vector<char>(4, 0));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          allowed[x * 2 + y][a * 2 + b] = ((a ^ b) == (x & y)) ? 1 : 0;
  return qns::make_classical_game(in, out, allowed);
}

struct GenSizes {
  std::size_t din = 2, dout = 2, kraus = 0;
  std::size_t x = 2, y = 2, a = 2, b = 2;
  std::size_t anc = 2, dh = 2;
  std::size_t terms = 2, comps = 4;
  bool bi = true;
};

ojson doc(const std::string& text) { return parse_doc(text); }

int run_gen(const Ctx& ctx, const std::string& kind, const GenSizes& s) {
  Report rep;
  const std::string& out = require_out(ctx);
  qns::Rng rng(ctx.seed);
  std::string artifact;

  if (kind == "channel") {
    std::size_t kraus = s.kraus == 0 ? s.din : s.kraus;
    artifact = qns::to_json(
        qns::random_cptp(rng, qns::LegSystem::single("x", s.din),
                         qns::LegSystem::single("a", s.dout), kraus),
        ctx.pretty);
  } else if (kind == "stoch") {
    artifact =
        qns::to_json(qns::random_stoch(rng, s.x, s.a, s.anc), ctx.pretty);
  } else if (kind == "trace-rep") {
    artifact = qns::to_json(qns::random_trace_rep(rng, s.x, s.a, s.dh, s.bi),
                            ctx.pretty);
  } else if (kind == "ns-box") {
    artifact = qns::to_json(
        qns::random_ns_table(rng, qns::LegSystem({{"x", s.x}, {"y", s.y}}),
                             qns::LegSystem({{"a", s.a}, {"b", s.b}})),
        ctx.pretty);
  } else if (kind == "classical" || kind == "sns-classical") {
    // sns-classical is the four-leg object p(x1 y1 a2 b2 | x2 y2 a1 b1);
    // plain classical is a two-leg box p(a b | x y).
    qns::LegSystem in = kind == "classical"
                            ? qns::LegSystem({{"x", s.x}, {"y", s.y}})
                            : qns::LegSystem({{"x2", s.x},
                                              {"y2", s.y},
                                              {"a1", s.a},
                                              {"b1", s.b}});
    qns::LegSystem o = kind == "classical"
                           ? qns::LegSystem({{"a", s.a}, {"b", s.b}})
                           : qns::LegSystem({{"x1", s.x},
                                             {"y1", s.y},
                                             {"a2", s.a},
                                             {"b2", s.b}});
    qns::ClassicalTable t = kind == "classical"
                                ? qns::random_table(rng, in, o)
                                : qns::random_ns_table(rng, in, o);
    artifact = qns::to_json(t, ctx.pretty);
  } else if (kind == "chsh-game") {
    artifact = qns::to_json(chsh_game(), ctx.pretty);
  } else if (kind == "local-spec") {
    ojson spec{{"kind", "build-spec"}, {"type", "local"}};
    std::vector<double> w;
    for (std::size_t t = 0; t < s.terms; ++t) w.push_back(rng.uniform());
    double sum = 0.0;
    for (double v : w) sum += v;
    for (double& v : w) v /= sum;
    spec["weights"] = w;
    ojson comps = ojson::array();
    for (std::size_t t = 0; t < s.terms; ++t) {
      ojson term = ojson::array();
      for (std::size_t c = 0; c < s.comps; ++c)
        term.push_back(doc(qns::to_json(qns::random_cptp(
            rng, qns::LegSystem::single("u", s.din),
            qns::LegSystem::single("v", s.dout), s.din))));
      comps.push_back(std::move(term));
    }
    spec["components"] = comps;
    artifact = ctx.pretty ? spec.dump(2) + "\n" : spec.dump();
  } else if (kind == "q-spec") {
    auto product = [&](const char* x2, const char* x1, const char* a1,
                       const char* a2) {
      qns::StochOpMatrix left =
          renamed_stoch(qns::random_stoch(rng, s.x, s.x, s.dh), {x2}, {x1});
      qns::StochOpMatrix right =
          renamed_stoch(qns::random_stoch(rng, s.a, s.a, s.dh), {a1}, {a2});
      return qns::odot(left, right);
    };
    ojson spec{{"kind", "build-spec"}, {"type", "quantum"}};
    spec["m"] = doc(qns::to_json(product("x2", "x1", "a1", "a2")));
    spec["n"] = doc(qns::to_json(product("y2", "y1", "b1", "b2")));
    const std::size_t d = s.dh * s.dh;
    spec["xi"] = doc(qns::vec_to_json(rng.state(d * d)));
    artifact = ctx.pretty ? spec.dump(2) + "\n" : spec.dump();
  } else if (kind == "qc-spec") {
    // Four families on a common ancilla, made commuting by tensor-position
    // embedding.
    qns::StochOpMatrix ex = qns::random_stoch(rng, s.x, s.x, s.dh);
    qns::StochOpMatrix ey = qns::random_stoch(rng, s.y, s.y, s.dh);
    qns::StochOpMatrix fa = qns::random_stoch(rng, s.a, s.a, s.dh);
    qns::StochOpMatrix fb = qns::random_stoch(rng, s.b, s.b, s.dh);
    const std::size_t d = s.dh;
    ojson spec{{"kind", "build-spec"}, {"type", "qc"}};
    spec["ex"] = doc(qns::to_json(qns::embed_ancilla(ex, 1, d * d * d)));
    spec["ey"] = doc(qns::to_json(qns::embed_ancilla(ey, d, d * d)));
    spec["fa"] = doc(qns::to_json(qns::embed_ancilla(fa, d * d, d)));
    spec["fb"] = doc(qns::to_json(qns::embed_ancilla(fb, d * d * d, 1)));
    spec["xi"] = doc(qns::vec_to_json(rng.state(d * d * d * d)));
    artifact = ctx.pretty ? spec.dump(2) + "\n" : spec.dump();
  } else if (kind == "joint-spec") {
    ojson spec{{"kind", "build-spec"}, {"type", "jointly-tracial"}};
    spec["rx"] =
        doc(qns::to_json(qns::random_trace_rep(rng, s.x, s.a, s.dh, s.bi)));
    spec["ra"] =
        doc(qns::to_json(qns::random_trace_rep(rng, s.a, s.b, s.dh, s.bi)));
    artifact = ctx.pretty ? spec.dump(2) + "\n" : spec.dump();
  } else {
    throw qns::input_error("unknown gen kind \"" + kind + "\"");
  }

  write_artifact(out, artifact, rep);
  rep.verdicts["generated"] = true;
  rep.violations = ojson::object();
  return emit(ctx, "gen " + kind, rep, kExitPass);
}

// simulate -----------------------------------------------------------------

int run_simulate(const Ctx& ctx, const std::string& gamma_file,
                 const std::string& inner_file) {
  Report rep;
  qns::SqnsCorrelation gamma =
      qns::sqns_from_json(read_input(gamma_file, rep));
  qns::Correlation inner = load_correlation(read_input(inner_file, rep));
  qns::Correlation result = qns::simulate(gamma, inner);
  qns::QnsReport r = qns::is_qns(result, ctx.tol);
  rep.verdicts["result_qns"] = r.pass;
  rep.violations["max"] = r.max_violation;
  write_artifact(require_out(ctx), qns::to_json(result), rep);
  return emit(ctx, "simulate", rep, r.pass ? kExitPass : kExitFail);
}

// value --------------------------------------------------------------------

int run_value(const Ctx& ctx, const std::string& game_file,
              const std::string& cls, double value_tol, double feas_tol,
              const std::string& witness_path) {
  Report rep;
  qns::GameVariant g = qns::game_from_json(read_input(game_file, rep));

  if (cls == "loc") {
    const auto* cg = std::get_if<qns::ClassicalGame>(&g);
    if (cg == nullptr)
      throw qns::input_error("value --class loc needs a classical game");
    rep.violations["value"] = qns::loc_value_classical(*cg);
    rep.verdicts["converged"] = true;
    return emit(ctx, "value loc", rep, kExitPass, true);
  }
  if (cls != "ns")
    throw qns::input_error("unknown value class \"" + cls + "\"");

  qns::SolverOptions opt;
  opt.tol_value = value_tol;
  opt.tol_feas = feas_tol;
  qns::ValueResult res;
  if (const auto* cg = std::get_if<qns::ClassicalGame>(&g))
    res = qns::ns_value(*cg, opt);
  else if (const auto* ig = std::get_if<qns::ImplicationGame>(&g))
    res = qns::ns_value(*ig, opt);
  else
    res = qns::ns_value(
        qns::rank_one_to_implication(std::get<qns::RankOneGame>(g)), opt);

  rep.verdicts["converged"] = res.status == "converged";
  rep.violations["value"] = res.value;
  rep.violations["lo"] = res.lo;
  rep.violations["hi"] = res.hi;
  rep.violations["probes"] = res.probes;
  qns::QnsReport wr = qns::is_qns(res.witness, 1e-6);
  rep.verdicts["witness_qns"] = wr.pass;
  rep.violations["witness_ns"] = wr.max_violation;
  if (!witness_path.empty())
    write_artifact(witness_path, qns::to_json(res.witness), rep);
  int rc = res.status == "converged" ? kExitPass : kExitSolver;
  return emit(ctx, "value ns", rep, rc, true);
}

// export-sdpa ---------------------------------------------------------------

int run_export(const Ctx& ctx, const std::string& game_file) {
  Report rep;
  qns::GameVariant g = qns::game_from_json(read_input(game_file, rep));
  const std::string& out = require_out(ctx);
  if (const auto* cg = std::get_if<qns::ClassicalGame>(&g))
    qns::export_sdpa(*cg, out);
  else if (const auto* ig = std::get_if<qns::ImplicationGame>(&g))
    qns::export_sdpa(*ig, out);
  else
    qns::export_sdpa(
        qns::rank_one_to_implication(std::get<qns::RankOneGame>(g)), out);
  rep.artifacts.push_back(out);
  qns::SdpaProblem p = qns::read_sdpa(out);
  rep.verdicts["written"] = true;
  rep.violations["constraints"] = p.m;
  rep.violations["block_size"] = p.block_size;
  return emit(ctx, "export-sdpa", rep, kExitPass);
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  CLI::App app{"no-signalling correlation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", ctx.tol, "verification tolerance");
  app.add_option("--seed", ctx.seed, "generator seed");
  app.add_option("--out", ctx.out, "output artifact or report path");
  app.add_flag("--pretty", ctx.pretty, "indent JSON output");

  int rc = kExitPass;

  std::string verify_kind;
  std::vector<std::string> verify_files;
  auto* verify = app.add_subcommand("verify", "run a verifier on input files");
  verify->add_option("kind", verify_kind,
                     "ns|sns|stochastic|strongly-stochastic|bicorrelation|"
                     "concurrent|perfect|graph|relations")
      ->required();
  verify->add_option("files", verify_files, "input files")->required();
  verify->callback(
      [&] { rc = run_verify(ctx, verify_kind, verify_files); });

  std::string build_kind, build_file, build_target = "ns";
  auto* build = app.add_subcommand("build", "build a correlation from parts");
  build->add_option("kind", build_kind,
                    "local|quantum|qc|tracial|jointly-tracial|classical-embed")
      ->required();
  build->add_option("spec", build_file, "build-spec or part file")->required();
  build->add_option("--target", build_target,
                    "classical-embed target: ns|sns");
  build->callback(
      [&] { rc = run_build(ctx, build_kind, build_file, build_target); });

  std::string gen_kind;
  GenSizes sizes;
  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  gen->add_option("kind", gen_kind,
                  "channel|stoch|trace-rep|classical|ns-box|sns-classical|"
                  "chsh-game|local-spec|q-spec|qc-spec|joint-spec")
      ->required();
  gen->add_option("--din", sizes.din, "channel input dimension");
  gen->add_option("--dout", sizes.dout, "channel output dimension");
  gen->add_option("--kraus", sizes.kraus, "Kraus rank (0 = input dimension)");
  gen->add_option("--x", sizes.x, "x alphabet size");
  gen->add_option("--y", sizes.y, "y alphabet size");
  gen->add_option("--a", sizes.a, "a alphabet size");
  gen->add_option("--b", sizes.b, "b alphabet size");
  gen->add_option("--anc", sizes.anc, "ancilla dimension");
  gen->add_option("--dh", sizes.dh, "representation space dimension");
  gen->add_option("--terms", sizes.terms, "local terms");
  gen->add_option("--comps", sizes.comps, "components per local term (2|4)");
  gen->add_flag("--bi,!--no-bi", sizes.bi, "bi-isometric trace reps");
  gen->callback([&] { rc = run_gen(ctx, gen_kind, sizes); });

  std::string sim_gamma, sim_inner;
  auto* sim = app.add_subcommand("simulate", "apply a simulator");
  sim->add_option("--gamma", sim_gamma, "four-leg simulator file")->required();
  sim->add_option("--inner", sim_inner, "two-leg correlation file")
      ->required();
  sim->callback([&] { rc = run_simulate(ctx, sim_gamma, sim_inner); });

  std::string value_game, value_class = "ns", witness_path;
  double value_tol = 1e-4, feas_tol = 1e-7;
  auto* value = app.add_subcommand("value", "optimal game value");
  value->add_option("--game", value_game, "game file")->required();
  value->add_option("--class", value_class, "ns|loc");
  value->add_option("--value-tol", value_tol, "bisection bracket width");
  value->add_option("--feas-tol", feas_tol, "feasibility threshold");
  value->add_option("--witness", witness_path, "write the witness here");
  value->callback([&] {
    rc = run_value(ctx, value_game, value_class, value_tol, feas_tol,
                   witness_path);
  });

  std::string export_game;
  auto* exp = app.add_subcommand("export-sdpa", "write the value program");
  exp->add_option("--game", export_game, "game file")->required();
  exp->callback([&] { rc = run_export(ctx, export_game); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const qns::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return rc;
}
