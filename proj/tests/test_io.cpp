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

#include <array>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qns/channel.hpp"
#include "qns/correlation.hpp"
#include "qns/games.hpp"
#include "qns/io.hpp"
#include "qns/rand.hpp"
#include "qns/stochastic.hpp"
#include "qns/tensor.hpp"
#include "qns/tracial.hpp"

using namespace qns;

namespace {

Channel rand_leg(Rng& rng, const std::string& i, const std::string& o) {
  return random_cptp(rng, LegSystem::single(i, 2), LegSystem::single(o, 2), 2);
}

SqnsCorrelation product_sqns(Rng& rng) {
  return build_local({1.0},
                     std::vector<std::array<Channel, 4>>{
                         {rand_leg(rng, "x2", "x1"), rand_leg(rng, "y2", "y1"),
                          rand_leg(rng, "a1", "a2"),
                          rand_leg(rng, "b1", "b2")}});
}

}  // namespace

TEST_CASE("matrices and vectors round-trip bit-exactly") {
  Rng rng(601);
  LegSystem legs({{"x", 2}, {"y", 3}});
  Mat m = rng.gaussian_matrix(6, 6);
  LabeledMatrix lm(legs, m);
  LabeledMatrix back = matrix_from_json(to_json(lm));
  CHECK(back.legs().leg(0).name == "x");
  CHECK(back.legs().leg(1).size == 3);
  CHECK(max_abs_diff(back.entries(), m) == 0.0);

  // Pretty output parses to the same document.
  LabeledMatrix pretty = matrix_from_json(to_json(lm, true));
  CHECK(max_abs_diff(pretty.entries(), m) == 0.0);
  CHECK(to_json(lm, true).back() == '\n');

  Vec v = rng.state(5);
  Vec vback = vec_from_json(vec_to_json(v));
  CHECK((vback - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("channels and correlations round-trip with tags") {
  Rng rng(602);
  Channel c = random_cptp(rng, LegSystem({{"x", 2}, {"y", 2}}),
                          LegSystem({{"a", 2}, {"b", 2}}), 3);
  Channel cb = channel_from_json(to_json(c));
  CHECK(cb.in.leg(1).name == "y");
  CHECK(max_abs_diff(cb.choi.entries(), c.choi.entries()) == 0.0);

  Correlation corr = make_correlation(c, ClassTag::q_built);
  Correlation rb = correlation_from_json(to_json(corr));
  CHECK(rb.tag == ClassTag::q_built);
  CHECK(max_abs_diff(rb.ch.choi.entries(), corr.ch.choi.entries()) == 0.0);

  // A correlation document is not a channel document.
  CHECK_THROWS_AS(channel_from_json(to_json(corr)), input_error);
}

TEST_CASE("sqns documents restore the normative leg order from roles") {
  Rng rng(603);
  SqnsCorrelation c = product_sqns(rng);

  // Straight round trip.
  SqnsCorrelation rt = sqns_from_json(to_json(c));
  CHECK(rt.tag == c.tag);
  CHECK(max_abs_diff(rt.ch.choi.entries(), c.ch.choi.entries()) == 0.0);

  // A foreign writer that stores legs in its own order but labels the roles
  // correctly: build the permuted channel document and inject the role map.
  std::vector<std::string> shuffled{"y2", "x2", "b1", "a1",
                                    "y1", "x1", "b2", "a2"};
  LabeledMatrix perm = permute_legs(c.ch.choi, shuffled);
  Channel pc{c.ch.in.subset({"y2", "x2", "b1", "a1"}),
             c.ch.out.subset({"y1", "x1", "b2", "a2"}), perm};
  CHECK(max_abs_diff(pc.choi.entries(), c.ch.choi.entries()) > 1e-3);

  std::string text = to_json(pc);
  const std::string kind = "\"kind\":\"channel\"";
  const auto pos = text.find(kind);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, kind.size(),
               "\"kind\":\"sqns\",\"tag\":\"loc-built\",\"roles\":{"
               "\"x2\":\"x2\",\"y2\":\"y2\",\"a1\":\"a1\",\"b1\":\"b1\","
               "\"x1\":\"x1\",\"y1\":\"y1\",\"a2\":\"a2\",\"b2\":\"b2\"}");
  SqnsCorrelation back = sqns_from_json(text);
  CHECK(back.ch.in.leg(0).name == "x2");
  CHECK(back.ch.in.leg(3).name == "b1");
  CHECK(back.ch.out.leg(0).name == "x1");
  CHECK(max_abs_diff(back.ch.choi.entries(), c.ch.choi.entries()) == 0.0);
  CHECK(back.tag == ClassTag::loc_built);

  // Two legs per side is not an sqns document.
  Channel two = random_cptp(rng, LegSystem({{"x", 2}, {"y", 2}}),
                            LegSystem({{"a", 2}, {"b", 2}}), 2);
  std::string bad = to_json(two);
  const auto bp = bad.find(kind);
  REQUIRE(bp != std::string::npos);
  bad.replace(bp, kind.size(), "\"kind\":\"sqns\"");
  CHECK_THROWS_AS(sqns_from_json(bad), input_error);
}

TEST_CASE("stochastic operator matrices and tables round-trip") {
  Rng rng(604);
  StochOpMatrix e = random_stoch(rng, 2, 3, 2);
  StochOpMatrix eb = stoch_from_json(to_json(e));
  CHECK(eb.ancilla == 2);
  CHECK(eb.x_legs.leg(0).name == "x");
  CHECK(eb.a_legs.leg(0).size == 3);
  CHECK(max_abs_diff(eb.block.entries(), e.block.entries()) == 0.0);

  ClassicalTable t = random_ns_table(rng, LegSystem({{"x", 2}, {"y", 2}}),
                                     LegSystem({{"a", 2}, {"b", 2}}));
  ClassicalTable tb = table_from_json(to_json(t));
  REQUIRE(tb.p.size() == t.p.size());
  for (std::size_t i = 0; i < t.p.size(); ++i)
    for (std::size_t o = 0; o < t.p[i].size(); ++o)
      CHECK(tb.p[i][o] == t.p[i][o]);
}

TEST_CASE("trace representations round-trip and validate shapes") {
  Rng rng(605);
  TraceRep r = random_trace_rep(rng, 2, 2, 2);
  std::string text = to_json(r);
  TraceRep rb = trace_rep_from_json(text);
  CHECK(rb.iso.X == 2);
  CHECK(rb.iso.dK == 2);
  CHECK((rb.weights - r.weights).cwiseAbs().maxCoeff() == 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t x = 0; x < 2; ++x)
      CHECK(max_abs_diff(rb.iso.v[a][x], r.iso.v[a][x]) == 0.0);

  const std::string decl = "\"X\":2";
  const auto pos = text.find(decl);
  REQUIRE(pos != std::string::npos);
  std::string bad = text;
  bad.replace(pos, decl.size(), "\"X\":3");
  CHECK_THROWS_AS(trace_rep_from_json(bad), input_error);
}

TEST_CASE("game documents round-trip and dispatch on type") {
  Rng rng(606);
  LegSystem in({{"x", 2}, {"y", 2}});
  LegSystem out({{"a", 2}, {"b", 2}});

  ImplicationGame ig = make_implication_game(
      in, out, LabeledMatrix(in, rng.projection(4, 2)),
      LabeledMatrix(out, rng.projection(4, 3)));
  ImplicationGame igb = implication_game_from_json(to_json(ig));
  CHECK(max_abs_diff(igb.p.entries(), ig.p.entries()) == 0.0);
  CHECK(max_abs_diff(igb.q.entries(), ig.q.entries()) == 0.0);

  Vec xi = rng.state(8);
  Vec ga = rng.state(8);
  RankOneGame rg = make_rank_one_game(in, out, 2, xi, ga);
  RankOneGame rgb = rank_one_game_from_json(to_json(rg));
  CHECK(rgb.r_dim == 2);
  CHECK((rgb.xi - rg.xi).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((rgb.gamma - rg.gamma).cwiseAbs().maxCoeff() <= 1e-15);

  std::vector<std::vector<char>> allowed(4, std::vector<char>(4, 0));
  for (std::size_t i = 0; i < 4; ++i) allowed[i][i] = 1;
  ClassicalGame cg = make_classical_game(in, out, allowed, {0.4, 0.2, 0.2, 0.2});
  ClassicalGame cgb = classical_game_from_json(to_json(cg));
  CHECK(cgb.allowed == cg.allowed);
  CHECK(cgb.mu == cg.mu);

  CHECK(std::holds_alternative<ImplicationGame>(game_from_json(to_json(ig))));
  CHECK(std::holds_alternative<RankOneGame>(game_from_json(to_json(rg))));
  CHECK(std::holds_alternative<ClassicalGame>(game_from_json(to_json(cg))));

  CHECK_THROWS_AS(classical_game_from_json(to_json(ig)), input_error);
  std::string unk = to_json(cg);
  const std::string ty = "\"type\":\"classical\"";
  const auto pos = unk.find(ty);
  REQUIRE(pos != std::string::npos);
  unk.replace(pos, ty.size(), "\"type\":\"parity\"");
  CHECK_THROWS_AS(game_from_json(unk), input_error);
}

TEST_CASE("peek_kind reports the document kind and rejects junk") {
  Rng rng(607);
  Channel c = rand_leg(rng, "x", "a");
  CHECK(peek_kind(to_json(c)) == "channel");
  CHECK(peek_kind("{\"kind\":\"game\",\"type\":\"classical\"}") == "game");
  CHECK_THROWS_AS(peek_kind("{\"legs\": []}"), input_error);
  CHECK_THROWS_AS(peek_kind("not json at all"), input_error);
  CHECK_THROWS_AS(matrix_from_json("{\"kind\":\"vector\",\"entries\":[]}"),
                  input_error);
  // Truncated entry arrays are rejected against the declared legs.
  CHECK_THROWS_AS(
      matrix_from_json(
          "{\"kind\":\"matrix\",\"legs\":[{\"name\":\"x\",\"size\":2}],"
          "\"entries\":[[1.0,0.0]]}"),
      input_error);
}

TEST_CASE("text files round-trip binary content") {
  const char* path = "qns_test_io.bin";
  std::string payload("ab\0cd\n\xff", 7);
  save_text(path, payload);
  CHECK(load_text(path) == payload);
  std::remove(path);
  CHECK_THROWS_AS(load_text("qns_missing_file.json"), input_error);
}

TEST_CASE("fnv1a fingerprints match the reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("hello") != fnv1a_hex("hellp"));
}
