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
#include <cstddef>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qns/channel.hpp"
#include "qns/correlation.hpp"
#include "qns/rand.hpp"
#include "qns/simulate.hpp"
#include "qns/stochastic.hpp"
#include "qns/tensor.hpp"

using namespace qns;

namespace {

// Loop-level contraction oracle. Free indices (x2, y2, a2, b2) on both row
// and column, inner sums over (x1, y1, a1, b1) on both; all legs size 2.
// gamma rows run over (x2, y2, a1, b1, x1, y1, a2, b2), e rows over
// (x, y, a, b), result rows over (x2, y2, a2, b2), each row-major.
Mat simulate_oracle(const Mat& gamma, const Mat& e) {
  Mat r = Mat::Zero(16, 16);
  for (std::size_t rr = 0; rr < 16; ++rr)
    for (std::size_t rc = 0; rc < 16; ++rc) {
      const std::size_t x2 = rr >> 3, y2 = (rr >> 2) & 1;
      const std::size_t a2 = (rr >> 1) & 1, b2 = rr & 1;
      const std::size_t x2p = rc >> 3, y2p = (rc >> 2) & 1;
      const std::size_t a2p = (rc >> 1) & 1, b2p = rc & 1;
      cplx acc(0.0, 0.0);
      for (std::size_t in = 0; in < 16; ++in)
        for (std::size_t inp = 0; inp < 16; ++inp) {
          const std::size_t x1 = in >> 3, y1 = (in >> 2) & 1;
          const std::size_t a1 = (in >> 1) & 1, b1 = in & 1;
          const std::size_t x1p = inp >> 3, y1p = (inp >> 2) & 1;
          const std::size_t a1p = (inp >> 1) & 1, b1p = inp & 1;
          const std::size_t gr =
              (((((((x2 * 2 + y2) * 2 + a1) * 2 + b1) * 2 + x1) * 2 + y1) *
                    2 +
                a2) *
                   2 +
               b2);
          const std::size_t gc =
              (((((((x2p * 2 + y2p) * 2 + a1p) * 2 + b1p) * 2 + x1p) * 2 +
                 y1p) *
                    2 +
                a2p) *
                   2 +
               b2p);
          const std::size_t er = ((x1 * 2 + y1) * 2 + a1) * 2 + b1;
          const std::size_t ec = ((x1p * 2 + y1p) * 2 + a1p) * 2 + b1p;
          acc += gamma(gr, gc) * e(er, ec);
        }
      r(rr, rc) = acc;
    }
  return r;
}

LegSystem sqns_in() {
  return LegSystem({{"x2", 2}, {"y2", 2}, {"a1", 2}, {"b1", 2}});
}
LegSystem sqns_out() {
  return LegSystem({{"x1", 2}, {"y1", 2}, {"a2", 2}, {"b2", 2}});
}

Channel leg_cptp(Rng& rng, const char* i, const char* o) {
  return random_cptp(rng, LegSystem::single(i, 2), LegSystem::single(o, 2),
                     2);
}

Correlation random_inner(Rng& rng) {
  std::vector<std::array<Channel, 2>> terms = {
      {leg_cptp(rng, "x", "a"), leg_cptp(rng, "y", "b")}};
  return build_local({1.0}, terms);
}

SqnsCorrelation identity_sqns() {
  Channel id = identity_channel(sqns_in(), sqns_out());
  return make_sqns(id, ClassTag::unknown);
}

StochOpMatrix renamed_stoch(const StochOpMatrix& e, const std::string& x,
                            const std::string& a) {
  return make_stoch(e.x_legs.renamed({x}), e.a_legs.renamed({a}), e.ancilla,
                    e.block.entries());
}

}  // namespace

TEST_CASE("simulate matches the loop oracle on random data") {
  Rng rng(61);
  Channel g = random_cptp(rng, sqns_in(), sqns_out(), 3);
  SqnsCorrelation gamma = make_sqns(g, ClassTag::unknown);
  Correlation e = random_inner(rng);
  Correlation r = simulate(gamma, e);
  CHECK(r.tag == ClassTag::unknown);
  CHECK(r.ch.in.names() == std::vector<std::string>{"x2", "y2"});
  CHECK(r.ch.out.names() == std::vector<std::string>{"a2", "b2"});
  Mat want = simulate_oracle(g.choi.entries(), e.ch.choi.entries());
  CHECK(max_abs_diff(r.ch.choi.entries(), want) <= 1e-12);

  // A second inner, fully generic (not product-built).
  Channel e2 = random_cptp(rng, LegSystem({{"x", 2}, {"y", 2}}),
                           LegSystem({{"a", 2}, {"b", 2}}), 4);
  Correlation r2 = simulate(gamma, make_correlation(e2));
  Mat want2 = simulate_oracle(g.choi.entries(), e2.choi.entries());
  CHECK(max_abs_diff(r2.ch.choi.entries(), want2) <= 1e-12);
}

TEST_CASE("identity simulator returns the inner correlation") {
  Rng rng(62);
  Correlation e = random_inner(rng);
  Correlation r = simulate(identity_sqns(), e);
  CHECK(max_abs_diff(r.ch.choi.entries(), e.ch.choi.entries()) <= 1e-12);
}

TEST_CASE("product simulator is pre- and post-processing") {
  Rng rng(63);
  Channel cx = leg_cptp(rng, "x2", "x1");
  Channel cy = leg_cptp(rng, "y2", "y1");
  Channel ca = leg_cptp(rng, "a1", "a2");
  Channel cb = leg_cptp(rng, "b1", "b2");
  SqnsCorrelation gamma = build_local(
      {1.0}, std::vector<std::array<Channel, 4>>{{cx, cy, ca, cb}});
  Correlation e = random_inner(rng);
  Correlation r = simulate(gamma, e);
  Channel expect =
      compose(tensor(ca, cb), compose(e.ch, tensor(cx, cy)));
  CHECK(max_abs_diff(r.ch.choi.entries(), expect.choi.entries()) <= 1e-10);
}

TEST_CASE("simulate of classical embeds composes the tables") {
  Rng rng(64);
  ClassicalTable gt = random_ns_table(rng, sqns_in(), sqns_out());
  ClassicalTable et = random_table(rng, LegSystem({{"x", 2}, {"y", 2}}),
                                   LegSystem({{"a", 2}, {"b", 2}}));
  Correlation r = simulate(classical_embed_sqns(gt, ClassTag::sns),
                           classical_embed_corr(et));
  // Independent table-level composition; the result Choi stays diagonal.
  for (std::size_t i = 0; i < 16; ++i)
    for (std::size_t j = 0; j < 16; ++j) {
      if (i == j) continue;
      CHECK(std::abs(r.ch.choi.entries()(i, j)) <= 1e-14);
    }
  for (std::size_t x2 = 0; x2 < 2; ++x2)
    for (std::size_t y2 = 0; y2 < 2; ++y2)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2) {
          double want = 0.0;
          for (std::size_t x1 = 0; x1 < 2; ++x1)
            for (std::size_t y1 = 0; y1 < 2; ++y1)
              for (std::size_t a1 = 0; a1 < 2; ++a1)
                for (std::size_t b1 = 0; b1 < 2; ++b1)
                  want += gt.p[((x2 * 2 + y2) * 2 + a1) * 2 + b1]
                              [((x1 * 2 + y1) * 2 + a2) * 2 + b2] *
                          et.p[x1 * 2 + y1][a1 * 2 + b1];
          const std::size_t row = ((x2 * 2 + y2) * 2 + a2) * 2 + b2;
          CHECK(std::abs(r.ch.choi.entries()(row, row).real() - want) <=
                1e-12);
        }
}

TEST_CASE("simulate rejects mismatched alphabets") {
  Rng rng(65);
  Channel g = random_cptp(rng, LegSystem({{"x2", 2}, {"y2", 2}, {"a1", 3},
                                          {"b1", 2}}),
                          LegSystem({{"x1", 2}, {"y1", 2}, {"a2", 3},
                                     {"b2", 2}}),
                          2);
  Correlation e = random_inner(rng);  // outputs are 2 x 2, a1 needs 3
  CHECK_THROWS_AS(simulate(make_sqns(g), e), input_error);
}

TEST_CASE("adjoint bookkeeping commutes with simulation") {
  Rng rng(66);
  SqnsCorrelation id = identity_sqns();
  Correlation e = random_inner(rng);
  CHECK(simulate_adjoint_check(id, e, 1e-12).pass);

  // Fully generic simulator: the rotation of the adjoint's leg blocks must
  // reproduce the adjoint of the simulated channel exactly.
  Channel g = random_cptp(rng, sqns_in(), sqns_out(), 3);
  AdjointCheckReport rep =
      simulate_adjoint_check(make_sqns(g), e, 1e-12);
  CHECK(rep.pass);
  CHECK(rep.defect <= 1e-13);

  Channel e2 = random_cptp(rng, LegSystem({{"x", 2}, {"y", 2}}),
                           LegSystem({{"a", 2}, {"b", 2}}), 4);
  CHECK(simulate_adjoint_check(make_sqns(g), make_correlation(e2), 1e-12)
            .pass);
}

TEST_CASE("local transfer witness reproduces the simulated correlation") {
  Rng rng(67);
  LocSqnsData sim;
  sim.weights = {0.25, 0.75};
  for (int t = 0; t < 2; ++t)
    sim.components.push_back({leg_cptp(rng, "x2", "x1"),
                              leg_cptp(rng, "y2", "y1"),
                              leg_cptp(rng, "a1", "a2"),
                              leg_cptp(rng, "b1", "b2")});
  LocCorrData inner;
  inner.weights = {0.5, 0.5};
  for (int t = 0; t < 2; ++t)
    inner.components.push_back(
        {leg_cptp(rng, "x", "a"), leg_cptp(rng, "y", "b")});
  TransferReport rep = loc_transfer_witness(sim, inner, 1e-9);
  CHECK(rep.pass);
  CHECK(rep.defect <= 1e-12);
  CHECK(rep.witnessed.tag == ClassTag::loc_built);
}

TEST_CASE("quantum transfer witness reproduces the simulated correlation") {
  Rng rng(68);
  QSqnsData sim;
  sim.m = odot(renamed_stoch(random_stoch(rng, 2, 2, 2), "x2", "x1"),
               renamed_stoch(random_stoch(rng, 2, 2, 1), "a1", "a2"));
  sim.n = odot(renamed_stoch(random_stoch(rng, 2, 2, 2), "y2", "y1"),
               renamed_stoch(random_stoch(rng, 2, 2, 1), "b1", "b2"));
  sim.xi = rng.state(sim.m.ancilla * sim.n.ancilla);
  QCorrData inner;
  inner.e = random_stoch(rng, 2, 2, 2);
  inner.f = renamed_stoch(random_stoch(rng, 2, 2, 2), "y", "b");
  inner.eta = rng.state(inner.e.ancilla * inner.f.ancilla);
  TransferReport rep = q_transfer_witness(sim, inner, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.defect <= 1e-10);
  CHECK(rep.witnessed.tag == ClassTag::q_built);
  CHECK(is_qns(rep.direct, 1e-8).pass);
}

TEST_CASE("qc transfer witness reproduces the simulated correlation") {
  Rng rng(69);
  // Two genuine families on separate slots of a 4-dim common ancilla; the
  // other two are scalar and commute with everything.
  StochOpMatrix ex = embed_ancilla(random_stoch(rng, 2, 2, 2), 1, 2);
  StochOpMatrix fa = embed_ancilla(random_stoch(rng, 2, 2, 2), 2, 1);
  auto scalar = [&rng](std::size_t total) {
    return embed_ancilla(random_stoch(rng, 2, 2, 1), 1, total);
  };
  QcSqnsData sim{ex, scalar(4), fa, scalar(4), rng.state(4)};
  QCorrData inner;
  inner.e = embed_ancilla(random_stoch(rng, 2, 2, 2), 1, 1);
  inner.f = embed_ancilla(random_stoch(rng, 2, 2, 1), 1, 2);
  inner.eta = rng.state(2);
  TransferReport rep = qc_transfer_witness(sim, inner, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.defect <= 1e-10);
  CHECK(rep.witnessed.tag == ClassTag::qc_built);
  CHECK(is_qns(rep.direct, 1e-8).pass);
}
