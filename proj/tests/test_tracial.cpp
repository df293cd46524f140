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

#include <cstddef>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "qns/channel.hpp"
#include "qns/correlation.hpp"
#include "qns/rand.hpp"
#include "qns/stochastic.hpp"
#include "qns/tensor.hpp"
#include "qns/tracial.hpp"

using namespace qns;

namespace {

// Scalar representation of a function pi: X -> A, v[a][x] = [a == pi(x)].
BlockIsometry function_rep(std::size_t X, std::size_t A,
                           const std::vector<std::size_t>& pi) {
  std::vector<std::vector<Mat>> v(A, std::vector<Mat>(X));
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t x = 0; x < X; ++x)
      v[a][x] = Mat::Constant(1, 1, cplx(pi[x] == a ? 1.0 : 0.0, 0.0));
  return make_block_isometry(X, A, 1, 1, std::move(v));
}

// Choi of the two-party channel that applies pi to each question.
Mat function_choi(std::size_t n, const std::vector<std::size_t>& pi) {
  const std::size_t dim = n * n * n * n;
  Mat c = Mat::Zero(dim, dim);
  auto at = [n](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    return ((x * n + y) * n + a) * n + b;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t xp = 0; xp < n; ++xp)
        for (std::size_t yp = 0; yp < n; ++yp)
          c(at(x, y, pi[x], pi[y]), at(xp, yp, pi[xp], pi[yp])) = 1.0;
  return c;
}

// Diagonal operator-matrix embedding of a classical table t((a,b)|(x,y))
// with trivial ancilla.
StochOpMatrix table_stoch(const std::vector<std::vector<double>>& t) {
  LegSystem xl({{"x", 2}, {"y", 2}});
  LegSystem al({{"a", 2}, {"b", 2}});
  Mat block = Mat::Zero(16, 16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t o = 0; o < 4; ++o)
      block(i * 4 + o, i * 4 + o) = t[i][o];
  return make_stoch(xl, al, 1, std::move(block));
}

StochOpMatrix renamed_stoch(const StochOpMatrix& e, const std::string& x,
                            const std::string& a) {
  return make_stoch(e.x_legs.renamed({x}), e.a_legs.renamed({a}), e.ancilla,
                    e.block.entries());
}

}  // namespace

TEST_CASE("block isometries satisfy the ternary ring relation") {
  Rng rng(401);
  BlockIsometry b = random_block_isometry(rng, 2, 3, 2, 2);
  CHECK(isometry_violation(b) <= 1e-12);

  // V V* V = V blockwise: sum_{x',a'} v[a][x'] v[a'][x']* v[a'][x] = v[a][x].
  for (std::size_t a = 0; a < b.A; ++a)
    for (std::size_t x = 0; x < b.X; ++x) {
      Mat s = Mat::Zero(b.dK, b.dH);
      for (std::size_t xp = 0; xp < b.X; ++xp)
        for (std::size_t ap = 0; ap < b.A; ++ap)
          s += b.v[a][xp] * b.v[ap][xp].adjoint() * b.v[ap][x];
      CHECK((s - b.v[a][x]).cwiseAbs().maxCoeff() <= 1e-12);
    }

  BlockIsometry bi = random_bi_isometry(rng, 2, 4, 2);
  CHECK(bi.dK == 1);
  CHECK(isometry_violation(bi) <= 1e-12);
  CHECK(co_isometry_violation(bi) <= 1e-12);

  CHECK_THROWS_AS(random_block_isometry(rng, 2, 2, 3, 2), input_error);
  CHECK_THROWS_AS(random_bi_isometry(rng, 2, 3, 2), input_error);
  CHECK_THROWS_AS(make_block_isometry(2, 2, 1, 1, {}), input_error);
}

TEST_CASE("generator systems are stochastic operator matrices") {
  Rng rng(402);
  BlockIsometry b = random_bi_isometry(rng, 2, 2, 2);
  StochOpMatrix gens = generators_of(b);
  CHECK(gens.x_legs.leg(0).size == 2);
  CHECK(gens.a_legs.leg(0).size == 2);
  CHECK(gens.ancilla == 2);
  CHECK(verify_stochastic(gens, 1e-10).pass);

  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t xp = 0; xp < 2; ++xp)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t ap = 0; ap < 2; ++ap) {
          Mat want = b.v[a][x].adjoint() * b.v[ap][xp];
          CHECK(max_abs_diff(stoch_entry(gens, x, xp, a, ap), want) <= 1e-15);
        }
}

TEST_CASE("the uniform ancilla state is tracial, skewed states are not") {
  Rng rng(403);
  BlockIsometry b = random_bi_isometry(rng, 2, 2, 2);
  StochOpMatrix gens = generators_of(b);

  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(2, 0.5);
  CHECK(traciality_violation(gens, uniform) <= 1e-12);

  Eigen::VectorXd skew(2);
  skew << 0.75, 0.25;
  CHECK(traciality_violation(gens, skew) > 1e-6);
}

TEST_CASE("trace representation weights are validated") {
  Rng rng(404);
  BlockIsometry b = random_bi_isometry(rng, 2, 2, 2);

  TraceRep u = make_trace_rep(b);
  CHECK(u.weights.size() == 2);
  CHECK(u.weights[0] == Catch::Approx(0.5));

  Eigen::VectorXd bad3 = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  CHECK_THROWS_AS(make_trace_rep(b, bad3), input_error);
  Eigen::VectorXd neg(2);
  neg << 1.5, -0.5;
  CHECK_THROWS_AS(make_trace_rep(b, neg), input_error);
  Eigen::VectorXd off(2);
  off << 0.6, 0.6;
  CHECK_THROWS_AS(make_trace_rep(b, off), input_error);
}

TEST_CASE("tracial correlations of function representations are the function "
          "channels") {
  // Identity on a three-letter alphabet.
  std::vector<std::size_t> id{0, 1, 2};
  Correlation c = tracial_correlation(make_trace_rep(function_rep(3, 3, id)));
  CHECK(c.tag == ClassTag::ns);
  CHECK(c.ch.in.leg(0).name == "x");
  CHECK(c.ch.out.leg(1).name == "b");
  CHECK(max_abs_diff(c.ch.choi.entries(), function_choi(3, id)) <= 1e-15);

  // A three-cycle.
  std::vector<std::size_t> cyc{1, 2, 0};
  Correlation p = tracial_correlation(make_trace_rep(function_rep(3, 3, cyc)));
  CHECK(max_abs_diff(p.ch.choi.entries(), function_choi(3, cyc)) <= 1e-15);
  CHECK(is_qns(p, 1e-10).pass);
  CHECK(is_concurrent(p.ch, 1e-10).pass);
}

TEST_CASE("random tracial correlations are quantum no-signalling and "
          "concurrent") {
  Rng rng(405);
  BlockIsometry b = random_bi_isometry(rng, 2, 2, 2);
  Correlation c = tracial_correlation(make_trace_rep(b));
  CHECK(is_qns(c, 1e-9).pass);
  CHECK(is_concurrent(c.ch, 1e-9).pass);

  // A non-tracial ancilla state keeps the no-signalling sums, which are
  // weight-independent, but the Choi stops being Hermitian PSD: complete
  // positivity of the construction rests on traciality.
  Eigen::VectorXd skew(2);
  skew << 0.7, 0.3;
  Correlation s = tracial_correlation(make_trace_rep(b, skew));
  std::vector<double> sums = no_signalling_violations(s.ch);
  for (double v : sums) CHECK(v <= 1e-12);
  QnsReport skew_rep = is_qns(s, 1e-9);
  CHECK_FALSE(skew_rep.pass);
  CHECK_FALSE(skew_rep.channel.pass);
  CHECK(std::max(skew_rep.a_side, skew_rep.b_side) <= 1e-12);
  CHECK_FALSE(is_concurrent(s.ch, 1e-8).pass);

  Eigen::VectorXd wrong = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  CHECK_THROWS_AS(correlation_from_generators(generators_of(b), wrong),
                  input_error);
}

TEST_CASE("concurrency holds for the identity and fails for depolarizing") {
  LegSystem in({{"x", 2}, {"y", 2}});
  LegSystem out({{"a", 2}, {"b", 2}});
  CHECK(is_concurrent(identity_channel(in, out), 1e-12).pass);

  Channel dep{in, out,
              LabeledMatrix(in.concat(out), Mat::Identity(16, 16) / 4.0)};
  ConcurrencyReport rep = is_concurrent(dep, 1e-8);
  CHECK_FALSE(rep.pass);
  CHECK(rep.violation == Catch::Approx(0.5));

  CHECK_THROWS_AS(is_concurrent(identity_channel(LegSystem::single("x", 2),
                                                 LegSystem::single("a", 2)),
                                1e-8),
                  input_error);
}

TEST_CASE("jointly tracial correlations are strongly no-signalling") {
  // Scalar identity representations on both sides give the identity channel.
  std::vector<std::size_t> id2{0, 1};
  TraceRep rx = make_trace_rep(function_rep(2, 2, id2));
  TraceRep ra = make_trace_rep(function_rep(2, 2, id2));
  SqnsCorrelation joint = jointly_tracial_correlation(rx, ra);
  CHECK(joint.tag == ClassTag::sns);
  LegSystem in({{"x2", 2}, {"y2", 2}, {"a1", 2}, {"b1", 2}});
  LegSystem out({{"x1", 2}, {"y1", 2}, {"a2", 2}, {"b2", 2}});
  CHECK(max_abs_diff(joint.ch.choi.entries(),
                     identity_channel(in, out).choi.entries()) <= 1e-15);

  Rng rng(406);
  TraceRep qx = random_trace_rep(rng, 2, 2, 2);
  TraceRep qa = random_trace_rep(rng, 2, 2, 2);
  SqnsCorrelation q = jointly_tracial_correlation(qx, qa);
  CHECK(is_sqns(q, 1e-8).pass);

  // Anchored marginals recover the one-sided tracial correlations.
  LegSystem aside({{"a1", 2}, {"b1", 2}});
  LegSystem xside({{"x2", 2}, {"y2", 2}});
  Channel mq = marginal(q, true, matrix_unit(aside, 0, 0));
  CHECK(max_abs_diff(mq.choi.entries(),
                     tracial_correlation(qx).ch.choi.entries()) <= 1e-12);
  Channel ma = marginal(q, false, matrix_unit(xside, 0, 0));
  CHECK(max_abs_diff(ma.choi.entries(),
                     tracial_correlation(qa).ch.choi.entries()) <= 1e-12);
}

TEST_CASE("four-index relations hold for generator products and detect "
          "signalling") {
  Rng rng(407);
  StochOpMatrix e = random_stoch(rng, 2, 2, 2);
  StochOpMatrix f = renamed_stoch(random_stoch(rng, 2, 2, 2), "y", "b");
  RelationsReport good = verify_cxyab_relations(odot(e, f), 1e-10);
  CHECK(good.pass);
  CHECK(good.max_violation <= 1e-10);

  // Answer a copying question x keeps all sums question-independent.
  std::vector<std::vector<double>> leak_a(4, std::vector<double>(4, 0.0));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t b = 0; b < 2; ++b)
        leak_a[x * 2 + y][x * 2 + b] = 0.5;
  CHECK(verify_cxyab_relations(table_stoch(leak_a), 1e-12).pass);

  // Answer b copying question x makes the A-alphabet sum depend on x.
  std::vector<std::vector<double>> leak_b(4, std::vector<double>(4, 0.0));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        leak_b[x * 2 + y][a * 2 + x] = 0.5;
  RelationsReport bad = verify_cxyab_relations(table_stoch(leak_b), 1e-8);
  CHECK_FALSE(bad.pass);
  CHECK(bad.violation[0] == Catch::Approx(0.5));
  CHECK(bad.violation[4] <= 1e-12);

  CHECK_THROWS_AS(verify_cxyab_relations(e, 1e-8), input_error);
}

TEST_CASE("simulated tracial correlations match the composed representation") {
  std::vector<std::size_t> id2{0, 1};
  std::vector<std::size_t> swap2{1, 0};
  TraceRep rid = make_trace_rep(function_rep(2, 2, id2));
  TraceRep rsw = make_trace_rep(function_rep(2, 2, swap2));

  SimulatedTraceReport plain = simulated_trace(rid, rid, rid);
  CHECK(plain.pass);
  CHECK(plain.defect <= 1e-12);

  SimulatedTraceReport perm = simulated_trace(rsw, rid, rsw);
  CHECK(perm.pass);
  CHECK(perm.defect <= 1e-12);
  // Swapping questions twice before answering yields the identity.
  CHECK(max_abs_diff(perm.simulated.ch.choi.entries(),
                     tracial_correlation(rid).ch.choi.entries()) <= 1e-12);

  Rng rng(408);
  TraceRep qx = random_trace_rep(rng, 2, 2, 2);
  TraceRep qa = random_trace_rep(rng, 2, 2, 2);
  TraceRep qi = random_trace_rep(rng, 2, 2, 2);
  SimulatedTraceReport rep = simulated_trace(qx, qa, qi, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.defect <= 1e-8);
  CHECK(rep.qns.pass);
  CHECK(rep.concurrency.pass);

  TraceRep wide = random_trace_rep(rng, 3, 3, 2, false);
  CHECK_THROWS_AS(simulated_trace(wide, qa, qi), input_error);
}
