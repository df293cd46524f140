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

#include "qns/simulate.hpp"

#include <cstddef>
#include <string>
#include <vector>

#include "qns/channel.hpp"

namespace qns {

namespace {

StochOpMatrix renamed_stoch(const StochOpMatrix& e,
                            const std::vector<std::string>& x_names,
                            const std::vector<std::string>& a_names) {
  LegSystem x = e.x_legs.renamed(x_names);
  LegSystem a = e.a_legs.renamed(a_names);
  return make_stoch(x, a, e.ancilla, e.block.entries());
}

}  // namespace

Correlation simulate(const SqnsCorrelation& gamma, const Correlation& e) {
  const Channel& g = gamma.ch;
  const Channel& f = e.ch;
  if (g.in.leg_count() != 4 || g.out.leg_count() != 4 ||
      f.in.leg_count() != 2 || f.out.leg_count() != 2)
    throw input_error("simulate: unexpected leg counts");
  const std::size_t sz[8] = {
      g.in.leg(0).size,  g.in.leg(1).size,  g.in.leg(2).size,
      g.in.leg(3).size,  g.out.leg(0).size, g.out.leg(1).size,
      g.out.leg(2).size, g.out.leg(3).size};
  if (f.in.leg(0).size != sz[4] || f.in.leg(1).size != sz[5] ||
      f.out.leg(0).size != sz[2] || f.out.leg(1).size != sz[3])
    throw input_error("simulate: alphabet sizes do not line up");

  LegSystem rin({g.in.leg(0), g.in.leg(1)});
  LegSystem rout({g.out.leg(2), g.out.leg(3)});
  const std::size_t rdim = rin.total_dim() * rout.total_dim();
  Mat r = Mat::Zero(rdim, rdim);

  const Mat& gm = g.choi.entries();
  const Mat& fm = f.choi.entries();
  const std::size_t gdim = static_cast<std::size_t>(gm.rows());
  // Contract the eight inner indices in one pass over the simulator's
  // entries: each entry feeds exactly one result entry.
  std::size_t row[8], col[8];
  for (std::size_t gr = 0; gr < gdim; ++gr) {
    std::size_t rest = gr;
    for (std::size_t k = 8; k-- > 0;) {
      row[k] = rest % sz[k];
      rest /= sz[k];
    }
    for (std::size_t gc = 0; gc < gdim; ++gc) {
      const cplx v = gm(gr, gc);
      if (v == cplx(0.0, 0.0)) continue;
      rest = gc;
      for (std::size_t k = 8; k-- > 0;) {
        col[k] = rest % sz[k];
        rest /= sz[k];
      }
      // inner legs: x1 y1 (positions 4, 5) and a1 b1 (positions 2, 3)
      const std::size_t er =
          ((row[4] * sz[5] + row[5]) * sz[2] + row[2]) * sz[3] + row[3];
      const std::size_t ec =
          ((col[4] * sz[5] + col[5]) * sz[2] + col[2]) * sz[3] + col[3];
      const std::size_t rr =
          ((row[0] * sz[1] + row[1]) * sz[6] + row[6]) * sz[7] + row[7];
      const std::size_t rc =
          ((col[0] * sz[1] + col[1]) * sz[6] + col[6]) * sz[7] + col[7];
      r(rr, rc) += v * fm(er, ec);
    }
  }
  Channel out{rin, rout, LabeledMatrix(rin.concat(rout), std::move(r))};
  return Correlation{std::move(out), ClassTag::unknown};
}

AdjointCheckReport simulate_adjoint_check(const SqnsCorrelation& gamma,
                                          const Correlation& e, double tol) {
  Correlation direct = simulate(gamma, e);
  Channel direct_adj = adjoint(direct.ch);

  // The adjoint simulator swaps roles: outer questions become (A2, B2) and
  // inner answers (X1, Y1), so both leg blocks rotate by two positions.
  Channel ga = adjoint(gamma.ch);
  std::vector<std::string> order;
  for (std::size_t k : {2, 3, 0, 1}) order.push_back(ga.in.leg(k).name);
  LegSystem gin = ga.in.subset(order);
  order.clear();
  for (std::size_t k : {2, 3, 0, 1}) order.push_back(ga.out.leg(k).name);
  LegSystem gout = ga.out.subset(order);
  std::vector<std::string> full = gin.names();
  for (const auto& n : gout.names()) full.push_back(n);
  LabeledMatrix rotated = permute_legs(ga.choi, full);
  SqnsCorrelation gamma_adj{Channel{gin, gout, std::move(rotated)},
                            ClassTag::unknown};
  Correlation e_adj{adjoint(e.ch), ClassTag::unknown};

  Correlation via_adjoints = simulate(gamma_adj, e_adj);
  AdjointCheckReport rep;
  rep.defect = max_abs_diff(via_adjoints.ch.choi.entries(),
                            direct_adj.choi.entries());
  rep.pass = rep.defect <= tol;
  return rep;
}

TransferReport qc_transfer_witness(const QcSqnsData& sim,
                                   const QCorrData& inner, double tol) {
  SqnsCorrelation gamma = build_qc(sim.ex, sim.ey, sim.fa, sim.fb, sim.xi, tol);
  Correlation ecorr = build_qc_corr(inner.e, inner.f, inner.eta, tol);

  TransferReport rep;
  rep.direct = simulate(gamma, ecorr);

  StochOpMatrix p = dot(renamed_stoch(sim.ex, {"x2"}, {"x1"}),
                        renamed_stoch(sim.fa, {"a1"}, {"a2"}), tol);
  StochOpMatrix q = dot(renamed_stoch(sim.ey, {"y2"}, {"y1"}),
                        renamed_stoch(sim.fb, {"b1"}, {"b2"}), tol);
  StochOpMatrix et = compose_reps(renamed_stoch(inner.e, {"x1"}, {"a1"}), p);
  StochOpMatrix ft = compose_reps(renamed_stoch(inner.f, {"y1"}, {"b1"}), q);

  // Composed ancilla order is (inner, simulator) on both sides.
  const std::size_t dk = static_cast<std::size_t>(inner.eta.size());
  const std::size_t dh = static_cast<std::size_t>(sim.xi.size());
  Vec state(dk * dh);
  for (std::size_t k = 0; k < dk; ++k)
    for (std::size_t h = 0; h < dh; ++h)
      state[k * dh + h] = inner.eta[k] * sim.xi[h];

  rep.witnessed = build_qc_corr(et, ft, state, tol);
  rep.defect = max_abs_diff(rep.direct.ch.choi.entries(),
                            rep.witnessed.ch.choi.entries());
  rep.pass = rep.defect <= tol;
  return rep;
}

TransferReport q_transfer_witness(const QSqnsData& sim, const QCorrData& inner,
                                  double tol) {
  SqnsCorrelation gamma = build_quantum(sim.m, sim.n, sim.xi, tol);
  Correlation ecorr = build_q_corr(inner.e, inner.f, inner.eta, tol);

  TransferReport rep;
  rep.direct = simulate(gamma, ecorr);

  StochOpMatrix et = compose_reps(
      renamed_stoch(inner.e, {"x1"}, {"a1"}),
      renamed_stoch(sim.m, {"x2", "a1"}, {"x1", "a2"}));
  StochOpMatrix ft = compose_reps(
      renamed_stoch(inner.f, {"y1"}, {"b1"}),
      renamed_stoch(sim.n, {"y2", "b1"}, {"y1", "b2"}));

  // eta lives on (K_e, K_f), xi on (H_m, H_n); the composed systems use
  // (K_e, H_m) and (K_f, H_n).
  const std::size_t ke = inner.e.ancilla;
  const std::size_t kf = inner.f.ancilla;
  const std::size_t hm = sim.m.ancilla;
  const std::size_t hn = sim.n.ancilla;
  if (static_cast<std::size_t>(inner.eta.size()) != ke * kf ||
      static_cast<std::size_t>(sim.xi.size()) != hm * hn)
    throw input_error("q_transfer_witness: state dimensions do not line up");
  Vec state(ke * hm * kf * hn);
  for (std::size_t a = 0; a < ke; ++a)
    for (std::size_t b = 0; b < hm; ++b)
      for (std::size_t c = 0; c < kf; ++c)
        for (std::size_t d = 0; d < hn; ++d)
          state[((a * hm + b) * kf + c) * hn + d] =
              inner.eta[a * kf + c] * sim.xi[b * hn + d];

  rep.witnessed = build_q_corr(et, ft, state, tol);
  rep.defect = max_abs_diff(rep.direct.ch.choi.entries(),
                            rep.witnessed.ch.choi.entries());
  rep.pass = rep.defect <= tol;
  return rep;
}

TransferReport loc_transfer_witness(const LocSqnsData& sim,
                                    const LocCorrData& inner, double tol) {
  SqnsCorrelation gamma = build_local(sim.weights, sim.components, tol);
  Correlation ecorr = build_local(inner.weights, inner.components, tol);

  TransferReport rep;
  rep.direct = simulate(gamma, ecorr);

  std::vector<double> weights;
  std::vector<std::array<Channel, 2>> comps;
  weights.reserve(sim.weights.size() * inner.weights.size());
  comps.reserve(weights.capacity());
  for (std::size_t j = 0; j < sim.components.size(); ++j) {
    for (std::size_t i = 0; i < inner.components.size(); ++i) {
      const auto& s = sim.components[j];
      const auto& t = inner.components[i];
      Channel a_side = compose(s[2], compose(t[0], s[0]));
      Channel b_side = compose(s[3], compose(t[1], s[1]));
      weights.push_back(sim.weights[j] * inner.weights[i]);
      comps.push_back({std::move(a_side), std::move(b_side)});
    }
  }
  rep.witnessed = build_local(weights, comps, tol);
  rep.defect = max_abs_diff(rep.direct.ch.choi.entries(),
                            rep.witnessed.ch.choi.entries());
  rep.pass = rep.defect <= tol;
  return rep;
}

}  // namespace qns
