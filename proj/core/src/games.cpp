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

#include "qns/games.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <utility>

#include <Eigen/Dense>

#include "qns/channel.hpp"

namespace qns {

namespace {

Vec vec_of(const Mat& m) {
  return Eigen::Map<const Vec>(m.data(), m.size());
}

Mat unvec(const Vec& v, std::size_t rows, std::size_t cols) {
  return Eigen::Map<const Mat>(v.data(), rows, cols);
}

// Orthonormal basis of the span of the columns of b (Frobenius/Euclidean),
// via SVD with a relative rank cutoff.
std::vector<Vec> orthonormal_columns(const Mat& b, double rank_tol) {
  std::vector<Vec> out;
  if (b.cols() == 0) return out;
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = rank_tol * sv(0);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) <= cut) break;
    out.push_back(svd.matrixU().col(k));
  }
  return out;
}

double projection_defect(const LabeledMatrix& p) {
  const Mat& m = p.entries();
  return std::max(hermiticity_gap(m), (m * m - m).cwiseAbs().maxCoeff());
}

// Columns of a projection's range, from its unit eigenvalues.
std::vector<Vec> range_basis(const Mat& p, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es((p + p.adjoint()) / 2.0);
  std::vector<Vec> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (std::abs(lam - 1.0) <= std::sqrt(tol) + 1e-7)
      out.push_back(es.eigenvectors().col(k));
    else if (std::abs(lam) > std::sqrt(tol) + 1e-7)
      throw input_error("range_basis: matrix is not a projection");
  }
  return out;
}

}  // namespace

Hypergraph make_hypergraph(LegSystem in, LegSystem out,
                           const std::vector<Mat>& spanning, double rank_tol) {
  const std::size_t din = in.total_dim();
  const std::size_t dout = out.total_dim();
  Mat b(din * dout, static_cast<Eigen::Index>(spanning.size()));
  for (std::size_t k = 0; k < spanning.size(); ++k) {
    if (spanning[k].rows() != static_cast<Eigen::Index>(dout) ||
        spanning[k].cols() != static_cast<Eigen::Index>(din))
      throw input_error("make_hypergraph: operator shape mismatch");
    b.col(static_cast<Eigen::Index>(k)) = vec_of(spanning[k]);
  }
  Hypergraph h{std::move(in), std::move(out), {}};
  for (const Vec& v : orthonormal_columns(b, rank_tol))
    h.basis.push_back(unvec(v, dout, din));
  return h;
}

std::size_t dim(const Hypergraph& h) { return h.basis.size(); }

Mat project(const Hypergraph& h, const Mat& s) {
  Mat acc = Mat::Zero(s.rows(), s.cols());
  for (const Mat& b : h.basis) acc += (vec_of(b).dot(vec_of(s))) * b;
  return acc;
}

double containment_residual(const Hypergraph& h, const Mat& s) {
  return (s - project(h, s)).norm();
}

Hypergraph complement(const Hypergraph& h) {
  const std::size_t din = h.in.total_dim();
  const std::size_t dout = h.out.total_dim();
  const std::size_t full = din * dout;
  Hypergraph c{h.in, h.out, {}};
  if (h.basis.empty()) {
    for (std::size_t k = 0; k < full; ++k) {
      Vec v = Vec::Zero(full);
      v(static_cast<Eigen::Index>(k)) = 1.0;
      c.basis.push_back(unvec(v, dout, din));
    }
    return c;
  }
  Mat b(full, static_cast<Eigen::Index>(h.basis.size()));
  for (std::size_t k = 0; k < h.basis.size(); ++k)
    b.col(static_cast<Eigen::Index>(k)) = vec_of(h.basis[k]);
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeFullU);
  for (std::size_t k = h.basis.size(); k < full; ++k)
    c.basis.push_back(
        unvec(svd.matrixU().col(static_cast<Eigen::Index>(k)), dout, din));
  return c;
}

Hypergraph conjugate_space(const Hypergraph& h) {
  Hypergraph c{h.out, h.in, {}};
  for (const Mat& b : h.basis) c.basis.push_back(b.adjoint());
  return c;
}

Hypergraph hypergraph_from_projections(const LabeledMatrix& p,
                                       const LabeledMatrix& q, double tol) {
  if (projection_defect(p) > tol || projection_defect(q) > tol)
    throw input_error("hypergraph_from_projections: inputs must be projections");
  std::vector<Vec> pr = range_basis(p.entries(), tol);
  std::vector<Vec> qr = range_basis(q.entries(), tol);
  Hypergraph h{p.legs(), q.legs(), {}};
  for (const Vec& qv : qr)
    for (const Vec& pv : pr) h.basis.push_back(qv * pv.adjoint());
  return h;
}

Hypergraph biarrow(const Hypergraph& h1, const Hypergraph& h2) {
  Hypergraph c1 = complement(h1);
  Hypergraph c2 = complement(h2);
  const std::size_t in1 = h1.in.total_dim();
  const std::size_t in2 = h2.in.total_dim();
  const std::size_t out1 = h1.out.total_dim();
  const std::size_t out2 = h2.out.total_dim();
  LegSystem in = h2.in.with_suffix("~2").concat(h1.in.with_suffix("~1"));
  LegSystem out = h1.out.with_suffix("~1").concat(h2.out.with_suffix("~2"));
  Hypergraph w{std::move(in), std::move(out), {}};
  auto add = [&](const Mat& r, const Mat& t) {
    Mat n(out1 * out2, in2 * in1);
    for (std::size_t p = 0; p < out1; ++p)
      for (std::size_t s = 0; s < out2; ++s)
        for (std::size_t rr = 0; rr < in2; ++rr)
          for (std::size_t q = 0; q < in1; ++q)
            n(p * out2 + s, rr * in1 + q) = r(p, q) * t(s, rr);
    w.basis.push_back(std::move(n));
  };
  for (const Mat& r : h1.basis)
    for (const Mat& t : h2.basis) add(r, t);
  for (const Mat& r : c1.basis)
    for (const Mat& t : c2.basis) add(r, t);
  return w;
}

Hypergraph kraus_space(const Channel& c, double rel_cutoff) {
  return make_hypergraph(c.in, c.out, kraus_of(c, rel_cutoff));
}

ImplicationGame make_implication_game(LegSystem in, LegSystem out,
                                      LabeledMatrix p, LabeledMatrix q,
                                      double tol) {
  if (!p.legs().same_shape(in) || !q.legs().same_shape(out))
    throw input_error("make_implication_game: legs do not match");
  if (projection_defect(p) > tol || projection_defect(q) > tol)
    throw input_error("make_implication_game: p and q must be projections");
  if (p.entries().trace().real() < 0.5)
    throw input_error("make_implication_game: p must be nonzero");
  return ImplicationGame{std::move(in), std::move(out), std::move(p),
                         std::move(q)};
}

RankOneGame make_rank_one_game(LegSystem in, LegSystem out, std::size_t r_dim,
                               Vec xi, Vec gamma, double tol) {
  if (r_dim == 0) throw input_error("make_rank_one_game: r_dim must be positive");
  if (static_cast<std::size_t>(xi.size()) != in.total_dim() * r_dim ||
      static_cast<std::size_t>(gamma.size()) != out.total_dim() * r_dim)
    throw input_error("make_rank_one_game: vector dimensions do not line up");
  const double nx = xi.norm(), ng = gamma.norm();
  if (nx < tol || ng < tol)
    throw input_error("make_rank_one_game: vectors must be nonzero");
  xi /= nx;
  gamma /= ng;
  return RankOneGame{std::move(in), std::move(out), r_dim, std::move(xi),
                     std::move(gamma)};
}

ImplicationGame rank_one_to_implication(const RankOneGame& g) {
  LegSystem in = g.in.concat(LegSystem::single("~ref", g.r_dim));
  LegSystem out = g.out.concat(LegSystem::single("~ref'", g.r_dim));
  LabeledMatrix p(in, g.xi * g.xi.adjoint());
  LabeledMatrix q(out, g.gamma * g.gamma.adjoint());
  return ImplicationGame{std::move(in), std::move(out), std::move(p),
                         std::move(q)};
}

ClassicalGame make_classical_game(LegSystem in, LegSystem out,
                                  std::vector<std::vector<char>> allowed,
                                  std::vector<double> mu) {
  const std::size_t din = in.total_dim();
  const std::size_t dout = out.total_dim();
  if (allowed.size() != din)
    throw input_error("make_classical_game: allowed has wrong input count");
  for (const auto& row : allowed)
    if (row.size() != dout)
      throw input_error("make_classical_game: allowed has wrong output count");
  if (mu.empty()) mu.assign(din, 1.0 / static_cast<double>(din));
  if (mu.size() != din)
    throw input_error("make_classical_game: mu has wrong length");
  double sum = 0.0;
  for (double m : mu) {
    if (m < -1e-12)
      throw input_error("make_classical_game: mu must be nonnegative");
    sum += m;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw input_error("make_classical_game: mu must sum to one");
  return ClassicalGame{std::move(in), std::move(out), std::move(allowed),
                       std::move(mu)};
}

Hypergraph hypergraph_from_classical(const ClassicalGame& g) {
  const std::size_t din = g.in.total_dim();
  const std::size_t dout = g.out.total_dim();
  Hypergraph h{g.in, g.out, {}};
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o)
      if (g.allowed[i][o]) {
        Mat m = Mat::Zero(dout, din);
        m(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i)) = 1.0;
        h.basis.push_back(std::move(m));
      }
  return h;
}

PerfectReport is_perfect(const Correlation& c, const ImplicationGame& g,
                         double gap_tol, double residual_tol) {
  const Channel& ch = c.ch;
  if (ch.in.total_dim() != g.in.total_dim() ||
      ch.out.total_dim() != g.out.total_dim())
    throw input_error("is_perfect: game and correlation sizes do not match");
  LabeledMatrix pin(ch.in, g.p.entries());
  LabeledMatrix image = apply(ch, pin);
  const Mat& q = g.q.entries();
  const Mat qperp =
      Mat::Identity(q.rows(), q.cols()) - q;
  const double trp = g.p.entries().trace().real();

  PerfectReport rep;
  rep.value = (image.entries() * q).trace().real() / trp;
  rep.value_gap = (image.entries() * qperp).trace().real();
  rep.max_kraus_residual = 0.0;
  for (const Mat& m : kraus_of(ch)) {
    const double r = (qperp * m * g.p.entries()).norm();
    rep.max_kraus_residual = std::max(rep.max_kraus_residual, r);
  }
  rep.value_pass = std::abs(rep.value_gap) <= gap_tol;
  rep.kraus_pass = rep.max_kraus_residual <= residual_tol;
  rep.pass = rep.value_pass && rep.kraus_pass;
  return rep;
}

PerfectReport is_perfect(const Correlation& c, const ClassicalGame& g,
                         double gap_tol, double residual_tol) {
  const Channel& ch = c.ch;
  const std::size_t din = g.in.total_dim();
  const std::size_t dout = g.out.total_dim();
  if (ch.in.total_dim() != din || ch.out.total_dim() != dout)
    throw input_error("is_perfect: game and correlation sizes do not match");
  const Mat& choi = ch.choi.entries();

  PerfectReport rep;
  double value = 0.0;
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o)
      if (g.allowed[i][o])
        value += g.mu[i] * choi(i * dout + o, i * dout + o).real();
  rep.value = value;
  rep.value_gap = 1.0 - value;

  std::vector<Mat> kraus = kraus_of(ch);
  for (std::size_t i = 0; i < din; ++i) {
    if (g.mu[i] == 0.0) continue;
    for (const Mat& m : kraus) {
      double sq = 0.0;
      for (std::size_t o = 0; o < dout; ++o)
        if (!g.allowed[i][o])
          sq += std::norm(m(static_cast<Eigen::Index>(o),
                            static_cast<Eigen::Index>(i)));
      rep.max_kraus_residual =
          std::max(rep.max_kraus_residual, std::sqrt(sq));
    }
  }
  rep.value_pass = std::abs(rep.value_gap) <= gap_tol;
  rep.kraus_pass = rep.max_kraus_residual <= residual_tol;
  rep.pass = rep.value_pass && rep.kraus_pass;
  return rep;
}

PerfectReport is_perfect(const Correlation& c, const RankOneGame& g,
                         double gap_tol, double residual_tol) {
  ImplicationGame ext = rank_one_to_implication(g);
  LegSystem rin = LegSystem::single("~ref", g.r_dim);
  LegSystem rout = LegSystem::single("~ref'", g.r_dim);
  Channel extended = tensor(c.ch, identity_channel(rin, rout));
  // tensor() puts legs as (c.in, r_in, c.out, r_out), matching ext's order.
  Correlation lifted{std::move(extended), c.tag};
  return is_perfect(lifted, ext, gap_tol, residual_tol);
}

WitnessReport is_homomorphism_witness(const SqnsCorrelation& c,
                                      const Hypergraph& u1,
                                      const Hypergraph& u2,
                                      double residual_tol) {
  const Channel& ch = c.ch;
  if (ch.in.leg_count() != 4 || ch.out.leg_count() != 4)
    throw input_error("is_homomorphism_witness: needs a two-sided correlation");
  const std::size_t x2y2 = ch.in.leg(0).size * ch.in.leg(1).size;
  const std::size_t a1b1 = ch.in.leg(2).size * ch.in.leg(3).size;
  const std::size_t x1y1 = ch.out.leg(0).size * ch.out.leg(1).size;
  const std::size_t a2b2 = ch.out.leg(2).size * ch.out.leg(3).size;
  if (u1.in.total_dim() != x1y1 || u1.out.total_dim() != a1b1 ||
      u2.in.total_dim() != x2y2 || u2.out.total_dim() != a2b2)
    throw input_error("is_homomorphism_witness: subspace sizes do not match");

  Hypergraph w = biarrow(conjugate_space(u1), u2);
  WitnessReport rep;
  rep.arrow_dim = dim(w);
  std::vector<Mat> kraus = kraus_of(ch);
  rep.kraus_dim = kraus.size();
  for (const Mat& m : kraus) {
    const double n = m.norm();
    if (n == 0.0) continue;
    rep.max_relative_residual =
        std::max(rep.max_relative_residual, containment_residual(w, m) / n);
  }
  rep.pass = rep.max_relative_residual <= residual_tol;
  return rep;
}

VectorSubspace make_vector_subspace(std::size_t n1, std::size_t n2,
                                    const std::vector<Vec>& spanning,
                                    double rank_tol) {
  Mat b(n1 * n2, static_cast<Eigen::Index>(spanning.size()));
  for (std::size_t k = 0; k < spanning.size(); ++k) {
    if (static_cast<std::size_t>(spanning[k].size()) != n1 * n2)
      throw input_error("make_vector_subspace: vector dimension mismatch");
    b.col(static_cast<Eigen::Index>(k)) = spanning[k];
  }
  VectorSubspace s{n1, n2, {}};
  s.basis = orthonormal_columns(b, rank_tol);
  return s;
}

VectorSubspace graph_subspace(
    std::size_t n,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::set<std::pair<std::size_t, std::size_t>> closure;
  for (const auto& [x, y] : edges) {
    if (x >= n || y >= n) throw input_error("graph_subspace: vertex range");
    if (x == y) throw input_error("graph_subspace: loops are not allowed");
    closure.insert({x, y});
    closure.insert({y, x});
  }
  VectorSubspace s{n, n, {}};
  for (const auto& [x, y] : closure) {
    Vec v = Vec::Zero(static_cast<Eigen::Index>(n * n));
    v(static_cast<Eigen::Index>(x * n + y)) = 1.0;
    s.basis.push_back(std::move(v));
  }
  return s;
}

GraphCheckReport quantum_graph_check(const VectorSubspace& u, double tol) {
  if (u.n1 != u.n2)
    throw input_error("quantum_graph_check: needs equal factor dimensions");
  const std::size_t n = u.n1;
  Vec m = Vec::Zero(static_cast<Eigen::Index>(n * n));
  for (std::size_t x = 0; x < n; ++x)
    m(static_cast<Eigen::Index>(x * n + x)) = 1.0;
  m /= m.norm();

  GraphCheckReport rep;
  for (const Vec& b : u.basis)
    rep.skew_violation = std::max(rep.skew_violation, std::abs(m.dot(b)));
  for (const Vec& b : u.basis) {
    Vec f(b.size());
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        f(static_cast<Eigen::Index>(x * n + y)) =
            b(static_cast<Eigen::Index>(y * n + x));
    Vec proj = Vec::Zero(f.size());
    for (const Vec& c : u.basis) proj += c.dot(f) * c;
    rep.flip_violation = std::max(rep.flip_violation, (f - proj).norm());
  }
  rep.pass = rep.skew_violation <= tol && rep.flip_violation <= tol;
  return rep;
}

ImplicationGame graph_game(const VectorSubspace& u, const VectorSubspace& v) {
  LegSystem in({Leg{"gx", u.n1}, Leg{"gy", u.n2}});
  LegSystem out({Leg{"ga", v.n1}, Leg{"gb", v.n2}});
  Mat p = Mat::Zero(in.total_dim(), in.total_dim());
  for (const Vec& b : u.basis) p += b * b.adjoint();
  Mat q = Mat::Zero(out.total_dim(), out.total_dim());
  for (const Vec& b : v.basis) q += b * b.adjoint();
  return make_implication_game(in, out, LabeledMatrix(in, std::move(p)),
                               LabeledMatrix(out, std::move(q)));
}

GraphIsoReport graph_iso_check(const Correlation& c, const VectorSubspace& u,
                               const VectorSubspace& v, double tol) {
  GraphIsoReport rep;
  rep.bicorr = is_bicorrelation(c, tol);
  rep.forward = is_perfect(c, graph_game(u, v));
  rep.backward = is_perfect(adjoint(c), graph_game(v, u));
  rep.pass = rep.bicorr.pass && rep.forward.pass && rep.backward.pass;
  return rep;
}

}  // namespace qns
