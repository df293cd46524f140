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

#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "qns/correlation.hpp"

namespace qns {

// Operator subspace of maps C^in -> C^out, held as an orthonormal basis
// under the Frobenius inner product Tr(S T*). (The bilinear trace pairing
// admits isotropic operators, so bases are orthonormalized sesquilinearly;
// for the product and matrix-unit bases used below the two notions agree.)
struct Hypergraph {
  LegSystem in;
  LegSystem out;
  std::vector<Mat> basis;
};

// Orthonormalizes a spanning set (SVD; directions with singular value
// <= rank_tol * s_max are dropped).
Hypergraph make_hypergraph(LegSystem in, LegSystem out,
                           const std::vector<Mat>& spanning,
                           double rank_tol = 1e-10);

std::size_t dim(const Hypergraph& h);
Mat project(const Hypergraph& h, const Mat& s);
// ||s - project(h, s)||_F.
double containment_residual(const Hypergraph& h, const Mat& s);
// Orthocomplement within the full operator space.
Hypergraph complement(const Hypergraph& h);
// Adjoint space {S* : S in h}; input and output legs swap. This realizes
// entrywise conjugation of the underlying vector subspace.
Hypergraph conjugate_space(const Hypergraph& h);

// Subspace spanned by {q p* : p in ran P, q in ran Q} for projections P, Q;
// equivalently {S : Q S P = S}.
Hypergraph hypergraph_from_projections(const LabeledMatrix& p,
                                       const LabeledMatrix& q,
                                       double tol = kDefaultTol);

// Arrow space between operator subspaces: basis operators
// N[(p,s),(r,q)] = R[p,q] T[s,r] over (R,T) in h1 x h2 and h1perp x h2perp;
// maps C^{h2.in (x) h1.in} -> C^{h1.out (x) h2.out}. Result legs carry ~1/~2
// suffixes so equal inputs do not collide.
Hypergraph biarrow(const Hypergraph& h1, const Hypergraph& h2);

// Span of the Kraus operators of a channel.
Hypergraph kraus_space(const Channel& c, double rel_cutoff = 1e-10);

// Implication game: win iff inputs supported on ran P lead to outputs
// supported on ran Q.
struct ImplicationGame {
  LegSystem in;
  LegSystem out;
  LabeledMatrix p;
  LabeledMatrix q;
};

ImplicationGame make_implication_game(LegSystem in, LegSystem out,
                                      LabeledMatrix p, LabeledMatrix q,
                                      double tol = kDefaultTol);

// Synchronous-style rank-one game: P = xi xi*, Q = gamma gamma* over the
// input/output legs extended by a reference leg of dimension r_dim;
// strategies are tested as Gamma (x) id_R.
struct RankOneGame {
  LegSystem in;
  LegSystem out;
  std::size_t r_dim = 1;
  Vec xi;     // over in (x) R
  Vec gamma;  // over out (x) R
};

RankOneGame make_rank_one_game(LegSystem in, LegSystem out, std::size_t r_dim,
                               Vec xi, Vec gamma, double tol = kDefaultTol);
// The implication game over the extended legs that the rank-one game tests.
ImplicationGame rank_one_to_implication(const RankOneGame& g);

// Classical game: allowed set over (in, out) flat indices, with an input
// distribution mu (uniform by default).
struct ClassicalGame {
  LegSystem in;
  LegSystem out;
  std::vector<std::vector<char>> allowed;  // [in][out] in {0,1}
  std::vector<double> mu;                  // over in, sums to one
};

ClassicalGame make_classical_game(LegSystem in, LegSystem out,
                                  std::vector<std::vector<char>> allowed,
                                  std::vector<double> mu = {});

// Game subspace spanned by the matrix units of allowed (input, output) pairs.
Hypergraph hypergraph_from_classical(const ClassicalGame& g);

struct PerfectReport {
  bool pass = false;
  double value = 0.0;      // Tr(Phi(P) Q) / Tr(P), or mu-weighted win prob
  double value_gap = 0.0;  // Tr(Phi(P) Qperp), or 1 - value
  double max_kraus_residual = 0.0;
  bool value_pass = false;
  bool kraus_pass = false;
};

// Perfectness thresholds: gap_tol on the value gap, residual_tol on each
// compressed Kraus residual ||Qperp M_j P||_F. The two tests are linked by
// Tr(Phi(P) Qperp) = sum_j ||Qperp M_j P||_F^2.
inline constexpr double kGapTol = 1e-8;
inline constexpr double kKrausResidualTol = 1e-4;

PerfectReport is_perfect(const Correlation& c, const ImplicationGame& g,
                         double gap_tol = kGapTol,
                         double residual_tol = kKrausResidualTol);
PerfectReport is_perfect(const Correlation& c, const ClassicalGame& g,
                         double gap_tol = kGapTol,
                         double residual_tol = kKrausResidualTol);
PerfectReport is_perfect(const Correlation& c, const RankOneGame& g,
                         double gap_tol = kGapTol,
                         double residual_tol = kKrausResidualTol);

struct WitnessReport {
  bool pass = false;
  double max_relative_residual = 0.0;  // over Kraus-space basis elements
  std::size_t kraus_dim = 0;
  std::size_t arrow_dim = 0;
};

// Does the two-sided correlation transfer perfect strategies of the game
// with subspace u1 to perfect strategies of the game with subspace u2?
// Sufficient criterion: every Kraus operator of c lies in
// biarrow(conjugate(u1), u2).
WitnessReport is_homomorphism_witness(const SqnsCorrelation& c,
                                      const Hypergraph& u1,
                                      const Hypergraph& u2,
                                      double residual_tol = kKrausResidualTol);

// Vector subspace of C^{n1} (x) C^{n2}, orthonormal basis.
struct VectorSubspace {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::vector<Vec> basis;
};

VectorSubspace make_vector_subspace(std::size_t n1, std::size_t n2,
                                    const std::vector<Vec>& spanning,
                                    double rank_tol = 1e-10);

// Edge subspace span{e_x (x) e_y : x ~ y} of a classical graph given by its
// (irreflexive, symmetric) edge list.
VectorSubspace graph_subspace(std::size_t n,
                              const std::vector<std::pair<std::size_t,
                                                          std::size_t>>& edges);

struct GraphCheckReport {
  bool pass = false;
  double skew_violation = 0.0;  // overlap with sum_x e_x (x) e_x
  double flip_violation = 0.0;  // distance of the flip image from the space
};

// Quantum graph test: skew (avoids the maximally entangled vector) and
// invariant under the flip.
GraphCheckReport quantum_graph_check(const VectorSubspace& u,
                                     double tol = kDefaultTol);

// Homomorphism game between quantum graphs: implication game with P, Q the
// projections onto the edge spaces.
ImplicationGame graph_game(const VectorSubspace& u, const VectorSubspace& v);

struct GraphIsoReport {
  bool pass = false;
  BicorrReport bicorr;
  PerfectReport forward;
  PerfectReport backward;
};

// Isomorphism-style check: c is a bicorrelation, perfect for the game u -> v,
// and its adjoint is perfect for v -> u.
GraphIsoReport graph_iso_check(const Correlation& c, const VectorSubspace& u,
                               const VectorSubspace& v,
                               double tol = kDefaultTol);

}  // namespace qns
