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
#include <vector>

#include <Eigen/Dense>

#include "qns/correlation.hpp"
#include "qns/stochastic.hpp"

namespace qns {

// Block isometry v: C^X (x) C^H -> C^A (x) C^K, stored as blocks v[a][x]
// of shape dK x dH with sum_a v[a][x]* v[a][x'] = delta_{x x'} I_H.
struct BlockIsometry {
  std::size_t X = 0;
  std::size_t A = 0;
  std::size_t dH = 0;
  std::size_t dK = 0;
  std::vector<std::vector<Mat>> v;  // v[a][x]
};

BlockIsometry make_block_isometry(std::size_t X, std::size_t A,
                                  std::size_t dH, std::size_t dK,
                                  std::vector<std::vector<Mat>> v);

// max over (x,x') of || sum_a v[a][x]* v[a][x'] - delta I ||_max.
double isometry_violation(const BlockIsometry& b);
// max over (a,a') of || sum_x v[a][x] v[a'][x]* - delta I ||_max.
// Zero together with isometry_violation makes b a bi-isometry
// (requires X * dH == A * dK).
double co_isometry_violation(const BlockIsometry& b);

// Generator system e(x,x',a,a') = v[a][x]* v[a'][x'] on C^H, packaged as a
// stochastic operator matrix with ancilla dimension dH.
StochOpMatrix generators_of(const BlockIsometry& b);

// Trace representation: block isometry plus a state tau = sum_k w_k <.>_kk
// on the ancilla algebra.
struct TraceRep {
  BlockIsometry iso;
  Eigen::VectorXd weights;  // over dH, nonnegative, sums to one
};

TraceRep make_trace_rep(BlockIsometry iso, Eigen::VectorXd weights);
TraceRep make_trace_rep(BlockIsometry iso);  // uniform weights

cplx weighted_trace(const Eigen::VectorXd& w, const Mat& m);
// max |tau(uv) - tau(vu)| over pairs of generator entries; zero certifies
// that tau is tracial on the generated algebra up to degree two.
double traciality_violation(const StochOpMatrix& gens,
                            const Eigen::VectorXd& w);

// Two-party correlation with Choi
//   C[((x,y),(a,b)), ((x',y'),(a',b'))] = tau(e(x,x',a,a') e(y',y,b',b)).
// No-signalling for any generator system; trace preservation follows from
// the isometry relation.
Correlation correlation_from_generators(const StochOpMatrix& gens,
                                        const Eigen::VectorXd& w,
                                        ClassTag tag = ClassTag::ns);
Correlation tracial_correlation(const TraceRep& r);

// Four-party correlation from generator systems on the question side
// (alphabets X2 -> X1) and the answer side (A1 -> A2):
//   C = tau_X(eX(x2,x2',x1,x1') eX(y2',y2,y1',y1))
//       * tau_A(eA(a1,a1',a2,a2') eA(b1',b1,b2',b2)).
// Strongly no-signalling for any representations.
SqnsCorrelation jointly_tracial_correlation(const TraceRep& rx,
                                            const TraceRep& ra);

struct ConcurrencyReport {
  bool pass = false;
  double violation = 0.0;
};

// Concurrency: the channel maps the normalized maximally entangled state on
// the input pair to the one on the output pair. Requires two input legs of
// equal size and two output legs of equal size.
ConcurrencyReport is_concurrent(const Channel& c, double tol = kDefaultTol);

struct RelationsReport {
  bool pass = false;
  std::array<double, 5> violation{};  // see verify_cxyab_relations
  double max_violation = 0.0;
};

// Defining relations of the four-index generator system p(x,y,a,b over
// x_legs (X,Y), a_legs (A,B)):
//   [0] sum_a p((x,y),(x,y'),(a,b),(a,b')) independent of x,
//   [1] sum_a p((x,y),(x',y'),(a,b),(a,b')) = 0 for x != x',
//   [2] sum_b p((x,y),(x',y),(a,b),(a',b)) independent of y,
//   [3] sum_b p((x,y),(x',y'),(a,b),(a',b)) = 0 for y != y',
//   [4] sum_{a,b} p((x,y),(x',y'),(a,b),(a,b)) = delta delta I.
RelationsReport verify_cxyab_relations(const StochOpMatrix& p,
                                       double tol = kDefaultTol);

struct SimulatedTraceReport {
  bool pass = false;
  double defect = 0.0;  // max entry difference, simulated vs direct
  ConcurrencyReport concurrency;
  QnsReport qns;
  SqnsCorrelation joint;
  Correlation inner;
  Correlation simulated;
  Correlation direct;
};

// Plays a tracial correlation through a jointly tracial one and compares
// against the correlation of the composed trace representation on
// H_X (x) H_A (x) H_inner. Inner alphabets must match (X1 = rx.A,
// A1 = ra.X).
SimulatedTraceReport simulated_trace(const TraceRep& rx, const TraceRep& ra,
                                     const TraceRep& inner,
                                     double tol = kDefaultTol);

}  // namespace qns
