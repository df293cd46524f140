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

#include <string>
#include <vector>

#include "qns/channel.hpp"
#include "qns/tensor.hpp"

namespace qns {

// Reserved leg name for the ancilla factor of a stochastic operator matrix.
inline const std::string kAncillaLeg = "@anc";

// Operator matrix E = (E_{x,x',a,a'}) with entries in B(C^d), stored as one
// PSD block matrix over (x legs, a legs, ancilla):
//   block[(x,a,k),(x',a',k')] = E_{x,x',a,a'}[k,k'].
// Stochastic: block >= 0 and sum_a E_{x,x',a,a} = delta_{xx'} I_d.
struct StochOpMatrix {
  LegSystem x_legs;
  LegSystem a_legs;
  std::size_t ancilla = 1;
  LabeledMatrix block;
};

// Structural constructor; entries is indexed over (x legs, a legs, ancilla).
StochOpMatrix make_stoch(LegSystem x_legs, LegSystem a_legs,
                         std::size_t ancilla, Mat entries);

// Entry E_{x,x',a,a'} as a d x d matrix (flat x/a indices).
Mat stoch_entry(const StochOpMatrix& e, std::size_t x, std::size_t xp,
                std::size_t a, std::size_t ap);

struct StochReport {
  bool pass = false;
  double psd_violation = 0.0;
  double hermiticity = 0.0;
  double row_violation = 0.0;  // ||sum_a E_{x,x',a,a} - delta I||_max
  double col_violation = 0.0;  // bistochastic check only
};

StochReport verify_stochastic(const StochOpMatrix& e, double tol = kDefaultTol,
                              bool bistochastic = false);

// max_{entries} ||[E_{x,x',a,a'}, F_{y,y',b,b'}]||_max; ancilla dims must
// match.
double commute_violation(const StochOpMatrix& e, const StochOpMatrix& f);

// Entrywise operator product (E . F)_{(x,y),(x',y'),(a,b),(a',b')} =
// E_{x,x',a,a'} F_{y,y',b,b'}; requires equal ancilla dimension and
// entrywise commutation within commute_tol (throws otherwise).
StochOpMatrix dot(const StochOpMatrix& e, const StochOpMatrix& f,
                  double commute_tol = kDefaultTol);

// Entrywise tensor product; ancilla dimensions multiply.
StochOpMatrix odot(const StochOpMatrix& e, const StochOpMatrix& f);

// Ancilla embedding k -> I_left (x) E_{..} (x) I_right.
StochOpMatrix embed_ancilla(const StochOpMatrix& e, std::size_t left,
                            std::size_t right);

// Compression by an ancilla-space density s (d x d, same index convention as
// slice): the channel with Choi[(x,a),(x',a')] = sum_{k,k'} s[k',k]
// block[(x,a,k),(x',a',k')]. For d = 1 and s = [1] the Choi equals the block.
Channel channel_from(const StochOpMatrix& e, const Mat& s);

struct StrongStochReport {
  bool pass = false;
  StochReport base;
  // Slice of the second x leg at (u,u'), second a leg traced, must be
  // delta_{uu'} times a common marginal; and symmetrically for the first
  // pair. Violations are max deviations over all slices.
  double second_pair_violation = 0.0;
  double first_pair_violation = 0.0;
};

// Strong stochasticity for operator matrices over two index pairs:
// x_legs = (X, Y) and a_legs = (A, B) with pairing (X,A), (Y,B).
StrongStochReport verify_strongly_stochastic(const StochOpMatrix& p,
                                             double tol = kDefaultTol);

// Marginal of a strongly stochastic p on the first pair: the common value of
// the (u,u) slices of the second pair (averaged over u for numerical
// symmetry). With keep_first = false, the marginal on the second pair.
StochOpMatrix strong_marginal(const StochOpMatrix& p, bool keep_first);

// Composition of a stochastic operator matrix e over (X1, A1) on C^{dE} with
// a strongly stochastic p over x_legs (X2, A1), a_legs (X1, A2) on C^{dP}:
//   F_{x2,x2',a2,a2'} = sum_{x1,x1',a1,a1'}
//       E_{x1,x1',a1,a1'} (x) P_{(x2,a1),(x2',a1'),(x1,a2),(x1',a2')},
// a stochastic operator matrix over (X2, A2) on C^{dE dP}.
StochOpMatrix compose_reps(const StochOpMatrix& e, const StochOpMatrix& p);

}  // namespace qns
