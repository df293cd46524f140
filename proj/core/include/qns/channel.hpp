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

#include <map>
#include <string>
#include <vector>

#include "qns/tensor.hpp"

namespace qns {

// Completely positive map M_in -> M_out held by its Choi matrix over the
// concatenated leg system (in legs, then out legs):
//   choi[(x,a),(x',a')] = Phi(eps_{xx'})[a,a'].
// All leg names across in and out are distinct.
struct Channel {
  LegSystem in;
  LegSystem out;
  LabeledMatrix choi;
};

// Structural constructor: checks that choi's legs are exactly in ++ out.
Channel make_channel(LegSystem in, LegSystem out, LabeledMatrix choi);

struct ChannelReport {
  bool pass = false;
  double psd_violation = 0.0;  // max(0, -lambda_min(choi))
  double tp_violation = 0.0;   // max |Tr_out(choi) - I|
  double hermiticity = 0.0;
};

// CPTP verification of the Choi matrix.
ChannelReport verify_channel(const Channel& c, double tol = kDefaultTol);

// Kraus operators are out_dim x in_dim; Phi(S) = sum_j M_j S M_j^*.
Channel channel_from_kraus(const std::vector<Mat>& kraus, LegSystem in,
                           LegSystem out);
// Eigen-decomposition of the Choi matrix; eigenpairs with
// lambda <= rel_cutoff * lambda_max are dropped.
std::vector<Mat> kraus_of(const Channel& c, double rel_cutoff = 1e-10);

// Apply to a state/operator over the channel's input legs (names must match).
LabeledMatrix apply(const Channel& c, const LabeledMatrix& rho);

// Adjoint with respect to the trace pairing <S,T> = Tr(S T^t):
// the Choi matrix is reindexed with output legs first.
Channel adjoint(const Channel& c);

// Parallel composition; leg names must stay globally unique.
Channel tensor(const Channel& a, const Channel& b);

// Sequential composition outer . inner; inner's output sizes must match
// outer's input sizes (names may differ).
Channel compose(const Channel& outer, const Channel& inner);

// Identity map; in and out must have equal sizes and disjoint names.
Channel identity_channel(LegSystem in, LegSystem out);

// Conjugation S -> U S U^*; u maps the input space to the output space.
Channel unitary_channel(const Mat& u, LegSystem in, LegSystem out);

// S -> Tr(S) I / dim(out).
Channel depolarizing_channel(LegSystem in, LegSystem out);

// Channel with diagonal Choi from a classical kernel p(a|x) >= 0,
// sum_a p(a|x) = 1; table is indexed [x][a] over flat leg indices.
Channel classical_embed(const std::vector<std::vector<double>>& table,
                        LegSystem in, LegSystem out);

// Dephasing compression: keeps only choi[(x,a),(x,a)]; the result is the
// classical kernel of the channel, embedded back as a diagonal Choi.
Channel delta_project(const Channel& c);

// Extract p(a|x) = choi[(x,a),(x,a)] (real parts; imaginary parts of a valid
// Choi diagonal vanish).
std::vector<std::vector<double>> classical_kernel(const Channel& c);

// Phi(I_in) == I_out within tol.
bool is_unital(const Channel& c, double tol = kDefaultTol);

// Copy with legs renamed via the map old-name -> new-name (missing names are
// kept).
Channel rename_legs(const Channel& c,
                    const std::map<std::string, std::string>& renames);

}  // namespace qns
