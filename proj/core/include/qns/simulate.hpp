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
#include <vector>

#include "qns/correlation.hpp"
#include "qns/stochastic.hpp"

namespace qns {

// Channel simulation. gamma plays over ((X2,Y2,A1,B1) -> (X1,Y1,A2,B2)); e
// plays over ((X1,Y1) -> (A1,B1)). The result acts (X2,Y2) -> (A2,B2):
//   R[((x2,y2),(a2,b2)), primed]
//     = sum over the eight inner indices of
//       Gamma[((x2,y2,a1,b1),(x1,y1,a2,b2)), primed]
//       * E[((x1,y1),(a1,b1)), primed].
// Purely linear: no correlation-class checks are performed here, so the map
// also applies to adjoints. The result keeps gamma's outer leg names and
// carries tag unknown; class membership of simulated correlations is
// certified separately by the transfer witnesses below.
Correlation simulate(const SqnsCorrelation& gamma, const Correlation& e);

struct AdjointCheckReport {
  bool pass = false;
  double defect = 0.0;
};

// Checks simulate(gamma*, e*) == simulate(gamma, e)* entrywise.
AdjointCheckReport simulate_adjoint_check(const SqnsCorrelation& gamma,
                                          const Correlation& e,
                                          double tol = kDefaultTol);

// Data underlying builder-certified correlations, used to construct transfer
// witnesses.
struct QcSqnsData {
  StochOpMatrix ex, ey, fa, fb;  // commuting family on a shared ancilla
  Vec xi;
};
struct QSqnsData {
  StochOpMatrix m, n;  // strongly stochastic, separate ancillas
  Vec xi;              // on the tensor product of the two ancillas
};
struct LocSqnsData {
  std::vector<double> weights;
  // per component: channels on the X, Y, A, B legs in that order
  std::vector<std::array<Channel, 4>> components;
};
struct QCorrData {
  StochOpMatrix e, f;  // commuting (qc) or separate-ancilla (q) pair
  Vec eta;
};
struct LocCorrData {
  std::vector<double> weights;
  std::vector<std::array<Channel, 2>> components;  // A-side, B-side
};

struct TransferReport {
  bool pass = false;
  double defect = 0.0;     // max entry difference, direct vs witnessed
  Correlation direct;      // simulate(build(sim), build(inner))
  Correlation witnessed;   // built from the transferred data
};

// Transfer within the quantum-commuting class: the simulated correlation is
// reproduced by the composed representations
//   E~ = compose(e, ex (.) fa),  F~ = compose(f, ey (.) fb)
// in state eta (x) xi.
TransferReport qc_transfer_witness(const QcSqnsData& sim,
                                   const QCorrData& inner,
                                   double tol = kDefaultTol);

// Transfer within the quantum class; ancilla order of the composed state is
// (K_e, H_m, K_f, H_n).
TransferReport q_transfer_witness(const QSqnsData& sim, const QCorrData& inner,
                                  double tol = kDefaultTol);

// Transfer within the local class: components compose side by side and
// weights multiply.
TransferReport loc_transfer_witness(const LocSqnsData& sim,
                                    const LocCorrData& inner,
                                    double tol = kDefaultTol);

}  // namespace qns
