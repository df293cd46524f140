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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qns/games.hpp"

namespace qns {

// Normalized game value of a strategy: Tr(Phi(P) Q) / Tr(P) for implication
// games, the mu-weighted winning probability for classical games.
double evaluate_value(const Correlation& c, const ImplicationGame& g);
double evaluate_value(const Correlation& c, const ClassicalGame& g);

// Optimal classical value over deterministic strategies (exhaustive; the
// strategy count |A|^|X| * |B|^|Y| must stay below the guard).
double loc_value_classical(const ClassicalGame& g,
                           std::size_t enumeration_guard = 10000000);

struct SolverOptions {
  double tol_feas = 1e-7;   // feasibility certificate threshold
  double tol_value = 1e-4;  // bisection bracket width
  int max_iter = 20000;     // Dykstra iterations per feasibility probe
  int max_bisect = 60;
};

struct ValueResult {
  double value = 0.0;  // certified from below by the witness
  double lo = 0.0;
  double hi = 0.0;
  std::string status;  // "converged" or "max_bisect"
  int probes = 0;      // feasibility problems solved
  Correlation witness;
};

// Supremum of the game value over no-signalling strategies, by bisection
// over Dykstra feasibility probes (alternating projections onto the PSD
// cone, the affine trace-preservation + no-signalling subspace, and the
// objective halfspace). Infeasibility is declared when the probe fails to
// reach tol_feas within max_iter; values are certified from below by the
// returned witness. Classical games run on the diagonal restriction, which
// is value-preserving for diagonal objectives.
ValueResult ns_value(const ImplicationGame& g, const SolverOptions& opt = {});
ValueResult ns_value(const ClassicalGame& g, const SolverOptions& opt = {});

// Sparse SDPA (.dat-s) export of the no-signalling value program in the
// standard real-symmetric embedding [[Re, -Im], [Im, Re]]. The dual optimum
// of the exported problem equals Tr(P) times the normalized game value. One
// constraint matrix is emitted per real equation; their number equals the
// number of complex equations in the uncanonicalized enumeration
// (trace preservation alone contributes |in|^2).
void export_sdpa(const ImplicationGame& g, const std::string& path);
void export_sdpa(const ClassicalGame& g, const std::string& path);

// Minimal .dat-s reader for cross-checking exports: single PSD block,
// objective and constraint evaluation on a given symmetric matrix.
struct SdpaProblem {
  std::size_t m = 0;           // number of constraints
  std::size_t block_size = 0;  // single block
  std::vector<double> rhs;     // length m
  // entries[k] holds (i, j, value) triplets of F_k, k = 0..m (0 = objective)
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, double>>>
      entries;
};

SdpaProblem read_sdpa(const std::string& path);
double sdpa_objective(const SdpaProblem& p, const Eigen::MatrixXd& y);
// max_i |Tr(F_i Y) - rhs_i|.
double sdpa_constraint_violation(const SdpaProblem& p,
                                 const Eigen::MatrixXd& y);
// [[Re, -Im], [Im, Re]] of a complex matrix.
Eigen::MatrixXd real_embedding(const Mat& c);

}  // namespace qns
