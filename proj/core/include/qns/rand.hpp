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

#include <cstdint>
#include <random>
#include <vector>

#include "qns/correlation.hpp"
#include "qns/stochastic.hpp"
#include "qns/tracial.hpp"

namespace qns {

// Deterministic generator: fixed engine and fixed transformations, so a seed
// reproduces the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }
  std::size_t integer(std::size_t n);  // uniform over 0..n-1
  double uniform();                    // [0, 1), 53-bit
  double gaussian();                   // Box-Muller
  cplx cgauss();                       // standard complex gaussian

  Mat gaussian_matrix(std::size_t rows, std::size_t cols);
  // Haar isometry (rows >= cols), QR with the phase fixed so that R has a
  // positive diagonal.
  Mat isometry(std::size_t rows, std::size_t cols);
  Mat unitary(std::size_t n);
  Vec state(std::size_t dim);  // Haar unit vector
  Mat density(std::size_t dim, std::size_t rank);
  // Hermitian projection of the given rank.
  Mat projection(std::size_t dim, std::size_t rank);
  std::vector<double> simplex(std::size_t k);  // probability vector

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// CPTP channel with the given Kraus rank, from a Stinespring isometry.
Channel random_cptp(Rng& rng, LegSystem in, LegSystem out,
                    std::size_t kraus_rank);

// Block isometry with blocks dK x dH; requires A * dK >= X * dH.
BlockIsometry random_block_isometry(Rng& rng, std::size_t X, std::size_t A,
                                    std::size_t dH, std::size_t dK);
// Bi-isometry: a chopped square unitary; requires A | X * dH, and sets
// dK = X * dH / A.
BlockIsometry random_bi_isometry(Rng& rng, std::size_t X, std::size_t A,
                                 std::size_t dH);
TraceRep random_trace_rep(Rng& rng, std::size_t X, std::size_t A,
                          std::size_t dH, bool bi = true);

// Stochastic operator matrix over single legs x ("x", X) and a ("a", A) with
// the given ancilla dimension, built from a random block isometry.
StochOpMatrix random_stoch(Rng& rng, std::size_t X, std::size_t A,
                           std::size_t ancilla);

// Random no-signalling classical table over paired legs: a raw random table
// projected onto the normalization + no-signalling affine subspace, then
// mixed with the uniform table to restore nonnegativity. Works for any even
// leg count (two-leg boxes and four-leg tables alike).
ClassicalTable random_ns_table(Rng& rng, LegSystem in, LegSystem out);
// Raw normalized table, no no-signalling projection.
ClassicalTable random_table(Rng& rng, LegSystem in, LegSystem out);

}  // namespace qns
