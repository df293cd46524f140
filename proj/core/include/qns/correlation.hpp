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
#include <string>
#include <vector>

#include "qns/channel.hpp"
#include "qns/stochastic.hpp"
#include "qns/tensor.hpp"

namespace qns {

// Provenance tag recording which builder produced a correlation. Class
// membership (local / quantum / quantum commuting) is not decidable from the
// Choi matrix alone, so it is never inferred, only carried.
enum class ClassTag { unknown, ns, sns, loc_built, q_built, qc_built };

std::string to_string(ClassTag tag);
ClassTag class_tag_from_string(const std::string& s);

// Bipartite correlation: channel M_{XY} -> M_{AB}. Input legs are (X, Y) and
// output legs (A, B), paired positionally: (X, A) is one party, (Y, B) the
// other.
struct Correlation {
  Channel ch;
  ClassTag tag = ClassTag::unknown;
};

// Two-sided correlation: channel M_{X2 Y2 A1 B1} -> M_{X1 Y1 A2 B2}. Leg
// roles are positional: input legs (X2, Y2, A1, B1), output legs
// (X1, Y1, A2, B2).
struct SqnsCorrelation {
  Channel ch;
  ClassTag tag = ClassTag::unknown;
};

Correlation make_correlation(Channel ch, ClassTag tag = ClassTag::unknown);
SqnsCorrelation make_sqns(Channel ch, ClassTag tag = ClassTag::unknown);

Correlation adjoint(const Correlation& c);
SqnsCorrelation adjoint(const SqnsCorrelation& c);

// Per-pair no-signalling violations of a channel whose input and output leg
// counts agree (pair k = input leg k with output leg k): summing output leg k
// diagonally must give delta_{u u'} times a value independent of the input
// leg k index. One number per pair; diagonal deviations are measured against
// the mean over the pair's diagonal.
std::vector<double> no_signalling_violations(const Channel& ch);

struct QnsReport {
  bool pass = false;
  ChannelReport channel;
  double a_side = 0.0;  // pair (X, A)
  double b_side = 0.0;  // pair (Y, B)
  double max_violation = 0.0;
};

QnsReport is_qns(const Correlation& c, double tol = kDefaultTol);

struct SqnsReport {
  bool pass = false;
  ChannelReport channel;
  std::array<double, 4> pair_violation{};  // (X2,X1), (Y2,Y1), (A1,A2), (B1,B2)
  double max_violation = 0.0;
};

SqnsReport is_sqns(const SqnsCorrelation& c, double tol = kDefaultTol);

// Convex combination of product channels, two-leg variant: components are
// (Phi_A : X -> A, Phi_B : Y -> B).
Correlation build_local(const std::vector<double>& weights,
                        const std::vector<std::array<Channel, 2>>& components,
                        double tol = kDefaultTol);

// Convex combination of product channels, two-sided variant: components are
// (Phi_X : X2 -> X1, Phi_Y : Y2 -> Y1, Phi_A : A1 -> A2, Phi_B : B1 -> B2).
SqnsCorrelation build_local(
    const std::vector<double>& weights,
    const std::vector<std::array<Channel, 4>>& components,
    double tol = kDefaultTol);

// Two-sided quantum correlation from strongly stochastic operator matrices
// m over x_legs (X2, A1), a_legs (X1, A2) on C^{dm} and n over (Y2, B1),
// (Y1, B2) on C^{dn}, compressed by the unit vector xi in C^{dm dn}.
SqnsCorrelation build_quantum(const StochOpMatrix& m, const StochOpMatrix& n,
                              const Vec& xi, double tol = kDefaultTol);

// Two-sided quantum commuting correlation from four stochastic operator
// matrices on a common ancilla space with mutually commuting entries:
// ex over (X2)->(X1), ey over (Y2)->(Y1), fa over (A1)->(A2),
// fb over (B1)->(B2), compressed by the unit vector xi.
SqnsCorrelation build_qc(const StochOpMatrix& ex, const StochOpMatrix& ey,
                         const StochOpMatrix& fa, const StochOpMatrix& fb,
                         const Vec& xi, double tol = kDefaultTol);

// Two-leg variants: e over (X)->(A), f over (Y)->(B).
Correlation build_q_corr(const StochOpMatrix& e, const StochOpMatrix& f,
                         const Vec& eta, double tol = kDefaultTol);
Correlation build_qc_corr(const StochOpMatrix& e, const StochOpMatrix& f,
                          const Vec& eta, double tol = kDefaultTol);

// Marginal channel of a two-sided correlation. x_side = true: the map
// M_{X2 Y2} -> M_{X1 Y1}, rho -> Tr_{A2 B2} Gamma(rho (x) sigma), with sigma
// a state on (A1, B1). x_side = false: M_{A1 B1} -> M_{A2 B2} anchored on a
// state over (X2, Y2). Throws if the result depends on the anchor state
// beyond tol (the input is then not SQNS).
Channel marginal(const SqnsCorrelation& c, bool x_side,
                 const LabeledMatrix& sigma, double tol = kDefaultTol);

struct BicorrReport {
  bool pass = false;
  double forward_violation = 0.0;
  double unital_violation = 0.0;
  double adjoint_violation = 0.0;
};

// Unital, no-signalling in both directions (the adjoint is again a
// correlation). Requires equal input and output dimensions.
BicorrReport is_bicorrelation(const Correlation& c, double tol = kDefaultTol);
BicorrReport is_bicorrelation(const SqnsCorrelation& c,
                              double tol = kDefaultTol);

// Classical behaviour table p(out | in) over paired leg systems.
struct ClassicalTable {
  LegSystem in;
  LegSystem out;
  std::vector<std::vector<double>> p;  // p[in_flat][out_flat]
};

ClassicalTable make_table(LegSystem in, LegSystem out,
                          std::vector<std::vector<double>> p);

// Entries >= 0 and rows normalized; returns max deviation.
double table_normalization_violation(const ClassicalTable& t);
// Per-pair classical no-signalling violations (same pairing and the same
// mean-based diagonal measure as no_signalling_violations).
std::vector<double> table_ns_violations(const ClassicalTable& t);
bool verify_table_ns(const ClassicalTable& t, double tol = kDefaultTol);

// Diagonal-Choi embeddings.
Correlation classical_embed_corr(const ClassicalTable& t,
                                 ClassTag tag = ClassTag::unknown);
SqnsCorrelation classical_embed_sqns(const ClassicalTable& t,
                                     ClassTag tag = ClassTag::unknown);

}  // namespace qns
