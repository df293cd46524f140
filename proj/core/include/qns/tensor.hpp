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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qns {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Default absolute tolerance for verification predicates.
inline constexpr double kDefaultTol = 1e-9;

// Thrown on malformed inputs (shape mismatches, bad leg names, parse errors).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A named tensor factor of a composite space.
struct Leg {
  std::string name;
  std::size_t size = 0;
};

inline bool operator==(const Leg& a, const Leg& b) {
  return a.name == b.name && a.size == b.size;
}

// Ordered list of legs labelling one side of a matrix. Flat indices are
// row-major over the listed order: leg 0 is most significant.
class LegSystem {
 public:
  LegSystem() = default;
  explicit LegSystem(std::vector<Leg> legs);
  static LegSystem single(const std::string& name, std::size_t size);

  std::size_t leg_count() const { return legs_.size(); }
  std::size_t total_dim() const { return dim_; }
  const Leg& leg(std::size_t i) const { return legs_.at(i); }
  const std::vector<Leg>& legs() const { return legs_; }
  std::vector<std::string> names() const;

  bool has(const std::string& name) const;
  // Position of a named leg; throws input_error if absent.
  std::size_t position(const std::string& name) const;

  std::size_t flat(const std::vector<std::size_t>& multi) const;
  std::vector<std::size_t> multi(std::size_t flat) const;

  // Concatenation; leg names must stay unique.
  LegSystem concat(const LegSystem& other) const;
  // Sub-system consisting of the named legs, in the listed order.
  LegSystem subset(const std::vector<std::string>& names) const;
  // Same names, same sizes, same order.
  bool same_shape(const LegSystem& other) const;
  // Same sizes in order (names may differ).
  bool same_sizes(const LegSystem& other) const;
  // Copy with every leg renamed through the supplied suffix.
  LegSystem with_suffix(const std::string& suffix) const;
  // Copy with legs renamed positionally to the given names.
  LegSystem renamed(const std::vector<std::string>& names) const;

 private:
  std::vector<Leg> legs_;
  std::size_t dim_ = 1;
};

bool operator==(const LegSystem& a, const LegSystem& b);

// Square matrix over a composite space with named legs. Row and column
// indices run over the same leg system.
class LabeledMatrix {
 public:
  LabeledMatrix() = default;
  LabeledMatrix(LegSystem legs, Mat entries);

  static LabeledMatrix zero(const LegSystem& legs);
  static LabeledMatrix identity(const LegSystem& legs);

  const LegSystem& legs() const { return legs_; }
  const Mat& entries() const { return m_; }
  Mat& entries() { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

 private:
  LegSystem legs_;
  Mat m_;
};

// Matrix unit eps_{row,col} over a leg system (flat indices).
LabeledMatrix matrix_unit(const LegSystem& legs, std::size_t row,
                          std::size_t col);

// Unnormalized maximally entangled matrix J over two equal-size legs:
// J = sum_{x,x'} eps_{xx'} (x) eps_{xx'}.
LabeledMatrix max_entangled(const Leg& first, const Leg& second);
// J / size (the state-normalized version, trace one).
LabeledMatrix max_entangled_normalized(const Leg& first, const Leg& second);
// Classical counterpart: sum_x eps_{xx} (x) eps_{xx}.
LabeledMatrix classical_entangled(const Leg& first, const Leg& second);

// Kronecker product; result legs are a's legs followed by b's legs.
LabeledMatrix tensor_product(const LabeledMatrix& a, const LabeledMatrix& b);

// Trace out the named legs; result keeps the remaining legs in order.
LabeledMatrix partial_trace(const LabeledMatrix& m,
                            const std::vector<std::string>& traced);

// Slice map over the named legs: with s indexed over that sub-system,
//   slice(m, L, s) = sum_{u,u'} s[u',u] * m[(u,.),(u',.)],
// i.e. s = eps_{u'u} extracts the (u,u') block. Result drops the legs in L.
LabeledMatrix slice(const LabeledMatrix& m, const std::vector<std::string>& legs,
                    const Mat& s);
LabeledMatrix slice(const LabeledMatrix& m, const std::string& leg,
                    const Mat& s);

// Reorder legs; `order` must be a permutation of the existing names.
LabeledMatrix permute_legs(const LabeledMatrix& m,
                           const std::vector<std::string>& order);

// Bilinear trace pairing <a,b> = Tr(a b^t) = sum_{ij} a[i,j] b[i,j].
cplx hs_inner(const LabeledMatrix& a, const LabeledMatrix& b);
cplx hs_inner(const Mat& a, const Mat& b);

// max_ij |m[i,j] - conj(m[j,i])|.
double hermiticity_gap(const Mat& m);
// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const Mat& m);
// PSD test: requires hermiticity gap <= tol, then lambda_min >= -tol * dim.
// Throws input_error when the hermiticity gap exceeds sqrt(tol).
bool is_psd(const LabeledMatrix& m, double tol = kDefaultTol);
bool is_psd(const Mat& m, double tol = kDefaultTol);

// max_ij |a[i,j] - b[i,j]|; shapes must agree.
double max_abs_diff(const Mat& a, const Mat& b);

}  // namespace qns
