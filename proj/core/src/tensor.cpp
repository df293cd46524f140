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

#include "qns/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

namespace qns {

LegSystem::LegSystem(std::vector<Leg> legs) : legs_(std::move(legs)) {
  std::set<std::string> seen;
  for (const Leg& l : legs_) {
    if (l.name.empty()) throw input_error("leg name must be non-empty");
    if (l.size == 0) throw input_error("leg size must be positive: " + l.name);
    if (!seen.insert(l.name).second)
      throw input_error("duplicate leg name: " + l.name);
    dim_ *= l.size;
  }
}

LegSystem LegSystem::single(const std::string& name, std::size_t size) {
  return LegSystem({Leg{name, size}});
}

std::vector<std::string> LegSystem::names() const {
  std::vector<std::string> out;
  out.reserve(legs_.size());
  for (const Leg& l : legs_) out.push_back(l.name);
  return out;
}

bool LegSystem::has(const std::string& name) const {
  return std::any_of(legs_.begin(), legs_.end(),
                     [&](const Leg& l) { return l.name == name; });
}

std::size_t LegSystem::position(const std::string& name) const {
  for (std::size_t i = 0; i < legs_.size(); ++i)
    if (legs_[i].name == name) return i;
  throw input_error("no such leg: " + name);
}

std::size_t LegSystem::flat(const std::vector<std::size_t>& multi) const {
  if (multi.size() != legs_.size())
    throw input_error("multi-index arity mismatch");
  std::size_t f = 0;
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    if (multi[i] >= legs_[i].size)
      throw input_error("multi-index out of range on leg " + legs_[i].name);
    f = f * legs_[i].size + multi[i];
  }
  return f;
}

std::vector<std::size_t> LegSystem::multi(std::size_t flat) const {
  if (flat >= dim_) throw input_error("flat index out of range");
  std::vector<std::size_t> m(legs_.size());
  for (std::size_t i = legs_.size(); i-- > 0;) {
    m[i] = flat % legs_[i].size;
    flat /= legs_[i].size;
  }
  return m;
}

LegSystem LegSystem::concat(const LegSystem& other) const {
  std::vector<Leg> all = legs_;
  all.insert(all.end(), other.legs_.begin(), other.legs_.end());
  return LegSystem(std::move(all));
}

LegSystem LegSystem::subset(const std::vector<std::string>& names) const {
  std::vector<Leg> out;
  out.reserve(names.size());
  for (const std::string& n : names) out.push_back(legs_[position(n)]);
  return LegSystem(std::move(out));
}

bool LegSystem::same_shape(const LegSystem& other) const {
  return legs_.size() == other.legs_.size() &&
         std::equal(legs_.begin(), legs_.end(), other.legs_.begin());
}

bool LegSystem::same_sizes(const LegSystem& other) const {
  if (legs_.size() != other.legs_.size()) return false;
  for (std::size_t i = 0; i < legs_.size(); ++i)
    if (legs_[i].size != other.legs_[i].size) return false;
  return true;
}

LegSystem LegSystem::with_suffix(const std::string& suffix) const {
  std::vector<Leg> out = legs_;
  for (Leg& l : out) l.name += suffix;
  return LegSystem(std::move(out));
}

LegSystem LegSystem::renamed(const std::vector<std::string>& names) const {
  if (names.size() != legs_.size())
    throw input_error("renamed: wrong number of names");
  std::vector<Leg> out = legs_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].name = names[i];
  return LegSystem(std::move(out));
}

bool operator==(const LegSystem& a, const LegSystem& b) {
  return a.same_shape(b);
}

LabeledMatrix::LabeledMatrix(LegSystem legs, Mat entries)
    : legs_(std::move(legs)), m_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(legs_.total_dim());
  if (m_.rows() != d || m_.cols() != d)
    throw input_error("matrix shape does not match leg system");
}

LabeledMatrix LabeledMatrix::zero(const LegSystem& legs) {
  const auto d = static_cast<Eigen::Index>(legs.total_dim());
  return LabeledMatrix(legs, Mat::Zero(d, d));
}

LabeledMatrix LabeledMatrix::identity(const LegSystem& legs) {
  const auto d = static_cast<Eigen::Index>(legs.total_dim());
  return LabeledMatrix(legs, Mat::Identity(d, d));
}

LabeledMatrix matrix_unit(const LegSystem& legs, std::size_t row,
                          std::size_t col) {
  LabeledMatrix out = LabeledMatrix::zero(legs);
  if (row >= legs.total_dim() || col >= legs.total_dim())
    throw input_error("matrix_unit index out of range");
  out.entries()(static_cast<Eigen::Index>(row),
                static_cast<Eigen::Index>(col)) = 1.0;
  return out;
}

LabeledMatrix max_entangled(const Leg& first, const Leg& second) {
  if (first.size != second.size)
    throw input_error("max_entangled needs equal leg sizes");
  const std::size_t n = first.size;
  LegSystem ls({first, second});
  LabeledMatrix out = LabeledMatrix::zero(ls);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t xp = 0; xp < n; ++xp)
      out.entries()(static_cast<Eigen::Index>(x * n + x),
                    static_cast<Eigen::Index>(xp * n + xp)) = 1.0;
  return out;
}

LabeledMatrix max_entangled_normalized(const Leg& first, const Leg& second) {
  LabeledMatrix j = max_entangled(first, second);
  j.entries() /= static_cast<double>(first.size);
  return j;
}

LabeledMatrix classical_entangled(const Leg& first, const Leg& second) {
  if (first.size != second.size)
    throw input_error("classical_entangled needs equal leg sizes");
  const std::size_t n = first.size;
  LegSystem ls({first, second});
  LabeledMatrix out = LabeledMatrix::zero(ls);
  for (std::size_t x = 0; x < n; ++x)
    out.entries()(static_cast<Eigen::Index>(x * n + x),
                  static_cast<Eigen::Index>(x * n + x)) = 1.0;
  return out;
}

LabeledMatrix tensor_product(const LabeledMatrix& a, const LabeledMatrix& b) {
  LegSystem legs = a.legs().concat(b.legs());
  const std::size_t db = b.dim();
  Mat out(legs.total_dim(), legs.total_dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      out.block(static_cast<Eigen::Index>(i * db),
                static_cast<Eigen::Index>(j * db),
                static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db)) =
          a.entries()(static_cast<Eigen::Index>(i),
                      static_cast<Eigen::Index>(j)) *
          b.entries();
  return LabeledMatrix(std::move(legs), std::move(out));
}

namespace {

// Positions of `names` within `ls`, validated.
std::vector<std::size_t> positions_of(const LegSystem& ls,
                                      const std::vector<std::string>& names) {
  std::vector<std::size_t> pos;
  pos.reserve(names.size());
  std::set<std::string> seen;
  for (const std::string& n : names) {
    if (!seen.insert(n).second) throw input_error("repeated leg name: " + n);
    pos.push_back(ls.position(n));
  }
  return pos;
}

}  // namespace

LabeledMatrix partial_trace(const LabeledMatrix& m,
                            const std::vector<std::string>& traced) {
  const LegSystem& ls = m.legs();
  std::vector<std::size_t> tpos = positions_of(ls, traced);
  std::vector<bool> is_traced(ls.leg_count(), false);
  for (std::size_t p : tpos) is_traced[p] = true;

  std::vector<Leg> kept;
  for (std::size_t i = 0; i < ls.leg_count(); ++i)
    if (!is_traced[i]) kept.push_back(ls.leg(i));
  LegSystem out_ls(kept);
  LegSystem tr_ls = ls.subset(traced);

  LabeledMatrix out = LabeledMatrix::zero(out_ls);
  const std::size_t dk = out_ls.total_dim();
  const std::size_t dt = tr_ls.total_dim();
  std::vector<std::size_t> full(ls.leg_count());
  for (std::size_t r = 0; r < dk; ++r) {
    std::vector<std::size_t> rm = out_ls.multi(r);
    for (std::size_t c = 0; c < dk; ++c) {
      std::vector<std::size_t> cm = out_ls.multi(c);
      cplx acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        std::vector<std::size_t> tm = tr_ls.multi(t);
        std::size_t ki = 0, ti = 0;
        for (std::size_t i = 0; i < ls.leg_count(); ++i)
          full[i] = is_traced[i] ? tm[ti++] : rm[ki++];
        const std::size_t fr = ls.flat(full);
        ki = 0;
        ti = 0;
        for (std::size_t i = 0; i < ls.leg_count(); ++i)
          full[i] = is_traced[i] ? tm[ti++] : cm[ki++];
        const std::size_t fc = ls.flat(full);
        acc += m.entries()(static_cast<Eigen::Index>(fr),
                           static_cast<Eigen::Index>(fc));
      }
      out.entries()(static_cast<Eigen::Index>(r),
                    static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return out;
}

LabeledMatrix slice(const LabeledMatrix& m, const std::vector<std::string>& legs,
                    const Mat& s) {
  const LegSystem& ls = m.legs();
  std::vector<std::size_t> spos = positions_of(ls, legs);
  std::vector<bool> sliced(ls.leg_count(), false);
  for (std::size_t p : spos) sliced[p] = true;

  LegSystem sub = ls.subset(legs);
  const auto ds = static_cast<Eigen::Index>(sub.total_dim());
  if (s.rows() != ds || s.cols() != ds)
    throw input_error("slice matrix shape does not match sliced legs");

  std::vector<Leg> kept;
  for (std::size_t i = 0; i < ls.leg_count(); ++i)
    if (!sliced[i]) kept.push_back(ls.leg(i));
  LegSystem out_ls(kept);

  LabeledMatrix out = LabeledMatrix::zero(out_ls);
  const std::size_t dk = out_ls.total_dim();
  std::vector<std::size_t> full(ls.leg_count());
  for (std::size_t r = 0; r < dk; ++r) {
    std::vector<std::size_t> rm = out_ls.multi(r);
    for (std::size_t c = 0; c < dk; ++c) {
      std::vector<std::size_t> cm = out_ls.multi(c);
      cplx acc = 0.0;
      for (std::size_t u = 0; u < static_cast<std::size_t>(ds); ++u) {
        std::vector<std::size_t> um = sub.multi(u);
        for (std::size_t up = 0; up < static_cast<std::size_t>(ds); ++up) {
          const cplx w = s(static_cast<Eigen::Index>(up),
                           static_cast<Eigen::Index>(u));
          if (w == cplx(0.0)) continue;
          std::vector<std::size_t> upm = sub.multi(up);
          std::size_t ki = 0, si = 0;
          for (std::size_t i = 0; i < ls.leg_count(); ++i)
            full[i] = sliced[i] ? um[si++] : rm[ki++];
          const std::size_t fr = ls.flat(full);
          ki = 0;
          si = 0;
          for (std::size_t i = 0; i < ls.leg_count(); ++i)
            full[i] = sliced[i] ? upm[si++] : cm[ki++];
          const std::size_t fc = ls.flat(full);
          acc += w * m.entries()(static_cast<Eigen::Index>(fr),
                                 static_cast<Eigen::Index>(fc));
        }
      }
      out.entries()(static_cast<Eigen::Index>(r),
                    static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return out;
}

LabeledMatrix slice(const LabeledMatrix& m, const std::string& leg,
                    const Mat& s) {
  return slice(m, std::vector<std::string>{leg}, s);
}

LabeledMatrix permute_legs(const LabeledMatrix& m,
                           const std::vector<std::string>& order) {
  const LegSystem& ls = m.legs();
  if (order.size() != ls.leg_count())
    throw input_error("permute_legs: order must list every leg");
  std::vector<std::size_t> src = positions_of(ls, order);
  LegSystem out_ls = ls.subset(order);

  const std::size_t d = ls.total_dim();
  Mat out(d, d);
  // new multi-index i_new[k] = i_old[src[k]]
  std::vector<std::size_t> om(ls.leg_count());
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<std::size_t> rm = ls.multi(r);
    for (std::size_t k = 0; k < ls.leg_count(); ++k) om[k] = rm[src[k]];
    const std::size_t nr = out_ls.flat(om);
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<std::size_t> cm = ls.multi(c);
      for (std::size_t k = 0; k < ls.leg_count(); ++k) om[k] = cm[src[k]];
      const std::size_t nc = out_ls.flat(om);
      out(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nc)) =
          m.entries()(static_cast<Eigen::Index>(r),
                      static_cast<Eigen::Index>(c));
    }
  }
  return LabeledMatrix(std::move(out_ls), std::move(out));
}

cplx hs_inner(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw input_error("hs_inner shape mismatch");
  return (a.array() * b.array()).sum();
}

cplx hs_inner(const LabeledMatrix& a, const LabeledMatrix& b) {
  if (!a.legs().same_shape(b.legs()))
    throw input_error("hs_inner leg mismatch");
  return hs_inner(a.entries(), b.entries());
}

double hermiticity_gap(const Mat& m) {
  if (m.rows() != m.cols()) throw input_error("hermiticity_gap: not square");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Mat& m) {
  Mat h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const Mat& m, double tol) {
  if (m.rows() == 0) return true;
  const double gap = hermiticity_gap(m);
  if (gap > std::sqrt(tol))
    throw input_error("is_psd: input is not Hermitian (gap " +
                      std::to_string(gap) + ")");
  return min_eigenvalue(m) >= -tol * static_cast<double>(m.rows());
}

bool is_psd(const LabeledMatrix& m, double tol) {
  return is_psd(m.entries(), tol);
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw input_error("max_abs_diff shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qns
