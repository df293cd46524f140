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

#include "qns/channel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qns {

Channel make_channel(LegSystem in, LegSystem out, LabeledMatrix choi) {
  if (!choi.legs().same_shape(in.concat(out)))
    throw input_error("make_channel: choi legs must be in ++ out");
  return Channel{std::move(in), std::move(out), std::move(choi)};
}

ChannelReport verify_channel(const Channel& c, double tol) {
  ChannelReport r;
  r.hermiticity = hermiticity_gap(c.choi.entries());
  r.psd_violation = std::max(0.0, -min_eigenvalue(c.choi.entries()));
  LabeledMatrix marg = partial_trace(c.choi, c.out.names());
  r.tp_violation = max_abs_diff(
      marg.entries(), Mat::Identity(marg.entries().rows(), marg.entries().cols()));
  const double dim = static_cast<double>(c.choi.dim());
  r.pass = r.hermiticity <= tol && r.psd_violation <= tol * dim &&
           r.tp_violation <= tol;
  return r;
}

Channel channel_from_kraus(const std::vector<Mat>& kraus, LegSystem in,
                           LegSystem out) {
  const auto di = static_cast<Eigen::Index>(in.total_dim());
  const auto dn = static_cast<Eigen::Index>(out.total_dim());
  if (kraus.empty()) throw input_error("channel_from_kraus: empty Kraus set");
  LegSystem legs = in.concat(out);
  Mat choi = Mat::Zero(legs.total_dim(), legs.total_dim());
  for (const Mat& m : kraus) {
    if (m.rows() != dn || m.cols() != di)
      throw input_error("channel_from_kraus: Kraus shape mismatch");
    // w[(x,a)] = m[a,x]
    Vec w(di * dn);
    for (Eigen::Index x = 0; x < di; ++x)
      for (Eigen::Index a = 0; a < dn; ++a) w(x * dn + a) = m(a, x);
    choi += w * w.adjoint();
  }
  return Channel{std::move(in), std::move(out),
                 LabeledMatrix(std::move(legs), std::move(choi))};
}

std::vector<Mat> kraus_of(const Channel& c, double rel_cutoff) {
  const auto di = static_cast<Eigen::Index>(c.in.total_dim());
  const auto dn = static_cast<Eigen::Index>(c.out.total_dim());
  Mat h = 0.5 * (c.choi.entries() + c.choi.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
  const double cutoff = rel_cutoff * lmax;
  std::vector<Mat> kraus;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam <= cutoff) continue;
    const double s = std::sqrt(lam);
    Mat m(dn, di);
    for (Eigen::Index x = 0; x < di; ++x)
      for (Eigen::Index a = 0; a < dn; ++a)
        m(a, x) = s * es.eigenvectors()(x * dn + a, k);
    kraus.push_back(std::move(m));
  }
  return kraus;
}

LabeledMatrix apply(const Channel& c, const LabeledMatrix& rho) {
  if (!rho.legs().same_shape(c.in))
    throw input_error("apply: state legs must match channel input legs");
  const auto di = static_cast<Eigen::Index>(c.in.total_dim());
  const auto dn = static_cast<Eigen::Index>(c.out.total_dim());
  Mat out = Mat::Zero(dn, dn);
  for (Eigen::Index x = 0; x < di; ++x)
    for (Eigen::Index xp = 0; xp < di; ++xp) {
      const cplx w = rho.entries()(x, xp);
      if (w == cplx(0.0)) continue;
      out += w * c.choi.entries().block(x * dn, xp * dn, dn, dn);
    }
  return LabeledMatrix(c.out, std::move(out));
}

Channel adjoint(const Channel& c) {
  std::vector<std::string> order = c.out.names();
  for (const std::string& n : c.in.names()) order.push_back(n);
  return Channel{c.out, c.in, permute_legs(c.choi, order)};
}

Channel tensor(const Channel& a, const Channel& b) {
  LegSystem in = a.in.concat(b.in);
  LegSystem out = a.out.concat(b.out);
  LabeledMatrix prod = tensor_product(a.choi, b.choi);
  std::vector<std::string> order = in.names();
  for (const std::string& n : out.names()) order.push_back(n);
  return Channel{std::move(in), std::move(out), permute_legs(prod, order)};
}

Channel compose(const Channel& outer, const Channel& inner) {
  if (!inner.out.same_sizes(outer.in))
    throw input_error("compose: inner output sizes must match outer input");
  const auto di = static_cast<Eigen::Index>(inner.in.total_dim());
  const auto dm = static_cast<Eigen::Index>(inner.out.total_dim());
  const auto dn = static_cast<Eigen::Index>(outer.out.total_dim());
  LegSystem legs = inner.in.concat(outer.out);
  Mat choi = Mat::Zero(di * dn, di * dn);
  for (Eigen::Index x = 0; x < di; ++x)
    for (Eigen::Index xp = 0; xp < di; ++xp)
      for (Eigen::Index y = 0; y < dm; ++y)
        for (Eigen::Index yp = 0; yp < dm; ++yp) {
          const cplx w = inner.choi.entries()(x * dm + y, xp * dm + yp);
          if (w == cplx(0.0)) continue;
          choi.block(x * dn, xp * dn, dn, dn) +=
              w * outer.choi.entries().block(y * dn, yp * dn, dn, dn);
        }
  return Channel{inner.in, outer.out,
                 LabeledMatrix(std::move(legs), std::move(choi))};
}

Channel identity_channel(LegSystem in, LegSystem out) {
  if (!in.same_sizes(out))
    throw input_error("identity_channel: size mismatch");
  return unitary_channel(Mat::Identity(in.total_dim(), in.total_dim()),
                         std::move(in), std::move(out));
}

Channel unitary_channel(const Mat& u, LegSystem in, LegSystem out) {
  const auto di = static_cast<Eigen::Index>(in.total_dim());
  const auto dn = static_cast<Eigen::Index>(out.total_dim());
  if (u.rows() != dn || u.cols() != di)
    throw input_error("unitary_channel: shape mismatch");
  return channel_from_kraus({u}, std::move(in), std::move(out));
}

Channel depolarizing_channel(LegSystem in, LegSystem out) {
  const auto di = static_cast<Eigen::Index>(in.total_dim());
  const auto dn = static_cast<Eigen::Index>(out.total_dim());
  LegSystem legs = in.concat(out);
  Mat choi = Mat::Zero(di * dn, di * dn);
  for (Eigen::Index x = 0; x < di; ++x)
    for (Eigen::Index a = 0; a < dn; ++a)
      choi(x * dn + a, x * dn + a) = 1.0 / static_cast<double>(dn);
  return Channel{std::move(in), std::move(out),
                 LabeledMatrix(std::move(legs), std::move(choi))};
}

Channel classical_embed(const std::vector<std::vector<double>>& table,
                        LegSystem in, LegSystem out) {
  const std::size_t di = in.total_dim();
  const std::size_t dn = out.total_dim();
  if (table.size() != di)
    throw input_error("classical_embed: table rows must match input dim");
  LegSystem legs = in.concat(out);
  Mat choi = Mat::Zero(di * dn, di * dn);
  for (std::size_t x = 0; x < di; ++x) {
    if (table[x].size() != dn)
      throw input_error("classical_embed: table cols must match output dim");
    for (std::size_t a = 0; a < dn; ++a)
      choi(static_cast<Eigen::Index>(x * dn + a),
           static_cast<Eigen::Index>(x * dn + a)) = table[x][a];
  }
  return Channel{std::move(in), std::move(out),
                 LabeledMatrix(std::move(legs), std::move(choi))};
}

Channel delta_project(const Channel& c) {
  Mat choi = Mat::Zero(c.choi.entries().rows(), c.choi.entries().cols());
  choi.diagonal() = c.choi.entries().diagonal();
  return Channel{c.in, c.out, LabeledMatrix(c.choi.legs(), std::move(choi))};
}

std::vector<std::vector<double>> classical_kernel(const Channel& c) {
  const std::size_t di = c.in.total_dim();
  const std::size_t dn = c.out.total_dim();
  std::vector<std::vector<double>> table(di, std::vector<double>(dn, 0.0));
  for (std::size_t x = 0; x < di; ++x)
    for (std::size_t a = 0; a < dn; ++a)
      table[x][a] =
          c.choi.entries()(static_cast<Eigen::Index>(x * dn + a),
                           static_cast<Eigen::Index>(x * dn + a))
              .real();
  return table;
}

bool is_unital(const Channel& c, double tol) {
  LabeledMatrix img = apply(c, LabeledMatrix::identity(c.in));
  return max_abs_diff(img.entries(),
                      Mat::Identity(img.entries().rows(),
                                    img.entries().cols())) <= tol;
}

Channel rename_legs(const Channel& c,
                    const std::map<std::string, std::string>& renames) {
  auto rename_system = [&](const LegSystem& ls) {
    std::vector<Leg> legs = ls.legs();
    for (Leg& l : legs) {
      auto it = renames.find(l.name);
      if (it != renames.end()) l.name = it->second;
    }
    return LegSystem(std::move(legs));
  };
  LegSystem in = rename_system(c.in);
  LegSystem out = rename_system(c.out);
  LegSystem all = in.concat(out);
  return Channel{std::move(in), std::move(out),
                 LabeledMatrix(all, c.choi.entries())};
}

}  // namespace qns
