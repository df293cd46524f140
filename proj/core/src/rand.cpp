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

#include "qns/rand.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qns {

std::size_t Rng::integer(std::size_t n) {
  if (n == 0) throw input_error("Rng::integer: n must be positive");
  return static_cast<std::size_t>(eng_() % n);
}

double Rng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u = 1.0 - uniform();  // (0, 1]
  const double r = std::sqrt(-2.0 * std::log(u));
  const double t = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

cplx Rng::cgauss() {
  const double re = gaussian();
  const double im = gaussian();
  return cplx(re, im) / std::sqrt(2.0);
}

Mat Rng::gaussian_matrix(std::size_t rows, std::size_t cols) {
  Mat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = cgauss();
  return m;
}

Mat Rng::isometry(std::size_t rows, std::size_t cols) {
  if (rows < cols) throw input_error("Rng::isometry: needs rows >= cols");
  Mat g = gaussian_matrix(rows, cols);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(rows, cols);
  // Fix the phase gauge so the distribution is Haar: make diag(R) positive.
  Mat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < cols; ++k) {
    const cplx d = r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    const double a = std::abs(d);
    if (a > 0.0) q.col(static_cast<Eigen::Index>(k)) *= d / a;
  }
  return q;
}

Mat Rng::unitary(std::size_t n) { return isometry(n, n); }

Vec Rng::state(std::size_t dim) {
  Vec v(dim);
  for (std::size_t k = 0; k < dim; ++k)
    v(static_cast<Eigen::Index>(k)) = cgauss();
  const double n = v.norm();
  if (n == 0.0) return state(dim);
  return v / n;
}

Mat Rng::density(std::size_t dim, std::size_t rank) {
  if (rank == 0 || rank > dim)
    throw input_error("Rng::density: rank out of range");
  Mat g = gaussian_matrix(dim, rank);
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

Mat Rng::projection(std::size_t dim, std::size_t rank) {
  if (rank > dim) throw input_error("Rng::projection: rank out of range");
  if (rank == 0) return Mat::Zero(dim, dim);
  Mat v = isometry(dim, rank);
  return v * v.adjoint();
}

std::vector<double> Rng::simplex(std::size_t k) {
  if (k == 0) throw input_error("Rng::simplex: k must be positive");
  std::vector<double> w(k);
  double sum = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - uniform());
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

Channel random_cptp(Rng& rng, LegSystem in, LegSystem out,
                    std::size_t kraus_rank) {
  const std::size_t din = in.total_dim();
  const std::size_t dout = out.total_dim();
  if (kraus_rank == 0 || dout * kraus_rank < din)
    throw input_error("random_cptp: need kraus_rank * |out| >= |in|");
  Mat v = rng.isometry(dout * kraus_rank, din);
  std::vector<Mat> kraus;
  kraus.reserve(kraus_rank);
  for (std::size_t e = 0; e < kraus_rank; ++e) {
    Mat m(dout, din);
    for (std::size_t a = 0; a < dout; ++a)
      m.row(static_cast<Eigen::Index>(a)) =
          v.row(static_cast<Eigen::Index>(a * kraus_rank + e));
    kraus.push_back(std::move(m));
  }
  return channel_from_kraus(kraus, std::move(in), std::move(out));
}

BlockIsometry random_block_isometry(Rng& rng, std::size_t X, std::size_t A,
                                    std::size_t dH, std::size_t dK) {
  if (A * dK < X * dH)
    throw input_error("random_block_isometry: need A dK >= X dH");
  Mat v = rng.isometry(A * dK, X * dH);
  std::vector<std::vector<Mat>> blocks(A, std::vector<Mat>(X));
  for (std::size_t a = 0; a < A; ++a)
    for (std::size_t x = 0; x < X; ++x)
      blocks[a][x] = v.block(a * dK, x * dH, dK, dH);
  return make_block_isometry(X, A, dH, dK, std::move(blocks));
}

BlockIsometry random_bi_isometry(Rng& rng, std::size_t X, std::size_t A,
                                 std::size_t dH) {
  if ((X * dH) % A != 0)
    throw input_error("random_bi_isometry: A must divide X dH");
  return random_block_isometry(rng, X, A, dH, X * dH / A);
}

TraceRep random_trace_rep(Rng& rng, std::size_t X, std::size_t A,
                          std::size_t dH, bool bi) {
  if (bi) return make_trace_rep(random_bi_isometry(rng, X, A, dH));
  const std::size_t dK = (X * dH + A - 1) / A;
  return make_trace_rep(random_block_isometry(rng, X, A, dH, dK));
}

StochOpMatrix random_stoch(Rng& rng, std::size_t X, std::size_t A,
                           std::size_t ancilla) {
  const std::size_t dK = (X * ancilla + A - 1) / A;
  return generators_of(random_block_isometry(rng, X, A, ancilla, dK));
}

namespace {

// Affine rows of the classical no-signalling polytope over paired legs.
void ns_affine_system(const LegSystem& in, const LegSystem& out,
                      Eigen::MatrixXd& a, Eigen::VectorXd& b) {
  const std::size_t din = in.total_dim();
  const std::size_t dout = out.total_dim();
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (std::size_t i = 0; i < din; ++i) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(din * dout);
    for (std::size_t o = 0; o < dout; ++o) r(i * dout + o) = 1.0;
    rows.push_back(std::move(r));
    rhs.push_back(1.0);
  }
  const std::size_t pairs = in.leg_count();
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t nin = in.leg(k).size;
    const std::size_t nout = out.leg(k).size;
    const std::size_t rest_in = din / nin;
    const std::size_t rest_out = dout / nout;
    for (std::size_t ri = 0; ri < rest_in; ++ri)
      for (std::size_t ro = 0; ro < rest_out; ++ro)
        for (std::size_t u = 1; u < nin; ++u) {
          Eigen::VectorXd r = Eigen::VectorXd::Zero(din * dout);
          for (std::size_t w = 0; w < nout; ++w) {
            // assemble flat indices with value v at pair-leg position k
            auto at = [&](const LegSystem& ls, std::size_t v,
                          std::size_t rest) {
              std::vector<std::size_t> m(ls.leg_count());
              std::size_t acc = rest;
              for (std::size_t j = ls.leg_count(); j-- > 0;) {
                if (j == k) continue;
                m[j] = acc % ls.leg(j).size;
                acc /= ls.leg(j).size;
              }
              m[k] = v;
              return ls.flat(m);
            };
            r(at(in, u, ri) * dout + at(out, w, ro)) += 1.0;
            r(at(in, 0, ri) * dout + at(out, w, ro)) -= 1.0;
          }
          rows.push_back(std::move(r));
          rhs.push_back(0.0);
        }
  }
  a.setZero(rows.size(), din * dout);
  b.setZero(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    a.row(i) = rows[i].transpose();
    b(i) = rhs[i];
  }
}

}  // namespace

ClassicalTable random_table(Rng& rng, LegSystem in, LegSystem out) {
  const std::size_t din = in.total_dim();
  const std::size_t dout = out.total_dim();
  std::vector<std::vector<double>> p(din, std::vector<double>(dout));
  for (auto& row : p) {
    double sum = 0.0;
    for (double& v : row) {
      v = rng.uniform() + 1e-12;
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
  return make_table(std::move(in), std::move(out), std::move(p));
}

ClassicalTable random_ns_table(Rng& rng, LegSystem in, LegSystem out) {
  if (in.leg_count() != out.leg_count())
    throw input_error("random_ns_table: legs must pair up");
  ClassicalTable t = random_table(rng, in, out);
  const std::size_t din = in.total_dim();
  const std::size_t dout = out.total_dim();

  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  ns_affine_system(t.in, t.out, a, b);
  Eigen::VectorXd z(din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o) z(i * dout + o) = t.p[i][o];
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  z += cod.solve(b - a * z);

  // Mix with the uniform table (a no-signalling point of the same affine
  // system) until all entries are nonnegative.
  const double u = 1.0 / static_cast<double>(dout);
  double lambda = 0.0;
  for (Eigen::Index e = 0; e < z.size(); ++e)
    if (z(e) < 0.0) lambda = std::max(lambda, -z(e) / (u - z(e)));
  if (lambda > 0.0) {
    lambda = std::min(1.0, lambda * (1.0 + 1e-9) + 1e-12);
    for (Eigen::Index e = 0; e < z.size(); ++e)
      z(e) = (1.0 - lambda) * z(e) + lambda * u;
  }
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o)
      t.p[i][o] = std::max(0.0, z(i * dout + o));
  return t;
}

}  // namespace qns
