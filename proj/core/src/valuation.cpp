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

#include "qns/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace qns {

namespace {

// ---------------------------------------------------------------------------
// Objective matrices: value * Tr(P) = sum_{r,c} choi[r,c] * W[r,c].

Mat objective_matrix(const ImplicationGame& g) {
  const std::size_t din = g.in.total_dim();
  const std::size_t dout = g.out.total_dim();
  const Mat& p = g.p.entries();
  const Mat& q = g.q.entries();
  Mat w(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o)
      for (std::size_t ip = 0; ip < din; ++ip)
        for (std::size_t op = 0; op < dout; ++op)
          w(i * dout + o, ip * dout + op) = p(i, ip) * q(op, o);
  return w;
}

Mat objective_matrix(const ClassicalGame& g) {
  const std::size_t din = g.in.total_dim();
  const std::size_t dout = g.out.total_dim();
  Mat w = Mat::Zero(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o)
      if (g.allowed[i][o])
        w(i * dout + o, i * dout + o) = g.mu[i];
  return w;
}

// ---------------------------------------------------------------------------
// Complex linear equations over the Choi matrix.

struct CRow {
  std::vector<std::tuple<std::size_t, std::size_t, cplx>> k;
  cplx beta{0.0, 0.0};
  bool canonical = true;
  bool self_conjugate = false;
};

void require_two_by_two(const LegSystem& in, const LegSystem& out,
                        const char* who) {
  if (in.leg_count() != 2 || out.leg_count() != 2)
    throw input_error(std::string(who) +
                      ": games need two input and two output legs");
}

// Trace preservation plus both no-signalling families, in full enumeration;
// canonical/self flags mark one representative per conjugate pair.
std::vector<CRow> constraint_rows(std::size_t X, std::size_t Y, std::size_t A,
                                  std::size_t B) {
  const std::size_t din = X * Y;
  const std::size_t dout = A * B;
  auto idx = [dout](std::size_t i, std::size_t o) { return i * dout + o; };
  std::vector<CRow> rows;

  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t ip = 0; ip < din; ++ip) {
      CRow r;
      for (std::size_t o = 0; o < dout; ++o)
        r.k.emplace_back(idx(i, o), idx(ip, o), cplx(1.0, 0.0));
      r.beta = (i == ip) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      r.canonical = i <= ip;
      r.self_conjugate = i == ip;
      rows.push_back(std::move(r));
    }

  // A side: sum over a of C[((x,y),(a,b)), ((x',y'),(a,b'))].
  for (std::size_t y = 0; y < Y; ++y)
    for (std::size_t yp = 0; yp < Y; ++yp)
      for (std::size_t b = 0; b < B; ++b)
        for (std::size_t bp = 0; bp < B; ++bp) {
          for (std::size_t x = 0; x < X; ++x)
            for (std::size_t xp = 0; xp < X; ++xp) {
              if (x == xp) continue;
              CRow r;
              for (std::size_t a = 0; a < A; ++a)
                r.k.emplace_back(idx(x * Y + y, a * B + b),
                                 idx(xp * Y + yp, a * B + bp), cplx(1.0, 0.0));
              r.canonical = std::make_tuple(x, y, b) < std::make_tuple(xp, yp, bp);
              rows.push_back(std::move(r));
            }
          for (std::size_t x = 1; x < X; ++x) {
            CRow r;
            for (std::size_t a = 0; a < A; ++a) {
              r.k.emplace_back(idx(x * Y + y, a * B + b),
                               idx(x * Y + yp, a * B + bp), cplx(1.0, 0.0));
              r.k.emplace_back(idx(y, a * B + b), idx(yp, a * B + bp),
                               cplx(-1.0, 0.0));
            }
            r.canonical = std::make_tuple(y, b) <= std::make_tuple(yp, bp);
            r.self_conjugate = (y == yp && b == bp);
            rows.push_back(std::move(r));
          }
        }

  // B side: sum over b of C[((x,y),(a,b)), ((x',y'),(a',b))].
  for (std::size_t x = 0; x < X; ++x)
    for (std::size_t xp = 0; xp < X; ++xp)
      for (std::size_t a = 0; a < A; ++a)
        for (std::size_t ap = 0; ap < A; ++ap) {
          for (std::size_t y = 0; y < Y; ++y)
            for (std::size_t yp = 0; yp < Y; ++yp) {
              if (y == yp) continue;
              CRow r;
              for (std::size_t b = 0; b < B; ++b)
                r.k.emplace_back(idx(x * Y + y, a * B + b),
                                 idx(xp * Y + yp, ap * B + b), cplx(1.0, 0.0));
              r.canonical = std::make_tuple(x, y, a) < std::make_tuple(xp, yp, ap);
              rows.push_back(std::move(r));
            }
          for (std::size_t y = 1; y < Y; ++y) {
            CRow r;
            for (std::size_t b = 0; b < B; ++b) {
              r.k.emplace_back(idx(x * Y + y, a * B + b),
                               idx(xp * Y + y, ap * B + b), cplx(1.0, 0.0));
              r.k.emplace_back(idx(x * Y, a * B + b), idx(xp * Y, ap * B + b),
                               cplx(-1.0, 0.0));
            }
            r.canonical = std::make_tuple(x, a) <= std::make_tuple(xp, ap);
            r.self_conjugate = (x == xp && a == ap);
            rows.push_back(std::move(r));
          }
        }
  return rows;
}

// ---------------------------------------------------------------------------
// Real packing of a complex d x d variable: z = [vec Re C; vec Im C]
// (column-major).

struct ComplexFeasibility {
  std::size_t d = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  Eigen::VectorXd grad;
  double grad_norm2 = 0.0;

  Eigen::VectorXd pack(const Mat& c) const {
    const std::size_t n = d * d;
    Eigen::VectorXd z(2 * n);
    Eigen::Map<Eigen::MatrixXd>(z.data(), d, d) = c.real();
    Eigen::Map<Eigen::MatrixXd>(z.data() + n, d, d) = c.imag();
    return z;
  }
  Mat unpack(const Eigen::VectorXd& z) const {
    const std::size_t n = d * d;
    Mat c(d, d);
    c.real() = Eigen::Map<const Eigen::MatrixXd>(z.data(), d, d);
    c.imag() = Eigen::Map<const Eigen::MatrixXd>(z.data() + n, d, d);
    return c;
  }
  double objective(const Eigen::VectorXd& z) const { return grad.dot(z); }
  void project_affine(Eigen::VectorXd& z) const { z += cod.solve(b - a * z); }
  double affine_residual(const Eigen::VectorXd& z) const {
    if (a.rows() == 0) return 0.0;
    return (a * z - b).cwiseAbs().maxCoeff();
  }
  void project_psd(Eigen::VectorXd& z) const {
    Mat c = unpack(z);
    Mat h = (c + c.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
    Mat back = es.eigenvectors() * lam.asDiagonal() *
               es.eigenvectors().adjoint();
    z = pack(back);
  }
  double min_eig(const Eigen::VectorXd& z) const {
    Mat c = unpack(z);
    Mat h = (c + c.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
};

ComplexFeasibility make_feasibility(std::size_t d,
                                    const std::vector<CRow>& rows,
                                    const Mat& w) {
  ComplexFeasibility f;
  f.d = d;
  const std::size_t n = d * d;
  f.a.setZero(2 * rows.size(), 2 * n);
  f.b.setZero(2 * rows.size());
  // Column-major vec index of entry (r, c) is c * d + r.
  auto at = [d](std::size_t r, std::size_t c) { return c * d + r; };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [r, c, kappa] : rows[i].k) {
      const std::size_t e = at(r, c);
      // Re equation: sum(ReK ReC - ImK ImC) = Re beta
      f.a(2 * i, e) += kappa.real();
      f.a(2 * i, n + e) += -kappa.imag();
      // Im equation: sum(ReK ImC + ImK ReC) = Im beta
      f.a(2 * i + 1, e) += kappa.imag();
      f.a(2 * i + 1, n + e) += kappa.real();
    }
    f.b(2 * i) = rows[i].beta.real();
    f.b(2 * i + 1) = rows[i].beta.imag();
  }
  f.cod.compute(f.a);
  f.grad.setZero(2 * n);
  Eigen::Map<Eigen::MatrixXd>(f.grad.data(), d, d) = w.real();
  Eigen::Map<Eigen::MatrixXd>(f.grad.data() + n, d, d) = -w.imag();
  f.grad_norm2 = f.grad.squaredNorm();
  return f;
}

bool dykstra_probe(const ComplexFeasibility& f, double tau,
                   Eigen::VectorXd& z, const SolverOptions& opt) {
  Eigen::VectorXd pcone = Eigen::VectorXd::Zero(z.size());
  Eigen::VectorXd phalf = Eigen::VectorXd::Zero(z.size());
  for (int it = 1; it <= opt.max_iter; ++it) {
    f.project_affine(z);
    Eigen::VectorXd y = z + pcone;
    Eigen::VectorXd py = y;
    f.project_psd(py);
    pcone = y - py;
    z = py;
    y = z + phalf;
    Eigen::VectorXd hy = y;
    const double o = f.grad.dot(y);
    if (o < tau) hy += ((tau - o) / f.grad_norm2) * f.grad;
    phalf = y - hy;
    z = hy;
    if (it % 16 == 0 || it == opt.max_iter) {
      if (f.affine_residual(z) <= opt.tol_feas &&
          f.min_eig(z) >= -opt.tol_feas &&
          f.objective(z) >= tau - opt.tol_feas)
        return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Diagonal restriction for classical games.

struct DiagonalFeasibility {
  std::size_t din = 0, dout = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
  Eigen::VectorXd grad;
  double grad_norm2 = 0.0;

  void project_affine(Eigen::VectorXd& z) const { z += cod.solve(b - a * z); }
  double affine_residual(const Eigen::VectorXd& z) const {
    return (a * z - b).cwiseAbs().maxCoeff();
  }
};

DiagonalFeasibility make_diagonal_feasibility(const ClassicalGame& g) {
  const std::size_t X = g.in.leg(0).size, Y = g.in.leg(1).size;
  const std::size_t A = g.out.leg(0).size, B = g.out.leg(1).size;
  const std::size_t din = X * Y, dout = A * B;
  DiagonalFeasibility f;
  f.din = din;
  f.dout = dout;
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  auto at = [&](std::size_t i, std::size_t o) { return i * dout + o; };

  for (std::size_t i = 0; i < din; ++i) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(din * dout);
    for (std::size_t o = 0; o < dout; ++o) r(at(i, o)) = 1.0;
    rows.push_back(std::move(r));
    rhs.push_back(1.0);
  }
  // A side: sum_a p((a,b) | (x,y)) independent of x.
  for (std::size_t y = 0; y < Y; ++y)
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t x = 1; x < X; ++x) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(din * dout);
        for (std::size_t a = 0; a < A; ++a) {
          r(at(x * Y + y, a * B + b)) += 1.0;
          r(at(y, a * B + b)) -= 1.0;
        }
        rows.push_back(std::move(r));
        rhs.push_back(0.0);
      }
  // B side: sum_b p((a,b) | (x,y)) independent of y.
  for (std::size_t x = 0; x < X; ++x)
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t y = 1; y < Y; ++y) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(din * dout);
        for (std::size_t b = 0; b < B; ++b) {
          r(at(x * Y + y, a * B + b)) += 1.0;
          r(at(x * Y, a * B + b)) -= 1.0;
        }
        rows.push_back(std::move(r));
        rhs.push_back(0.0);
      }

  f.a.setZero(rows.size(), din * dout);
  f.b.setZero(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    f.a.row(i) = rows[i].transpose();
    f.b(i) = rhs[i];
  }
  f.cod.compute(f.a);
  f.grad.setZero(din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o)
      if (g.allowed[i][o]) f.grad(at(i, o)) = g.mu[i];
  f.grad_norm2 = f.grad.squaredNorm();
  return f;
}

bool dykstra_probe_diag(const DiagonalFeasibility& f, double tau,
                        Eigen::VectorXd& z, const SolverOptions& opt) {
  Eigen::VectorXd pcone = Eigen::VectorXd::Zero(z.size());
  Eigen::VectorXd phalf = Eigen::VectorXd::Zero(z.size());
  for (int it = 1; it <= opt.max_iter; ++it) {
    f.project_affine(z);
    Eigen::VectorXd y = z + pcone;
    Eigen::VectorXd py = y.cwiseMax(0.0);
    pcone = y - py;
    z = py;
    y = z + phalf;
    Eigen::VectorXd hy = y;
    const double o = f.grad.dot(y);
    if (o < tau) hy += ((tau - o) / f.grad_norm2) * f.grad;
    phalf = y - hy;
    z = hy;
    if (it % 16 == 0 || it == opt.max_iter) {
      if (f.affine_residual(z) <= opt.tol_feas &&
          z.minCoeff() >= -opt.tol_feas &&
          f.grad.dot(z) >= tau - opt.tol_feas)
        return true;
    }
  }
  return false;
}

// Best deterministic strategy and its table.
std::pair<double, std::vector<std::vector<double>>> loc_best(
    const ClassicalGame& g, std::size_t guard) {
  require_two_by_two(g.in, g.out, "loc_value_classical");
  const std::size_t X = g.in.leg(0).size, Y = g.in.leg(1).size;
  const std::size_t A = g.out.leg(0).size, B = g.out.leg(1).size;
  double fcount = std::pow(static_cast<double>(A), static_cast<double>(X));
  double gcount = std::pow(static_cast<double>(B), static_cast<double>(Y));
  if (fcount * gcount > static_cast<double>(guard))
    throw input_error("loc_value_classical: strategy enumeration too large");

  std::vector<std::size_t> fa(X, 0), gb(Y, 0);
  std::vector<std::size_t> best_f(X, 0), best_g(Y, 0);
  double best = -1.0;
  bool more_f = true;
  while (more_f) {
    std::fill(gb.begin(), gb.end(), 0);
    bool more_g = true;
    while (more_g) {
      double v = 0.0;
      for (std::size_t x = 0; x < X; ++x)
        for (std::size_t y = 0; y < Y; ++y)
          v += g.mu[x * Y + y] *
               (g.allowed[x * Y + y][fa[x] * B + gb[y]] ? 1.0 : 0.0);
      if (v > best) {
        best = v;
        best_f = fa;
        best_g = gb;
      }
      more_g = false;
      for (std::size_t y = Y; y-- > 0;) {
        if (++gb[y] < B) {
          more_g = true;
          break;
        }
        gb[y] = 0;
      }
    }
    more_f = false;
    for (std::size_t x = X; x-- > 0;) {
      if (++fa[x] < A) {
        more_f = true;
        break;
      }
      fa[x] = 0;
    }
  }
  std::vector<std::vector<double>> table(
      X * Y, std::vector<double>(A * B, 0.0));
  for (std::size_t x = 0; x < X; ++x)
    for (std::size_t y = 0; y < Y; ++y)
      table[x * Y + y][best_f[x] * B + best_g[y]] = 1.0;
  return {best, std::move(table)};
}

// ---------------------------------------------------------------------------
// SDPA helpers.

// Symmetric 2d x 2d matrix Fhat with Tr(Fhat Yhat) = Re sum K(r,c) C(r,c)
// for Yhat = [[Re C, -Im C], [Im C, Re C]], C Hermitian.
Eigen::MatrixXd realify_row(const Mat& k) {
  const Eigen::Index d = k.rows();
  Eigen::MatrixXd p = k.real();
  Eigen::MatrixXd q = k.imag();
  Eigen::MatrixXd f(2 * d, 2 * d);
  Eigen::MatrixXd diag = (p.transpose() + p) / 4.0;
  Eigen::MatrixXd off = (q - q.transpose()) / 4.0;
  f.topLeftCorner(d, d) = diag;
  f.bottomRightCorner(d, d) = diag;
  f.topRightCorner(d, d) = off;
  f.bottomLeftCorner(d, d) = -off;
  return f;
}

Mat coefficient_matrix(const CRow& row, std::size_t d) {
  Mat k = Mat::Zero(d, d);
  for (const auto& [r, c, kappa] : row.k)
    k(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += kappa;
  return k;
}

void write_entries(std::ostream& os, std::size_t mat_no,
                   const Eigen::MatrixXd& f) {
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    for (Eigen::Index j = i; j < f.cols(); ++j)
      if (f(i, j) != 0.0)
        os << mat_no << " 1 " << (i + 1) << " " << (j + 1) << " " << f(i, j)
           << "\n";
}

void export_program(const LegSystem& in, const LegSystem& out, const Mat& w,
                    const std::string& path) {
  require_two_by_two(in, out, "export_sdpa");
  const std::size_t X = in.leg(0).size, Y = in.leg(1).size;
  const std::size_t A = out.leg(0).size, B = out.leg(1).size;
  const std::size_t d = X * Y * A * B;
  std::vector<CRow> rows = constraint_rows(X, Y, A, B);

  std::vector<Eigen::MatrixXd> constraints;
  std::vector<double> rhs;
  for (const CRow& r : rows) {
    if (!r.canonical) continue;
    Mat k = coefficient_matrix(r, d);
    constraints.push_back(realify_row(k));
    rhs.push_back(r.beta.real());
    if (!r.self_conjugate) {
      constraints.push_back(realify_row(cplx(0.0, -1.0) * k));
      rhs.push_back(r.beta.imag());
    }
  }

  std::ostringstream os;
  os << std::setprecision(17);
  os << "* no-signalling value program, maximize Tr(F0 Y) over the dual\n";
  os << constraints.size() << "\n";
  os << 1 << "\n";
  os << 2 * d << "\n";
  for (std::size_t i = 0; i < rhs.size(); ++i)
    os << rhs[i] << (i + 1 == rhs.size() ? "\n" : " ");
  if (rhs.empty()) os << "\n";
  write_entries(os, 0, realify_row(w));
  for (std::size_t i = 0; i < constraints.size(); ++i)
    write_entries(os, i + 1, constraints[i]);

  std::ofstream file(path, std::ios::binary);
  if (!file) throw input_error("export_sdpa: cannot open " + path);
  file << os.str();
  if (!file.good()) throw input_error("export_sdpa: write failed");
}

}  // namespace

double evaluate_value(const Correlation& c, const ImplicationGame& g) {
  const std::size_t din = g.in.total_dim();
  const std::size_t dout = g.out.total_dim();
  if (c.ch.in.total_dim() != din || c.ch.out.total_dim() != dout)
    throw input_error("evaluate_value: sizes do not match");
  Mat w = objective_matrix(g);
  const double trp = g.p.entries().trace().real();
  return hs_inner(c.ch.choi.entries(), w).real() / trp;
}

double evaluate_value(const Correlation& c, const ClassicalGame& g) {
  const std::size_t din = g.in.total_dim();
  const std::size_t dout = g.out.total_dim();
  if (c.ch.in.total_dim() != din || c.ch.out.total_dim() != dout)
    throw input_error("evaluate_value: sizes do not match");
  double v = 0.0;
  const Mat& choi = c.ch.choi.entries();
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o)
      if (g.allowed[i][o]) v += g.mu[i] * choi(i * dout + o, i * dout + o).real();
  return v;
}

double loc_value_classical(const ClassicalGame& g, std::size_t guard) {
  return loc_best(g, guard).first;
}

ValueResult ns_value(const ImplicationGame& g, const SolverOptions& opt) {
  require_two_by_two(g.in, g.out, "ns_value");
  const std::size_t X = g.in.leg(0).size, Y = g.in.leg(1).size;
  const std::size_t A = g.out.leg(0).size, B = g.out.leg(1).size;
  const std::size_t d = X * Y * A * B;
  const double trp = g.p.entries().trace().real();

  ComplexFeasibility f =
      make_feasibility(d, constraint_rows(X, Y, A, B), objective_matrix(g));

  // Fully depolarizing seed: Choi = I / |out|.
  Eigen::VectorXd zbest =
      f.pack(Mat::Identity(d, d) / static_cast<double>(A * B));
  Eigen::SelfAdjointEigenSolver<Mat> es(g.q.entries(), Eigen::EigenvaluesOnly);

  ValueResult res;
  res.lo = f.objective(zbest) / trp;
  res.hi = es.eigenvalues().maxCoeff() + opt.tol_value;
  res.status = "converged";
  while (res.hi - res.lo > opt.tol_value && res.probes < opt.max_bisect) {
    const double mid = (res.lo + res.hi) / 2.0;
    Eigen::VectorXd z = zbest;
    ++res.probes;
    if (dykstra_probe(f, mid * trp, z, opt)) {
      zbest = z;
      res.lo = mid;
    } else {
      res.hi = mid;
    }
  }
  if (res.hi - res.lo > opt.tol_value) res.status = "max_bisect";
  res.value = f.objective(zbest) / trp;

  Mat c = f.unpack(zbest);
  LegSystem full = g.in.concat(g.out);
  res.witness = Correlation{
      Channel{g.in, g.out, LabeledMatrix(full, (c + c.adjoint()) / 2.0)},
      ClassTag::unknown};
  return res;
}

ValueResult ns_value(const ClassicalGame& g, const SolverOptions& opt) {
  require_two_by_two(g.in, g.out, "ns_value");
  DiagonalFeasibility f = make_diagonal_feasibility(g);
  const std::size_t n = f.din * f.dout;

  auto [loc, table] = loc_best(g, 10000000);
  Eigen::VectorXd zbest(n);
  for (std::size_t i = 0; i < f.din; ++i)
    for (std::size_t o = 0; o < f.dout; ++o)
      zbest(i * f.dout + o) = table[i][o];

  ValueResult res;
  res.lo = loc;
  res.hi = 1.0 + opt.tol_value;
  res.status = "converged";
  while (res.hi - res.lo > opt.tol_value && res.probes < opt.max_bisect) {
    const double mid = (res.lo + res.hi) / 2.0;
    Eigen::VectorXd z = zbest;
    ++res.probes;
    if (dykstra_probe_diag(f, mid, z, opt)) {
      zbest = z;
      res.lo = mid;
    } else {
      res.hi = mid;
    }
  }
  if (res.hi - res.lo > opt.tol_value) res.status = "max_bisect";
  res.value = f.grad.dot(zbest);

  std::vector<std::vector<double>> witness_table(
      f.din, std::vector<double>(f.dout, 0.0));
  for (std::size_t i = 0; i < f.din; ++i)
    for (std::size_t o = 0; o < f.dout; ++o)
      witness_table[i][o] = std::max(0.0, zbest(i * f.dout + o));
  ClassicalTable t = make_table(g.in, g.out, std::move(witness_table));
  res.witness = classical_embed_corr(t, ClassTag::ns);
  return res;
}

void export_sdpa(const ImplicationGame& g, const std::string& path) {
  export_program(g.in, g.out, objective_matrix(g), path);
}

void export_sdpa(const ClassicalGame& g, const std::string& path) {
  export_program(g.in, g.out, objective_matrix(g), path);
}

SdpaProblem read_sdpa(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw input_error("read_sdpa: cannot open " + path);
  std::string line;
  std::vector<std::string> content;
  while (std::getline(file, line)) {
    if (!line.empty() && (line[0] == '*' || line[0] == '"')) continue;
    content.push_back(line);
  }
  std::size_t pos = 0;
  auto next_line = [&]() -> std::string {
    while (pos < content.size() && content[pos].empty()) ++pos;
    if (pos >= content.size()) throw input_error("read_sdpa: truncated file");
    return content[pos++];
  };

  SdpaProblem p;
  p.m = std::stoul(next_line());
  const std::size_t nblock = std::stoul(next_line());
  if (nblock != 1) throw input_error("read_sdpa: expected a single block");
  long bsz = std::stol(next_line());
  p.block_size = static_cast<std::size_t>(bsz < 0 ? -bsz : bsz);
  {
    std::istringstream is(next_line());
    double v;
    while (is >> v) p.rhs.push_back(v);
    if (p.rhs.size() != p.m)
      throw input_error("read_sdpa: wrong number of right-hand sides");
  }
  p.entries.assign(p.m + 1, {});
  while (pos < content.size()) {
    std::istringstream is(content[pos++]);
    std::size_t mat = 0, blk = 0, i = 0, j = 0;
    double v = 0.0;
    if (!(is >> mat >> blk >> i >> j >> v)) continue;
    if (mat > p.m || blk != 1 || i == 0 || j == 0 || i > p.block_size ||
        j > p.block_size)
      throw input_error("read_sdpa: entry out of range");
    p.entries[mat].emplace_back(i - 1, j - 1, v);
  }
  return p;
}

namespace {
double sdpa_trace(const SdpaProblem& p, std::size_t mat,
                  const Eigen::MatrixXd& y) {
  double acc = 0.0;
  for (const auto& [i, j, v] : p.entries[mat]) {
    acc += v * y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (i != j)
      acc += v * y(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
  }
  return acc;
}
}  // namespace

double sdpa_objective(const SdpaProblem& p, const Eigen::MatrixXd& y) {
  if (y.rows() != static_cast<Eigen::Index>(p.block_size))
    throw input_error("sdpa_objective: matrix size mismatch");
  return sdpa_trace(p, 0, y);
}

double sdpa_constraint_violation(const SdpaProblem& p,
                                 const Eigen::MatrixXd& y) {
  double worst = 0.0;
  for (std::size_t k = 1; k <= p.m; ++k)
    worst = std::max(worst, std::abs(sdpa_trace(p, k, y) - p.rhs[k - 1]));
  return worst;
}

Eigen::MatrixXd real_embedding(const Mat& c) {
  const Eigen::Index d = c.rows();
  Eigen::MatrixXd y(2 * d, 2 * d);
  y.topLeftCorner(d, d) = c.real();
  y.topRightCorner(d, d) = -c.imag();
  y.bottomLeftCorner(d, d) = c.imag();
  y.bottomRightCorner(d, d) = c.real();
  return y;
}

}  // namespace qns
