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

#include "qns/tracial.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qns/simulate.hpp"

namespace qns {

namespace {

// tau(u v) without forming the product.
cplx traced_product(const Eigen::VectorXd& w, const Mat& u, const Mat& v) {
  cplx acc(0.0, 0.0);
  const std::size_t d = static_cast<std::size_t>(u.rows());
  for (std::size_t k = 0; k < d; ++k) {
    if (w[static_cast<Eigen::Index>(k)] == 0.0) continue;
    cplx inner(0.0, 0.0);
    for (std::size_t j = 0; j < d; ++j) inner += u(k, j) * v(j, k);
    acc += w[static_cast<Eigen::Index>(k)] * inner;
  }
  return acc;
}

}  // namespace

BlockIsometry make_block_isometry(std::size_t X, std::size_t A,
                                  std::size_t dH, std::size_t dK,
                                  std::vector<std::vector<Mat>> v) {
  if (X == 0 || A == 0 || dH == 0 || dK == 0)
    throw input_error("make_block_isometry: dimensions must be positive");
  if (v.size() != A) throw input_error("make_block_isometry: need A rows");
  for (const auto& row : v) {
    if (row.size() != X)
      throw input_error("make_block_isometry: need X blocks per row");
    for (const auto& blk : row)
      if (blk.rows() != static_cast<Eigen::Index>(dK) ||
          blk.cols() != static_cast<Eigen::Index>(dH))
        throw input_error("make_block_isometry: block shape mismatch");
  }
  return BlockIsometry{X, A, dH, dK, std::move(v)};
}

double isometry_violation(const BlockIsometry& b) {
  double worst = 0.0;
  for (std::size_t x = 0; x < b.X; ++x) {
    for (std::size_t xp = 0; xp < b.X; ++xp) {
      Mat s = Mat::Zero(b.dH, b.dH);
      for (std::size_t a = 0; a < b.A; ++a)
        s += b.v[a][x].adjoint() * b.v[a][xp];
      if (x == xp) s -= Mat::Identity(b.dH, b.dH);
      worst = std::max(worst, s.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double co_isometry_violation(const BlockIsometry& b) {
  double worst = 0.0;
  for (std::size_t a = 0; a < b.A; ++a) {
    for (std::size_t ap = 0; ap < b.A; ++ap) {
      Mat s = Mat::Zero(b.dK, b.dK);
      for (std::size_t x = 0; x < b.X; ++x)
        s += b.v[a][x] * b.v[ap][x].adjoint();
      if (a == ap) s -= Mat::Identity(b.dK, b.dK);
      worst = std::max(worst, s.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

StochOpMatrix generators_of(const BlockIsometry& b) {
  LegSystem x = LegSystem::single("x", b.X);
  LegSystem a = LegSystem::single("a", b.A);
  const std::size_t d = b.dH;
  const std::size_t dim = b.X * b.A * d;
  Mat block(dim, dim);
  for (std::size_t xi = 0; xi < b.X; ++xi)
    for (std::size_t ai = 0; ai < b.A; ++ai) {
      for (std::size_t xj = 0; xj < b.X; ++xj)
        for (std::size_t aj = 0; aj < b.A; ++aj) {
          Mat e = b.v[ai][xi].adjoint() * b.v[aj][xj];
          block.block((xi * b.A + ai) * d, (xj * b.A + aj) * d, d, d) = e;
        }
    }
  return make_stoch(x, a, d, std::move(block));
}

TraceRep make_trace_rep(BlockIsometry iso, Eigen::VectorXd weights) {
  if (static_cast<std::size_t>(weights.size()) != iso.dH)
    throw input_error("make_trace_rep: weights must live on the ancilla");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < weights.size(); ++k) {
    if (weights[k] < -1e-12)
      throw input_error("make_trace_rep: weights must be nonnegative");
    sum += weights[k];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw input_error("make_trace_rep: weights must sum to one");
  return TraceRep{std::move(iso), std::move(weights)};
}

TraceRep make_trace_rep(BlockIsometry iso) {
  Eigen::VectorXd w =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(iso.dH),
                                1.0 / static_cast<double>(iso.dH));
  return TraceRep{std::move(iso), std::move(w)};
}

cplx weighted_trace(const Eigen::VectorXd& w, const Mat& m) {
  cplx acc(0.0, 0.0);
  for (Eigen::Index k = 0; k < w.size(); ++k) acc += w[k] * m(k, k);
  return acc;
}

double traciality_violation(const StochOpMatrix& gens,
                            const Eigen::VectorXd& w) {
  const std::size_t nx = gens.x_legs.total_dim();
  const std::size_t na = gens.a_legs.total_dim();
  std::vector<Mat> entries;
  entries.reserve(nx * nx * na * na);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t xp = 0; xp < nx; ++xp)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t ap = 0; ap < na; ++ap)
          entries.push_back(stoch_entry(gens, x, xp, a, ap));
  double worst = 0.0;
  for (const Mat& u : entries)
    for (const Mat& v : entries)
      worst = std::max(worst, std::abs(traced_product(w, u, v) -
                                       traced_product(w, v, u)));
  return worst;
}

Correlation correlation_from_generators(const StochOpMatrix& gens,
                                        const Eigen::VectorXd& w,
                                        ClassTag tag) {
  const std::size_t nx = gens.x_legs.total_dim();
  const std::size_t na = gens.a_legs.total_dim();
  if (static_cast<std::size_t>(w.size()) != gens.ancilla)
    throw input_error(
        "correlation_from_generators: weights must live on the ancilla");
  LegSystem in({Leg{"x", nx}, Leg{"y", nx}});
  LegSystem out({Leg{"a", na}, Leg{"b", na}});

  std::vector<Mat> entry(nx * nx * na * na);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t xp = 0; xp < nx; ++xp)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t ap = 0; ap < na; ++ap)
          entry[((x * nx + xp) * na + a) * na + ap] =
              stoch_entry(gens, x, xp, a, ap);

  const std::size_t dim = nx * nx * na * na;
  Mat choi(dim, dim);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < nx; ++y)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) {
          const std::size_t row = ((x * nx + y) * na + a) * na + b;
          for (std::size_t xp = 0; xp < nx; ++xp)
            for (std::size_t yp = 0; yp < nx; ++yp)
              for (std::size_t ap = 0; ap < na; ++ap)
                for (std::size_t bp = 0; bp < na; ++bp) {
                  const std::size_t col = ((xp * nx + yp) * na + ap) * na + bp;
                  choi(row, col) = traced_product(
                      w, entry[((x * nx + xp) * na + a) * na + ap],
                      entry[((yp * nx + y) * na + bp) * na + b]);
                }
        }
  LegSystem full = in.concat(out);
  return Correlation{Channel{in, out, LabeledMatrix(full, std::move(choi))},
                     tag};
}

Correlation tracial_correlation(const TraceRep& r) {
  return correlation_from_generators(generators_of(r.iso), r.weights,
                                     ClassTag::ns);
}

SqnsCorrelation jointly_tracial_correlation(const TraceRep& rx,
                                            const TraceRep& ra) {
  StochOpMatrix gx = generators_of(rx.iso);
  StochOpMatrix ga = generators_of(ra.iso);
  const std::size_t x2 = rx.iso.X, x1 = rx.iso.A;
  const std::size_t a1 = ra.iso.X, a2 = ra.iso.A;

  LegSystem in({Leg{"x2", x2}, Leg{"y2", x2}, Leg{"a1", a1}, Leg{"b1", a1}});
  LegSystem out({Leg{"x1", x1}, Leg{"y1", x1}, Leg{"a2", a2}, Leg{"b2", a2}});

  std::vector<Mat> ex(x2 * x2 * x1 * x1), ea(a1 * a1 * a2 * a2);
  for (std::size_t i = 0; i < x2; ++i)
    for (std::size_t j = 0; j < x2; ++j)
      for (std::size_t k = 0; k < x1; ++k)
        for (std::size_t l = 0; l < x1; ++l)
          ex[((i * x2 + j) * x1 + k) * x1 + l] = stoch_entry(gx, i, j, k, l);
  for (std::size_t i = 0; i < a1; ++i)
    for (std::size_t j = 0; j < a1; ++j)
      for (std::size_t k = 0; k < a2; ++k)
        for (std::size_t l = 0; l < a2; ++l)
          ea[((i * a1 + j) * a2 + k) * a2 + l] = stoch_entry(ga, i, j, k, l);

  const std::size_t din = in.total_dim();
  const std::size_t dout = out.total_dim();
  const std::size_t dim = din * dout;
  Mat choi(dim, dim);
  std::vector<std::size_t> r(8), c(8);
  // row multi-index order: (x2, y2, a1, b1, x1, y1, a2, b2)
  const std::size_t sz[8] = {x2, x2, a1, a1, x1, x1, a2, a2};
  for (std::size_t row = 0; row < dim; ++row) {
    std::size_t rest = row;
    for (std::size_t k = 8; k-- > 0;) {
      r[k] = rest % sz[k];
      rest /= sz[k];
    }
    for (std::size_t col = 0; col < dim; ++col) {
      rest = col;
      for (std::size_t k = 8; k-- > 0;) {
        c[k] = rest % sz[k];
        rest /= sz[k];
      }
      const cplx tx = traced_product(
          rx.weights, ex[((r[0] * x2 + c[0]) * x1 + r[4]) * x1 + c[4]],
          ex[((c[1] * x2 + r[1]) * x1 + c[5]) * x1 + r[5]]);
      const cplx ta = traced_product(
          ra.weights, ea[((r[2] * a1 + c[2]) * a2 + r[6]) * a2 + c[6]],
          ea[((c[3] * a1 + r[3]) * a2 + c[7]) * a2 + r[7]]);
      choi(row, col) = tx * ta;
    }
  }
  LegSystem full = in.concat(out);
  return SqnsCorrelation{Channel{in, out, LabeledMatrix(full, std::move(choi))},
                         ClassTag::sns};
}

ConcurrencyReport is_concurrent(const Channel& c, double tol) {
  if (c.in.leg_count() != 2 || c.out.leg_count() != 2 ||
      c.in.leg(0).size != c.in.leg(1).size ||
      c.out.leg(0).size != c.out.leg(1).size)
    throw input_error("is_concurrent: needs two equal-size legs on each side");
  LabeledMatrix jin = max_entangled_normalized(c.in.leg(0), c.in.leg(1));
  LabeledMatrix jout = max_entangled_normalized(c.out.leg(0), c.out.leg(1));
  LabeledMatrix image = apply(c, jin);
  ConcurrencyReport rep;
  rep.violation = max_abs_diff(image.entries(), jout.entries());
  rep.pass = rep.violation <= tol;
  return rep;
}

RelationsReport verify_cxyab_relations(const StochOpMatrix& p, double tol) {
  if (p.x_legs.leg_count() != 2 || p.a_legs.leg_count() != 2)
    throw input_error("verify_cxyab_relations: needs two x and two a legs");
  const std::size_t nx = p.x_legs.leg(0).size;
  const std::size_t ny = p.x_legs.leg(1).size;
  const std::size_t na = p.a_legs.leg(0).size;
  const std::size_t nb = p.a_legs.leg(1).size;
  const std::size_t d = p.ancilla;
  const Mat id = Mat::Identity(d, d);
  auto entry = [&](std::size_t x, std::size_t y, std::size_t xp,
                   std::size_t yp, std::size_t a, std::size_t b,
                   std::size_t ap, std::size_t bp) {
    return stoch_entry(p, x * ny + y, xp * ny + yp, a * nb + b, ap * nb + bp);
  };
  RelationsReport rep;

  // [0], [1]: sum over the A alphabet with the X indices matched / split.
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t yp = 0; yp < ny; ++yp)
      for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t bp = 0; bp < nb; ++bp) {
          Mat mean = Mat::Zero(d, d);
          std::vector<Mat> diag(nx, Mat::Zero(d, d));
          for (std::size_t x = 0; x < nx; ++x) {
            for (std::size_t xp = 0; xp < nx; ++xp) {
              Mat s = Mat::Zero(d, d);
              for (std::size_t a = 0; a < na; ++a)
                s += entry(x, y, xp, yp, a, b, a, bp);
              if (x == xp) {
                diag[x] = s;
                mean += s / static_cast<double>(nx);
              } else {
                rep.violation[1] =
                    std::max(rep.violation[1], s.cwiseAbs().maxCoeff());
              }
            }
          }
          for (std::size_t x = 0; x < nx; ++x)
            rep.violation[0] = std::max(
                rep.violation[0], (diag[x] - mean).cwiseAbs().maxCoeff());
        }

  // [2], [3]: sum over the B alphabet with the Y indices matched / split.
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t xp = 0; xp < nx; ++xp)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t ap = 0; ap < na; ++ap) {
          Mat mean = Mat::Zero(d, d);
          std::vector<Mat> diag(ny, Mat::Zero(d, d));
          for (std::size_t y = 0; y < ny; ++y) {
            for (std::size_t yp = 0; yp < ny; ++yp) {
              Mat s = Mat::Zero(d, d);
              for (std::size_t b = 0; b < nb; ++b)
                s += entry(x, y, xp, yp, a, b, ap, b);
              if (y == yp) {
                diag[y] = s;
                mean += s / static_cast<double>(ny);
              } else {
                rep.violation[3] =
                    std::max(rep.violation[3], s.cwiseAbs().maxCoeff());
              }
            }
          }
          for (std::size_t y = 0; y < ny; ++y)
            rep.violation[2] = std::max(
                rep.violation[2], (diag[y] - mean).cwiseAbs().maxCoeff());
        }

  // [4]: full answer sum reproduces delta delta I.
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t xp = 0; xp < nx; ++xp)
        for (std::size_t yp = 0; yp < ny; ++yp) {
          Mat s = Mat::Zero(d, d);
          for (std::size_t a = 0; a < na; ++a)
            for (std::size_t b = 0; b < nb; ++b)
              s += entry(x, y, xp, yp, a, b, a, b);
          if (x == xp && y == yp) s -= id;
          rep.violation[4] =
              std::max(rep.violation[4], s.cwiseAbs().maxCoeff());
        }

  for (double v : rep.violation) rep.max_violation = std::max(rep.max_violation, v);
  rep.pass = rep.max_violation <= tol;
  return rep;
}

SimulatedTraceReport simulated_trace(const TraceRep& rx, const TraceRep& ra,
                                     const TraceRep& inner, double tol) {
  if (rx.iso.A != inner.iso.X || ra.iso.X != inner.iso.A)
    throw input_error("simulated_trace: inner alphabets do not line up");

  SimulatedTraceReport rep;
  rep.joint = jointly_tracial_correlation(rx, ra);
  rep.inner = tracial_correlation(inner);
  rep.simulated = simulate(rep.joint, rep.inner);

  // Composed generator system on H_X (x) H_A (x) H_inner.
  StochOpMatrix gx = generators_of(rx.iso);
  StochOpMatrix ga = generators_of(ra.iso);
  StochOpMatrix gi = generators_of(inner.iso);
  const std::size_t x2 = rx.iso.X, x1 = rx.iso.A;
  const std::size_t a1 = ra.iso.X, a2 = ra.iso.A;
  const std::size_t dx = rx.iso.dH, da = ra.iso.dH, di = inner.iso.dH;
  const std::size_t d = dx * da * di;
  const std::size_t dim = x2 * a2 * d;
  Mat block = Mat::Zero(dim, dim);
  for (std::size_t i2 = 0; i2 < x2; ++i2)
    for (std::size_t o2 = 0; o2 < a2; ++o2)
      for (std::size_t j2 = 0; j2 < x2; ++j2)
        for (std::size_t p2 = 0; p2 < a2; ++p2) {
          Mat acc = Mat::Zero(d, d);
          for (std::size_t i1 = 0; i1 < x1; ++i1)
            for (std::size_t j1 = 0; j1 < x1; ++j1)
              for (std::size_t o1 = 0; o1 < a1; ++o1)
                for (std::size_t p1 = 0; p1 < a1; ++p1) {
                  const Mat ux = stoch_entry(gx, i2, j2, i1, j1);
                  const Mat ua = stoch_entry(ga, o1, p1, o2, p2);
                  const Mat ui = stoch_entry(gi, i1, j1, o1, p1);
                  for (std::size_t kx = 0; kx < dx; ++kx)
                    for (std::size_t ka = 0; ka < da; ++ka)
                      for (std::size_t ki = 0; ki < di; ++ki)
                        for (std::size_t lx = 0; lx < dx; ++lx)
                          for (std::size_t la = 0; la < da; ++la)
                            for (std::size_t li = 0; li < di; ++li)
                              acc((kx * da + ka) * di + ki,
                                  (lx * da + la) * di + li) +=
                                  ux(kx, lx) * ua(ka, la) * ui(ki, li);
                }
          block.block((i2 * a2 + o2) * d, (j2 * a2 + p2) * d, d, d) = acc;
        }
  StochOpMatrix composed = make_stoch(LegSystem::single("x", x2),
                                      LegSystem::single("a", a2), d,
                                      std::move(block));
  Eigen::VectorXd w(d);
  for (std::size_t kx = 0; kx < dx; ++kx)
    for (std::size_t ka = 0; ka < da; ++ka)
      for (std::size_t ki = 0; ki < di; ++ki)
        w[(kx * da + ka) * di + ki] =
            rx.weights[kx] * ra.weights[ka] * inner.weights[ki];
  rep.direct = correlation_from_generators(composed, w, ClassTag::ns);

  rep.defect = max_abs_diff(rep.simulated.ch.choi.entries(),
                            rep.direct.ch.choi.entries());
  rep.concurrency = is_concurrent(rep.simulated.ch, tol);
  rep.qns = is_qns(rep.simulated, tol);
  rep.pass = rep.defect <= tol && rep.concurrency.pass && rep.qns.pass;
  return rep;
}

}  // namespace qns
