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

#include "qns/stochastic.hpp"

#include <algorithm>
#include <cmath>

namespace qns {

namespace {

Eigen::Index block_index(const StochOpMatrix& e, std::size_t x, std::size_t a,
                         std::size_t k) {
  const std::size_t da = e.a_legs.total_dim();
  return static_cast<Eigen::Index>((x * da + a) * e.ancilla + k);
}

}  // namespace

StochOpMatrix make_stoch(LegSystem x_legs, LegSystem a_legs,
                         std::size_t ancilla, Mat entries) {
  if (ancilla == 0) throw input_error("make_stoch: ancilla must be positive");
  LegSystem all =
      x_legs.concat(a_legs).concat(LegSystem::single(kAncillaLeg, ancilla));
  return StochOpMatrix{std::move(x_legs), std::move(a_legs), ancilla,
                       LabeledMatrix(std::move(all), std::move(entries))};
}

Mat stoch_entry(const StochOpMatrix& e, std::size_t x, std::size_t xp,
                std::size_t a, std::size_t ap) {
  const auto d = static_cast<Eigen::Index>(e.ancilla);
  return e.block.entries().block(block_index(e, x, a, 0),
                                 block_index(e, xp, ap, 0), d, d);
}

StochReport verify_stochastic(const StochOpMatrix& e, double tol,
                              bool bistochastic) {
  StochReport r;
  r.hermiticity = hermiticity_gap(e.block.entries());
  r.psd_violation = std::max(0.0, -min_eigenvalue(e.block.entries()));
  const std::size_t dx = e.x_legs.total_dim();
  const std::size_t da = e.a_legs.total_dim();
  const auto d = static_cast<Eigen::Index>(e.ancilla);
  for (std::size_t x = 0; x < dx; ++x)
    for (std::size_t xp = 0; xp < dx; ++xp) {
      Mat acc = Mat::Zero(d, d);
      for (std::size_t a = 0; a < da; ++a) acc += stoch_entry(e, x, xp, a, a);
      if (x == xp) acc -= Mat::Identity(d, d);
      r.row_violation = std::max(r.row_violation, acc.cwiseAbs().maxCoeff());
    }
  if (bistochastic) {
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t ap = 0; ap < da; ++ap) {
        Mat acc = Mat::Zero(d, d);
        for (std::size_t x = 0; x < dx; ++x) acc += stoch_entry(e, x, x, a, ap);
        if (a == ap) acc -= Mat::Identity(d, d);
        r.col_violation = std::max(r.col_violation, acc.cwiseAbs().maxCoeff());
      }
  }
  const double dim = static_cast<double>(e.block.dim());
  r.pass = r.hermiticity <= tol && r.psd_violation <= tol * dim &&
           r.row_violation <= tol && r.col_violation <= tol;
  return r;
}

double commute_violation(const StochOpMatrix& e, const StochOpMatrix& f) {
  if (e.ancilla != f.ancilla)
    throw input_error("commute_violation: ancilla dimensions must match");
  const std::size_t dxe = e.x_legs.total_dim(), dae = e.a_legs.total_dim();
  const std::size_t dxf = f.x_legs.total_dim(), daf = f.a_legs.total_dim();
  double worst = 0.0;
  for (std::size_t x = 0; x < dxe; ++x)
    for (std::size_t xp = 0; xp < dxe; ++xp)
      for (std::size_t a = 0; a < dae; ++a)
        for (std::size_t ap = 0; ap < dae; ++ap) {
          const Mat em = stoch_entry(e, x, xp, a, ap);
          for (std::size_t y = 0; y < dxf; ++y)
            for (std::size_t yp = 0; yp < dxf; ++yp)
              for (std::size_t b = 0; b < daf; ++b)
                for (std::size_t bp = 0; bp < daf; ++bp) {
                  const Mat fm = stoch_entry(f, y, yp, b, bp);
                  worst = std::max(
                      worst, (em * fm - fm * em).cwiseAbs().maxCoeff());
                }
        }
  return worst;
}

StochOpMatrix dot(const StochOpMatrix& e, const StochOpMatrix& f,
                  double commute_tol) {
  if (e.ancilla != f.ancilla)
    throw input_error("dot: ancilla dimensions must match");
  const std::size_t dxe = e.x_legs.total_dim(), dae = e.a_legs.total_dim();
  const std::size_t dxf = f.x_legs.total_dim(), daf = f.a_legs.total_dim();
  const auto d = static_cast<Eigen::Index>(e.ancilla);

  const double worst = commute_violation(e, f);
  if (worst > commute_tol)
    throw input_error("dot: entries do not commute (max " +
                      std::to_string(worst) + ")");

  LegSystem xl = e.x_legs.concat(f.x_legs);
  LegSystem al = e.a_legs.concat(f.a_legs);
  const std::size_t dx = xl.total_dim(), da = al.total_dim();
  Mat out = Mat::Zero(static_cast<Eigen::Index>(dx * da * e.ancilla),
                      static_cast<Eigen::Index>(dx * da * e.ancilla));
  for (std::size_t x = 0; x < dxe; ++x)
    for (std::size_t xp = 0; xp < dxe; ++xp)
      for (std::size_t a = 0; a < dae; ++a)
        for (std::size_t ap = 0; ap < dae; ++ap) {
          const Mat em = stoch_entry(e, x, xp, a, ap);
          for (std::size_t y = 0; y < dxf; ++y)
            for (std::size_t yp = 0; yp < dxf; ++yp)
              for (std::size_t b = 0; b < daf; ++b)
                for (std::size_t bp = 0; bp < daf; ++bp) {
                  const Mat fm = stoch_entry(f, y, yp, b, bp);
                  const std::size_t gx = x * dxf + y;
                  const std::size_t gxp = xp * dxf + yp;
                  const std::size_t ga = a * daf + b;
                  const std::size_t gap = ap * daf + bp;
                  out.block(
                      static_cast<Eigen::Index>((gx * da + ga) * e.ancilla),
                      static_cast<Eigen::Index>((gxp * da + gap) * e.ancilla),
                      d, d) = em * fm;
                }
        }
  return make_stoch(std::move(xl), std::move(al), e.ancilla, std::move(out));
}

StochOpMatrix odot(const StochOpMatrix& e, const StochOpMatrix& f) {
  const std::size_t dxe = e.x_legs.total_dim(), dae = e.a_legs.total_dim();
  const std::size_t dxf = f.x_legs.total_dim(), daf = f.a_legs.total_dim();
  const std::size_t done = e.ancilla, dtwo = f.ancilla;
  LegSystem xl = e.x_legs.concat(f.x_legs);
  LegSystem al = e.a_legs.concat(f.a_legs);
  const std::size_t dx = xl.total_dim(), da = al.total_dim();
  const std::size_t anc = done * dtwo;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(dx * da * anc),
                      static_cast<Eigen::Index>(dx * da * anc));
  for (std::size_t x = 0; x < dxe; ++x)
    for (std::size_t xp = 0; xp < dxe; ++xp)
      for (std::size_t a = 0; a < dae; ++a)
        for (std::size_t ap = 0; ap < dae; ++ap) {
          const Mat em = stoch_entry(e, x, xp, a, ap);
          for (std::size_t y = 0; y < dxf; ++y)
            for (std::size_t yp = 0; yp < dxf; ++yp)
              for (std::size_t b = 0; b < daf; ++b)
                for (std::size_t bp = 0; bp < daf; ++bp) {
                  const Mat fm = stoch_entry(f, y, yp, b, bp);
                  const std::size_t gx = x * dxf + y;
                  const std::size_t gxp = xp * dxf + yp;
                  const std::size_t ga = a * daf + b;
                  const std::size_t gap = ap * daf + bp;
                  for (std::size_t h = 0; h < done; ++h)
                    for (std::size_t hp = 0; hp < done; ++hp)
                      out.block(static_cast<Eigen::Index>(
                                    (gx * da + ga) * anc + h * dtwo),
                                static_cast<Eigen::Index>(
                                    (gxp * da + gap) * anc + hp * dtwo),
                                static_cast<Eigen::Index>(dtwo),
                                static_cast<Eigen::Index>(dtwo)) =
                          em(static_cast<Eigen::Index>(h),
                             static_cast<Eigen::Index>(hp)) *
                          fm;
                }
        }
  return make_stoch(std::move(xl), std::move(al), anc, std::move(out));
}

StochOpMatrix embed_ancilla(const StochOpMatrix& e, std::size_t left,
                            std::size_t right) {
  if (left == 0 || right == 0)
    throw input_error("embed_ancilla: factors must be positive");
  const std::size_t dx = e.x_legs.total_dim(), da = e.a_legs.total_dim();
  const std::size_t d = e.ancilla, anc = left * d * right;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(dx * da * anc),
                      static_cast<Eigen::Index>(dx * da * anc));
  for (std::size_t x = 0; x < dx; ++x)
    for (std::size_t xp = 0; xp < dx; ++xp)
      for (std::size_t a = 0; a < da; ++a)
        for (std::size_t ap = 0; ap < da; ++ap) {
          const Mat em = stoch_entry(e, x, xp, a, ap);
          for (std::size_t l = 0; l < left; ++l)
            for (std::size_t k = 0; k < d; ++k)
              for (std::size_t kp = 0; kp < d; ++kp)
                for (std::size_t rg = 0; rg < right; ++rg)
                  out(static_cast<Eigen::Index>((x * da + a) * anc +
                                                (l * d + k) * right + rg),
                      static_cast<Eigen::Index>((xp * da + ap) * anc +
                                                (l * d + kp) * right + rg)) =
                      em(static_cast<Eigen::Index>(k),
                         static_cast<Eigen::Index>(kp));
        }
  return make_stoch(e.x_legs, e.a_legs, anc, std::move(out));
}

Channel channel_from(const StochOpMatrix& e, const Mat& s) {
  LabeledMatrix choi = slice(e.block, kAncillaLeg, s);
  return Channel{e.x_legs, e.a_legs, std::move(choi)};
}

namespace {

// Slice leg `xi` of x_legs at (u,u'), trace leg `ai` of a_legs diagonally.
// p must have exactly two x legs and two a legs; (xi, ai) is the pair
// (0,0) or (1,1).
Mat pair_slice(const StochOpMatrix& p, std::size_t xi, std::size_t u,
               std::size_t up) {
  const std::size_t s0 = p.x_legs.leg(0).size, s1 = p.x_legs.leg(1).size;
  const std::size_t t0 = p.a_legs.leg(0).size, t1 = p.a_legs.leg(1).size;
  const std::size_t d = p.ancilla;
  const std::size_t keep_x = (xi == 0) ? s1 : s0;
  const std::size_t keep_a = (xi == 0) ? t1 : t0;
  const std::size_t dim = keep_x * keep_a * d;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(dim),
                      static_cast<Eigen::Index>(dim));
  const std::size_t traced_a = (xi == 0) ? t0 : t1;
  for (std::size_t v = 0; v < keep_x; ++v)
    for (std::size_t vp = 0; vp < keep_x; ++vp)
      for (std::size_t c = 0; c < keep_a; ++c)
        for (std::size_t cp = 0; cp < keep_a; ++cp) {
          Mat acc = Mat::Zero(static_cast<Eigen::Index>(d),
                              static_cast<Eigen::Index>(d));
          for (std::size_t w = 0; w < traced_a; ++w) {
            const std::size_t xf =
                (xi == 0) ? u * s1 + v : v * s1 + u;
            const std::size_t xfp =
                (xi == 0) ? up * s1 + vp : vp * s1 + up;
            const std::size_t af = (xi == 0) ? w * t1 + c : c * t1 + w;
            const std::size_t afp = (xi == 0) ? w * t1 + cp : cp * t1 + w;
            acc += stoch_entry(p, xf, xfp, af, afp);
          }
          out.block(static_cast<Eigen::Index>((v * keep_a + c) * d),
                    static_cast<Eigen::Index>((vp * keep_a + cp) * d),
                    static_cast<Eigen::Index>(d),
                    static_cast<Eigen::Index>(d)) = acc;
        }
  return out;
}

}  // namespace

StrongStochReport verify_strongly_stochastic(const StochOpMatrix& p,
                                             double tol) {
  if (p.x_legs.leg_count() != 2 || p.a_legs.leg_count() != 2)
    throw input_error(
        "verify_strongly_stochastic: needs two x legs and two a legs");
  StrongStochReport r;
  r.base = verify_stochastic(p, tol);
  for (std::size_t xi : {std::size_t{0}, std::size_t{1}}) {
    const std::size_t n = p.x_legs.leg(xi == 0 ? 0 : 1).size;
    // Common marginal: mean of diagonal slices.
    Mat mean;
    for (std::size_t u = 0; u < n; ++u) {
      Mat s = pair_slice(p, xi, u, u);
      if (u == 0)
        mean = s;
      else
        mean += s;
    }
    mean /= static_cast<double>(n);
    double viol = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t up = 0; up < n; ++up) {
        Mat s = pair_slice(p, xi, u, up);
        if (u == up)
          viol = std::max(viol, max_abs_diff(s, mean));
        else
          viol = std::max(viol, s.cwiseAbs().maxCoeff());
      }
    if (xi == 0)
      r.first_pair_violation = viol;
    else
      r.second_pair_violation = viol;
  }
  r.pass = r.base.pass && r.first_pair_violation <= tol &&
           r.second_pair_violation <= tol;
  return r;
}

StochOpMatrix strong_marginal(const StochOpMatrix& p, bool keep_first) {
  if (p.x_legs.leg_count() != 2 || p.a_legs.leg_count() != 2)
    throw input_error("strong_marginal: needs two x legs and two a legs");
  const std::size_t xi = keep_first ? 1 : 0;  // slice the other pair
  const std::size_t n = p.x_legs.leg(xi).size;
  Mat mean;
  for (std::size_t u = 0; u < n; ++u) {
    Mat s = pair_slice(p, xi, u, u);
    if (u == 0)
      mean = s;
    else
      mean += s;
  }
  mean /= static_cast<double>(n);
  const Leg xl = keep_first ? p.x_legs.leg(0) : p.x_legs.leg(1);
  const Leg al = keep_first ? p.a_legs.leg(0) : p.a_legs.leg(1);
  return make_stoch(LegSystem({xl}), LegSystem({al}), p.ancilla,
                    std::move(mean));
}

StochOpMatrix compose_reps(const StochOpMatrix& e, const StochOpMatrix& p) {
  if (p.x_legs.leg_count() != 2 || p.a_legs.leg_count() != 2)
    throw input_error("compose_reps: p needs two x legs and two a legs");
  const std::size_t nx2 = p.x_legs.leg(0).size;
  const std::size_t na1 = p.x_legs.leg(1).size;
  const std::size_t nx1 = p.a_legs.leg(0).size;
  const std::size_t na2 = p.a_legs.leg(1).size;
  if (e.x_legs.total_dim() != nx1 || e.a_legs.total_dim() != na1)
    throw input_error("compose_reps: alphabet sizes do not line up");
  StrongStochReport sr = verify_strongly_stochastic(p);
  if (!sr.pass)
    throw input_error("compose_reps: p is not strongly stochastic");

  const std::size_t de = e.ancilla, dp = p.ancilla, anc = de * dp;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(nx2 * na2 * anc),
                      static_cast<Eigen::Index>(nx2 * na2 * anc));
  for (std::size_t x2 = 0; x2 < nx2; ++x2)
    for (std::size_t x2p = 0; x2p < nx2; ++x2p)
      for (std::size_t a2 = 0; a2 < na2; ++a2)
        for (std::size_t a2p = 0; a2p < na2; ++a2p) {
          Mat acc = Mat::Zero(static_cast<Eigen::Index>(anc),
                              static_cast<Eigen::Index>(anc));
          for (std::size_t x1 = 0; x1 < nx1; ++x1)
            for (std::size_t x1p = 0; x1p < nx1; ++x1p)
              for (std::size_t a1 = 0; a1 < na1; ++a1)
                for (std::size_t a1p = 0; a1p < na1; ++a1p) {
                  const Mat em = stoch_entry(e, x1, x1p, a1, a1p);
                  const Mat pm =
                      stoch_entry(p, x2 * na1 + a1, x2p * na1 + a1p,
                                  x1 * na2 + a2, x1p * na2 + a2p);
                  for (std::size_t h = 0; h < de; ++h)
                    for (std::size_t hp = 0; hp < de; ++hp)
                      acc.block(static_cast<Eigen::Index>(h * dp),
                                static_cast<Eigen::Index>(hp * dp),
                                static_cast<Eigen::Index>(dp),
                                static_cast<Eigen::Index>(dp)) +=
                          em(static_cast<Eigen::Index>(h),
                             static_cast<Eigen::Index>(hp)) *
                          pm;
                }
          out.block(static_cast<Eigen::Index>((x2 * na2 + a2) * anc),
                    static_cast<Eigen::Index>((x2p * na2 + a2p) * anc),
                    static_cast<Eigen::Index>(anc),
                    static_cast<Eigen::Index>(anc)) = acc;
        }
  return make_stoch(LegSystem({p.x_legs.leg(0)}), LegSystem({p.a_legs.leg(1)}),
                    anc, std::move(out));
}

}  // namespace qns
