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

#include "qns/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace qns {

std::string to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::ns: return "ns";
    case ClassTag::sns: return "sns";
    case ClassTag::loc_built: return "loc-built";
    case ClassTag::q_built: return "q-built";
    case ClassTag::qc_built: return "qc-built";
    default: return "unknown";
  }
}

ClassTag class_tag_from_string(const std::string& s) {
  if (s == "ns") return ClassTag::ns;
  if (s == "sns") return ClassTag::sns;
  if (s == "loc-built") return ClassTag::loc_built;
  if (s == "q-built") return ClassTag::q_built;
  if (s == "qc-built") return ClassTag::qc_built;
  if (s == "unknown") return ClassTag::unknown;
  throw input_error("unknown class tag: " + s);
}

Correlation make_correlation(Channel ch, ClassTag tag) {
  if (ch.in.leg_count() != 2 || ch.out.leg_count() != 2)
    throw input_error("correlation needs two input and two output legs");
  return Correlation{std::move(ch), tag};
}

SqnsCorrelation make_sqns(Channel ch, ClassTag tag) {
  if (ch.in.leg_count() != 4 || ch.out.leg_count() != 4)
    throw input_error(
        "two-sided correlation needs four input and four output legs");
  return SqnsCorrelation{std::move(ch), tag};
}

Correlation adjoint(const Correlation& c) {
  return Correlation{adjoint(c.ch), ClassTag::unknown};
}

SqnsCorrelation adjoint(const SqnsCorrelation& c) {
  return SqnsCorrelation{adjoint(c.ch), ClassTag::unknown};
}

namespace {

// Flat-index assembly tables for one leg within a system: table[v][rest]
// gives the flat index with leg `pos` set to v and the remaining legs set
// according to rest (flat over the others in order).
std::vector<std::vector<std::size_t>> assembly_table(const LegSystem& ls,
                                                     std::size_t pos) {
  const std::size_t n = ls.leg(pos).size;
  std::size_t rest_dim = 1;
  for (std::size_t i = 0; i < ls.leg_count(); ++i)
    if (i != pos) rest_dim *= ls.leg(i).size;
  std::vector<std::vector<std::size_t>> table(
      n, std::vector<std::size_t>(rest_dim));
  std::vector<std::size_t> multi(ls.leg_count());
  for (std::size_t r = 0; r < rest_dim; ++r) {
    std::size_t rem = r;
    for (std::size_t i = ls.leg_count(); i-- > 0;) {
      if (i == pos) continue;
      multi[i] = rem % ls.leg(i).size;
      rem /= ls.leg(i).size;
    }
    for (std::size_t v = 0; v < n; ++v) {
      multi[pos] = v;
      table[v][r] = ls.flat(multi);
    }
  }
  return table;
}

}  // namespace

std::vector<double> no_signalling_violations(const Channel& ch) {
  const std::size_t m = ch.in.leg_count();
  if (ch.out.leg_count() != m)
    throw input_error(
        "no_signalling_violations: input/output leg counts differ");
  const std::size_t dout = ch.out.total_dim();
  const Mat& c = ch.choi.entries();

  std::vector<double> viol(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t nin = ch.in.leg(k).size;
    const std::size_t nout = ch.out.leg(k).size;
    auto itab = assembly_table(ch.in, k);
    auto otab = assembly_table(ch.out, k);
    const std::size_t irest = itab[0].size();
    const std::size_t orest = otab[0].size();
    Mat pair(nin, nin);
    for (std::size_t ir = 0; ir < irest; ++ir)
      for (std::size_t irp = 0; irp < irest; ++irp)
        for (std::size_t orr = 0; orr < orest; ++orr)
          for (std::size_t orp = 0; orp < orest; ++orp) {
            for (std::size_t u = 0; u < nin; ++u)
              for (std::size_t up = 0; up < nin; ++up) {
                cplx acc = 0.0;
                for (std::size_t w = 0; w < nout; ++w)
                  acc += c(static_cast<Eigen::Index>(itab[u][ir] * dout +
                                                     otab[w][orr]),
                           static_cast<Eigen::Index>(itab[up][irp] * dout +
                                                     otab[w][orp]));
                pair(static_cast<Eigen::Index>(u),
                     static_cast<Eigen::Index>(up)) = acc;
              }
            const cplx mean = pair.trace() / static_cast<double>(nin);
            for (std::size_t u = 0; u < nin; ++u)
              for (std::size_t up = 0; up < nin; ++up) {
                const cplx v = pair(static_cast<Eigen::Index>(u),
                                    static_cast<Eigen::Index>(up));
                const double dev = (u == up) ? std::abs(v - mean) : std::abs(v);
                viol[k] = std::max(viol[k], dev);
              }
          }
  }
  return viol;
}

QnsReport is_qns(const Correlation& c, double tol) {
  QnsReport r;
  r.channel = verify_channel(c.ch, tol);
  std::vector<double> v = no_signalling_violations(c.ch);
  r.a_side = v[0];
  r.b_side = v[1];
  r.max_violation = std::max(r.a_side, r.b_side);
  r.pass = r.channel.pass && r.max_violation <= tol;
  return r;
}

SqnsReport is_sqns(const SqnsCorrelation& c, double tol) {
  SqnsReport r;
  r.channel = verify_channel(c.ch, tol);
  std::vector<double> v = no_signalling_violations(c.ch);
  for (std::size_t k = 0; k < 4; ++k) {
    r.pair_violation[k] = v[k];
    r.max_violation = std::max(r.max_violation, v[k]);
  }
  r.pass = r.channel.pass && r.max_violation <= tol;
  return r;
}

namespace {

Channel with_leg_names(const Channel& c, const std::vector<std::string>& in,
                       const std::vector<std::string>& out) {
  LegSystem nin = c.in.renamed(in);
  LegSystem nout = c.out.renamed(out);
  LegSystem all = nin.concat(nout);
  return Channel{std::move(nin), std::move(nout),
                 LabeledMatrix(all, c.choi.entries())};
}

StochOpMatrix with_stoch_names(const StochOpMatrix& e,
                               const std::vector<std::string>& x,
                               const std::vector<std::string>& a) {
  return make_stoch(e.x_legs.renamed(x), e.a_legs.renamed(a), e.ancilla,
                    e.block.entries());
}

void check_weights(const std::vector<double>& w, std::size_t n, double tol) {
  if (w.size() != n) throw input_error("weights/components count mismatch");
  double sum = 0.0;
  for (double v : w) {
    if (v < -tol) throw input_error("negative mixture weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > std::max(tol, 1e-12))
    throw input_error("mixture weights must sum to one");
}

void check_component(const Channel& c, double tol) {
  if (c.in.leg_count() != 1 || c.out.leg_count() != 1)
    throw input_error("mixture components must be single-leg channels");
  if (!verify_channel(c, tol).pass)
    throw input_error("mixture component is not CPTP");
}

void check_unit_vector(const Vec& v, std::size_t dim, double tol) {
  if (static_cast<std::size_t>(v.size()) != dim)
    throw input_error("state vector dimension mismatch");
  if (std::abs(v.norm() - 1.0) > std::max(tol, 1e-9))
    throw input_error("state vector must be normalized");
}

}  // namespace

Correlation build_local(const std::vector<double>& weights,
                        const std::vector<std::array<Channel, 2>>& components,
                        double tol) {
  if (components.empty()) throw input_error("build_local: no components");
  check_weights(weights, components.size(), tol);
  LabeledMatrix acc;
  bool first = true;
  for (std::size_t j = 0; j < components.size(); ++j) {
    for (const Channel& c : components[j]) check_component(c, tol);
    Channel pa = with_leg_names(components[j][0], {"x"}, {"a"});
    Channel pb = with_leg_names(components[j][1], {"y"}, {"b"});
    LabeledMatrix t = tensor_product(pa.choi, pb.choi);
    t = permute_legs(t, {"x", "y", "a", "b"});
    if (first) {
      acc = LabeledMatrix(t.legs(), weights[j] * t.entries());
      first = false;
    } else {
      if (!acc.legs().same_shape(t.legs()))
        throw input_error("build_local: component shapes differ");
      acc.entries() += weights[j] * t.entries();
    }
  }
  LegSystem in = acc.legs().subset({"x", "y"});
  LegSystem out = acc.legs().subset({"a", "b"});
  return Correlation{Channel{in, out, acc}, ClassTag::loc_built};
}

SqnsCorrelation build_local(
    const std::vector<double>& weights,
    const std::vector<std::array<Channel, 4>>& components, double tol) {
  if (components.empty()) throw input_error("build_local: no components");
  check_weights(weights, components.size(), tol);
  LabeledMatrix acc;
  bool first = true;
  for (std::size_t j = 0; j < components.size(); ++j) {
    for (const Channel& c : components[j]) check_component(c, tol);
    Channel px = with_leg_names(components[j][0], {"x2"}, {"x1"});
    Channel py = with_leg_names(components[j][1], {"y2"}, {"y1"});
    Channel pa = with_leg_names(components[j][2], {"a1"}, {"a2"});
    Channel pb = with_leg_names(components[j][3], {"b1"}, {"b2"});
    LabeledMatrix t = tensor_product(tensor_product(px.choi, py.choi),
                                     tensor_product(pa.choi, pb.choi));
    t = permute_legs(t, {"x2", "y2", "a1", "b1", "x1", "y1", "a2", "b2"});
    if (first) {
      acc = LabeledMatrix(t.legs(), weights[j] * t.entries());
      first = false;
    } else {
      if (!acc.legs().same_shape(t.legs()))
        throw input_error("build_local: component shapes differ");
      acc.entries() += weights[j] * t.entries();
    }
  }
  LegSystem in = acc.legs().subset({"x2", "y2", "a1", "b1"});
  LegSystem out = acc.legs().subset({"x1", "y1", "a2", "b2"});
  return SqnsCorrelation{Channel{in, out, acc}, ClassTag::loc_built};
}

SqnsCorrelation build_quantum(const StochOpMatrix& m, const StochOpMatrix& n,
                              const Vec& xi, double tol) {
  if (m.x_legs.leg_count() != 2 || m.a_legs.leg_count() != 2 ||
      n.x_legs.leg_count() != 2 || n.a_legs.leg_count() != 2)
    throw input_error("build_quantum: operands need two x and two a legs");
  if (!verify_strongly_stochastic(m, tol).pass)
    throw input_error("build_quantum: m is not strongly stochastic");
  if (!verify_strongly_stochastic(n, tol).pass)
    throw input_error("build_quantum: n is not strongly stochastic");
  check_unit_vector(xi, m.ancilla * n.ancilla, tol);
  StochOpMatrix mm = with_stoch_names(m, {"x2", "a1"}, {"x1", "a2"});
  StochOpMatrix nn = with_stoch_names(n, {"y2", "b1"}, {"y1", "b2"});
  StochOpMatrix g = odot(mm, nn);
  Channel ch = channel_from(g, xi * xi.adjoint());
  LabeledMatrix choi = permute_legs(
      ch.choi, {"x2", "y2", "a1", "b1", "x1", "y1", "a2", "b2"});
  LegSystem in = choi.legs().subset({"x2", "y2", "a1", "b1"});
  LegSystem out = choi.legs().subset({"x1", "y1", "a2", "b2"});
  return SqnsCorrelation{Channel{in, out, choi}, ClassTag::q_built};
}

SqnsCorrelation build_qc(const StochOpMatrix& ex, const StochOpMatrix& ey,
                         const StochOpMatrix& fa, const StochOpMatrix& fb,
                         const Vec& xi, double tol) {
  for (const StochOpMatrix* e : {&ex, &ey, &fa, &fb}) {
    if (e->x_legs.leg_count() != 1 || e->a_legs.leg_count() != 1)
      throw input_error("build_qc: operands must be single-leg");
    if (e->ancilla != ex.ancilla)
      throw input_error("build_qc: ancilla dimensions must match");
    if (!verify_stochastic(*e, tol).pass)
      throw input_error("build_qc: operand is not stochastic");
  }
  check_unit_vector(xi, ex.ancilla, tol);
  StochOpMatrix a = with_stoch_names(ex, {"x2"}, {"x1"});
  StochOpMatrix b = with_stoch_names(ey, {"y2"}, {"y1"});
  StochOpMatrix c = with_stoch_names(fa, {"a1"}, {"a2"});
  StochOpMatrix d = with_stoch_names(fb, {"b1"}, {"b2"});
  const StochOpMatrix* all[4] = {&a, &b, &c, &d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double cv = commute_violation(*all[i], *all[j]);
      if (cv > tol)
        throw input_error("build_qc: families do not commute (max " +
                          std::to_string(cv) + ")");
    }
  StochOpMatrix e = dot(a, b, tol);
  StochOpMatrix f = dot(c, d, tol);
  StochOpMatrix g = dot(e, f, tol);
  Channel ch = channel_from(g, xi * xi.adjoint());
  return SqnsCorrelation{std::move(ch), ClassTag::qc_built};
}

Correlation build_q_corr(const StochOpMatrix& e, const StochOpMatrix& f,
                         const Vec& eta, double tol) {
  if (e.x_legs.leg_count() != 1 || e.a_legs.leg_count() != 1 ||
      f.x_legs.leg_count() != 1 || f.a_legs.leg_count() != 1)
    throw input_error("build_q_corr: operands must be single-leg");
  if (!verify_stochastic(e, tol).pass || !verify_stochastic(f, tol).pass)
    throw input_error("build_q_corr: operand is not stochastic");
  check_unit_vector(eta, e.ancilla * f.ancilla, tol);
  StochOpMatrix a = with_stoch_names(e, {"x"}, {"a"});
  StochOpMatrix b = with_stoch_names(f, {"y"}, {"b"});
  StochOpMatrix g = odot(a, b);
  Channel ch = channel_from(g, eta * eta.adjoint());
  LabeledMatrix choi = permute_legs(ch.choi, {"x", "y", "a", "b"});
  LegSystem in = choi.legs().subset({"x", "y"});
  LegSystem out = choi.legs().subset({"a", "b"});
  return Correlation{Channel{in, out, choi}, ClassTag::q_built};
}

Correlation build_qc_corr(const StochOpMatrix& e, const StochOpMatrix& f,
                          const Vec& eta, double tol) {
  if (e.x_legs.leg_count() != 1 || e.a_legs.leg_count() != 1 ||
      f.x_legs.leg_count() != 1 || f.a_legs.leg_count() != 1)
    throw input_error("build_qc_corr: operands must be single-leg");
  if (e.ancilla != f.ancilla)
    throw input_error("build_qc_corr: ancilla dimensions must match");
  if (!verify_stochastic(e, tol).pass || !verify_stochastic(f, tol).pass)
    throw input_error("build_qc_corr: operand is not stochastic");
  check_unit_vector(eta, e.ancilla, tol);
  StochOpMatrix a = with_stoch_names(e, {"x"}, {"a"});
  StochOpMatrix b = with_stoch_names(f, {"y"}, {"b"});
  StochOpMatrix g = dot(a, b, tol);
  Channel ch = channel_from(g, eta * eta.adjoint());
  LabeledMatrix choi = permute_legs(ch.choi, {"x", "y", "a", "b"});
  LegSystem in = choi.legs().subset({"x", "y"});
  LegSystem out = choi.legs().subset({"a", "b"});
  return Correlation{Channel{in, out, choi}, ClassTag::qc_built};
}

namespace {

// One anchored marginal evaluation; sigma is over the anchored input pair.
Mat marginal_once(const SqnsCorrelation& c, bool x_side, const Mat& sigma) {
  const LegSystem& in = c.ch.in;
  const LegSystem& out = c.ch.out;
  const std::size_t s0 = in.leg(0).size, s1 = in.leg(1).size,
                    s2 = in.leg(2).size, s3 = in.leg(3).size;
  const std::size_t t0 = out.leg(0).size, t1 = out.leg(1).size,
                    t2 = out.leg(2).size, t3 = out.leg(3).size;
  const std::size_t dout = out.total_dim();
  const Mat& ch = c.ch.choi.entries();
  auto choi = [&](std::size_t x2, std::size_t y2, std::size_t a1,
                  std::size_t b1, std::size_t x1, std::size_t y1,
                  std::size_t a2, std::size_t b2, std::size_t x2p,
                  std::size_t y2p, std::size_t a1p, std::size_t b1p,
                  std::size_t x1p, std::size_t y1p, std::size_t a2p,
                  std::size_t b2p) {
    const std::size_t r =
        (((x2 * s1 + y2) * s2 + a1) * s3 + b1) * dout +
        (((x1 * t1 + y1) * t2 + a2) * t3 + b2);
    const std::size_t q =
        (((x2p * s1 + y2p) * s2 + a1p) * s3 + b1p) * dout +
        (((x1p * t1 + y1p) * t2 + a2p) * t3 + b2p);
    return ch(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q));
  };

  if (x_side) {
    const std::size_t din = s0 * s1, dn = t0 * t1;
    Mat res = Mat::Zero(din * dn, din * dn);
    for (std::size_t x2 = 0; x2 < s0; ++x2)
      for (std::size_t y2 = 0; y2 < s1; ++y2)
        for (std::size_t x2p = 0; x2p < s0; ++x2p)
          for (std::size_t y2p = 0; y2p < s1; ++y2p)
            for (std::size_t x1 = 0; x1 < t0; ++x1)
              for (std::size_t y1 = 0; y1 < t1; ++y1)
                for (std::size_t x1p = 0; x1p < t0; ++x1p)
                  for (std::size_t y1p = 0; y1p < t1; ++y1p) {
                    cplx acc = 0.0;
                    for (std::size_t a1 = 0; a1 < s2; ++a1)
                      for (std::size_t b1 = 0; b1 < s3; ++b1)
                        for (std::size_t a1p = 0; a1p < s2; ++a1p)
                          for (std::size_t b1p = 0; b1p < s3; ++b1p) {
                            const cplx w = sigma(
                                static_cast<Eigen::Index>(a1 * s3 + b1),
                                static_cast<Eigen::Index>(a1p * s3 + b1p));
                            if (w == cplx(0.0)) continue;
                            cplx inner = 0.0;
                            for (std::size_t a2 = 0; a2 < t2; ++a2)
                              for (std::size_t b2 = 0; b2 < t3; ++b2)
                                inner += choi(x2, y2, a1, b1, x1, y1, a2, b2,
                                              x2p, y2p, a1p, b1p, x1p, y1p,
                                              a2, b2);
                            acc += w * inner;
                          }
                    res(static_cast<Eigen::Index>(
                            (x2 * s1 + y2) * dn + x1 * t1 + y1),
                        static_cast<Eigen::Index>(
                            (x2p * s1 + y2p) * dn + x1p * t1 + y1p)) = acc;
                  }
    return res;
  }
  const std::size_t din = s2 * s3, dn = t2 * t3;
  Mat res = Mat::Zero(din * dn, din * dn);
  for (std::size_t a1 = 0; a1 < s2; ++a1)
    for (std::size_t b1 = 0; b1 < s3; ++b1)
      for (std::size_t a1p = 0; a1p < s2; ++a1p)
        for (std::size_t b1p = 0; b1p < s3; ++b1p)
          for (std::size_t a2 = 0; a2 < t2; ++a2)
            for (std::size_t b2 = 0; b2 < t3; ++b2)
              for (std::size_t a2p = 0; a2p < t2; ++a2p)
                for (std::size_t b2p = 0; b2p < t3; ++b2p) {
                  cplx acc = 0.0;
                  for (std::size_t x2 = 0; x2 < s0; ++x2)
                    for (std::size_t y2 = 0; y2 < s1; ++y2)
                      for (std::size_t x2p = 0; x2p < s0; ++x2p)
                        for (std::size_t y2p = 0; y2p < s1; ++y2p) {
                          const cplx w =
                              sigma(static_cast<Eigen::Index>(x2 * s1 + y2),
                                    static_cast<Eigen::Index>(x2p * s1 + y2p));
                          if (w == cplx(0.0)) continue;
                          cplx inner = 0.0;
                          for (std::size_t x1 = 0; x1 < t0; ++x1)
                            for (std::size_t y1 = 0; y1 < t1; ++y1)
                              inner += choi(x2, y2, a1, b1, x1, y1, a2, b2,
                                            x2p, y2p, a1p, b1p, x1, y1, a2p,
                                            b2p);
                          acc += w * inner;
                        }
                  res(static_cast<Eigen::Index>(
                          (a1 * s3 + b1) * dn + a2 * t3 + b2),
                      static_cast<Eigen::Index>(
                          (a1p * s3 + b1p) * dn + a2p * t3 + b2p)) = acc;
                }
  return res;
}

}  // namespace

Channel marginal(const SqnsCorrelation& c, bool x_side,
                 const LabeledMatrix& sigma, double tol) {
  const LegSystem& in = c.ch.in;
  LegSystem anchor = x_side
                         ? in.subset({in.leg(2).name, in.leg(3).name})
                         : in.subset({in.leg(0).name, in.leg(1).name});
  if (!sigma.legs().same_sizes(anchor))
    throw input_error("marginal: anchor state has wrong shape");
  const Mat& s = sigma.entries();
  if (hermiticity_gap(s) > tol || std::abs(s.trace() - 1.0) > 1e-9 ||
      min_eigenvalue(s) < -tol * static_cast<double>(s.rows()))
    throw input_error("marginal: anchor must be a state");

  Mat res = marginal_once(c, x_side, s);
  // Anchor-independence sweep over basis states; failure flags non-SQNS.
  const auto ds = s.rows();
  double dev = 0.0;
  Mat basis_first;
  for (Eigen::Index j = 0; j < ds; ++j) {
    Mat ej = Mat::Zero(ds, ds);
    ej(j, j) = 1.0;
    Mat rj = marginal_once(c, x_side, ej);
    if (j == 0)
      basis_first = rj;
    else
      dev = std::max(dev, max_abs_diff(rj, basis_first));
    dev = std::max(dev, max_abs_diff(rj, res));
  }
  if (dev > tol)
    throw input_error(
        "marginal: result depends on the anchor state (not SQNS), dev " +
        std::to_string(dev));

  LegSystem min =
      x_side ? in.subset({in.leg(0).name, in.leg(1).name})
             : in.subset({in.leg(2).name, in.leg(3).name});
  const LegSystem& out = c.ch.out;
  LegSystem mout =
      x_side ? out.subset({out.leg(0).name, out.leg(1).name})
             : out.subset({out.leg(2).name, out.leg(3).name});
  LegSystem all = min.concat(mout);
  return Channel{std::move(min), std::move(mout),
                 LabeledMatrix(all, std::move(res))};
}

namespace {

BicorrReport bicorr_impl(const Channel& ch, double max_fwd, double max_adj,
                         bool channel_pass, double tol) {
  BicorrReport r;
  r.forward_violation = max_fwd;
  r.adjoint_violation = max_adj;
  LabeledMatrix img = apply(ch, LabeledMatrix::identity(ch.in));
  r.unital_violation = max_abs_diff(
      img.entries(), Mat::Identity(img.entries().rows(), img.entries().cols()));
  r.pass = channel_pass && r.forward_violation <= tol &&
           r.unital_violation <= tol && r.adjoint_violation <= tol;
  return r;
}

}  // namespace

BicorrReport is_bicorrelation(const Correlation& c, double tol) {
  if (c.ch.in.total_dim() != c.ch.out.total_dim())
    throw input_error("is_bicorrelation: input/output dimensions differ");
  QnsReport fwd = is_qns(c, tol);
  std::vector<double> adj = no_signalling_violations(adjoint(c.ch));
  return bicorr_impl(c.ch, fwd.max_violation,
                     *std::max_element(adj.begin(), adj.end()),
                     fwd.channel.pass, tol);
}

BicorrReport is_bicorrelation(const SqnsCorrelation& c, double tol) {
  if (c.ch.in.total_dim() != c.ch.out.total_dim())
    throw input_error("is_bicorrelation: input/output dimensions differ");
  SqnsReport fwd = is_sqns(c, tol);
  std::vector<double> adj = no_signalling_violations(adjoint(c.ch));
  return bicorr_impl(c.ch, fwd.max_violation,
                     *std::max_element(adj.begin(), adj.end()),
                     fwd.channel.pass, tol);
}

ClassicalTable make_table(LegSystem in, LegSystem out,
                          std::vector<std::vector<double>> p) {
  if (in.leg_count() != out.leg_count())
    throw input_error("make_table: input/output leg counts differ");
  if (p.size() != in.total_dim())
    throw input_error("make_table: row count mismatch");
  for (const auto& row : p)
    if (row.size() != out.total_dim())
      throw input_error("make_table: column count mismatch");
  return ClassicalTable{std::move(in), std::move(out), std::move(p)};
}

double table_normalization_violation(const ClassicalTable& t) {
  double v = 0.0;
  for (const auto& row : t.p) {
    double sum = 0.0;
    for (double x : row) {
      v = std::max(v, -x);
      sum += x;
    }
    v = std::max(v, std::abs(sum - 1.0));
  }
  return v;
}

std::vector<double> table_ns_violations(const ClassicalTable& t) {
  const std::size_t m = t.in.leg_count();
  std::vector<double> viol(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t nin = t.in.leg(k).size;
    const std::size_t nout = t.out.leg(k).size;
    auto itab = assembly_table(t.in, k);
    auto otab = assembly_table(t.out, k);
    const std::size_t irest = itab[0].size();
    const std::size_t orest = otab[0].size();
    std::vector<double> s(nin);
    for (std::size_t ir = 0; ir < irest; ++ir)
      for (std::size_t orr = 0; orr < orest; ++orr) {
        double mean = 0.0;
        for (std::size_t u = 0; u < nin; ++u) {
          double acc = 0.0;
          for (std::size_t w = 0; w < nout; ++w)
            acc += t.p[itab[u][ir]][otab[w][orr]];
          s[u] = acc;
          mean += acc;
        }
        mean /= static_cast<double>(nin);
        for (std::size_t u = 0; u < nin; ++u)
          viol[k] = std::max(viol[k], std::abs(s[u] - mean));
      }
  }
  return viol;
}

bool verify_table_ns(const ClassicalTable& t, double tol) {
  if (table_normalization_violation(t) > tol) return false;
  std::vector<double> v = table_ns_violations(t);
  return *std::max_element(v.begin(), v.end()) <= tol;
}

namespace {

Channel diag_embed(const ClassicalTable& t) {
  return classical_embed(t.p, t.in, t.out);
}

}  // namespace

Correlation classical_embed_corr(const ClassicalTable& t, ClassTag tag) {
  if (t.in.leg_count() != 2)
    throw input_error("classical_embed_corr: needs two input legs");
  return make_correlation(diag_embed(t), tag);
}

SqnsCorrelation classical_embed_sqns(const ClassicalTable& t, ClassTag tag) {
  if (t.in.leg_count() != 4)
    throw input_error("classical_embed_sqns: needs four input legs");
  return make_sqns(diag_embed(t), tag);
}

}  // namespace qns
