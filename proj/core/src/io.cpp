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

#include "qns/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace qns {

namespace {

using json = nlohmann::json;

json legs_to_json(const LegSystem& ls) {
  json arr = json::array();
  for (const Leg& l : ls.legs()) arr.push_back({{"name", l.name}, {"size", l.size}});
  return arr;
}

LegSystem legs_from_json(const json& arr) {
  std::vector<Leg> legs;
  for (const auto& e : arr)
    legs.push_back(Leg{e.at("name").get<std::string>(),
                       e.at("size").get<std::size_t>()});
  return LegSystem(std::move(legs));
}

json entries_to_json(const Mat& m) {
  json arr = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      arr.push_back({m(r, c).real(), m(r, c).imag()});
  return arr;
}

Mat entries_from_json(const json& arr, std::size_t rows, std::size_t cols) {
  if (arr.size() != rows * cols)
    throw input_error("io: entry count does not match the declared legs");
  Mat m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto& e = arr[k++];
      m(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

json vec_entries_to_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k)
    arr.push_back({v(k).real(), v(k).imag()});
  return arr;
}

Vec vec_entries_from_json(const json& arr) {
  Vec v(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k)
    v(static_cast<Eigen::Index>(k)) =
        cplx(arr[k].at(0).get<double>(), arr[k].at(1).get<double>());
  return v;
}

std::string dump(const json& j, bool pretty) {
  return pretty ? j.dump(2) + "\n" : j.dump();
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("io: malformed JSON");
  return j;
}

void expect_kind(const json& j, const std::string& kind) {
  if (j.value("kind", "") != kind)
    throw input_error("io: expected kind \"" + kind + "\"");
}

json channel_body(const Channel& c) {
  return json{{"in_legs", legs_to_json(c.in)},
              {"out_legs", legs_to_json(c.out)},
              {"choi", entries_to_json(c.choi.entries())}};
}

Channel channel_from_body(const json& j) {
  LegSystem in = legs_from_json(j.at("in_legs"));
  LegSystem out = legs_from_json(j.at("out_legs"));
  LegSystem full = in.concat(out);
  Mat m = entries_from_json(j.at("choi"), full.total_dim(), full.total_dim());
  return Channel{std::move(in), std::move(out),
                 LabeledMatrix(full, std::move(m))};
}

const std::vector<std::string> kSqnsInRoles = {"x2", "y2", "a1", "b1"};
const std::vector<std::string> kSqnsOutRoles = {"x1", "y1", "a2", "b2"};

}  // namespace

std::string to_json(const LabeledMatrix& m, bool pretty) {
  json j{{"kind", "matrix"},
         {"legs", legs_to_json(m.legs())},
         {"entries", entries_to_json(m.entries())}};
  return dump(j, pretty);
}

LabeledMatrix matrix_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "matrix");
  LegSystem legs = legs_from_json(j.at("legs"));
  Mat m = entries_from_json(j.at("entries"), legs.total_dim(),
                            legs.total_dim());
  return LabeledMatrix(std::move(legs), std::move(m));
}

std::string vec_to_json(const Vec& v, bool pretty) {
  json j{{"kind", "vector"}, {"entries", vec_entries_to_json(v)}};
  return dump(j, pretty);
}

Vec vec_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "vector");
  return vec_entries_from_json(j.at("entries"));
}

std::string to_json(const Channel& c, bool pretty) {
  json j = channel_body(c);
  j["kind"] = "channel";
  return dump(j, pretty);
}

Channel channel_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "channel");
  return channel_from_body(j);
}

std::string to_json(const Correlation& c, bool pretty) {
  json j = channel_body(c.ch);
  j["kind"] = "correlation";
  j["tag"] = to_string(c.tag);
  return dump(j, pretty);
}

Correlation correlation_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "correlation");
  Channel ch = channel_from_body(j);
  return make_correlation(std::move(ch),
                          class_tag_from_string(j.value("tag", "unknown")));
}

std::string to_json(const SqnsCorrelation& c, bool pretty) {
  json j = channel_body(c.ch);
  j["kind"] = "sqns";
  j["tag"] = to_string(c.tag);
  json roles;
  for (std::size_t k = 0; k < 4; ++k) {
    roles[kSqnsInRoles[k]] = c.ch.in.leg(k).name;
    roles[kSqnsOutRoles[k]] = c.ch.out.leg(k).name;
  }
  j["roles"] = roles;
  return dump(j, pretty);
}

SqnsCorrelation sqns_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "sqns");
  Channel ch = channel_from_body(j);
  if (ch.in.leg_count() != 4 || ch.out.leg_count() != 4)
    throw input_error("io: sqns files need four legs per side");
  if (j.contains("roles")) {
    const json& roles = j.at("roles");
    std::vector<std::string> in_order, full_order;
    for (const auto& role : kSqnsInRoles)
      in_order.push_back(roles.at(role).get<std::string>());
    std::vector<std::string> out_order;
    for (const auto& role : kSqnsOutRoles)
      out_order.push_back(roles.at(role).get<std::string>());
    full_order = in_order;
    full_order.insert(full_order.end(), out_order.begin(), out_order.end());
    LabeledMatrix permuted = permute_legs(ch.choi, full_order);
    ch = Channel{ch.in.subset(in_order), ch.out.subset(out_order),
                 std::move(permuted)};
  }
  return make_sqns(std::move(ch),
                   class_tag_from_string(j.value("tag", "unknown")));
}

std::string to_json(const StochOpMatrix& e, bool pretty) {
  json j{{"kind", "stochastic"},
         {"x_legs", legs_to_json(e.x_legs)},
         {"a_legs", legs_to_json(e.a_legs)},
         {"ancilla_dim", e.ancilla},
         {"block", entries_to_json(e.block.entries())}};
  return dump(j, pretty);
}

StochOpMatrix stoch_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "stochastic");
  LegSystem x = legs_from_json(j.at("x_legs"));
  LegSystem a = legs_from_json(j.at("a_legs"));
  const std::size_t anc = j.at("ancilla_dim").get<std::size_t>();
  const std::size_t dim = x.total_dim() * a.total_dim() * anc;
  Mat m = entries_from_json(j.at("block"), dim, dim);
  return make_stoch(std::move(x), std::move(a), anc, std::move(m));
}

std::string to_json(const ClassicalTable& t, bool pretty) {
  json rows = json::array();
  for (const auto& row : t.p) rows.push_back(row);
  json j{{"kind", "classical"},
         {"in_legs", legs_to_json(t.in)},
         {"out_legs", legs_to_json(t.out)},
         {"table", rows}};
  return dump(j, pretty);
}

ClassicalTable table_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "classical");
  LegSystem in = legs_from_json(j.at("in_legs"));
  LegSystem out = legs_from_json(j.at("out_legs"));
  std::vector<std::vector<double>> p;
  for (const auto& row : j.at("table"))
    p.push_back(row.get<std::vector<double>>());
  return make_table(std::move(in), std::move(out), std::move(p));
}

std::string to_json(const TraceRep& r, bool pretty) {
  json blocks = json::array();
  for (std::size_t a = 0; a < r.iso.A; ++a) {
    json row = json::array();
    for (std::size_t x = 0; x < r.iso.X; ++x)
      row.push_back(entries_to_json(r.iso.v[a][x]));
    blocks.push_back(std::move(row));
  }
  json w = json::array();
  for (Eigen::Index k = 0; k < r.weights.size(); ++k) w.push_back(r.weights[k]);
  json j{{"kind", "trace-rep"}, {"X", r.iso.X},   {"A", r.iso.A},
         {"d_H", r.iso.dH},     {"d_K", r.iso.dK}, {"blocks", blocks},
         {"weights", w}};
  return dump(j, pretty);
}

TraceRep trace_rep_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "trace-rep");
  const std::size_t X = j.at("X").get<std::size_t>();
  const std::size_t A = j.at("A").get<std::size_t>();
  const std::size_t dH = j.at("d_H").get<std::size_t>();
  const std::size_t dK = j.at("d_K").get<std::size_t>();
  const json& blocks = j.at("blocks");
  if (blocks.size() != A) throw input_error("io: trace-rep blocks mismatch");
  std::vector<std::vector<Mat>> v(A, std::vector<Mat>(X));
  for (std::size_t a = 0; a < A; ++a) {
    if (blocks[a].size() != X)
      throw input_error("io: trace-rep blocks mismatch");
    for (std::size_t x = 0; x < X; ++x)
      v[a][x] = entries_from_json(blocks[a][x], dK, dH);
  }
  BlockIsometry iso = make_block_isometry(X, A, dH, dK, std::move(v));
  const json& w = j.at("weights");
  Eigen::VectorXd weights(w.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    weights[static_cast<Eigen::Index>(k)] = w[k].get<double>();
  return make_trace_rep(std::move(iso), std::move(weights));
}

std::string to_json(const ImplicationGame& g, bool pretty) {
  json j{{"kind", "game"},
         {"type", "implication"},
         {"in_legs", legs_to_json(g.in)},
         {"out_legs", legs_to_json(g.out)},
         {"p", entries_to_json(g.p.entries())},
         {"q", entries_to_json(g.q.entries())}};
  return dump(j, pretty);
}

std::string to_json(const RankOneGame& g, bool pretty) {
  json j{{"kind", "game"},
         {"type", "rank_one"},
         {"in_legs", legs_to_json(g.in)},
         {"out_legs", legs_to_json(g.out)},
         {"r_dim", g.r_dim},
         {"xi", vec_entries_to_json(g.xi)},
         {"gamma", vec_entries_to_json(g.gamma)}};
  return dump(j, pretty);
}

std::string to_json(const ClassicalGame& g, bool pretty) {
  json rows = json::array();
  for (const auto& row : g.allowed) {
    json r = json::array();
    for (char c : row) r.push_back(static_cast<int>(c));
    rows.push_back(std::move(r));
  }
  json j{{"kind", "game"},
         {"type", "classical"},
         {"in_legs", legs_to_json(g.in)},
         {"out_legs", legs_to_json(g.out)},
         {"allowed", rows},
         {"mu", g.mu}};
  return dump(j, pretty);
}

namespace {

ImplicationGame implication_from(const json& j) {
  LegSystem in = legs_from_json(j.at("in_legs"));
  LegSystem out = legs_from_json(j.at("out_legs"));
  Mat p = entries_from_json(j.at("p"), in.total_dim(), in.total_dim());
  Mat q = entries_from_json(j.at("q"), out.total_dim(), out.total_dim());
  LabeledMatrix pl(in, std::move(p));
  LabeledMatrix ql(out, std::move(q));
  return make_implication_game(std::move(in), std::move(out), std::move(pl),
                               std::move(ql));
}

RankOneGame rank_one_from(const json& j) {
  LegSystem in = legs_from_json(j.at("in_legs"));
  LegSystem out = legs_from_json(j.at("out_legs"));
  return make_rank_one_game(std::move(in), std::move(out),
                            j.at("r_dim").get<std::size_t>(),
                            vec_entries_from_json(j.at("xi")),
                            vec_entries_from_json(j.at("gamma")));
}

ClassicalGame classical_from(const json& j) {
  LegSystem in = legs_from_json(j.at("in_legs"));
  LegSystem out = legs_from_json(j.at("out_legs"));
  std::vector<std::vector<char>> allowed;
  for (const auto& row : j.at("allowed")) {
    std::vector<char> r;
    for (const auto& e : row) r.push_back(e.get<int>() ? 1 : 0);
    allowed.push_back(std::move(r));
  }
  std::vector<double> mu;
  if (j.contains("mu")) mu = j.at("mu").get<std::vector<double>>();
  return make_classical_game(std::move(in), std::move(out), std::move(allowed),
                             std::move(mu));
}

}  // namespace

ImplicationGame implication_game_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "game");
  if (j.value("type", "") != "implication")
    throw input_error("io: expected an implication game");
  return implication_from(j);
}

RankOneGame rank_one_game_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "game");
  if (j.value("type", "") != "rank_one")
    throw input_error("io: expected a rank-one game");
  return rank_one_from(j);
}

ClassicalGame classical_game_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "game");
  if (j.value("type", "") != "classical")
    throw input_error("io: expected a classical game");
  return classical_from(j);
}

GameVariant game_from_json(const std::string& text) {
  json j = parse(text);
  expect_kind(j, "game");
  const std::string type = j.value("type", "");
  if (type == "implication") return implication_from(j);
  if (type == "rank_one") return rank_one_from(j);
  if (type == "classical") return classical_from(j);
  throw input_error("io: unknown game type \"" + type + "\"");
}

std::string peek_kind(const std::string& text) {
  json j = parse(text);
  if (!j.contains("kind")) throw input_error("io: document has no kind");
  return j.at("kind").get<std::string>();
}

std::string load_text(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw input_error("io: cannot open " + path);
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw input_error("io: cannot open " + path + " for writing");
  file << text;
  if (!file.good()) throw input_error("io: write failed for " + path);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace qns
