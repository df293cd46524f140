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

#include <cstdint>
#include <string>
#include <variant>

#include "qns/correlation.hpp"
#include "qns/games.hpp"
#include "qns/stochastic.hpp"
#include "qns/tracial.hpp"

// JSON interchange. Complex entries are stored as [re, im] pairs in
// row-major order; doubles round-trip bit-exactly. Every document carries a
// "kind" field used for dispatch.

namespace qns {

std::string to_json(const LabeledMatrix& m, bool pretty = false);
// Plain state vector ("kind": "vector").
std::string vec_to_json(const Vec& v, bool pretty = false);
Vec vec_from_json(const std::string& text);
std::string to_json(const Channel& c, bool pretty = false);
std::string to_json(const Correlation& c, bool pretty = false);
// Four-leg correlations carry a "roles" map (role -> leg name); legs are
// permuted to the normative order on load.
std::string to_json(const SqnsCorrelation& c, bool pretty = false);
std::string to_json(const StochOpMatrix& e, bool pretty = false);
std::string to_json(const ClassicalTable& t, bool pretty = false);
std::string to_json(const TraceRep& r, bool pretty = false);
std::string to_json(const ImplicationGame& g, bool pretty = false);
std::string to_json(const RankOneGame& g, bool pretty = false);
std::string to_json(const ClassicalGame& g, bool pretty = false);

LabeledMatrix matrix_from_json(const std::string& text);
Channel channel_from_json(const std::string& text);
Correlation correlation_from_json(const std::string& text);
SqnsCorrelation sqns_from_json(const std::string& text);
StochOpMatrix stoch_from_json(const std::string& text);
ClassicalTable table_from_json(const std::string& text);
TraceRep trace_rep_from_json(const std::string& text);
ImplicationGame implication_game_from_json(const std::string& text);
RankOneGame rank_one_game_from_json(const std::string& text);
ClassicalGame classical_game_from_json(const std::string& text);

// "kind" of a document; throws input_error on malformed JSON.
std::string peek_kind(const std::string& text);

// Any game document ("kind": "game", dispatch on "type").
using GameVariant = std::variant<ImplicationGame, RankOneGame, ClassicalGame>;
GameVariant game_from_json(const std::string& text);

std::string load_text(const std::string& path);
void save_text(const std::string& path, const std::string& text);

// FNV-1a 64-bit content hash, as 16 hex digits; used to fingerprint inputs
// in reports.
std::string fnv1a_hex(const std::string& text);

}  // namespace qns
