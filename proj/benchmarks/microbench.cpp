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

// Microbenchmarks for the hot paths: the simulation contraction, Kraus
// extraction, SQNS verification at Choi dimension 256, tracial correlation
// assembly, and the no-signalling value solver.

#include <array>
#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "qns/channel.hpp"
#include "qns/correlation.hpp"
#include "qns/rand.hpp"
#include "qns/simulate.hpp"
#include "qns/tracial.hpp"
#include "qns/valuation.hpp"

namespace {

using namespace qns;

LegSystem in2() { return LegSystem({{"x", 2}, {"y", 2}}); }
LegSystem out2() { return LegSystem({{"a", 2}, {"b", 2}}); }
LegSystem sqns_in() {
  return LegSystem({{"x2", 2}, {"y2", 2}, {"a1", 2}, {"b1", 2}});
}
LegSystem sqns_out() {
  return LegSystem({{"x1", 2}, {"y1", 2}, {"a2", 2}, {"b2", 2}});
}

void bm_simulate(benchmark::State& state) {
  Rng rng(1);
  SqnsCorrelation gamma =
      make_sqns(random_cptp(rng, sqns_in(), sqns_out(), 3));
  Correlation e = make_correlation(random_cptp(rng, in2(), out2(), 4));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(gamma, e));
}
BENCHMARK(bm_simulate);

void bm_kraus_of(benchmark::State& state) {
  Rng rng(2);
  Channel c = random_cptp(rng, LegSystem::single("x", 8),
                          LegSystem::single("a", 8), 4);
  for (auto _ : state) benchmark::DoNotOptimize(kraus_of(c));
}
BENCHMARK(bm_kraus_of);

void bm_is_sqns_dim256(benchmark::State& state) {
  Rng rng(3);
  std::vector<std::array<Channel, 4>> terms;
  for (int t = 0; t < 2; ++t)
    terms.push_back(
        {random_cptp(rng, LegSystem::single("x2", 2),
                     LegSystem::single("x1", 2), 2),
         random_cptp(rng, LegSystem::single("y2", 2),
                     LegSystem::single("y1", 2), 2),
         random_cptp(rng, LegSystem::single("a1", 2),
                     LegSystem::single("a2", 2), 2),
         random_cptp(rng, LegSystem::single("b1", 2),
                     LegSystem::single("b2", 2), 2)});
  SqnsCorrelation g = build_local({0.5, 0.5}, terms);
  for (auto _ : state) benchmark::DoNotOptimize(is_sqns(g, 1e-8));
}
BENCHMARK(bm_is_sqns_dim256);

void bm_tracial_correlation(benchmark::State& state) {
  Rng rng(4);
  TraceRep r = random_trace_rep(rng, 2, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(tracial_correlation(r));
}
BENCHMARK(bm_tracial_correlation);

void bm_ns_value_chsh(benchmark::State& state) {
  std::vector<std::vector<char>> allowed(4, std::vector<char>(4, 0));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          allowed[x * 2 + y][a * 2 + b] = ((a ^ b) == (x & y)) ? 1 : 0;
  ClassicalGame g = make_classical_game(in2(), out2(), allowed);
  for (auto _ : state) benchmark::DoNotOptimize(ns_value(g));
}
BENCHMARK(bm_ns_value_chsh);

}  // namespace

BENCHMARK_MAIN();
