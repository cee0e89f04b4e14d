// Copyright 2026 The zckw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "pipeline_fixtures.hpp"
#include "zckw/partial_sum.hpp"

using namespace zckw;

namespace {

CounterTable counters_from_records(std::span<const uint32_t> records, unsigned width) {
  CounterTable t = CounterTable::zeros(width);
  for (uint32_t r : records) ++t.counts[r];
  return t;
}

}  // namespace

TEST_CASE("fold basics") {
  CounterTable t = CounterTable::zeros(4);
  for (uint32_t i = 0; i < 16; ++i) t.counts[i] = i + 1;
  const uint64_t total = t.total();

  SUBCASE("identity map with no guess bits") {
    const FoldStage ident{"id", 0, 4, 4, [](uint32_t x, uint32_t) { return x; }};
    const CounterTable out = fold(t, ident, 0);
    CHECK(out.counts == t.counts);
  }

  SUBCASE("constant map concentrates the whole count") {
    const FoldStage constant{"const", 0, 4, 2, [](uint32_t, uint32_t) { return 0u; }};
    const CounterTable out = fold(t, constant, 0);
    CHECK(out.counts[0] == total);
    CHECK(out.total() == total);
  }

  SUBCASE("count conservation under arbitrary maps") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const uint64_t salt = rng();
      const FoldStage stage{"mix", 4, 4, 3,
                            [salt](uint32_t x, uint32_t g) {
                              return fixtures::RandomPipeline::mix(x, g, salt, 3);
                            }};
      const CounterTable out = fold(t, stage, static_cast<uint32_t>(rng()) & 0xF);
      CHECK(out.total() == total);
    }
  }

  SUBCASE("width mismatches are rejected") {
    const FoldStage stage{"bad", 0, 5, 3, [](uint32_t, uint32_t) { return 0u; }};
    CHECK_THROWS_AS(fold(t, stage, 0), std::invalid_argument);
    const FoldStage grow{"grow", 0, 4, 6, [](uint32_t, uint32_t) { return 0u; }};
    CHECK_THROWS_AS(fold(t, grow, 0), std::invalid_argument);
    const FoldStage wide_guess{"g", 2, 4, 4, [](uint32_t x, uint32_t) { return x; }};
    CHECK_THROWS_AS(fold(t, wide_guess, 7), std::invalid_argument);
  }
}

TEST_CASE("pipelines match the naive oracle") {
  std::mt19937_64 rng(21);

  SUBCASE("empty stage list is the identity") {
    CounterTable t = CounterTable::zeros(6);
    t.counts[5] = 3;
    const CounterTable out = run_pipeline(t, {}, {});
    CHECK(out.counts == t.counts);
  }

  SUBCASE("random pipelines, sampled guesses") {
    for (int trial = 0; trial < 30; ++trial) {
      const fixtures::RandomPipeline pipe = fixtures::RandomPipeline::make(rng);
      std::vector<uint32_t> records(1u << pipe.in_width);
      for (auto& r : records) r = static_cast<uint32_t>(rng()) & ((1u << pipe.in_width) - 1);
      const CounterTable initial = counters_from_records(records, pipe.in_width);

      for (int gs = 0; gs < 16; ++gs) {
        std::vector<uint32_t> guesses;
        for (const auto& st : pipe.stages) {
          guesses.push_back(static_cast<uint32_t>(rng()) & ((1u << st.guess_width) - 1));
        }
        const CounterTable staged = run_pipeline(initial, pipe.stages, guesses);
        const CounterTable direct = naive_oracle(
            records, pipe.stages.back().out_width,
            [&](uint32_t rec) { return pipe.composed(rec, guesses); });
        CHECK(staged.counts == direct.counts);
      }
    }
  }

  SUBCASE("oracle is invariant under record order") {
    std::vector<uint32_t> records(4096);
    for (auto& r : records) r = static_cast<uint32_t>(rng()) & 0xFFF;
    auto map = [](uint32_t r) { return r & 0x3F; };
    const CounterTable a = naive_oracle(records, 6, map);
    std::shuffle(records.begin(), records.end(), rng);
    const CounterTable b = naive_oracle(records, 6, map);
    CHECK(a.counts == b.counts);
  }

  SUBCASE("parallel evaluation over guesses matches sequential") {
    const fixtures::RandomPipeline pipe = fixtures::RandomPipeline::make(rng);
    std::vector<uint32_t> records(1u << pipe.in_width);
    for (auto& r : records) r = static_cast<uint32_t>(rng()) & ((1u << pipe.in_width) - 1);
    const CounterTable initial = counters_from_records(records, pipe.in_width);
    const FoldStage& st = pipe.stages.front();
    const uint32_t n_guesses = 1u << st.guess_width;
    std::vector<CounterTable> seq(n_guesses, CounterTable::zeros(st.out_width));
    for (uint32_t g = 0; g < n_guesses; ++g) seq[g] = fold(initial, st, g);
    std::vector<CounterTable> par(n_guesses, CounterTable::zeros(st.out_width));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < 4; ++t) {
      pool.emplace_back([&, t] {
        for (uint32_t g = t; g < n_guesses; g += 4) par[g] = fold(initial, st, g);
      });
    }
    for (auto& th : pool) th.join();
    for (uint32_t g = 0; g < n_guesses; ++g) CHECK(seq[g].counts == par[g].counts);
  }
}

TEST_CASE("byte-sum example pipeline and its cost ledger") {
  const fixtures::ByteSumExample ex = fixtures::ByteSumExample::make(77);
  std::mt19937_64 rng(42);

  // Unit-size record sample; the acceptance suite runs the full-size one.
  std::vector<uint32_t> records(1u << 16);
  for (auto& r : records) r = static_cast<uint32_t>(rng()) & 0xFFFFFF;
  const CounterTable initial = counters_from_records(records, 24);

  for (int gs = 0; gs < 4; ++gs) {
    const uint32_t k0 = static_cast<uint32_t>(rng()) & 0xFF;
    const uint32_t k1 = static_cast<uint32_t>(rng()) & 0xFF;
    const uint32_t k2 = static_cast<uint32_t>(rng()) & 0xFF;
    const uint32_t k3 = static_cast<uint32_t>(rng()) & 0xFF;
    const uint32_t guesses[3] = {(k1 << 8) | k2, k0, k3};
    const CounterTable staged = run_pipeline(initial, ex.stages, guesses);
    const CounterTable direct = naive_oracle(records, 8, [&](uint32_t rec) {
      return ex.composed(rec, k0, k1, k2, k3);
    });
    CHECK(staged.counts == direct.counts);
  }

  SUBCASE("ledger reproduces the published stage costs") {
    const LedgerStage spec[] = {
        {"first key pair", 16, 24, 0},
        {"third key byte", 8, 16, 0},
        {"output key byte", 8, 8, 0},
    };
    const ComplexityLedger led = ledger(spec, 24);
    REQUIRE(led.stages.size() == 3);
    CHECK(led.stages[0].cost_log2 == 40.0);
    CHECK(led.stages[1].cost_log2 == 40.0);
    CHECK(led.stages[2].cost_log2 == 40.0);
    CHECK(std::fabs(led.total_log2 - 41.6) <= 0.1);
    CHECK(led.naive_log2 == 56.0);

    std::ostringstream text, csv;
    render_ledger_text(text, led);
    CHECK(text.str().find("2^41.58") != std::string::npos);
    render_ledger_csv(csv, led);
    CHECK(csv.str().find("naive,,,56") != std::string::npos);
  }

  SUBCASE("single stage with no guess bits costs the bare table") {
    const LedgerStage spec[] = {{"only", 0, 10, 0}};
    const ComplexityLedger led = ledger(spec, 10);
    CHECK(led.stages[0].cost_log2 == 10.0);
    CHECK(led.total_log2 == 10.0);
  }
}
