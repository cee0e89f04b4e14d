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

#include "zckw/partial_sum.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace zckw {

CounterTable CounterTable::zeros(unsigned index_width) {
  if (index_width > 30) throw std::invalid_argument("counter table width must be <= 30");
  CounterTable t;
  t.index_width = index_width;
  t.counts.assign(size_t{1} << index_width, 0);
  return t;
}

uint64_t CounterTable::total() const {
  return std::accumulate(counts.begin(), counts.end(), uint64_t{0});
}

CounterTable fold(const CounterTable& counter, const FoldStage& stage, uint32_t guess) {
  if (counter.index_width != stage.in_width) {
    throw std::invalid_argument("fold: counter width does not match stage input width");
  }
  if (stage.out_width > stage.in_width) {
    throw std::invalid_argument("fold: stage must not expand the table");
  }
  if (stage.guess_width < 32 && (guess >> stage.guess_width) != 0) {
    throw std::invalid_argument("fold: guess exceeds its declared width");
  }
  CounterTable out = CounterTable::zeros(stage.out_width);
  const uint32_t out_mask = static_cast<uint32_t>(out.counts.size() - 1);
  for (uint32_t x = 0; x < counter.counts.size(); ++x) {
    const uint64_t c = counter.counts[x];
    if (c == 0) continue;
    const uint32_t y = stage.step_map(x, guess);
    if (y & ~out_mask) throw std::out_of_range("fold: step_map result exceeds out_width");
    out.counts[y] += c;
  }
  return out;
}

CounterTable run_pipeline(const CounterTable& counter, std::span<const FoldStage> stages,
                          std::span<const uint32_t> guesses) {
  if (stages.size() != guesses.size()) {
    throw std::invalid_argument("run_pipeline: one guess chunk per stage required");
  }
  CounterTable current = counter;
  for (size_t i = 0; i < stages.size(); ++i) {
    current = fold(current, stages[i], guesses[i]);
  }
  return current;
}

CounterTable naive_oracle(std::span<const uint32_t> records, unsigned out_width,
                          const std::function<uint32_t(uint32_t record)>& composed_map) {
  CounterTable out = CounterTable::zeros(out_width);
  const uint32_t out_mask = static_cast<uint32_t>(out.counts.size() - 1);
  for (uint32_t r : records) {
    const uint32_t y = composed_map(r);
    if (y & ~out_mask) throw std::out_of_range("naive_oracle: map result exceeds out_width");
    ++out.counts[y];
  }
  return out;
}

double log2_sum_exp2(std::span<const double> xs) {
  if (xs.empty()) return -INFINITY;
  double peak = xs[0];
  for (double x : xs) peak = std::max(peak, x);
  double sum = 0;
  for (double x : xs) sum += std::exp2(x - peak);
  return peak + std::log2(sum);
}

ComplexityLedger ledger(std::span<const LedgerStage> stages, unsigned initial_width) {
  ComplexityLedger out;
  out.initial_width = initial_width;
  unsigned cum_guess = 0;
  std::vector<double> costs;
  for (const LedgerStage& s : stages) {
    LedgerStage filled = s;
    cum_guess += s.guess_bits;
    filled.cost_log2 = static_cast<double>(cum_guess + s.table_width);
    costs.push_back(filled.cost_log2);
    out.stages.push_back(std::move(filled));
  }
  out.total_log2 = log2_sum_exp2(costs);
  out.naive_log2 = static_cast<double>(cum_guess + initial_width);
  return out;
}

void render_ledger_text(std::ostream& out, const ComplexityLedger& ledger) {
  out << "stage                guessed-bits  table-width  cost-log2\n";
  char buf[96];
  for (const LedgerStage& s : ledger.stages) {
    std::snprintf(buf, sizeof(buf), "%-20s %12u %12u %10.2f\n", s.name.c_str(), s.guess_bits,
                  s.table_width, s.cost_log2);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "total cost 2^%.2f; naive cost 2^%.2f\n", ledger.total_log2,
                ledger.naive_log2);
  out << buf;
}

void render_ledger_csv(std::ostream& out, const ComplexityLedger& ledger) {
  out << "stage,guessed_bits,table_width,cost_log2\n";
  for (const LedgerStage& s : ledger.stages) {
    out << s.name << ',' << s.guess_bits << ',' << s.table_width << ',' << s.cost_log2 << '\n';
  }
  out << "total,,," << ledger.total_log2 << '\n';
  out << "naive,,," << ledger.naive_log2 << '\n';
}

}  // namespace zckw
