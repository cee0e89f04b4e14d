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

#ifndef ZCKW_PARTIAL_SUM_HPP_
#define ZCKW_PARTIAL_SUM_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace zckw {

// Dense table of counts indexed by a partial state value.
struct CounterTable {
  unsigned index_width = 0;
  std::vector<uint64_t> counts;

  static CounterTable zeros(unsigned index_width);
  uint64_t total() const;
};

// One partial-sum stage: guess guess_width key bits and map every input cell
// through step_map into a narrower table.
struct FoldStage {
  std::string name;
  unsigned guess_width = 0;
  unsigned in_width = 0;
  unsigned out_width = 0;
  std::function<uint32_t(uint32_t in_index, uint32_t guess)> step_map;
};

// Folds one stage under a fixed guess: out[step_map(x, guess)] += in[x].
// The total count is preserved.  Throws std::invalid_argument when the
// table and stage widths disagree.
CounterTable fold(const CounterTable& counter, const FoldStage& stage, uint32_t guess);

// Left-fold of the stages under one guess chunk per stage.
CounterTable run_pipeline(const CounterTable& counter, std::span<const FoldStage> stages,
                          std::span<const uint32_t> guesses);

// Recomputes the final counters directly from raw records, bypassing the
// staged folds; the equivalence oracle for fold / run_pipeline.
CounterTable naive_oracle(std::span<const uint32_t> records, unsigned out_width,
                          const std::function<uint32_t(uint32_t record)>& composed_map);

// Cost accounting in the memory-access convention: a stage that has
// cum_guess_bits guessed key bits in scope and folds a 2^in_width table
// costs 2^(cum_guess_bits + in_width) accesses.
struct LedgerStage {
  std::string name;
  unsigned guess_bits = 0;
  unsigned table_width = 0;
  double cost_log2 = 0;  // filled by ledger()
};

struct ComplexityLedger {
  std::vector<LedgerStage> stages;
  double total_log2 = 0;        // log2 of the summed stage costs
  double naive_log2 = 0;        // all guess bits at once over the initial table
  unsigned initial_width = 0;
};

ComplexityLedger ledger(std::span<const LedgerStage> stages, unsigned initial_width);

// log2(sum of 2^x) without overflow.
double log2_sum_exp2(std::span<const double> xs);

void render_ledger_text(std::ostream& out, const ComplexityLedger& ledger);
void render_ledger_csv(std::ostream& out, const ComplexityLedger& ledger);

}  // namespace zckw

#endif  // ZCKW_PARTIAL_SUM_HPP_
