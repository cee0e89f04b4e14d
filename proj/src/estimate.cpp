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

#include <cmath>

#include "zckw/attack.hpp"

namespace zckw {

// Full-scale complexity accounting.  All figures derive from the stage
// structure, the configured error probabilities, and the data requirement;
// nothing here executes the cipher.
AttackReport estimate_full_scale(AttackVariant variant, const DistinguisherConfig& config) {
  AttackReport report;
  report.variant = variant;
  report.scale = AttackScale::kFullEstimate;
  report.n = config.n;
  report.m = config.m;

  const double n_data = data_complexity(config);
  report.data_log2 = std::log2(n_data);
  report.tau = decision_threshold(config, n_data);
  report.tau_normal = report.tau;

  if (variant == AttackVariant::kSixRound) {
    // Guessing stages over the final-round subkeys; widths for w = 16.
    report.stage_costs = {
        {"fold second-key", 14, 53, 14 + 53},
        {"fold first FI", 23, 39, 14 + 23 + 39},
        {"fold second FI", 23, 23, 14 + 23 + 23 + 23},
    };
    report.guess_space_log2 = 14 + 23 + 23;
    report.guess_space = uint64_t{1} << 60;
    report.survivors_log2 = report.guess_space_log2 + config.beta1_log2;
    report.expected_survivors = std::exp2(report.survivors_log2);
    // The exhaustive completion over the 68 unguessed key bits dominates;
    // its published cost, 2^85 single encryptions, is quoted as reported
    // even though the survivor expectation above recomputes to 2^83.
    const double finish_log2 = 85;
    report.time_log2 = finish_log2;
    report.memory_bytes_log2 = 53 + 1;  // two-byte counters over the initial table
    report.notes.push_back(
        "finish cost quoted as published; survivors x completions recomputes to 2^" +
        std::to_string(report.survivors_log2 + 68.0).substr(0, 5));
    report.notes.push_back("closing-paragraph data figure 2^62.1 differs from the derived value");
  } else {
    report.stage_costs = {
        {"double FI fold (data pass)", 46, 0, report.data_log2 + 46},
        {"fold second-key", 7, 53, 46 + 7 + 53},
        {"fold FI round 8", 16, 39, 46 + 7 + 16 + 39},
        {"fold FI round 2", 16, 23, 46 + 7 + 16 + 16 + 23},
    };
    report.guess_space_log2 = 46 + 7 + 16 + 16;
    report.guess_space = uint64_t{1} << 85;
    report.survivors_log2 = report.guess_space_log2 + config.beta1_log2;
    report.expected_survivors = std::exp2(report.survivors_log2);
    const double finish_log2 = report.survivors_log2 + 29;  // unguessed key bits
    std::vector<double> costs;
    for (const auto& s : report.stage_costs) costs.push_back(s.cost_log2);
    costs.push_back(finish_log2);
    report.stage_costs.push_back({"exhaustive finish", 0, 0, finish_log2});
    report.time_log2 = log2_sum_exp2(costs);
    report.memory_bytes_log2 = 85;  // one-byte counters over the initial table
    report.weak_fraction_log2 = -14;
    report.notes.push_back("abstract and summary-table data figure 2^62.1 differs from the derived value");
  }
  return report;
}

}  // namespace zckw
