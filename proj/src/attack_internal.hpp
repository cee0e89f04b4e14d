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

#ifndef ZCKW_SRC_ATTACK_INTERNAL_HPP_
#define ZCKW_SRC_ATTACK_INTERNAL_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <utility>
#include <vector>

#include "zckw/attack.hpp"
#include "zckw/dataset.hpp"

namespace zckw::internal {

inline double pearson_T(const uint64_t v[], unsigned cells, uint64_t total) {
  const double expected = static_cast<double>(total) / cells;
  double t = 0;
  for (unsigned z = 0; z < cells; ++z) {
    const double d = static_cast<double>(v[z]) - expected;
    t += d * d;
  }
  return t / expected;
}

// Per-worker statistic bookkeeping over the enumerated guess space.
struct GuessStats {
  std::vector<std::pair<float, uint64_t>> survivors;
  double wrong_T_sum = 0;
  uint64_t wrong_count = 0;
  uint64_t sampled_wrong = 0;
  uint64_t sampled_survivors = 0;
  double right_T = -1;
  uint64_t rank_below = 0;

  void note(double T, uint64_t guess, bool is_right, double tau, uint64_t sample_stride) {
    if (is_right) {
      right_T = T;
    } else {
      wrong_T_sum += T;
      ++wrong_count;
      if (guess % sample_stride == 0) {
        ++sampled_wrong;
        sampled_survivors += T < tau;
      }
    }
    if (T < tau) survivors.emplace_back(static_cast<float>(T), guess);
  }

  void merge(GuessStats&& other) {
    survivors.insert(survivors.end(), other.survivors.begin(), other.survivors.end());
    wrong_T_sum += other.wrong_T_sum;
    wrong_count += other.wrong_count;
    sampled_wrong += other.sampled_wrong;
    sampled_survivors += other.sampled_survivors;
    if (other.right_T >= 0) right_T = other.right_T;
  }

  // Sorts survivors by statistic and ranks the right guess among them.
  void finalize() {
    std::sort(survivors.begin(), survivors.end());
    rank_below = 0;
    if (right_T < 0) return;
    for (const auto& [T, g] : survivors) {
      if (static_cast<double>(T) < right_T) ++rank_below;
      else break;
    }
  }

  uint64_t tied_with_best() const {
    uint64_t n = 0;
    while (n < survivors.size() && survivors[n].first == survivors.front().first) ++n;
    return n;
  }
};

inline void fill_survivor_stats(AttackReport& report, const GuessStats& stats, double beta1) {
  report.survivors = stats.survivors.size();
  report.expected_survivors = static_cast<double>(report.guess_space - 1) * beta1;
  report.sampled_wrong = stats.sampled_wrong;
  report.sampled_survivors = stats.sampled_survivors;
  report.sampled_expected = static_cast<double>(stats.sampled_wrong) * beta1;
  report.sampled_sigma =
      std::sqrt(static_cast<double>(stats.sampled_wrong) * beta1 * (1 - beta1));
  report.wrong_T_mean =
      stats.wrong_count ? stats.wrong_T_sum / static_cast<double>(stats.wrong_count) : 0;
  report.right_T = stats.right_T;
  report.right_rank = stats.right_T >= 0 ? stats.rank_below + 1 : 0;
  report.right_survived = stats.right_T >= 0 && stats.right_T < report.tau;
}

// Deterministic verification pairs: the lexicographically first plaintexts
// of the data source, encrypted directly (or read back from the file).
inline std::vector<std::pair<uint64_t, uint64_t>> collect_check_pairs(
    const AttackPlan& plan, const RoundSubkeys& keys, unsigned from, unsigned to) {
  const CipherParams& p = *plan.params;
  std::vector<std::pair<uint64_t, uint64_t>> pairs;
  if (!plan.data_path.empty()) {
    DatasetReader reader(plan.data_path);
    uint64_t pt, ct;
    while (pairs.size() < 4 && reader.next(pt, ct)) pairs.emplace_back(pt, ct);
    return pairs;
  }
  const RoundTables tables(keys, p, from, to);
  for (uint64_t i = 0; i < 4; ++i) {
    const uint64_t pt =
        plan.record_count ? scramble_index(i, p.block_bits(), plan.seed) : i * 0x9D2C5681ull;
    const uint64_t masked = pt & ((uint64_t{1} << p.block_bits()) - 1);
    pairs.emplace_back(masked, tables.encrypt(Block::from_packed(masked, p)).packed(p));
  }
  return pairs;
}

struct FinishOutcome {
  bool found = false;
  bool limit_hit = false;
  MasterKey key;
  uint64_t trials = 0;
};

// Parallel walk over completion positions [from, to) of one survivor; the
// smallest matching position wins deterministically.
template <class BuildKey, class CheckKey>
void finish_range(FinishOutcome& outcome, uint64_t from, uint64_t to, const AttackPlan& plan,
                  BuildKey&& build, CheckKey&& check, const CipherParams& p) {
  if (from >= to) return;
  std::atomic<uint64_t> found_at{~uint64_t{0}};
  std::atomic<uint64_t> trials{0};
  std::atomic<bool> limit_hit{false};
  std::mutex win_mutex;
  MasterKey winner;
  const uint64_t base_trials = outcome.trials;

  parallel_for(to - from, [&](uint64_t begin, uint64_t end, unsigned) {
    MasterKey key;
    uint64_t local_trials = 0;
    for (uint64_t off = begin; off < end; ++off) {
      if ((off & 0x3FFF) == 0) {
        const uint64_t limit = plan.finish_limit;
        if (found_at.load(std::memory_order_relaxed) != ~uint64_t{0}) break;
        if (limit &&
            base_trials + trials.load(std::memory_order_relaxed) + local_trials >= limit) {
          limit_hit.store(true, std::memory_order_relaxed);
          break;
        }
      }
      ++local_trials;
      build(from + off, key);
      const RoundSubkeys cand = key_schedule(key, p);
      if (check(cand)) {
        std::lock_guard<std::mutex> lock(win_mutex);
        if (from + off < found_at.load(std::memory_order_relaxed)) {
          found_at.store(from + off, std::memory_order_relaxed);
          winner = key;
        }
        break;
      }
    }
    trials.fetch_add(local_trials, std::memory_order_relaxed);
  }, plan.threads);

  outcome.trials += trials.load();
  outcome.limit_hit = outcome.limit_hit || limit_hit.load();
  if (found_at.load() != ~uint64_t{0}) {
    outcome.found = true;
    outcome.key = winner;
  }
}

// Walks the completion spaces of the sorted survivors.  The group tied at
// the best statistic is deepened in geometric slices so that one co-minimal
// wrong guess cannot stall the search ahead of the right one; later
// survivors get plain full-depth walks.
template <class MakeBuilder, class CheckKey>
void finish_survivors(FinishOutcome& outcome,
                      std::span<const std::pair<float, uint64_t>> survivors,
                      uint64_t completions, const AttackPlan& plan, MakeBuilder&& make_builder,
                      CheckKey&& check, const CipherParams& p) {
  if (survivors.empty()) return;
  uint64_t tied = 0;
  while (tied < survivors.size() && survivors[tied].first == survivors[0].first) ++tied;

  uint64_t from = 0;
  for (uint64_t slice = uint64_t{1} << 20;
       from < completions && !outcome.found && !outcome.limit_hit; slice <<= 4) {
    const uint64_t to = completions - from > slice ? from + slice : completions;
    for (uint64_t s = 0; s < tied && !outcome.found && !outcome.limit_hit; ++s) {
      auto build = make_builder(survivors[s].second);
      finish_range(outcome, from, to, plan, build, check, p);
    }
    from = to;
  }
  for (uint64_t s = tied; s < survivors.size() && !outcome.found && !outcome.limit_hit; ++s) {
    auto build = make_builder(survivors[s].second);
    finish_range(outcome, 0, completions, plan, build, check, p);
  }
}

}  // namespace zckw::internal

#endif  // ZCKW_SRC_ATTACK_INTERNAL_HPP_
