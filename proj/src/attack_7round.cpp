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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "attack_internal.hpp"
#include "record_stream.hpp"
#include "zckw/attack.hpp"

namespace zckw {

using internal::FinishOutcome;
using internal::GuessStats;
using internal::pearson_T;

namespace {

// One enumerated first-stage guess (KO_{2,1}, KI_{2,1}-top, KO_{8,1},
// KI_{8,1}-top) with its private fold table over
// (L1r, R8r, live(R1r ^ L8r), folded lane).
struct Stage1Slot {
  uint32_t guess = 0;
  std::vector<uint8_t> lut21;
  std::vector<uint8_t> lut81;
  std::vector<uint32_t> table;
};

uint32_t stage1_pack(uint32_t ko21, uint32_t ki21_top, uint32_t ko81, uint32_t ki81_top,
                     const CipherParams& p) {
  return (((ko21 << p.s_small | ki21_top) << p.w | ko81) << p.s_small) | ki81_top;
}

}  // namespace

AttackReport attack_7round_weak(const AttackPlan& plan) {
  const auto t_start = std::chrono::steady_clock::now();
  const CipherParams& p = *plan.params;
  if (plan.scale != AttackScale::kMiniExecute) {
    throw std::invalid_argument("attack execution requires the mini scale; use the estimator");
  }
  if (p.block_bits() > 32) {
    throw std::length_error("attack execution requires block width <= 32");
  }
  if (!weak_key_condition(plan.planted_key, p)) {
    throw std::invalid_argument("the seven-round attack requires a weak planted key");
  }
  const unsigned w = p.w;
  const unsigned s = p.s_small;
  const unsigned cells = 1u << s;
  const unsigned live_bits = w - 2;
  const unsigned lo_bits = w / 2 - 2;  // live positions below the top lane
  const unsigned stage1_bits = 2 * (w + s);
  const unsigned kl_rest_bits = live_bits - s;

  const RoundSubkeys keys = key_schedule(plan.planted_key, p);
  const SevenRoundGuess right = seven_round_true_guess(keys, p);

  const std::vector<std::pair<uint64_t, uint64_t>> check_pairs =
      internal::collect_check_pairs(plan, keys, 2, 8);

  // ---- enumerate first-stage guesses: the right one plus sampled wrongs ----
  std::vector<Stage1Slot> slots(1 + plan.wrong_stage1_guesses);
  slots[0].guess = right.stage1;
  {
    uint64_t state = plan.seed * 0x9e3779b97f4a7c15ull + 0x1234567;
    for (size_t i = 1; i < slots.size(); ++i) {
      uint32_t g;
      bool fresh;
      do {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        g = static_cast<uint32_t>((state * 0x2545F4914F6CDD1Dull) >> 40) &
            width_mask(stage1_bits);
        fresh = true;
        for (size_t j = 0; j < i; ++j) fresh = fresh && slots[j].guess != g;
      } while (!fresh);
      slots[i].guess = g;
    }
  }
  const unsigned y1_width = 2 * w + (w - 2) + s;  // 25 bits at the reduced width
  for (Stage1Slot& slot : slots) {
    const uint32_t ki81_top = slot.guess & p.small_mask();
    const uint32_t ko81 = (slot.guess >> s) & p.word_mask();
    const uint32_t ki21_top = (slot.guess >> (s + w)) & p.small_mask();
    const uint32_t ko21 = (slot.guess >> (s + w + s)) & p.word_mask();
    slot.lut21 = fi_fold_lut(ko21, ki21_top, p);
    slot.lut81 = fi_fold_lut(ko81, ki81_top, p);
    slot.table.assign(size_t{1} << y1_width, 0);
  }

  // ---- single data pass streaming records into every slot's fold table ----
  const uint32_t wm = p.word_mask();
  const unsigned workers = worker_count(plan.threads);
  struct Fields {
    uint32_t y01, y02, y03, y04, base;
  };
  auto fields_of = [&](uint64_t pt, uint64_t ct) {
    const uint32_t l1 = static_cast<uint32_t>(pt >> (2 * w));
    const uint32_t r1 = static_cast<uint32_t>(pt) & p.half_mask();
    const uint32_t l8 = static_cast<uint32_t>(ct >> (2 * w));
    const uint32_t r8 = static_cast<uint32_t>(ct) & p.half_mask();
    Fields f;
    f.y01 = (l1 >> w) & wm;
    f.y02 = l1 & wm;
    f.y03 = (r8 >> w) & wm;
    f.y04 = r8 & wm;
    const uint32_t y05 = fold_small(((r1 >> w) ^ (l8 >> w) ^ f.y04 ^ f.y02) & wm, p);
    const uint32_t y06 = pack_live((r1 ^ l8) & wm, p);
    f.base = (f.y02 << (w + live_bits + s)) | (f.y04 << (live_bits + s)) | (y06 << s) | y05;
    return f;
  };

  uint64_t records = 0;
  if (workers > 1) {
    std::vector<std::vector<std::atomic<uint32_t>>> shared(slots.size());
    for (auto& t : shared) t = std::vector<std::atomic<uint32_t>>(size_t{1} << y1_width);
    records = internal::stream_records(plan, keys, 2, 8, [&](unsigned, uint64_t pt, uint64_t ct) {
      const Fields f = fields_of(pt, ct);
      for (size_t i = 0; i < slots.size(); ++i) {
        const uint32_t idx = f.base ^ (slots[i].lut21[f.y01] ^ slots[i].lut81[f.y03]);
        shared[i][idx].fetch_add(1, std::memory_order_relaxed);
      }
    });
    for (size_t i = 0; i < slots.size(); ++i) {
      for (size_t idx = 0; idx < slots[i].table.size(); ++idx) {
        slots[i].table[idx] = shared[i][idx].load(std::memory_order_relaxed);
      }
    }
  } else {
    const size_t n_slots = slots.size();
    std::vector<uint32_t> idxs(n_slots);
    records = internal::stream_records(plan, keys, 2, 8, [&](unsigned, uint64_t pt, uint64_t ct) {
      const Fields f = fields_of(pt, ct);
      for (size_t i = 0; i < n_slots; ++i) {
        idxs[i] = f.base ^ (slots[i].lut21[f.y01] ^ slots[i].lut81[f.y03]);
        __builtin_prefetch(slots[i].table.data() + idxs[i], 1);
      }
      for (size_t i = 0; i < n_slots; ++i) ++slots[i].table[idxs[i]];
    });
  }
  if (records == 0) throw std::invalid_argument("attack requires a nonempty data source");
  const auto t_collected = std::chrono::steady_clock::now();

  // ---- downstream folds per slot ----
  const double tau = chi2_quantile(static_cast<double>(cells - 1), plan.config.beta1());
  const double tau_normal = [&] {
    DistinguisherConfig cfg = plan.config;
    cfg.n = p.block_bits();
    cfg.m = s;
    return decision_threshold(cfg, static_cast<double>(records));
  }();

  std::vector<std::vector<uint8_t>> fi_luts(size_t{1} << (w + s));
  for (uint32_t g = 0; g < fi_luts.size(); ++g) {
    fi_luts[g] = fi_fold_lut(g >> s, g & p.small_mask(), p);
  }

  const uint64_t downstream = uint64_t{1} << (kl_rest_bits + 2 * w);
  const uint64_t enumerated = slots.size() * downstream;
  const uint64_t sample_stride = std::max<uint64_t>(1, enumerated / plan.survivor_sample);
  // Guess index g enumerates (slot, kl_rest, ko82, ko22); reports quote the
  // full first-stage space.
  const uint64_t guess_space = (uint64_t{1} << stage1_bits) * downstream;

  GuessStats stats;
  std::vector<uint32_t> t2(size_t{1} << (2 * w + s));
  std::vector<uint32_t> t3(size_t{1} << (w + s));
  uint64_t v_cells[128];

  for (size_t si = 0; si < slots.size(); ++si) {
    const Stage1Slot& slot = slots[si];
    const uint32_t ki81_top = slot.guess & p.small_mask();
    const uint32_t ko21 = (slot.guess >> (s + w + s)) & p.word_mask();
    // KL_{2,2} shares its word with KI_{8,1}: the top lane is already fixed
    // by this slot's guess.  KI_{8,2} follows from KO_{2,1} through k3.
    const uint32_t k3 = rotr(ko21, 5, w);
    const uint32_t ki82_top = ((k3 ^ p.constants[2]) >> p.s_big) & p.small_mask();

    for (uint32_t kl_rest = 0; kl_rest < (1u << kl_rest_bits); ++kl_rest) {
      const uint32_t kl22 = (ki81_top << p.s_big) |
                            (((kl_rest >> lo_bits) & 1u) << (w / 2)) |
                            (kl_rest & width_mask(lo_bits));
      const std::vector<uint8_t> lutKL = kl_fold_lut(kl22, p);

      std::fill(t2.begin(), t2.end(), 0);
      for (size_t idx = 0; idx < slot.table.size(); ++idx) {
        const uint32_t i32 = static_cast<uint32_t>(idx);
        const uint32_t hi = i32 >> (live_bits + s);  // (y02, y04)
        const uint32_t v6 = (i32 >> s) & width_mask(live_bits);
        const uint32_t f = i32 & p.small_mask();
        t2[(hi << s) | (f ^ lutKL[unpack_live(v6, p)])] += slot.table[idx];
      }

      for (uint32_t ko82 = 0; ko82 < (1u << w); ++ko82) {
        const uint8_t* lut82 = fi_luts[(ko82 << s) | ki82_top].data();
        std::fill(t3.begin(), t3.end(), 0);
        // t2 index is (y02 || y04 || lane); y04 feeds this fold and y02
        // passes through.
        for (size_t idx = 0; idx < t2.size(); ++idx) {
          const uint32_t i32 = static_cast<uint32_t>(idx);
          const uint32_t y02 = i32 >> (w + s);
          const uint32_t y04 = (i32 >> s) & wm;
          const uint32_t lane = i32 & p.small_mask();
          t3[(y02 << s) | (lane ^ lut82[y04])] += t2[idx];
        }

        // KI_{2,2} follows from KO_{8,2} through k5.
        const uint32_t k5 = rotr(ko82, 8, w);
        const uint32_t ki22_top = ((k5 ^ p.constants[4]) >> p.s_big) & p.small_mask();
        for (uint32_t ko22 = 0; ko22 < (1u << w); ++ko22) {
          const uint8_t* lut22 = fi_luts[(ko22 << s) | ki22_top].data();
          for (uint32_t z = 0; z < cells; ++z) v_cells[z] = 0;
          for (uint32_t y02 = 0; y02 < (1u << w); ++y02) {
            const uint32_t* row = &t3[y02 << s];
            const uint32_t shift = lut22[y02];
            for (uint32_t lane = 0; lane < cells; ++lane) {
              v_cells[lane ^ shift] += row[lane];
            }
          }
          const double T = pearson_T(v_cells, cells, records);
          const uint64_t g = ((static_cast<uint64_t>(si) << kl_rest_bits | kl_rest) << (2 * w)) |
                             (ko82 << w) | ko22;
          const bool is_right = si == 0 && kl_rest == right.kl_rest && ko82 == right.ko82 &&
                                ko22 == right.ko22;
          stats.note(T, g, is_right, tau, sample_stride);
        }
      }
    }
  }
  for (Stage1Slot& slot : slots) {
    slot.table.clear();
    slot.table.shrink_to_fit();
  }
  stats.finalize();

  AttackReport report;
  report.variant = AttackVariant::kSevenRoundWeakKey;
  report.scale = plan.scale;
  report.n = p.block_bits();
  report.m = s;
  report.records_used = records;
  report.data_log2 = std::log2(static_cast<double>(records));
  report.tau = tau;
  report.tau_normal = tau_normal;
  report.guess_space = guess_space;
  report.guess_space_log2 = static_cast<double>(stage1_bits + kl_rest_bits + 2 * w);
  internal::fill_survivor_stats(report, stats, plan.config.beta1());
  report.expected_survivors = static_cast<double>(enumerated - 1) * plan.config.beta1();
  if (!stats.survivors.empty()) {
    report.notes.push_back("survivors tied at the best statistic: " +
                           std::to_string(stats.tied_with_best()));
  }
  report.notes.push_back("first-stage guesses enumerated: right plus " +
                         std::to_string(plan.wrong_stage1_guesses) + " sampled wrong values");

  // ---- exhaustive finish: unknown are k8, the low lane of k6, and the two
  // dead positions of k4 and k2 (the weak-key relation fixes the live
  // positions of k2 from k4) ----
  FinishOutcome outcome;
  const uint32_t live = kl_live_mask(p);
  const uint64_t completions = uint64_t{1} << (w + (w - s) + 4);
  internal::finish_survivors(
      outcome, stats.survivors, completions, plan,
      [&](uint64_t g) {
        const uint64_t slot_index = g >> (kl_rest_bits + 2 * w);
        const uint32_t g1 = slots[slot_index].guess;
        const uint32_t kl_rest = (g >> (2 * w)) & width_mask(kl_rest_bits);
        const uint32_t ko82 = (g >> w) & wm;
        const uint32_t ko22 = g & wm;

        const uint32_t ki81_top = g1 & p.small_mask();
        const uint32_t ko81 = (g1 >> s) & wm;
        const uint32_t ki21_top = (g1 >> (s + w)) & p.small_mask();
        const uint32_t ko21 = (g1 >> (s + w + s)) & wm;

        struct Known {
          uint32_t k1, k3, k5, k7, k6_top, k4_live, k2_live;
        } kn;
        kn.k1 = rotr(ko81, 5, w);
        kn.k3 = rotr(ko21, 5, w);
        kn.k5 = rotr(ko82, 8, w);
        kn.k7 = rotr(ko22, 8, w);
        kn.k6_top = ki21_top ^ (p.constants[5] >> p.s_big);
        const uint32_t kl22 = (ki81_top << p.s_big) |
                              (((kl_rest >> lo_bits) & 1u) << (w / 2)) |
                              (kl_rest & width_mask(lo_bits));
        kn.k4_live = (kl22 ^ p.constants[3]) & live;
        kn.k2_live = (kn.k4_live ^ p.constants[1] ^ p.constants[3]) & live;

        const unsigned inner_bits = w - s + 4;
        return [kn, inner_bits, lo_bits, this_w = w, this_s = s](uint64_t pos, MasterKey& key) {
          const uint32_t hi = static_cast<uint32_t>(pos >> inner_bits);
          const uint32_t rest = static_cast<uint32_t>(pos) & width_mask(inner_bits);
          key.k[0] = kn.k1;
          key.k[2] = kn.k3;
          key.k[4] = kn.k5;
          key.k[6] = kn.k7;
          key.k[7] = hi;
          key.k[5] = (kn.k6_top << (this_w - this_s)) | (rest >> 4);
          key.k[3] = kn.k4_live | ((rest >> 2) & 3u) << lo_bits;
          key.k[1] = kn.k2_live | (rest & 3u) << lo_bits;
        };
      },
      [&](const RoundSubkeys& cand) {
        for (const auto& [cp, cc] : check_pairs) {
          if (encrypt_rounds(Block::from_packed(cp, p), cand, 2, 8, p).packed(p) != cc) {
            return false;
          }
        }
        return true;
      },
      p);
  report.key_recovered = outcome.found;
  if (outcome.found) report.recovered_key = outcome.key;
  if (outcome.limit_hit) report.notes.push_back("finish limit reached before key recovery");
  report.finish_trials = outcome.trials;

  // ---- accounting ----
  const LedgerStage mini_stages[] = {
      {"double FI fold (streamed)", stage1_bits, p.block_bits(), 0},
      {"fold second-key", kl_rest_bits, y1_width, 0},
      {"fold FI round 8", w, 2 * w + s, 0},
      {"fold FI round 2", w, w + s, 0},
  };
  report.mini_ledger = ledger(mini_stages, y1_width);

  const AttackReport analytic = estimate_full_scale(
      AttackVariant::kSevenRoundWeakKey,
      default_config(AttackVariant::kSevenRoundWeakKey, AttackScale::kFullEstimate));
  report.stage_costs = analytic.stage_costs;
  report.time_log2 = analytic.time_log2;
  report.memory_bytes_log2 = analytic.memory_bytes_log2;
  report.survivors_log2 = analytic.survivors_log2;
  report.weak_fraction_log2 = weak_key_fraction_log2(p);

  const auto t_end = std::chrono::steady_clock::now();
  char phases[96];
  std::snprintf(phases, sizeof(phases), "phase seconds: collect %.1f, folds and finish %.1f",
                std::chrono::duration<double>(t_collected - t_start).count(),
                std::chrono::duration<double>(t_end - t_collected).count());
  report.notes.push_back(phases);
  report.runtime_seconds = std::chrono::duration<double>(t_end - t_start).count();
  return report;
}

}  // namespace zckw
