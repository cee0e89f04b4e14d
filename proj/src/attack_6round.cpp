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
#include <mutex>
#include <stdexcept>

#include "attack_internal.hpp"
#include "record_stream.hpp"
#include "zckw/attack.hpp"

namespace zckw {

using internal::FinishOutcome;
using internal::GuessStats;
using internal::pearson_T;

namespace {

// The guess pins k7, k3, the top small-lane bits of k1 and k2, and the live
// positions of k8; the finish enumerates the remaining 36 bits.
struct SixRoundKnown {
  uint32_t k7, k3, k1_top, k2_top, k8_live;
};

SixRoundKnown decode_six_round_guess(uint32_t kl_live, uint32_t fi1, uint32_t fi2,
                                     const CipherParams& p) {
  SixRoundKnown known;
  known.k7 = rotr(fi1 >> p.s_small, 5, p.w);
  known.k3 = rotr(fi2 >> p.s_small, 8, p.w);
  known.k2_top = (fi1 & p.small_mask()) ^ (p.constants[1] >> p.s_big);
  known.k1_top = (fi2 & p.small_mask()) ^ (p.constants[0] >> p.s_big);
  known.k8_live = (unpack_live(kl_live, p) ^ p.constants[7]) & kl_live_mask(p);
  return known;
}

}  // namespace

AttackReport attack_6round(const AttackPlan& plan) {
  const auto t_start = std::chrono::steady_clock::now();
  const CipherParams& p = *plan.params;
  if (plan.scale != AttackScale::kMiniExecute) {
    throw std::invalid_argument("attack execution requires the mini scale; use the estimator");
  }
  if (p.block_bits() > 32) {
    throw std::length_error("attack execution requires block width <= 32");
  }
  const unsigned w = p.w;
  const unsigned s = p.s_small;
  const unsigned cells = 1u << s;
  const unsigned live_bits = w - 2;
  const unsigned fi_bits = w + s;

  const RoundSubkeys keys = key_schedule(plan.planted_key, p);
  const SixRoundGuess right = six_round_true_guess(keys, p);
  const uint64_t right_packed =
      ((static_cast<uint64_t>(right.kl_live) << fi_bits | right.fi1) << fi_bits) | right.fi2;

  const std::vector<std::pair<uint64_t, uint64_t>> check_pairs =
      internal::collect_check_pairs(plan, keys, 1, 6);

  // ---- collection: x0 counters over (R6l, R6r, L0r^L6r, folded lane) ----
  const unsigned x0_width = x0_index_width(p);
  std::vector<uint32_t> x0(size_t{1} << x0_width, 0);
  const unsigned workers = worker_count(plan.threads);
  const uint32_t wm = p.word_mask();
  auto x0_index = [&](uint64_t pt, uint64_t ct) {
    const uint32_t l0 = static_cast<uint32_t>(pt >> (2 * w));
    const uint32_t l6 = static_cast<uint32_t>(ct >> (2 * w));
    const uint32_t r6 = static_cast<uint32_t>(ct) & p.half_mask();
    const uint32_t v = (l0 ^ l6) & wm;
    const uint32_t f = fold_small(((l0 >> w) ^ (l6 >> w) ^ r6) & wm, p);
    return ((r6 >> w) << (w + w + s)) | ((r6 & wm) << (w + s)) | (v << s) | f;
  };

  uint64_t records = 0;
  if (workers > 1) {
    std::vector<std::atomic<uint32_t>> shared(size_t{1} << x0_width);
    records = internal::stream_records(plan, keys, 1, 6, [&](unsigned, uint64_t pt, uint64_t ct) {
      shared[x0_index(pt, ct)].fetch_add(1, std::memory_order_relaxed);
    });
    for (size_t i = 0; i < x0.size(); ++i) x0[i] = shared[i].load(std::memory_order_relaxed);
  } else {
    uint32_t* table = x0.data();
    records = internal::stream_records(plan, keys, 1, 6, [&](unsigned, uint64_t pt, uint64_t ct) {
      const uint32_t idx = x0_index(pt, ct);
      __builtin_prefetch(table + idx, 1);
      ++table[idx];
    });
  }
  if (records == 0) throw std::invalid_argument("attack requires a nonempty data source");
  const auto t_collected = std::chrono::steady_clock::now();

  // ---- staged folds over the guess space ----
  const double tau = chi2_quantile(static_cast<double>(cells - 1), plan.config.beta1());
  const double tau_normal = [&] {
    DistinguisherConfig cfg = plan.config;
    cfg.n = p.block_bits();
    cfg.m = s;
    return decision_threshold(cfg, static_cast<double>(records));
  }();

  const uint64_t guess_space = uint64_t{1} << (live_bits + 2 * fi_bits);
  const uint64_t sample_stride = std::max<uint64_t>(1, guess_space / plan.survivor_sample);

  const uint32_t fi_guesses = 1u << fi_bits;
  std::vector<std::vector<uint8_t>> fi_luts(fi_guesses);
  for (uint32_t g = 0; g < fi_guesses; ++g) {
    fi_luts[g] = fi_fold_lut(g >> s, g & p.small_mask(), p);
  }
  std::vector<uint8_t> fibar_small(1u << w);
  for (uint32_t x = 0; x < (1u << w); ++x) {
    fibar_small[x] = static_cast<uint8_t>(fibar_apply(x, p) >> p.s_big);
  }

  const uint32_t kl_guesses = 1u << live_bits;
  std::vector<GuessStats> partials(workers);

  parallel_for(kl_guesses, [&](uint64_t ga_begin, uint64_t ga_end, unsigned tid) {
    GuessStats& stats = partials[tid];
    std::vector<uint32_t> t1(size_t{1} << (2 * w + s));
    std::vector<uint32_t> t2(size_t{1} << (w + s));
    uint64_t v_cells[128];

    for (uint64_t ga = ga_begin; ga < ga_end; ++ga) {
      const std::vector<uint8_t> lutA = kl_fold_lut(unpack_live(static_cast<uint32_t>(ga), p), p);

      std::fill(t1.begin(), t1.end(), 0);
      for (size_t idx = 0; idx < x0.size(); ++idx) {
        const uint32_t i32 = static_cast<uint32_t>(idx);
        const uint32_t hi = i32 >> (w + s);
        const uint32_t v = (i32 >> s) & wm;
        const uint32_t f = i32 & p.small_mask();
        t1[(hi << s) | (f ^ lutA[v])] += x0[idx];
      }

      const uint32_t vs_mask = width_mask(w + s);
      for (uint32_t gb = 0; gb < fi_guesses; ++gb) {
        const uint8_t* lutB = fi_luts[gb].data();
        std::fill(t2.begin(), t2.end(), 0);
        for (size_t idx = 0; idx < t1.size(); ++idx) {
          t2[(static_cast<uint32_t>(idx) & vs_mask) ^ lutB[idx >> (w + s)]] += t1[idx];
        }

        // Last stage: for a fixed addition key ko, every small-lane key ki
        // shares the regrouped table acc[lane][y].
        const uint64_t base = ((ga << fi_bits) | gb) << fi_bits;
        for (uint32_t ko = 0; ko < (1u << w); ++ko) {
          uint64_t acc[8][8] = {};
          for (uint32_t hi = 0; hi < (1u << w); ++hi) {
            const uint32_t lane = fibar_small[hi ^ ko];
            const uint32_t* row = &t2[hi << s];
            uint64_t* dst = acc[lane];
            for (uint32_t y = 0; y < cells; ++y) dst[y] += row[y];
          }
          for (uint32_t ki = 0; ki < cells; ++ki) {
            for (uint32_t z = 0; z < cells; ++z) {
              uint64_t sum = 0;
              for (uint32_t lane = 0; lane < cells; ++lane) {
                sum += acc[lane][z ^ p.ssmall[lane ^ ki]];
              }
              v_cells[z] = sum;
            }
            const double T = pearson_T(v_cells, cells, records);
            const uint64_t g = base | (ko << s) | ki;
            stats.note(T, g, g == right_packed, tau, sample_stride);
          }
        }
      }
    }
  }, plan.threads);

  x0.clear();
  x0.shrink_to_fit();
  const auto t_staged = std::chrono::steady_clock::now();

  GuessStats stats;
  for (auto& part : partials) stats.merge(std::move(part));
  stats.finalize();

  AttackReport report;
  report.variant = AttackVariant::kSixRound;
  report.scale = plan.scale;
  report.n = p.block_bits();
  report.m = s;
  report.records_used = records;
  report.data_log2 = std::log2(static_cast<double>(records));
  report.tau = tau;
  report.tau_normal = tau_normal;
  report.guess_space = guess_space;
  report.guess_space_log2 = static_cast<double>(live_bits + 2 * fi_bits);
  internal::fill_survivor_stats(report, stats, plan.config.beta1());
  if (!stats.survivors.empty()) {
    report.notes.push_back("survivors tied at the best statistic: " +
                           std::to_string(stats.tied_with_best()));
  }

  // ---- exhaustive finish over the unguessed master key bits ----
  // Positions walk the low lanes of k1 and k2 outermost, then k4, k5, k6
  // and the two dead positions of k8.
  const unsigned lo_bits = w - s;
  const uint64_t completions = uint64_t{1} << (2 * lo_bits + 3 * w + 2);
  FinishOutcome outcome;
  internal::finish_survivors(
      outcome, stats.survivors, completions, plan,
      [&](uint64_t g) {
        const SixRoundKnown known = decode_six_round_guess(
            static_cast<uint32_t>(g >> (2 * fi_bits)),
            (static_cast<uint32_t>(g) >> fi_bits) & width_mask(fi_bits),
            static_cast<uint32_t>(g) & width_mask(fi_bits), p);
        const unsigned inner_bits = 3 * w + 2;
        return [known, lo_bits, inner_bits, wm, this_w = w](uint64_t pos, MasterKey& key) {
          const uint64_t hi = pos >> inner_bits;
          const uint64_t rest = pos & width_mask(inner_bits);
          key.k[0] = (known.k1_top << lo_bits) | static_cast<uint32_t>(hi >> lo_bits);
          key.k[1] = (known.k2_top << lo_bits) | static_cast<uint32_t>(hi & width_mask(lo_bits));
          key.k[2] = known.k3;
          key.k[3] = static_cast<uint32_t>(rest >> (2 * this_w + 2)) & wm;
          key.k[4] = static_cast<uint32_t>(rest >> (this_w + 2)) & wm;
          key.k[5] = static_cast<uint32_t>(rest >> 2) & wm;
          key.k[6] = known.k7;
          key.k[7] = known.k8_live | ((static_cast<uint32_t>(rest) & 3u) << (this_w / 2 - 2));
        };
      },
      [&](const RoundSubkeys& cand) {
        for (const auto& [cp, cc] : check_pairs) {
          if (encrypt_rounds(Block::from_packed(cp, p), cand, 1, 6, p).packed(p) != cc) {
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
      {"fold second-key", live_bits, x0_width, 0},
      {"fold first FI", fi_bits, 2 * w + s, 0},
      {"fold second FI", fi_bits, w + s, 0},
  };
  report.mini_ledger = ledger(mini_stages, x0_width);

  const AttackReport analytic = estimate_full_scale(
      AttackVariant::kSixRound,
      default_config(AttackVariant::kSixRound, AttackScale::kFullEstimate));
  report.stage_costs = analytic.stage_costs;
  report.time_log2 = analytic.time_log2;
  report.memory_bytes_log2 = analytic.memory_bytes_log2;
  report.survivors_log2 = analytic.survivors_log2;

  const auto t_end = std::chrono::steady_clock::now();
  char phases[128];
  std::snprintf(phases, sizeof(phases),
                "phase seconds: collect %.1f, folds %.1f, finish %.1f",
                std::chrono::duration<double>(t_collected - t_start).count(),
                std::chrono::duration<double>(t_staged - t_collected).count(),
                std::chrono::duration<double>(t_end - t_staged).count());
  report.notes.push_back(phases);
  report.runtime_seconds = std::chrono::duration<double>(t_end - t_start).count();
  return report;
}

}  // namespace zckw
