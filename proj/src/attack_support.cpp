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

#include <bit>
#include <stdexcept>

#include "zckw/attack.hpp"

namespace zckw {

unsigned x0_index_width(const CipherParams& params) {
  // R-half words (2w), the L0r ^ L6r field, and the folded small lane.  At
  // full width the field keeps only its 14 live positions; the reduced
  // width stores the whole byte.
  const unsigned field = params.w == 16 ? params.w - 2 : params.w;
  return 2 * params.w + field + params.s_small;
}

unsigned y0_index_width(const CipherParams& params) {
  // Four words, the folded small lane, and the live positions of the
  // second-key field: 85 at w = 16.
  return 4 * params.w + params.s_small + (params.w - 2);
}

bool weak_key_condition(const MasterKey& key, const CipherParams& params) {
  const uint32_t kl22 = (key.k[3] ^ params.constants[3]) & params.word_mask();  // k'4
  const uint32_t kl82 = (key.k[1] ^ params.constants[1]) & params.word_mask();  // k'2
  return ((kl22 ^ kl82) & kl_live_mask(params)) == 0;
}

double weak_key_fraction_log2(const CipherParams& params) {
  return -static_cast<double>(std::popcount(kl_live_mask(params)));
}

std::vector<uint8_t> fi_fold_lut(uint32_t ko, uint32_t ki_top, const CipherParams& params) {
  const uint32_t n = 1u << params.w;
  std::vector<uint8_t> lut(n);
  for (uint32_t x = 0; x < n; ++x) {
    const uint32_t small_lane = fibar_apply((x ^ ko) & params.word_mask(), params) >> params.s_big;
    lut[x] = static_cast<uint8_t>(params.ssmall[(small_lane ^ ki_top) & params.small_mask()]);
  }
  return lut;
}

std::vector<uint8_t> kl_fold_lut(uint32_t kl2, const CipherParams& params) {
  const uint32_t n = 1u << params.w;
  const uint32_t live = kl_live_mask(params);
  std::vector<uint8_t> lut(n);
  for (uint32_t v = 0; v < n; ++v) {
    const uint32_t w = rotl(~(kl2 & live) & v & params.word_mask(), 1, params.w);
    lut[v] = static_cast<uint8_t>(fold_small(w, params));
  }
  return lut;
}

SixRoundGuess six_round_true_guess(const RoundSubkeys& keys, const CipherParams& params) {
  const SubkeySet& r6 = keys.round[5];
  SixRoundGuess g;
  g.kl_live = pack_live(r6.kl2 & kl_live_mask(params), params);
  g.fi1 = (r6.ko1 << params.s_small) | (r6.ki1 >> params.s_big);
  g.fi2 = (r6.ko2 << params.s_small) | (r6.ki2 >> params.s_big);
  return g;
}

SevenRoundGuess seven_round_true_guess(const RoundSubkeys& keys, const CipherParams& params) {
  const SubkeySet& r2 = keys.round[1];
  const SubkeySet& r8 = keys.round[7];
  SevenRoundGuess g;
  const uint32_t ki21_top = r2.ki1 >> params.s_big;
  const uint32_t ki81_top = r8.ki1 >> params.s_big;
  g.stage1 = (((r2.ko1 << params.s_small | ki21_top) << params.w | r8.ko1) << params.s_small) |
             ki81_top;
  // KL_{2,2} shares its word with KI_{8,1}; the top s_small bits come from
  // the stage-1 guess, the rest of the live positions are guessed here.
  const unsigned lo_bits = params.w / 2 - 2;
  const uint32_t kl22 = r2.kl2;
  const uint32_t mid_bit = (kl22 >> (params.w / 2)) & 1u;  // live position below the top lane
  g.kl_rest = (mid_bit << lo_bits) | (kl22 & width_mask(lo_bits));
  g.ko82 = r8.ko2;
  g.ko22 = r2.ko2;
  return g;
}

namespace {

struct SixRoundFields {
  uint32_t r6l, r6r, v, fold;
};

SixRoundFields six_round_fields(uint64_t p, uint64_t c, const CipherParams& params) {
  const unsigned w = params.w;
  const uint32_t wm = params.word_mask();
  const uint32_t l0 = static_cast<uint32_t>(p >> (2 * w));
  const uint32_t l6 = static_cast<uint32_t>(c >> (2 * w));
  const uint32_t r6 = static_cast<uint32_t>(c) & params.half_mask();
  SixRoundFields f;
  f.r6l = (r6 >> w) & wm;
  f.r6r = r6 & wm;
  f.v = ((l0 ^ l6) & wm);
  f.fold = fold_small(((l0 >> w) ^ (l6 >> w) ^ f.r6r) & wm, params);
  return f;
}

}  // namespace

CounterTable collect_initial_counters_6r(
    std::span<const std::pair<uint64_t, uint64_t>> records, const CipherParams& params) {
  const unsigned width = x0_index_width(params);
  if (width > 30) {
    throw std::length_error("initial counters are only materialized at the reduced width");
  }
  CounterTable table = CounterTable::zeros(width);
  for (const auto& [p, c] : records) {
    const SixRoundFields f = six_round_fields(p, c, params);
    const uint32_t idx = (((f.r6l << params.w) | f.r6r) << (params.w + params.s_small)) |
                         (f.v << params.s_small) | f.fold;
    ++table.counts[idx];
  }
  return table;
}

uint32_t six_round_z(uint64_t plaintext, uint64_t ciphertext, const RoundSubkeys& keys,
                     const CipherParams& params) {
  const SixRoundFields f = six_round_fields(plaintext, ciphertext, params);
  const SubkeySet& r6 = keys.round[5];
  uint32_t z = f.fold;
  z ^= fold_small(rotl(~(r6.kl2 & kl_live_mask(params)) & f.v & params.word_mask(), 1, params.w),
                  params);
  z ^= fold_small(fi_apply(f.r6l ^ r6.ko1, r6.ki1, params), params);
  z ^= fold_small(fi_apply(f.r6r ^ r6.ko2, r6.ki2, params), params);
  return z;
}

uint32_t seven_round_z(uint64_t plaintext, uint64_t ciphertext, const RoundSubkeys& keys,
                       const CipherParams& params) {
  const unsigned w = params.w;
  const uint32_t wm = params.word_mask();
  const uint32_t l1 = static_cast<uint32_t>(plaintext >> (2 * w));
  const uint32_t r1 = static_cast<uint32_t>(plaintext) & params.half_mask();
  const uint32_t l8 = static_cast<uint32_t>(ciphertext >> (2 * w));
  const uint32_t r8 = static_cast<uint32_t>(ciphertext) & params.half_mask();
  const uint32_t l1l = (l1 >> w) & wm, l1r = l1 & wm;
  const uint32_t r1l = (r1 >> w) & wm, r1r = r1 & wm;
  const uint32_t l8l = (l8 >> w) & wm, l8r = l8 & wm;
  const uint32_t r8l = (r8 >> w) & wm, r8r = r8 & wm;

  const SubkeySet& r2k = keys.round[1];
  const SubkeySet& r8k = keys.round[7];
  uint32_t z = fold_small((r1l ^ l8l ^ r8r ^ l1r) & wm, params);
  z ^= fold_small(fi_apply(l1l ^ r2k.ko1, r2k.ki1, params), params);
  z ^= fold_small(fi_apply(r8l ^ r8k.ko1, r8k.ki1, params), params);
  z ^= fold_small(
      rotl(~(r2k.kl2 & kl_live_mask(params)) & (r1r ^ l8r) & wm, 1, params.w), params);
  z ^= fold_small(fi_apply(r8r ^ r8k.ko2, r8k.ki2, params), params);
  z ^= fold_small(fi_apply(l1r ^ r2k.ko2, r2k.ki2, params), params);
  return z;
}

DistinguisherConfig default_config(AttackVariant variant, AttackScale scale,
                                   bool use_true_quantiles) {
  DistinguisherConfig cfg;
  if (scale == AttackScale::kFullEstimate) {
    cfg.n = 64;
    cfg.m = 7;
    cfg.beta0_log2 = -2.7;
    cfg.beta1_log2 = variant == AttackVariant::kSixRound ? -45.0 : -5.0;
    if (!use_true_quantiles) {
      cfg.z0_override = 1.0;
      cfg.z1_override = variant == AttackVariant::kSixRound ? 3.3 : 2.4;
    }
  } else {
    cfg.n = 32;
    cfg.m = 3;
    cfg.beta0_log2 = -2.7;
    cfg.beta1_log2 = -5.0;
  }
  return cfg;
}

}  // namespace zckw
