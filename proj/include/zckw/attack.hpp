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

#ifndef ZCKW_ATTACK_HPP_
#define ZCKW_ATTACK_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zckw/cipher.hpp"
#include "zckw/distinguisher.hpp"
#include "zckw/masks.hpp"
#include "zckw/partial_sum.hpp"

namespace zckw {

enum class AttackVariant { kSixRound, kSevenRoundWeakKey };
enum class AttackScale { kMiniExecute, kFullEstimate };

struct AttackPlan {
  AttackVariant variant = AttackVariant::kSixRound;
  AttackScale scale = AttackScale::kMiniExecute;
  const CipherParams* params = &CipherParams::mini();
  DistinguisherConfig config;
  MasterKey planted_key;
  uint64_t seed = 1;
  // Seven-round runs stream the codebook straight into first-stage fold
  // tables, one per enumerated first-stage guess; this many wrong guesses
  // are enumerated next to the right one.
  unsigned wrong_stage1_guesses = 3;
  // Size of the deterministic wrong-guess sample used for the survivor
  // binomial check.
  unsigned survivor_sample = 4096;
  uint64_t record_count = 0;  // 0 = full codebook
  std::string data_path;      // optional dataset file (overrides streaming)
  unsigned threads = 0;       // 0 = hardware concurrency
  uint64_t finish_limit = 0;  // 0 = unlimited exhaustive finish
};

struct AttackReport {
  AttackVariant variant = AttackVariant::kSixRound;
  AttackScale scale = AttackScale::kMiniExecute;
  unsigned n = 0;  // block bits
  unsigned m = 0;  // family dimension
  double data_log2 = 0;
  uint64_t records_used = 0;
  double tau = 0;         // threshold applied to survivors (exact chi-square)
  double tau_normal = 0;  // normal-approximation threshold
  double guess_space_log2 = 0;
  uint64_t guess_space = 0;
  uint64_t survivors = 0;
  double expected_survivors = 0;
  uint64_t sampled_wrong = 0;
  uint64_t sampled_survivors = 0;
  double sampled_expected = 0;
  double sampled_sigma = 0;
  double wrong_T_mean = 0;
  double right_T = -1;
  uint64_t right_rank = 0;
  bool right_survived = false;
  bool key_recovered = false;
  MasterKey recovered_key;
  uint64_t finish_trials = 0;
  ComplexityLedger mini_ledger;        // executed widths (mini scale)
  std::vector<LedgerStage> stage_costs;  // full-scale accounting
  double time_log2 = 0;                // full-scale total, encryption units
  double memory_bytes_log2 = 0;
  double survivors_log2 = 0;           // full-scale expectation
  double weak_fraction_log2 = 0;       // seven-round only
  std::vector<std::string> notes;
  double runtime_seconds = 0;
};

// Initial counter index width of the six-round pipeline: R-half words, the
// live positions of L0r ^ L6r, and the folded small lane.  53 bits at
// w = 16; 27 at w = 8 (the reduced width stores the L0r ^ L6r byte whole).
unsigned x0_index_width(const CipherParams& params);

// Literal initial table width of the seven-round pipeline as reported at
// full scale (85 bits at w = 16).  The reduced-width execution streams
// records into the first fold instead of materializing this table.
unsigned y0_index_width(const CipherParams& params);

// Initial six-round counters from explicit (plaintext, ciphertext) block
// pairs; records must come from rounds 1..6.  Mini widths only.
CounterTable collect_initial_counters_6r(
    std::span<const std::pair<uint64_t, uint64_t>> records, const CipherParams& params);

// Whether the FL second keys of rounds 2 and 8 agree on every live position
// (k'4 ^ k'2 vanishing there).
bool weak_key_condition(const MasterKey& key, const CipherParams& params);

// Fraction (log2) of the key space satisfying weak_key_condition.
double weak_key_fraction_log2(const CipherParams& params);

AttackReport attack_6round(const AttackPlan& plan);
AttackReport attack_7round_weak(const AttackPlan& plan);
AttackReport estimate_full_scale(AttackVariant variant, const DistinguisherConfig& config);

// Default per-variant configs: the full-scale estimates carry the rounded
// quantile values the published figures use; use_true_quantiles replaces
// them with computed ones.
DistinguisherConfig default_config(AttackVariant variant, AttackScale scale,
                                   bool use_true_quantiles = false);

// --- stage plumbing shared by the two pipelines and their tests ---

// fold_small(FI(x ^ ko, ki)) depends on ki only through its top s_small
// bits; lut[x] tabulates it.
std::vector<uint8_t> fi_fold_lut(uint32_t ko, uint32_t ki_top, const CipherParams& params);

// fold_small(rotl(~kl2 & v, 1)); reads only the live positions of kl2 and v.
std::vector<uint8_t> kl_fold_lut(uint32_t kl2, const CipherParams& params);

struct SixRoundGuess {
  uint32_t kl_live = 0;  // live positions of KL_{6,2}, packed (w-2 bits)
  uint32_t fi1 = 0;      // KO_{6,1} || top bits of KI_{6,1}
  uint32_t fi2 = 0;      // KO_{6,2} || top bits of KI_{6,2}
};

struct SevenRoundGuess {
  uint32_t stage1 = 0;  // KO_{2,1} || KI_{2,1}-top || KO_{8,1} || KI_{8,1}-top
  uint32_t kl_rest = 0; // live, non-deduced positions of KL_{2,2}
  uint32_t ko82 = 0;
  uint32_t ko22 = 0;
};

SixRoundGuess six_round_true_guess(const RoundSubkeys& keys, const CipherParams& params);
SevenRoundGuess seven_round_true_guess(const RoundSubkeys& keys, const CipherParams& params);

// Six-round z evaluation for one record under fully specified subkeys - the
// straight-line form of the staged pipeline, used as its oracle in tests.
uint32_t six_round_z(uint64_t plaintext, uint64_t ciphertext, const RoundSubkeys& keys,
                     const CipherParams& params);
uint32_t seven_round_z(uint64_t plaintext, uint64_t ciphertext, const RoundSubkeys& keys,
                       const CipherParams& params);

}  // namespace zckw

#endif  // ZCKW_ATTACK_HPP_
