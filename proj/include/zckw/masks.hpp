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

#ifndef ZCKW_MASKS_HPP_
#define ZCKW_MASKS_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "zckw/cipher.hpp"

namespace zckw {

// A width-tagged bit-vector mask.  The value uses machine significance; a
// written-out position p (0 = most significant) is machine bit width-1-p.
struct LinearMask {
  unsigned width = 0;
  uint64_t value = 0;

  bool operator==(const LinearMask&) const = default;
};

// Pointwise product of two equal-width masks (bitwise AND).  Throws
// std::invalid_argument on width mismatch.
LinearMask diamond(const LinearMask& a, const LinearMask& b);

// Compatibility predicates for the keyed OR/AND maps h1(x) = M | x and
// h2(x) = M & x: the (alpha, beta) correlation through h1 is nonzero exactly
// when alpha = ~M & beta, and through h2 exactly when alpha = M & beta.
bool or_mask_compatible(const LinearMask& m, const LinearMask& alpha, const LinearMask& beta);
bool and_mask_compatible(const LinearMask& m, const LinearMask& alpha, const LinearMask& beta);

// XOR of the top and bottom s_small-bit lanes of a w-bit word.  For a
// class mask beta (equal outer lanes, zero middle), beta . x equals
// dot(core, fold_small(x)).
inline uint32_t fold_small(uint32_t x, const CipherParams& p) {
  return ((x >> p.s_big) ^ x) & p.small_mask();
}

// Class mask with s_small-bit core b: equal top and bottom lanes, zero in
// the middle two positions.
inline uint32_t class_expand(uint32_t b, const CipherParams& p) {
  return (b << p.s_big) | b;
}

inline bool is_class_mask(uint32_t beta, const CipherParams& p) {
  return beta == class_expand((beta >> p.s_big) & p.small_mask(), p) &&
         (beta >> p.s_big) <= p.small_mask();
}

// Word positions read by the FL second-key fold: everything except the two
// positions just below the top half (14 of 16 at full width, 6 of 8 at the
// reduced width).  Weak-key comparisons and the fold guesses use this set.
inline uint32_t kl_live_mask(const CipherParams& p) {
  return p.word_mask() ^ (0x3u << (p.w / 2 - 2));
}

// Packs the live positions of a word into w-2 contiguous bits and back.
inline uint32_t pack_live(uint32_t x, const CipherParams& p) {
  const unsigned lo_bits = p.w / 2 - 2;
  return ((x >> (p.w / 2)) << lo_bits) | (x & width_mask(lo_bits));
}

inline uint32_t unpack_live(uint32_t packed, const CipherParams& p) {
  const unsigned lo_bits = p.w / 2 - 2;
  return ((packed >> lo_bits) << (p.w / 2)) | (packed & width_mask(lo_bits));
}

// Companion output mask for FL's OR layer.  With output masks (beta, beta')
// on (YL_l, YL_r) and beta' = rotr(beta, 1) & ~kl2, the keyed OR layer
// linearizes exactly and the only correlated input mask is (beta, 0).
uint32_t fl_companion_mask(uint32_t beta, uint32_t kl2, const CipherParams& p);

struct FlMaskPair {
  uint32_t out_l = 0, out_r = 0;  // (beta, beta')
  uint32_t in_l = 0, in_r = 0;    // (beta, 0)
};

FlMaskPair fl_mask_pair(uint32_t beta, uint32_t kl2, const CipherParams& p);

struct BetaClass {
  std::vector<uint32_t> masks;  // all nonzero class masks, 2^s_small - 1 of them
  std::vector<uint32_t> basis;  // s_small designated basis masks
};

BetaClass beta_class_enumerate(const CipherParams& p);

// An m-dimensional family of linear approximations over the block.  Each
// entry is an (input, output) pair of block-wide masks; the block mask packs
// the L half above the R half.
struct ApproximationFamily {
  unsigned block_bits = 0;
  unsigned dimension = 0;
  std::vector<std::pair<uint64_t, uint64_t>> masks;
};

// The attack family: input mask (beta || beta') on L and zero on R at the
// entry of a 5-round window; the matching output mask sits on the R half of
// the window's exit state (the left half of the state one round earlier).
ApproximationFamily zc_family(const CipherParams& p, uint32_t kl2);

// GF(2) linear independence of the concatenated (in, out) mask rows.
bool masks_linearly_independent(const ApproximationFamily& family);

}  // namespace zckw

#endif  // ZCKW_MASKS_HPP_
