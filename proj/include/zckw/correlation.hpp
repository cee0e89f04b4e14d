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

#ifndef ZCKW_CORRELATION_HPP_
#define ZCKW_CORRELATION_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "zckw/bits.hpp"
#include "zckw/cipher.hpp"
#include "zckw/masks.hpp"

namespace zckw {

// Exact correlation of the approximation beta . f(x) ^ alpha . x over every
// n-bit input, as an integer over 2^n.  f is a complete value table of size
// 2^n.  Throws std::length_error past the 24-bit sweep budget.
ExactCorr correlation(std::span<const uint32_t> f, unsigned n, const LinearMask& alpha,
                      const LinearMask& beta);

// Correlations of beta . f(x) against every input mask at once, scaled by
// 2^n: spectrum[alpha] = sum_x (-1)^(beta.f(x) ^ alpha.x).
std::vector<int64_t> input_mask_spectrum(std::span<const uint32_t> f, unsigned n,
                                         uint64_t beta);

struct ZcSweepResult {
  ExactCorr max_abs;              // largest |correlation| over nonzero combinations
  uint32_t worst_combination = 0; // combination index attaining the maximum
  std::vector<uint64_t> histogram;  // 2^m joint evaluation counts
};

// Encrypts the whole codebook and measures every nonzero linear combination
// of the family exactly.  encrypt maps a packed plaintext block to a packed
// ciphertext block.
ZcSweepResult zc_sweep(const std::function<uint64_t(uint64_t)>& encrypt, unsigned block_bits,
                       const ApproximationFamily& family, unsigned max_threads = 0);

// Whole-codebook sweep of rounds from..to.  Requires block_bits <= 32 (the
// reduced-width configuration); rounds are tabulated once per key.
ZcSweepResult verify_zero_correlation(const CipherParams& params, const RoundSubkeys& keys,
                                      const ApproximationFamily& family, unsigned from,
                                      unsigned to, unsigned max_threads = 0);

// A generic balanced Feistel toy with seeded random bijective round
// functions, used as the model cipher for the distinguisher experiments.
struct ToyFeistel {
  unsigned half_bits = 8;
  std::vector<std::vector<uint16_t>> fs;

  static ToyFeistel random(unsigned half_bits, unsigned rounds, uint64_t seed);

  uint64_t encrypt(uint64_t block) const {
    const uint32_t mask = width_mask(half_bits);
    uint32_t l = static_cast<uint32_t>(block >> half_bits) & mask;
    uint32_t r = static_cast<uint32_t>(block) & mask;
    for (const auto& f : fs) {
      const uint32_t nl = f[l] ^ r;
      r = l;
      l = nl;
    }
    return (static_cast<uint64_t>(l) << half_bits) | r;
  }
};

// Family of m basis approximations for a Feistel of the given half width:
// input mask b on the left plaintext half, output mask b on the right
// ciphertext half, b ranging over unit masks.
ApproximationFamily feistel_family(unsigned half_bits, unsigned m);

}  // namespace zckw

#endif  // ZCKW_CORRELATION_HPP_
