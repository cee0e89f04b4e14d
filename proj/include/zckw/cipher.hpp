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

#ifndef ZCKW_CIPHER_HPP_
#define ZCKW_CIPHER_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "zckw/bits.hpp"

namespace zckw {

// Width and table parameterization of the cipher.  The full configuration is
// KASUMI (w = 16, 9/7-bit boxes); the reduced configuration keeps the exact
// structure at w = 8 with 5/3-bit boxes so that whole-codebook experiments
// fit on a workstation.
struct CipherParams {
  unsigned w = 16;        // word width; half = 2w bits, block = 4w bits
  unsigned s_big = 9;     // big S-box input width
  unsigned s_small = 7;   // small S-box input width, s_big + s_small == w
  unsigned rounds = 8;
  std::vector<uint16_t> sbig;    // bijective, 2^s_big entries
  std::vector<uint16_t> ssmall;  // bijective, 2^s_small entries
  std::array<uint32_t, 8> constants{};  // key-schedule constants c1..c8

  uint32_t word_mask() const { return width_mask(w); }
  uint32_t half_mask() const { return width_mask(2 * w); }
  uint32_t small_mask() const { return width_mask(s_small); }
  unsigned block_bits() const { return 4 * w; }

  static const CipherParams& kasumi();
  static const CipherParams& mini();

  // Throws std::invalid_argument when widths or tables are inconsistent.
  void validate() const;
};

// Cipher state (L, R); each half is 2w bits, the left word of a half sits in
// its high w bits.
struct Block {
  uint32_t left = 0;
  uint32_t right = 0;

  bool operator==(const Block&) const = default;

  uint64_t packed(const CipherParams& p) const {
    return (static_cast<uint64_t>(left) << (2 * p.w)) | right;
  }
  static Block from_packed(uint64_t v, const CipherParams& p) {
    return Block{static_cast<uint32_t>(v >> (2 * p.w)) & p.half_mask(),
                 static_cast<uint32_t>(v) & p.half_mask()};
  }
};

struct MasterKey {
  std::array<uint32_t, 8> k{};  // k[0] holds k1

  bool operator==(const MasterKey&) const = default;
};

struct SubkeySet {
  uint32_t kl1 = 0, kl2 = 0;
  uint32_t ko1 = 0, ko2 = 0, ko3 = 0;
  uint32_t ki1 = 0, ki2 = 0, ki3 = 0;
};

struct RoundSubkeys {
  std::array<SubkeySet, 8> round{};  // round[0] is round 1
};

RoundSubkeys key_schedule(const MasterKey& key, const CipherParams& params);

uint32_t fl_apply(uint32_t x, uint32_t kl1, uint32_t kl2, const CipherParams& params);
uint32_t fl_invert(uint32_t y, uint32_t kl1, uint32_t kl2, const CipherParams& params);
uint32_t fibar_apply(uint32_t x, const CipherParams& params);
uint32_t fi_apply(uint32_t x, uint32_t ki, const CipherParams& params);
uint32_t fo_apply(uint32_t x, const uint32_t ko[3], const uint32_t ki[3],
                  const CipherParams& params);

// One full Feistel round function F_i (FL then FO for odd i, FO then FL for
// even i); i is the absolute 1-based round index.
uint32_t round_function(uint32_t half, unsigned i, const RoundSubkeys& keys,
                        const CipherParams& params);

// Applies rounds from..to inclusive (absolute 1-based indices; the index
// parity selects the FL/FO order).  Throws std::out_of_range for an invalid
// range.
Block encrypt_rounds(Block p, const RoundSubkeys& keys, unsigned from, unsigned to,
                     const CipherParams& params);
Block decrypt_rounds(Block c, const RoundSubkeys& keys, unsigned from, unsigned to,
                     const CipherParams& params);

// Round functions tabulated over all 2^(2w) half values, for whole-codebook
// sweeps at w = 8.  encrypt() then costs one table read per round.
class RoundTables {
 public:
  RoundTables(const RoundSubkeys& keys, const CipherParams& params, unsigned from,
              unsigned to);

  Block encrypt(Block p) const {
    uint32_t l = p.left, r = p.right;
    for (const auto& f : tables_) {
      const uint32_t nl = f[l] ^ r;
      r = l;
      l = nl;
    }
    return Block{l, r};
  }

  unsigned from() const { return from_; }
  unsigned to() const { return to_; }
  const std::vector<uint16_t>& table(unsigned idx) const { return tables_[idx]; }

 private:
  unsigned from_, to_;
  std::vector<std::vector<uint16_t>> tables_;
};

// Hex helpers used by the CLI and fixture files.  Key hex strings contain
// 8 * w/4 digits, block hex strings 4 * w/4 digits, most significant first.
MasterKey parse_key_hex(const std::string& hex, const CipherParams& params);
Block parse_block_hex(const std::string& hex, const CipherParams& params);
std::string key_hex(const MasterKey& key, const CipherParams& params);
std::string block_hex(Block b, const CipherParams& params);

}  // namespace zckw

#endif  // ZCKW_CIPHER_HPP_
