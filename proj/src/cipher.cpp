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

#include "zckw/cipher.hpp"

#include <stdexcept>

#include "zckw/tables.hpp"

namespace zckw {

namespace {

std::vector<uint16_t> to_vec16(std::span<const uint8_t> t) {
  return std::vector<uint16_t>(t.begin(), t.end());
}

CipherParams make_kasumi() {
  CipherParams p;
  p.w = 16;
  p.s_big = 9;
  p.s_small = 7;
  p.rounds = 8;
  auto s9 = kasumi_s9();
  p.sbig.assign(s9.begin(), s9.end());
  p.ssmall = to_vec16(kasumi_s7());
  auto c = kasumi_round_constants();
  for (int i = 0; i < 8; ++i) p.constants[i] = c[i];
  p.validate();
  return p;
}

CipherParams make_mini() {
  CipherParams p;
  p.w = 8;
  p.s_big = 5;
  p.s_small = 3;
  p.rounds = 8;
  p.sbig = to_vec16(mini_s5());
  p.ssmall = to_vec16(mini_s3());
  auto c = mini_round_constants();
  for (int i = 0; i < 8; ++i) p.constants[i] = c[i];
  p.validate();
  return p;
}

void check_round_range(unsigned from, unsigned to, const CipherParams& params) {
  if (from < 1 || to > params.rounds || from > to) {
    throw std::out_of_range("round range must satisfy 1 <= from <= to <= rounds");
  }
}

}  // namespace

const CipherParams& CipherParams::kasumi() {
  static const CipherParams p = make_kasumi();
  return p;
}

const CipherParams& CipherParams::mini() {
  static const CipherParams p = make_mini();
  return p;
}

void CipherParams::validate() const {
  if (s_big + s_small != w) throw std::invalid_argument("s_big + s_small must equal w");
  if (rounds < 1 || rounds > 8) throw std::invalid_argument("rounds must be in 1..8");
  if (!is_permutation(std::span<const uint16_t>(sbig), s_big)) {
    throw std::invalid_argument("big S-box is not a permutation");
  }
  if (!is_permutation(std::span<const uint16_t>(ssmall), s_small)) {
    throw std::invalid_argument("small S-box is not a permutation");
  }
  for (uint32_t c : constants) {
    if (c & ~word_mask()) throw std::invalid_argument("round constant exceeds word width");
  }
}

RoundSubkeys key_schedule(const MasterKey& key, const CipherParams& params) {
  const unsigned w = params.w;
  std::array<uint32_t, 8> kp;
  for (int i = 0; i < 8; ++i) kp[i] = (key.k[i] ^ params.constants[i]) & params.word_mask();

  RoundSubkeys out;
  for (unsigned j = 0; j < 8; ++j) {
    SubkeySet& s = out.round[j];
    s.kl1 = rotl(key.k[j], 1, w);
    s.kl2 = kp[(j + 2) % 8];
    s.ko1 = rotl(key.k[(j + 1) % 8], 5, w);
    s.ko2 = rotl(key.k[(j + 5) % 8], 8, w);
    s.ko3 = rotl(key.k[(j + 6) % 8], 13, w);
    s.ki1 = kp[(j + 4) % 8];
    s.ki2 = kp[(j + 3) % 8];
    s.ki3 = kp[(j + 7) % 8];
  }
  return out;
}

uint32_t fl_apply(uint32_t x, uint32_t kl1, uint32_t kl2, const CipherParams& params) {
  const unsigned w = params.w;
  const uint32_t xl = (x >> w) & params.word_mask();
  const uint32_t xr = x & params.word_mask();
  const uint32_t yr = rotl(xl & kl1, 1, w) ^ xr;
  const uint32_t yl = rotl(yr | kl2, 1, w) ^ xl;
  return (yl << w) | yr;
}

uint32_t fl_invert(uint32_t y, uint32_t kl1, uint32_t kl2, const CipherParams& params) {
  const unsigned w = params.w;
  const uint32_t yl = (y >> w) & params.word_mask();
  const uint32_t yr = y & params.word_mask();
  const uint32_t xl = rotl(yr | kl2, 1, w) ^ yl;
  const uint32_t xr = rotl(xl & kl1, 1, w) ^ yr;
  return (xl << w) | xr;
}

uint32_t fibar_apply(uint32_t x, const CipherParams& params) {
  const uint32_t smask = params.small_mask();
  uint32_t big = x >> params.s_small;
  uint32_t small = x & smask;
  big = params.sbig[big] ^ small;  // the small lane zero-extends into the big one
  small = params.ssmall[small] ^ (big & smask);
  return (small << params.s_big) | big;
}

uint32_t fi_apply(uint32_t x, uint32_t ki, const CipherParams& params) {
  uint32_t t = fibar_apply(x, params) ^ ki;
  t = rotl(t, params.s_small, params.w);
  return fibar_apply(t, params);
}

uint32_t fo_apply(uint32_t x, const uint32_t ko[3], const uint32_t ki[3],
                  const CipherParams& params) {
  const unsigned w = params.w;
  uint32_t l = (x >> w) & params.word_mask();
  uint32_t r = x & params.word_mask();
  l = fi_apply(l ^ ko[0], ki[0], params) ^ r;
  r = fi_apply(r ^ ko[1], ki[1], params) ^ l;
  l = fi_apply(l ^ ko[2], ki[2], params) ^ r;
  return (r << w) | l;
}

uint32_t round_function(uint32_t half, unsigned i, const RoundSubkeys& keys,
                        const CipherParams& params) {
  const SubkeySet& s = keys.round[i - 1];
  const uint32_t ko[3] = {s.ko1, s.ko2, s.ko3};
  const uint32_t ki[3] = {s.ki1, s.ki2, s.ki3};
  if (i & 1u) {
    return fo_apply(fl_apply(half, s.kl1, s.kl2, params), ko, ki, params);
  }
  return fl_apply(fo_apply(half, ko, ki, params), s.kl1, s.kl2, params);
}

Block encrypt_rounds(Block p, const RoundSubkeys& keys, unsigned from, unsigned to,
                     const CipherParams& params) {
  check_round_range(from, to, params);
  uint32_t l = p.left, r = p.right;
  for (unsigned i = from; i <= to; ++i) {
    const uint32_t nl = round_function(l, i, keys, params) ^ r;
    r = l;
    l = nl;
  }
  return Block{l, r};
}

Block decrypt_rounds(Block c, const RoundSubkeys& keys, unsigned from, unsigned to,
                     const CipherParams& params) {
  check_round_range(from, to, params);
  uint32_t l = c.left, r = c.right;
  for (unsigned i = to; i >= from; --i) {
    const uint32_t pl = r;
    const uint32_t pr = round_function(r, i, keys, params) ^ l;
    l = pl;
    r = pr;
  }
  return Block{l, r};
}

RoundTables::RoundTables(const RoundSubkeys& keys, const CipherParams& params,
                         unsigned from, unsigned to)
    : from_(from), to_(to) {
  check_round_range(from, to, params);
  if (2 * params.w > 16) {
    throw std::length_error("round tabulation requires half width <= 16 bits");
  }
  const uint32_t n = 1u << (2 * params.w);
  tables_.reserve(to - from + 1);
  for (unsigned i = from; i <= to; ++i) {
    std::vector<uint16_t> f(n);
    for (uint32_t x = 0; x < n; ++x) {
      f[x] = static_cast<uint16_t>(round_function(x, i, keys, params));
    }
    tables_.push_back(std::move(f));
  }
}

namespace {

uint32_t parse_hex_word(const std::string& hex, size_t pos, unsigned digits) {
  uint32_t v = 0;
  for (unsigned i = 0; i < digits; ++i) {
    const char c = hex[pos + i];
    uint32_t d;
    if (c >= '0' && c <= '9') d = static_cast<uint32_t>(c - '0');
    else if (c >= 'a' && c <= 'f') d = static_cast<uint32_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') d = static_cast<uint32_t>(c - 'A' + 10);
    else throw std::invalid_argument("bad hex digit");
    v = (v << 4) | d;
  }
  return v;
}

std::string format_hex(uint64_t v, unsigned digits) {
  static const char* kDigits = "0123456789ABCDEF";
  std::string s(digits, '0');
  for (unsigned i = 0; i < digits; ++i) {
    s[digits - 1 - i] = kDigits[(v >> (4 * i)) & 0xF];
  }
  return s;
}

}  // namespace

MasterKey parse_key_hex(const std::string& hex, const CipherParams& params) {
  const unsigned digits = params.w / 4;
  if (hex.size() != 8 * digits) throw std::invalid_argument("key hex has wrong length");
  MasterKey key;
  for (unsigned i = 0; i < 8; ++i) key.k[i] = parse_hex_word(hex, i * digits, digits);
  return key;
}

Block parse_block_hex(const std::string& hex, const CipherParams& params) {
  const unsigned digits = params.w / 2;  // per half
  if (hex.size() != 2 * digits) throw std::invalid_argument("block hex has wrong length");
  return Block{parse_hex_word(hex, 0, digits), parse_hex_word(hex, digits, digits)};
}

std::string key_hex(const MasterKey& key, const CipherParams& params) {
  std::string s;
  for (unsigned i = 0; i < 8; ++i) s += format_hex(key.k[i], params.w / 4);
  return s;
}

std::string block_hex(Block b, const CipherParams& params) {
  return format_hex(b.left, params.w / 2) + format_hex(b.right, params.w / 2);
}

}  // namespace zckw
