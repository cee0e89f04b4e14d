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

#ifndef ZCKW_TESTS_REFERENCE_CIPHER_HPP_
#define ZCKW_TESTS_REFERENCE_CIPHER_HPP_

#include <cstdint>
#include <vector>

#include "zckw/cipher.hpp"
#include "zckw/tables.hpp"

// A deliberately independent transliteration of the cipher equations in the
// in/out-variable juggling style of the original specification code.  It is
// the oracle the library implementation is tested against and shares
// nothing with it beyond the constant tables.
namespace refimpl {

struct Cipher {
  unsigned w, sb, ss;
  std::vector<uint16_t> S9v, S7v;
  std::vector<uint32_t> c;

  uint32_t wm() const { return (1u << w) - 1; }
  uint32_t rol(uint32_t x, unsigned r) const {
    r %= w;
    if (r == 0) return x;
    return ((x << r) | (x >> (w - r))) & wm();
  }

  uint32_t fi(uint32_t in, uint32_t key) const {
    uint32_t nine = in >> ss, seven = in & ((1u << ss) - 1);
    nine = S9v[nine] ^ seven;
    seven = S7v[seven] ^ (nine & ((1u << ss) - 1));
    seven ^= key >> sb;
    nine ^= key & ((1u << sb) - 1);
    nine = S9v[nine] ^ seven;
    seven = S7v[seven] ^ (nine & ((1u << ss) - 1));
    return (seven << sb) | nine;
  }

  uint32_t fl(uint32_t in, uint32_t kl1, uint32_t kl2) const {
    uint32_t l = in >> w, r = in & wm();
    r ^= rol(l & kl1, 1);
    l ^= rol(r | kl2, 1);
    return (l << w) | r;
  }

  uint32_t fo(uint32_t in, const uint32_t ko[3], const uint32_t ki[3]) const {
    uint32_t l = in >> w, r = in & wm();
    l ^= ko[0];
    l = fi(l, ki[0]);
    l ^= r;
    r ^= ko[1];
    r = fi(r, ki[1]);
    r ^= l;
    l ^= ko[2];
    l = fi(l, ki[2]);
    l ^= r;
    return (r << w) | l;
  }

  uint64_t enc(const uint32_t k[8], uint64_t block, unsigned from, unsigned to) const {
    uint32_t kl1[8], kl2[8], ko[8][3], ki[8][3];
    for (int i = 0; i < 8; ++i) {
      kl1[i] = rol(k[i], 1);
      kl2[i] = k[(i + 2) % 8] ^ c[(i + 2) % 8];
      ko[i][0] = rol(k[(i + 1) % 8], 5);
      ko[i][1] = rol(k[(i + 5) % 8], 8);
      ko[i][2] = rol(k[(i + 6) % 8], 13);
      ki[i][0] = k[(i + 4) % 8] ^ c[(i + 4) % 8];
      ki[i][1] = k[(i + 3) % 8] ^ c[(i + 3) % 8];
      ki[i][2] = k[(i + 7) % 8] ^ c[(i + 7) % 8];
    }
    const uint32_t hm = (2 * w >= 32) ? 0xFFFFFFFFu : (1u << (2 * w)) - 1;
    uint32_t L = static_cast<uint32_t>(block >> (2 * w)) & hm;
    uint32_t R = static_cast<uint32_t>(block) & hm;
    for (unsigned i = from; i <= to; ++i) {
      const uint32_t f = (i % 2) ? fo(fl(L, kl1[i - 1], kl2[i - 1]), ko[i - 1], ki[i - 1])
                                 : fl(fo(L, ko[i - 1], ki[i - 1]), kl1[i - 1], kl2[i - 1]);
      const uint32_t nl = f ^ R;
      R = L;
      L = nl;
    }
    return (static_cast<uint64_t>(L) << (2 * w)) | R;
  }
};

inline Cipher full() {
  Cipher f;
  f.w = 16;
  f.sb = 9;
  f.ss = 7;
  f.S9v.assign(zckw::kasumi_s9().begin(), zckw::kasumi_s9().end());
  f.S7v.assign(zckw::kasumi_s7().begin(), zckw::kasumi_s7().end());
  for (auto v : zckw::kasumi_round_constants()) f.c.push_back(v);
  return f;
}

inline Cipher mini() {
  Cipher f;
  f.w = 8;
  f.sb = 5;
  f.ss = 3;
  f.S9v.assign(zckw::mini_s5().begin(), zckw::mini_s5().end());
  f.S7v.assign(zckw::mini_s3().begin(), zckw::mini_s3().end());
  for (auto v : zckw::mini_round_constants()) f.c.push_back(v);
  return f;
}

}  // namespace refimpl

#endif  // ZCKW_TESTS_REFERENCE_CIPHER_HPP_
