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

#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "reference_cipher.hpp"
#include "zckw/cipher.hpp"
#include "zckw/tables.hpp"

using namespace zckw;

namespace {

MasterKey random_key(std::mt19937_64& rng, const CipherParams& p) {
  MasterKey key;
  for (auto& w : key.k) w = static_cast<uint32_t>(rng()) & p.word_mask();
  return key;
}

CipherParams zero_constant_params(const CipherParams& base) {
  CipherParams p = base;
  p.constants.fill(0);
  return p;
}

}  // namespace

TEST_CASE("bit convention: rotate of the top bit wraps to the bottom") {
  CHECK(rotl(0x8000u, 1, 16) == 0x0001u);
  CHECK(rotr(0x0001u, 1, 16) == 0x8000u);
  CHECK(rotl(0x80u, 1, 8) == 0x01u);
}

TEST_CASE("embedded tables are permutations and match the data files") {
  CHECK(is_permutation(std::vector<uint16_t>(kasumi_s9().begin(), kasumi_s9().end()), 9));
  CHECK(is_permutation(std::vector<uint16_t>(kasumi_s7().begin(), kasumi_s7().end()), 7));
  CHECK(is_permutation(std::vector<uint16_t>(mini_s5().begin(), mini_s5().end()), 5));
  CHECK(is_permutation(std::vector<uint16_t>(mini_s3().begin(), mini_s3().end()), 3));

  const std::string dir = ZCKW_DATA_DIR;
  const auto s9 = load_table_file(dir + "/kasumi_s9.txt", 9);
  REQUIRE(s9.size() == kasumi_s9().size());
  CHECK(std::equal(s9.begin(), s9.end(), kasumi_s9().begin()));
  const auto s7 = load_table_file(dir + "/kasumi_s7.txt", 7);
  CHECK(std::equal(s7.begin(), s7.end(), kasumi_s7().begin()));
  const auto s5 = load_table_file(dir + "/mini_s5.txt", 5);
  CHECK(std::equal(s5.begin(), s5.end(), mini_s5().begin()));
  const auto s3 = load_table_file(dir + "/mini_s3.txt", 3);
  CHECK(std::equal(s3.begin(), s3.end(), mini_s3().begin()));

  std::istringstream bad("9\n1\n2\n");
  CHECK_THROWS(load_table_text(bad, 7));
}

TEST_CASE("key schedule matches the per-round word selection") {
  const CipherParams& p = CipherParams::kasumi();
  std::mt19937_64 rng(7);
  const MasterKey key = random_key(rng, p);
  const RoundSubkeys ks = key_schedule(key, p);

  // Round 1 selections.
  CHECK(ks.round[0].kl1 == rotl(key.k[0], 1, 16));
  CHECK(ks.round[0].ko1 == rotl(key.k[1], 5, 16));
  CHECK(ks.round[0].ko2 == rotl(key.k[5], 8, 16));
  CHECK(ks.round[0].ko3 == rotl(key.k[6], 13, 16));
  CHECK(ks.round[0].ki1 == (key.k[4] ^ 0xFEDCu));
  CHECK(ks.round[0].ki2 == (key.k[3] ^ 0xCDEFu));
  CHECK(ks.round[0].ki3 == (key.k[7] ^ 0x3210u));
  CHECK(ks.round[0].kl2 == (key.k[2] ^ 0x89ABu));

  SUBCASE("all-zero key with zero constants gives all-zero subkeys") {
    const CipherParams zp = zero_constant_params(p);
    const RoundSubkeys zks = key_schedule(MasterKey{}, zp);
    for (const auto& r : zks.round) {
      CHECK(r.kl1 == 0);
      CHECK(r.kl2 == 0);
      CHECK(r.ko1 == 0);
      CHECK(r.ko2 == 0);
      CHECK(r.ko3 == 0);
      CHECK(r.ki1 == 0);
      CHECK(r.ki2 == 0);
      CHECK(r.ki3 == 0);
    }
  }

  SUBCASE("flipping k3 touches exactly the eight subkey words that use it") {
    MasterKey flipped = key;
    flipped.k[2] ^= 0x0040;
    const RoundSubkeys ks2 = key_schedule(flipped, p);
    unsigned diffs = 0;
    for (int i = 0; i < 8; ++i) {
      diffs += ks.round[i].kl1 != ks2.round[i].kl1;
      diffs += ks.round[i].kl2 != ks2.round[i].kl2;
      diffs += ks.round[i].ko1 != ks2.round[i].ko1;
      diffs += ks.round[i].ko2 != ks2.round[i].ko2;
      diffs += ks.round[i].ko3 != ks2.round[i].ko3;
      diffs += ks.round[i].ki1 != ks2.round[i].ki1;
      diffs += ks.round[i].ki2 != ks2.round[i].ki2;
      diffs += ks.round[i].ki3 != ks2.round[i].ki3;
    }
    CHECK(diffs == 8);
    CHECK(ks.round[1].ko1 != ks2.round[1].ko1);  // KO2,1
    CHECK(ks.round[2].kl1 != ks2.round[2].kl1);  // KL3,1
    CHECK(ks.round[3].ki3 != ks2.round[3].ki3);  // KI4,3
    CHECK(ks.round[4].ko3 != ks2.round[4].ko3);  // KO5,3
    CHECK(ks.round[5].ko2 != ks2.round[5].ko2);  // KO6,2
    CHECK(ks.round[6].ki1 != ks2.round[6].ki1);  // KI7,1
    CHECK(ks.round[7].ki2 != ks2.round[7].ki2);  // KI8,2
    CHECK(ks.round[0].kl2 != ks2.round[0].kl2);  // KL1,2
  }

  SUBCASE("every subkey word depends on exactly one master word") {
    for (int word = 0; word < 8; ++word) {
      MasterKey flipped = key;
      flipped.k[word] ^= 0x8001;
      const RoundSubkeys ks2 = key_schedule(flipped, p);
      unsigned diffs = 0;
      for (int i = 0; i < 8; ++i) {
        diffs += ks.round[i].kl1 != ks2.round[i].kl1;
        diffs += ks.round[i].kl2 != ks2.round[i].kl2;
        diffs += ks.round[i].ko1 != ks2.round[i].ko1;
        diffs += ks.round[i].ko2 != ks2.round[i].ko2;
        diffs += ks.round[i].ko3 != ks2.round[i].ko3;
        diffs += ks.round[i].ki1 != ks2.round[i].ki1;
        diffs += ks.round[i].ki2 != ks2.round[i].ki2;
        diffs += ks.round[i].ki3 != ks2.round[i].ki3;
      }
      CHECK(diffs == 8);
    }
  }
}

TEST_CASE("FL equations and inverse") {
  const CipherParams& p = CipherParams::kasumi();

  // Zero keys: the AND branch vanishes and the OR branch passes through.
  const uint32_t a = 0x1234, b = 0x9876;
  const uint32_t x = (a << 16) | b;
  CHECK(fl_apply(x, 0, 0, p) == ((rotl(b, 1, 16) ^ a) << 16 | b));
  CHECK(fl_invert((rotl(b, 1, 16) ^ a) << 16 | b, 0, 0, p) == x);

  // The OR with the top bit forces a wrapped rotation.
  CHECK(fl_apply(0, 0, 0x8000, p) == 0x00010000u);

  CHECK(fl_invert(fl_apply(0, 0x5A5A, 0xC3C3, p), 0x5A5A, 0xC3C3, p) == 0);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const uint32_t v = static_cast<uint32_t>(rng());
    const uint32_t kl1 = static_cast<uint32_t>(rng()) & 0xFFFF;
    const uint32_t kl2 = static_cast<uint32_t>(rng()) & 0xFFFF;
    CHECK(fl_invert(fl_apply(v, kl1, kl2, p), kl1, kl2, p) == v);
  }

  SUBCASE("exhaustive round-trip at the reduced width") {
    const CipherParams& mp = CipherParams::mini();
    std::mt19937_64 krng(3);
    for (int trial = 0; trial < 64; ++trial) {
      const uint32_t kl1 = static_cast<uint32_t>(krng()) & 0xFF;
      const uint32_t kl2 = static_cast<uint32_t>(krng()) & 0xFF;
      bool ok = true;
      for (uint32_t v = 0; v < (1u << 16); ++v) {
        ok = ok && fl_invert(fl_apply(v, kl1, kl2, mp), kl1, kl2, mp) == v;
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("FI half-function and FI") {
  const CipherParams& p = CipherParams::kasumi();
  const CipherParams& mp = CipherParams::mini();
  const refimpl::Cipher ref = refimpl::full();

  // Frozen from the reference implementation.
  CHECK(fibar_apply(0, p) == 0x22A7);
  CHECK(fi_apply(0, 0, p) == 0xF009);

  SUBCASE("half-function is a bijection at both widths") {
    std::set<uint32_t> seen;
    for (uint32_t x = 0; x < (1u << 16); ++x) seen.insert(fibar_apply(x, p));
    CHECK(seen.size() == (1u << 16));
    std::set<uint32_t> mini_seen;
    for (uint32_t x = 0; x < (1u << 8); ++x) mini_seen.insert(fibar_apply(x, mp));
    CHECK(mini_seen.size() == (1u << 8));
  }

  SUBCASE("zero inner key reduces to the composition with a plain rotation") {
    for (uint32_t x : {0u, 1u, 0x1234u, 0xFFFFu, 0x8000u}) {
      CHECK(fi_apply(x, 0, p) == fibar_apply(rotl(fibar_apply(x, p), 7, 16), p));
    }
  }

  SUBCASE("matches the reference transliteration everywhere") {
    bool ok = true;
    for (uint32_t x = 0; x < (1u << 16); x += 13) {
      for (uint32_t k : {0u, 0x1FFu, 0xFE00u, 0xA5C3u}) {
        ok = ok && fi_apply(x, k, p) == ref.fi(x, k);
      }
    }
    CHECK(ok);
  }

  SUBCASE("bijective for fixed inner keys at the reduced width") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 256; ++trial) {
      const uint32_t ki = static_cast<uint32_t>(rng()) & 0xFF;
      std::set<uint32_t> seen;
      for (uint32_t x = 0; x < 256; ++x) seen.insert(fi_apply(x, ki, mp));
      CHECK(seen.size() == 256);
    }
  }
}

TEST_CASE("FO structure") {
  const CipherParams& p = CipherParams::kasumi();
  const CipherParams& mp = CipherParams::mini();
  const refimpl::Cipher ref = refimpl::full();
  const uint32_t zero3[3] = {0, 0, 0};

  // Frozen from the reference implementation.
  CHECK(fo_apply(0, zero3, zero3, p) == 0x00006DB7u);
  CHECK(fo_apply(0x0001FFFFu, zero3, zero3, p) == 0xEC990CDFu);

  SUBCASE("left output word depends on both input halves even with zero keys") {
    const uint32_t base = fo_apply(0, zero3, zero3, p);
    CHECK((fo_apply(0x00010000u, zero3, zero3, p) >> 16) != (base >> 16));
    CHECK((fo_apply(0x00000001u, zero3, zero3, p) >> 16) != (base >> 16));
  }

  SUBCASE("matches the reference transliteration") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 4000; ++i) {
      const uint32_t x = static_cast<uint32_t>(rng());
      const uint32_t ko[3] = {static_cast<uint32_t>(rng()) & 0xFFFF,
                              static_cast<uint32_t>(rng()) & 0xFFFF,
                              static_cast<uint32_t>(rng()) & 0xFFFF};
      const uint32_t ki[3] = {static_cast<uint32_t>(rng()) & 0xFFFF,
                              static_cast<uint32_t>(rng()) & 0xFFFF,
                              static_cast<uint32_t>(rng()) & 0xFFFF};
      CHECK(fo_apply(x, ko, ki, p) == ref.fo(x, ko, ki));
    }
  }

  SUBCASE("bijective at the reduced width, exhaustive") {
    const uint32_t ko[3] = {0x12, 0x34, 0x56};
    const uint32_t ki[3] = {0x78, 0x9A, 0xBC};
    std::vector<bool> seen(1u << 16, false);
    for (uint32_t x = 0; x < (1u << 16); ++x) {
      const uint32_t y = fo_apply(x, ko, ki, mp);
      REQUIRE(!seen[y]);
      seen[y] = true;
    }
  }
}

TEST_CASE("round application and golden vectors") {
  const CipherParams& p = CipherParams::kasumi();

  SUBCASE("one odd round with all-zero subkeys") {
    const CipherParams zp = zero_constant_params(p);
    const RoundSubkeys zks = key_schedule(MasterKey{}, zp);
    const uint32_t zero3[3] = {0, 0, 0};
    const Block pt{0x01234567, 0x89ABCDEF};
    const Block one = encrypt_rounds(pt, zks, 1, 1, zp);
    CHECK(one.right == pt.left);
    CHECK(one.left == (fo_apply(fl_apply(pt.left, 0, 0, zp), zero3, zero3, zp) ^ pt.right));
  }

  SUBCASE("published vector and frozen fixture vectors") {
    std::ifstream in(std::string(ZCKW_DATA_DIR) + "/golden_vectors.txt");
    REQUIRE(in.good());
    std::string key_str, pt_str, ct_str, range;
    unsigned checked = 0;
    while (in >> key_str >> pt_str >> ct_str >> range) {
      const CipherParams& fp = key_str.size() == 32 ? CipherParams::kasumi()
                                                    : CipherParams::mini();
      const size_t dash = range.find('-');
      const unsigned from = std::stoul(range.substr(0, dash));
      const unsigned to = std::stoul(range.substr(dash + 1));
      const MasterKey key = parse_key_hex(key_str, fp);
      const RoundSubkeys ks = key_schedule(key, fp);
      const Block ct = encrypt_rounds(parse_block_hex(pt_str, fp), ks, from, to, fp);
      CHECK(block_hex(ct, fp) == ct_str);
      CHECK(block_hex(decrypt_rounds(ct, ks, from, to, fp), fp) == pt_str);
      ++checked;
    }
    CHECK(checked == 9);
  }

  SUBCASE("decrypt inverts encrypt for random keys, texts and ranges") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
      const MasterKey key = random_key(rng, p);
      const RoundSubkeys ks = key_schedule(key, p);
      const Block pt{static_cast<uint32_t>(rng()), static_cast<uint32_t>(rng())};
      const unsigned from = 1 + rng() % 8;
      const unsigned to = from + rng() % (9 - from);
      const Block ct = encrypt_rounds(pt, ks, from, to, p);
      CHECK(decrypt_rounds(ct, ks, from, to, p) == pt);
    }
  }

  SUBCASE("reference agreement on random eight-round encryptions") {
    const refimpl::Cipher ref = refimpl::full();
    std::mt19937_64 rng(17);
    for (int i = 0; i < 500; ++i) {
      const MasterKey key = random_key(rng, p);
      const RoundSubkeys ks = key_schedule(key, p);
      const uint64_t pt = rng();
      uint32_t k[8];
      for (int j = 0; j < 8; ++j) k[j] = key.k[j];
      CHECK(encrypt_rounds(Block::from_packed(pt, p), ks, 1, 8, p).packed(p) ==
            ref.enc(k, pt, 1, 8));
    }
  }

  SUBCASE("reduced-width reference agreement including partial ranges") {
    const CipherParams& mp = CipherParams::mini();
    const refimpl::Cipher ref = refimpl::mini();
    std::mt19937_64 rng(19);
    for (int i = 0; i < 500; ++i) {
      const MasterKey key = random_key(rng, mp);
      const RoundSubkeys ks = key_schedule(key, mp);
      const uint64_t pt = rng() & 0xFFFFFFFFull;
      uint32_t k[8];
      for (int j = 0; j < 8; ++j) k[j] = key.k[j];
      const unsigned from = 1 + rng() % 3;
      const unsigned to = 6 + rng() % 3;
      CHECK(encrypt_rounds(Block::from_packed(pt, mp), ks, from, to, mp).packed(mp) ==
            ref.enc(k, pt, from, to));
    }
  }

  SUBCASE("tabulated rounds agree with the direct path") {
    const CipherParams& mp = CipherParams::mini();
    std::mt19937_64 rng(23);
    const MasterKey key = random_key(rng, mp);
    const RoundSubkeys ks = key_schedule(key, mp);
    const RoundTables tables(ks, mp, 2, 8);
    for (int i = 0; i < 5000; ++i) {
      const Block pt{static_cast<uint32_t>(rng()) & 0xFFFF,
                     static_cast<uint32_t>(rng()) & 0xFFFF};
      CHECK(tables.encrypt(pt) == encrypt_rounds(pt, ks, 2, 8, mp));
    }
  }

  SUBCASE("invalid round ranges are rejected") {
    const RoundSubkeys ks = key_schedule(MasterKey{}, p);
    CHECK_THROWS_AS(encrypt_rounds(Block{}, ks, 0, 3, p), std::out_of_range);
    CHECK_THROWS_AS(encrypt_rounds(Block{}, ks, 3, 9, p), std::out_of_range);
    CHECK_THROWS_AS(encrypt_rounds(Block{}, ks, 5, 4, p), std::out_of_range);
    CHECK_THROWS_AS(decrypt_rounds(Block{}, ks, 2, 9, p), std::out_of_range);
  }
}

TEST_CASE("parameter validation") {
  CipherParams p = CipherParams::mini();
  p.s_big = 6;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = CipherParams::mini();
  p.ssmall[0] = p.ssmall[1];
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = CipherParams::mini();
  p.constants[2] = 0x100;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("hex helpers") {
  const CipherParams& p = CipherParams::kasumi();
  const MasterKey key = parse_key_hex("2BD6459F82C5B300952C49104881FF48", p);
  CHECK(key.k[0] == 0x2BD6);
  CHECK(key.k[7] == 0xFF48);
  CHECK(key_hex(key, p) == "2BD6459F82C5B300952C49104881FF48");
  const Block b = parse_block_hex("EA024714AD5C4D84", p);
  CHECK(b.left == 0xEA024714);
  CHECK(block_hex(b, p) == "EA024714AD5C4D84");
  CHECK_THROWS(parse_key_hex("00", p));
  CHECK_THROWS(parse_block_hex("xyz", p));
}
