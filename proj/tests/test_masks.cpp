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

#include <random>

#include "zckw/correlation.hpp"
#include "zckw/masks.hpp"

using namespace zckw;

TEST_CASE("diamond product") {
  const LinearMask a{4, 0b1010}, b{4, 0b1100};
  CHECK(diamond(a, b).value == 0b1000);
  CHECK(diamond(a, LinearMask{4, 0b1111}).value == a.value);
  CHECK(diamond(a, LinearMask{4, 0}).value == 0);
  CHECK_THROWS_AS(diamond(a, LinearMask{5, 1}), std::invalid_argument);
}

TEST_CASE("keyed OR/AND compatibility predicates") {
  const LinearMask zero{8, 0}, ones{8, 0xFF};
  for (uint32_t b = 0; b < 256; b += 37) {
    const LinearMask beta{8, b};
    // M = 0: the OR is the identity, the AND is constant zero.
    CHECK(or_mask_compatible(zero, beta, beta));
    CHECK(and_mask_compatible(zero, LinearMask{8, 0}, beta));
    // M = all ones: the OR is constant, the AND is the identity.
    CHECK(or_mask_compatible(ones, LinearMask{8, 0}, beta));
    CHECK(and_mask_compatible(ones, beta, beta));
  }
  CHECK_THROWS_AS(or_mask_compatible(zero, LinearMask{4, 0}, LinearMask{8, 0}),
                  std::invalid_argument);

  SUBCASE("exhaustive equivalence with nonzero correlation at widths 3 and 4") {
    for (unsigned width : {3u, 4u}) {
      const uint32_t n = 1u << width;
      unsigned mismatches = 0;
      for (uint32_t mv = 0; mv < n; ++mv) {
        std::vector<uint32_t> h_or(n), h_and(n);
        for (uint32_t x = 0; x < n; ++x) {
          h_or[x] = mv | x;
          h_and[x] = mv & x;
        }
        for (uint32_t a = 0; a < n; ++a) {
          for (uint32_t b = 0; b < n; ++b) {
            const LinearMask M{width, mv}, alpha{width, a}, beta{width, b};
            mismatches += (!correlation(h_or, width, alpha, beta).is_zero()) !=
                          or_mask_compatible(M, alpha, beta);
            mismatches += (!correlation(h_and, width, alpha, beta).is_zero()) !=
                          and_mask_compatible(M, alpha, beta);
          }
        }
      }
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("class masks, folds and live positions") {
  const CipherParams& p = CipherParams::kasumi();
  const CipherParams& mp = CipherParams::mini();

  CHECK(fold_small(0xFFFF, p) == 0);   // equal lanes cancel
  CHECK(fold_small(0xFE00, p) == 0x7F);
  CHECK(fold_small(0x0180, p) == 0);  // the two middle positions fold nowhere
  CHECK(class_expand(0x7F, p) == 0xFE7F);
  CHECK(is_class_mask(0xFE7F, p));
  CHECK(!is_class_mask(0x0180, p));
  // The class dot product reduces to the folded small lane.
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const uint32_t core = static_cast<uint32_t>(rng()) & 0x7F;
    const uint32_t x = static_cast<uint32_t>(rng()) & 0xFFFF;
    CHECK(dot(class_expand(core, p), x) == dot(core, fold_small(x, p)));
  }

  CHECK(kl_live_mask(p) == 0xFF3F);
  CHECK(kl_live_mask(mp) == 0xF3);
  CHECK(pack_live(0xFF3F, p) == 0x3FFF);
  CHECK(unpack_live(pack_live(0xABCD & 0xFF3F, p), p) == (0xABCD & 0xFF3F));
  for (uint32_t v = 0; v < 64; ++v) {
    CHECK(pack_live(unpack_live(v, mp), mp) == v);
  }
}

TEST_CASE("beta class enumeration") {
  const BetaClass full = beta_class_enumerate(CipherParams::kasumi());
  CHECK(full.masks.size() == 127);
  CHECK(full.basis.size() == 7);
  for (uint32_t m : full.masks) CHECK(is_class_mask(m, CipherParams::kasumi()));

  const BetaClass mini = beta_class_enumerate(CipherParams::mini());
  CHECK(mini.masks.size() == 7);
  CHECK(mini.basis.size() == 3);
  for (uint32_t m : mini.masks) CHECK(is_class_mask(m, CipherParams::mini()));
}

TEST_CASE("FL companion mask") {
  const CipherParams& p = CipherParams::kasumi();
  const uint32_t beta = class_expand(0x2D, p);

  // All-ones second key absorbs everything.
  CHECK(fl_companion_mask(beta, 0xFFFF, p) == 0);
  // Zero second key leaves the plain one-position rotation.
  CHECK(fl_companion_mask(beta, 0, p) == rotr(beta, 1, 16));

  const FlMaskPair mp = fl_mask_pair(beta, 0x1234, p);
  CHECK(mp.out_l == beta);
  CHECK(mp.in_l == beta);
  CHECK(mp.in_r == 0);
  CHECK(mp.out_r == (rotr(beta, 1, 16) & ~0x1234u & 0xFFFF));

  SUBCASE("brute force: companion pair correlates only with input (beta, 0)") {
    const CipherParams& m = CipherParams::mini();
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 8; ++trial) {
      const uint32_t kl1 = static_cast<uint32_t>(rng()) & 0xFF;
      const uint32_t kl2 = trial == 0 ? 0
                                      : (trial == 1 ? 0xFF : static_cast<uint32_t>(rng()) & 0xFF);
      std::vector<uint32_t> fl_table(1u << 16);
      for (uint32_t x = 0; x < fl_table.size(); ++x) fl_table[x] = fl_apply(x, kl1, kl2, m);
      for (uint32_t core : {1u, 5u}) {
        const uint32_t b = class_expand(core, m);
        const FlMaskPair pair = fl_mask_pair(b, kl2, m);
        const uint64_t out_mask = (static_cast<uint64_t>(pair.out_l) << 8) | pair.out_r;
        const auto spectrum = input_mask_spectrum(fl_table, 16, out_mask);
        const uint64_t expect = static_cast<uint64_t>(pair.in_l) << 8;
        bool ok = true;
        for (uint64_t a = 0; a < spectrum.size(); ++a) {
          ok = ok && ((spectrum[a] != 0) == (a == expect));
        }
        CHECK(ok);
      }
    }
  }

  SUBCASE("the opposite rotation direction fails the brute-force check") {
    const CipherParams& m = CipherParams::mini();
    const uint32_t kl1 = 0x3C, kl2 = 0x21;
    std::vector<uint32_t> fl_table(1u << 16);
    for (uint32_t x = 0; x < fl_table.size(); ++x) fl_table[x] = fl_apply(x, kl1, kl2, m);
    const uint32_t b = class_expand(1, m);
    const uint32_t wrong_companion = rotl(b, 1, 8) & ~kl2 & 0xFF;
    const uint64_t out_mask = (static_cast<uint64_t>(b) << 8) | wrong_companion;
    const auto spectrum = input_mask_spectrum(fl_table, 16, out_mask);
    CHECK(spectrum[static_cast<uint64_t>(b) << 8] == 0);
  }
}

TEST_CASE("approximation family") {
  const CipherParams& p = CipherParams::kasumi();
  const ApproximationFamily fam = zc_family(p, 0x5A3C);
  CHECK(fam.dimension == 7);
  CHECK(fam.block_bits == 64);
  CHECK(fam.masks.size() == 7);
  CHECK(masks_linearly_independent(fam));
  for (const auto& [in, out] : fam.masks) {
    const uint32_t beta = static_cast<uint32_t>(in >> 48) & 0xFFFF;
    CHECK(is_class_mask(beta, p));
    CHECK((in & 0xFFFFFFFFull) == 0);   // zero on R at the entry
    CHECK((out >> 32) == 0);            // zero on L at the exit
    CHECK(out == (in >> 32));
  }

  const ApproximationFamily mini = zc_family(CipherParams::mini(), 0xFF);
  CHECK(mini.dimension == 3);
  for (const auto& [in, out] : mini.masks) {
    // All-ones second key forces an empty companion mask.
    CHECK((in >> 16 & 0xFF) == 0);
  }
  CHECK(masks_linearly_independent(mini));
}
