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

#include "zckw/masks.hpp"

#include <stdexcept>

namespace zckw {

namespace {

void check_same_width(const LinearMask& a, const LinearMask& b) {
  if (a.width != b.width) throw std::invalid_argument("mask width mismatch");
}

}  // namespace

LinearMask diamond(const LinearMask& a, const LinearMask& b) {
  check_same_width(a, b);
  return LinearMask{a.width, a.value & b.value};
}

bool or_mask_compatible(const LinearMask& m, const LinearMask& alpha, const LinearMask& beta) {
  check_same_width(m, alpha);
  check_same_width(m, beta);
  const uint64_t mask = (m.width >= 64) ? ~uint64_t{0} : ((uint64_t{1} << m.width) - 1);
  return alpha.value == ((~m.value & mask) & beta.value);
}

bool and_mask_compatible(const LinearMask& m, const LinearMask& alpha, const LinearMask& beta) {
  check_same_width(m, alpha);
  check_same_width(m, beta);
  return alpha.value == (m.value & beta.value);
}

uint32_t fl_companion_mask(uint32_t beta, uint32_t kl2, const CipherParams& p) {
  return rotr(beta, 1, p.w) & ~kl2 & p.word_mask();
}

FlMaskPair fl_mask_pair(uint32_t beta, uint32_t kl2, const CipherParams& p) {
  FlMaskPair out;
  out.out_l = beta & p.word_mask();
  out.out_r = fl_companion_mask(beta, kl2, p);
  out.in_l = out.out_l;
  out.in_r = 0;
  return out;
}

BetaClass beta_class_enumerate(const CipherParams& p) {
  BetaClass out;
  const uint32_t n = 1u << p.s_small;
  out.masks.reserve(n - 1);
  for (uint32_t b = 1; b < n; ++b) out.masks.push_back(class_expand(b, p));
  out.basis.reserve(p.s_small);
  for (unsigned i = 0; i < p.s_small; ++i) out.basis.push_back(class_expand(1u << i, p));
  return out;
}

ApproximationFamily zc_family(const CipherParams& p, uint32_t kl2) {
  ApproximationFamily fam;
  fam.block_bits = p.block_bits();
  fam.dimension = p.s_small;
  const BetaClass cls = beta_class_enumerate(p);
  for (uint32_t beta : cls.basis) {
    const FlMaskPair fm = fl_mask_pair(beta, kl2, p);
    const uint64_t half = (static_cast<uint64_t>(fm.out_l) << p.w) | fm.out_r;
    const uint64_t in_mask = half << (2 * p.w);  // on L
    const uint64_t out_mask = half;              // on R
    fam.masks.emplace_back(in_mask, out_mask);
  }
  return fam;
}

bool masks_linearly_independent(const ApproximationFamily& family) {
  // Gaussian elimination on 128-bit (in, out) rows, tracked as two words.
  std::vector<std::pair<uint64_t, uint64_t>> rows = family.masks;
  size_t rank = 0;
  for (int bit = 127; bit >= 0 && rank < rows.size(); --bit) {
    const bool high = bit >= 64;
    const uint64_t probe = uint64_t{1} << (high ? bit - 64 : bit);
    size_t pivot = rank;
    while (pivot < rows.size() && !((high ? rows[pivot].first : rows[pivot].second) & probe)) {
      ++pivot;
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == rank) continue;
      if ((high ? rows[i].first : rows[i].second) & probe) {
        rows[i].first ^= rows[rank].first;
        rows[i].second ^= rows[rank].second;
      }
    }
    ++rank;
  }
  return rank == family.masks.size();
}

}  // namespace zckw
