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

#ifndef ZCKW_SRC_RECORD_STREAM_HPP_
#define ZCKW_SRC_RECORD_STREAM_HPP_

#include <cstdint>

#include "zckw/attack.hpp"
#include "zckw/bits.hpp"
#include "zckw/cipher.hpp"
#include "zckw/dataset.hpp"

namespace zckw::internal {

// Streams every attack record as (plaintext, ciphertext) packed blocks into
// fn(tid, p, c).  Full-codebook runs enumerate the whole block space with
// tabulated round functions, eight interleaved pipelines per strip; sampled
// runs enumerate scrambled distinct plaintexts; file runs read the dataset.
// fn must be safe for concurrent calls with distinct tid.
template <class Fn>
uint64_t stream_records(const AttackPlan& plan, const RoundSubkeys& keys, unsigned from,
                        unsigned to, Fn&& fn) {
  const CipherParams& p = *plan.params;
  if (!plan.data_path.empty()) {
    DatasetReader reader(plan.data_path);
    if (reader.header().w != p.w || reader.header().from != from || reader.header().to != to) {
      throw std::invalid_argument("dataset parameters do not match the attack plan");
    }
    uint64_t pt, ct;
    uint64_t n = 0;
    while (reader.next(pt, ct)) {
      fn(0u, pt, ct);
      ++n;
    }
    return n;
  }

  if (p.block_bits() > 32) throw std::length_error("attack execution requires block width <= 32");
  const RoundTables tables(keys, p, from, to);
  const unsigned half = 2 * p.w;

  if (plan.record_count != 0) {
    const uint64_t n = plan.record_count;
    parallel_for(n, [&](uint64_t begin, uint64_t end, unsigned tid) {
      for (uint64_t i = begin; i < end; ++i) {
        const uint64_t pt = scramble_index(i, p.block_bits(), plan.seed);
        const Block cb = tables.encrypt(Block::from_packed(pt, p));
        fn(tid, pt, cb.packed(p));
      }
    }, plan.threads);
    return n;
  }

  const uint64_t lefts = uint64_t{1} << half;
  parallel_for(lefts, [&](uint64_t begin, uint64_t end, unsigned tid) {
    constexpr unsigned kLanes = 8;
    uint32_t l[kLanes], r[kLanes];
    for (uint64_t l0 = begin; l0 < end; ++l0) {
      for (uint64_t r0 = 0; r0 < lefts; r0 += kLanes) {
        Block c[kLanes];
        for (unsigned j = 0; j < kLanes; ++j) {
          l[j] = static_cast<uint32_t>(l0);
          r[j] = static_cast<uint32_t>(r0 + j);
        }
        for (unsigned round = 0; round < to - from + 1; ++round) {
          for (unsigned j = 0; j < kLanes; ++j) {
            const uint32_t nl = tables.table(round)[l[j]] ^ r[j];
            r[j] = l[j];
            l[j] = nl;
          }
        }
        for (unsigned j = 0; j < kLanes; ++j) c[j] = Block{l[j], r[j]};
        for (unsigned j = 0; j < kLanes; ++j) {
          const uint64_t pt = (l0 << half) | (r0 + j);
          fn(tid, pt, c[j].packed(p));
        }
      }
    }
  }, plan.threads);
  return uint64_t{1} << p.block_bits();
}

}  // namespace zckw::internal

#endif  // ZCKW_SRC_RECORD_STREAM_HPP_
