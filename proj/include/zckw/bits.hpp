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

#ifndef ZCKW_BITS_HPP_
#define ZCKW_BITS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace zckw {

// Throughout the project words are plain unsigned integers with the usual
// machine significance: bit 0 is the least significant bit.  Written-out bit
// positions in comments and reports follow the cipher convention instead
// (position 0 = most significant bit of the word); a position p of a w-bit
// word lives at machine bit w-1-p.

inline constexpr uint32_t width_mask(unsigned w) {
  return w >= 32 ? 0xFFFFFFFFu : ((1u << w) - 1u);
}

// Rotate left within the low w bits of x.  x must fit in w bits.
inline constexpr uint32_t rotl(uint32_t x, unsigned r, unsigned w) {
  r %= w;
  if (r == 0) return x;
  return ((x << r) | (x >> (w - r))) & width_mask(w);
}

inline constexpr uint32_t rotr(uint32_t x, unsigned r, unsigned w) {
  r %= w;
  if (r == 0) return x;
  return ((x >> r) | (x << (w - r))) & width_mask(w);
}

inline int parity(uint64_t x) { return __builtin_parityll(x); }

// Scalar product of two equal-width bit vectors: parity of the AND.
inline int dot(uint64_t a, uint64_t b) { return parity(a & b); }

// In-place Walsh-Hadamard transform over +/-1 integer samples.  After the
// transform, out[a] = sum_x f(x)*(-1)^(a.x); the correlation of input mask a
// is out[a]/2^n.
void walsh_transform(std::span<int64_t> data);

// An exactly-represented correlation value num/2^log2_den with num an
// integer in [-2^log2_den, 2^log2_den].  Zero-correlation assertions compare
// num against zero; no floating point is involved.
struct ExactCorr {
  int64_t num = 0;
  unsigned log2_den = 0;

  bool is_zero() const { return num == 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(1ull << log2_den); }
  int64_t abs_num() const { return num < 0 ? -num : num; }
};

// Splits [0, n) into contiguous chunks and runs fn(begin, end, chunk_index)
// on a pool of threads.  With one hardware thread everything runs inline.
// Callers own any merging; chunk boundaries are deterministic.
void parallel_for(uint64_t n, const std::function<void(uint64_t, uint64_t, unsigned)>& fn,
                  unsigned max_threads = 0);

unsigned worker_count(unsigned max_threads = 0);

}  // namespace zckw

#endif  // ZCKW_BITS_HPP_
