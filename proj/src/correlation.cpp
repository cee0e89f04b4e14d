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

#include "zckw/correlation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zckw {

namespace {

constexpr unsigned kSweepBudgetBits = 24;

struct SplitMix64 {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// Turns a 2^m histogram of joint evaluations into the worst nonzero
// combination, exactly.
ZcSweepResult summarize_histogram(std::vector<uint64_t> hist, unsigned block_bits) {
  const size_t cells = hist.size();
  std::vector<int64_t> spectrum(cells);
  for (size_t v = 0; v < cells; ++v) spectrum[v] = static_cast<int64_t>(hist[v]);
  walsh_transform(spectrum);  // spectrum[c] = sum_v (-1)^(c.v) hist[v]

  ZcSweepResult out;
  out.histogram = std::move(hist);
  out.max_abs = ExactCorr{0, block_bits};
  for (size_t c = 1; c < cells; ++c) {
    if (std::abs(spectrum[c]) > out.max_abs.abs_num()) {
      out.max_abs.num = spectrum[c];
      out.worst_combination = static_cast<uint32_t>(c);
    }
  }
  return out;
}

}  // namespace

ExactCorr correlation(std::span<const uint32_t> f, unsigned n, const LinearMask& alpha,
                      const LinearMask& beta) {
  if (n > kSweepBudgetBits) throw std::length_error("correlation sweep budget is 24 bits");
  if (alpha.width != n) throw std::invalid_argument("input mask width must match n");
  if (f.size() != (size_t{1} << n)) throw std::invalid_argument("function table size mismatch");
  int64_t count = 0;
  for (uint64_t x = 0; x < f.size(); ++x) {
    count += (dot(beta.value, f[x]) ^ dot(alpha.value, x)) == 0;
  }
  return ExactCorr{2 * count - static_cast<int64_t>(f.size()), n};
}

std::vector<int64_t> input_mask_spectrum(std::span<const uint32_t> f, unsigned n,
                                         uint64_t beta) {
  if (n > kSweepBudgetBits) throw std::length_error("spectrum sweep budget is 24 bits");
  std::vector<int64_t> data(size_t{1} << n);
  for (uint64_t x = 0; x < data.size(); ++x) {
    data[x] = dot(beta, f[x]) ? -1 : 1;
  }
  walsh_transform(data);
  return data;
}

ZcSweepResult zc_sweep(const std::function<uint64_t(uint64_t)>& encrypt, unsigned block_bits,
                       const ApproximationFamily& family, unsigned max_threads) {
  if (block_bits > 32) throw std::length_error("codebook sweep budget is 32 block bits");
  if (family.block_bits != block_bits) throw std::invalid_argument("family width mismatch");
  const unsigned m = family.dimension;
  const uint64_t total = uint64_t{1} << block_bits;

  const unsigned workers = worker_count(max_threads);
  std::vector<std::vector<uint64_t>> partial(workers, std::vector<uint64_t>(size_t{1} << m, 0));
  parallel_for(total, [&](uint64_t begin, uint64_t end, unsigned tid) {
    auto& hist = partial[tid];
    for (uint64_t x = begin; x < end; ++x) {
      const uint64_t c = encrypt(x);
      uint32_t z = 0;
      for (unsigned i = 0; i < m; ++i) {
        z |= static_cast<uint32_t>(dot(family.masks[i].first, x) ^
                                   dot(family.masks[i].second, c))
             << i;
      }
      ++hist[z];
    }
  }, max_threads);

  std::vector<uint64_t> hist(size_t{1} << m, 0);
  for (const auto& p : partial) {
    for (size_t v = 0; v < hist.size(); ++v) hist[v] += p[v];
  }
  return summarize_histogram(std::move(hist), block_bits);
}

ZcSweepResult verify_zero_correlation(const CipherParams& params, const RoundSubkeys& keys,
                                      const ApproximationFamily& family, unsigned from,
                                      unsigned to, unsigned max_threads) {
  if (params.block_bits() > 32) {
    throw std::length_error("whole-codebook verification requires block width <= 32");
  }
  if (family.block_bits != params.block_bits()) {
    throw std::invalid_argument("family width mismatch");
  }
  const RoundTables tables(keys, params, from, to);
  const unsigned m = family.dimension;
  const unsigned half = 2 * params.w;
  const uint32_t half_mask = params.half_mask();

  // Input masks sit on the L half and output masks on the R half, so the
  // inner loop only touches word-sized values.
  std::vector<uint32_t> in_l(m), out_r(m);
  for (unsigned i = 0; i < m; ++i) {
    in_l[i] = static_cast<uint32_t>(family.masks[i].first >> half) & half_mask;
    out_r[i] = static_cast<uint32_t>(family.masks[i].second) & half_mask;
    if ((family.masks[i].first & half_mask) != 0 || (family.masks[i].second >> half) != 0) {
      throw std::invalid_argument("family masks must be (L-input, R-output) shaped");
    }
  }

  const uint64_t lefts = uint64_t{1} << half;
  const unsigned workers = worker_count(max_threads);
  std::vector<std::vector<uint64_t>> partial(workers, std::vector<uint64_t>(size_t{1} << m, 0));
  parallel_for(lefts, [&](uint64_t begin, uint64_t end, unsigned tid) {
    auto& hist = partial[tid];
    for (uint64_t l0 = begin; l0 < end; ++l0) {
      uint32_t zin = 0;
      for (unsigned i = 0; i < m; ++i) {
        zin |= static_cast<uint32_t>(dot(in_l[i], l0)) << i;
      }
      for (uint64_t r0 = 0; r0 < lefts; ++r0) {
        const Block c = tables.encrypt(Block{static_cast<uint32_t>(l0),
                                             static_cast<uint32_t>(r0)});
        uint32_t z = zin;
        for (unsigned i = 0; i < m; ++i) {
          z ^= static_cast<uint32_t>(dot(out_r[i], c.right)) << i;
        }
        ++hist[z];
      }
    }
  }, max_threads);

  std::vector<uint64_t> hist(size_t{1} << m, 0);
  for (const auto& p : partial) {
    for (size_t v = 0; v < hist.size(); ++v) hist[v] += p[v];
  }
  return summarize_histogram(std::move(hist), params.block_bits());
}

ToyFeistel ToyFeistel::random(unsigned half_bits, unsigned rounds, uint64_t seed) {
  ToyFeistel toy;
  toy.half_bits = half_bits;
  SplitMix64 rng{seed};
  const uint32_t n = 1u << half_bits;
  for (unsigned r = 0; r < rounds; ++r) {
    std::vector<uint16_t> f(n);
    std::iota(f.begin(), f.end(), 0);
    for (uint32_t i = n - 1; i > 0; --i) {
      const uint32_t j = static_cast<uint32_t>(rng.next() % (i + 1));
      std::swap(f[i], f[j]);
    }
    toy.fs.push_back(std::move(f));
  }
  return toy;
}

ApproximationFamily feistel_family(unsigned half_bits, unsigned m) {
  ApproximationFamily fam;
  fam.block_bits = 2 * half_bits;
  fam.dimension = m;
  for (unsigned i = 0; i < m; ++i) {
    const uint64_t b = uint64_t{1} << i;
    fam.masks.emplace_back(b << half_bits, b);
  }
  return fam;
}

}  // namespace zckw
