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

#include "zckw/bits.hpp"

#include <algorithm>

namespace zckw {

void walsh_transform(std::span<int64_t> data) {
  const size_t n = data.size();
  for (size_t len = 1; len < n; len <<= 1) {
    for (size_t i = 0; i < n; i += len << 1) {
      for (size_t j = i; j < i + len; ++j) {
        const int64_t u = data[j];
        const int64_t v = data[j + len];
        data[j] = u + v;
        data[j + len] = u - v;
      }
    }
  }
}

unsigned worker_count(unsigned max_threads) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (max_threads != 0) hw = std::min(hw, max_threads);
  return hw;
}

void parallel_for(uint64_t n, const std::function<void(uint64_t, uint64_t, unsigned)>& fn,
                  unsigned max_threads) {
  if (n == 0) return;
  const unsigned workers = static_cast<unsigned>(std::min<uint64_t>(worker_count(max_threads), n));
  if (workers <= 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const uint64_t chunk = (n + workers - 1) / workers;
  for (unsigned t = 0; t < workers; ++t) {
    const uint64_t begin = chunk * t;
    const uint64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, t] { fn(begin, end, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace zckw
