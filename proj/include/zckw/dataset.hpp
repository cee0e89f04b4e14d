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

#ifndef ZCKW_DATASET_HPP_
#define ZCKW_DATASET_HPP_

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "zckw/cipher.hpp"

namespace zckw {

// Known-plaintext dataset file: the magic "ZCKP1", a parameter block
// (word width, round range, variant tag), a record count, and fixed-width
// little-endian (plaintext, ciphertext) block records.
struct DatasetHeader {
  unsigned w = 8;
  unsigned from = 1;
  unsigned to = 6;
  uint8_t variant = 0;  // 0 = six-round, 1 = seven-round weak-key
  uint64_t count = 0;
};

class DatasetWriter {
 public:
  DatasetWriter(const std::string& path, const DatasetHeader& header);
  ~DatasetWriter();
  void add(uint64_t plaintext, uint64_t ciphertext);
  void finish();  // rewrites the record count

 private:
  std::ofstream out_;
  DatasetHeader header_;
  uint64_t written_ = 0;
  unsigned block_bytes_;
  bool finished_ = false;
};

class DatasetReader {
 public:
  explicit DatasetReader(const std::string& path);
  const DatasetHeader& header() const { return header_; }
  bool next(uint64_t& plaintext, uint64_t& ciphertext);

 private:
  std::ifstream in_;
  DatasetHeader header_;
  uint64_t read_ = 0;
  unsigned block_bytes_;
};

// Bijective scramble of a block-sized index; sampled known-plaintext runs
// enumerate scramble(0..N-1) so plaintexts are distinct and spread out.
uint64_t scramble_index(uint64_t index, unsigned block_bits, uint64_t seed);

// Writes count records (full codebook when count == 0 at the reduced width)
// encrypted with the given key over rounds from..to.
void generate_dataset(const std::string& path, const CipherParams& params,
                      const MasterKey& key, unsigned from, unsigned to, uint8_t variant,
                      uint64_t count, uint64_t seed);

std::vector<std::pair<uint64_t, uint64_t>> read_all_records(const std::string& path,
                                                            DatasetHeader* header = nullptr);

}  // namespace zckw

#endif  // ZCKW_DATASET_HPP_
