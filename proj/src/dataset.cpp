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

#include "zckw/dataset.hpp"

#include <cstring>
#include <optional>
#include <stdexcept>

namespace zckw {

namespace {

constexpr char kMagic[5] = {'Z', 'C', 'K', 'P', '1'};
constexpr size_t kHeaderBytes = 5 + 4 + 8;

void store_le64(char* out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
}

uint64_t load_le(const char* in, unsigned bytes) {
  uint64_t v = 0;
  for (unsigned i = 0; i < bytes; ++i) {
    v |= static_cast<uint64_t>(static_cast<unsigned char>(in[i])) << (8 * i);
  }
  return v;
}

}  // namespace

DatasetWriter::DatasetWriter(const std::string& path, const DatasetHeader& header)
    : out_(path, std::ios::binary), header_(header), block_bytes_(header.w / 2) {
  if (!out_) throw std::runtime_error("cannot open dataset for writing: " + path);
  char head[kHeaderBytes];
  std::memcpy(head, kMagic, 5);
  head[5] = static_cast<char>(header_.w);
  head[6] = static_cast<char>(header_.from);
  head[7] = static_cast<char>(header_.to);
  head[8] = static_cast<char>(header_.variant);
  store_le64(head + 9, header_.count);
  out_.write(head, sizeof(head));
}

DatasetWriter::~DatasetWriter() {
  if (!finished_) finish();
}

void DatasetWriter::add(uint64_t plaintext, uint64_t ciphertext) {
  char rec[16];
  for (unsigned i = 0; i < block_bytes_; ++i) {
    rec[i] = static_cast<char>((plaintext >> (8 * i)) & 0xFF);
    rec[block_bytes_ + i] = static_cast<char>((ciphertext >> (8 * i)) & 0xFF);
  }
  out_.write(rec, 2 * block_bytes_);
  ++written_;
}

void DatasetWriter::finish() {
  if (finished_) return;
  finished_ = true;
  char buf[8];
  store_le64(buf, written_);
  out_.seekp(9);
  out_.write(buf, 8);
  out_.flush();
}

DatasetReader::DatasetReader(const std::string& path) : in_(path, std::ios::binary) {
  if (!in_) throw std::runtime_error("cannot open dataset: " + path);
  char head[kHeaderBytes];
  in_.read(head, sizeof(head));
  if (in_.gcount() != static_cast<std::streamsize>(sizeof(head)) ||
      std::memcmp(head, kMagic, 5) != 0) {
    throw std::runtime_error("not a ZCKP1 dataset: " + path);
  }
  header_.w = static_cast<unsigned char>(head[5]);
  header_.from = static_cast<unsigned char>(head[6]);
  header_.to = static_cast<unsigned char>(head[7]);
  header_.variant = static_cast<unsigned char>(head[8]);
  header_.count = load_le(head + 9, 8);
  if (header_.w != 8 && header_.w != 16) throw std::runtime_error("dataset: bad word width");
  block_bytes_ = header_.w / 2;
}

bool DatasetReader::next(uint64_t& plaintext, uint64_t& ciphertext) {
  if (read_ >= header_.count) return false;
  char rec[16];
  in_.read(rec, 2 * block_bytes_);
  if (in_.gcount() != static_cast<std::streamsize>(2 * block_bytes_)) {
    throw std::runtime_error("dataset: truncated record");
  }
  plaintext = load_le(rec, block_bytes_);
  ciphertext = load_le(rec + block_bytes_, block_bytes_);
  ++read_;
  return true;
}

uint64_t scramble_index(uint64_t index, unsigned block_bits, uint64_t seed) {
  // Four Feistel rounds over the index halves with multiply-xor mixing;
  // bijective for any seed, nowhere near cryptographic, and not meant to be.
  const unsigned half = block_bits / 2;
  const uint64_t mask = half >= 64 ? ~uint64_t{0} : ((uint64_t{1} << half) - 1);
  uint64_t l = (index >> half) & mask;
  uint64_t r = index & mask;
  for (int round = 0; round < 4; ++round) {
    uint64_t f = r + seed + 0x9e3779b97f4a7c15ull * (round + 1);
    f *= 0xbf58476d1ce4e5b9ull;
    f ^= f >> 29;
    f *= 0x94d049bb133111ebull;
    f ^= f >> 32;
    const uint64_t nl = r;
    r = (l ^ f) & mask;
    l = nl;
  }
  return (l << half) | r;
}

void generate_dataset(const std::string& path, const CipherParams& params,
                      const MasterKey& key, unsigned from, unsigned to, uint8_t variant,
                      uint64_t count, uint64_t seed) {
  if (count == 0) {
    if (params.block_bits() > 32) {
      throw std::length_error("full-codebook datasets only exist at the reduced width");
    }
    count = uint64_t{1} << params.block_bits();
  }
  DatasetHeader header{params.w, from, to, variant, count};
  DatasetWriter writer(path, header);
  const RoundSubkeys keys = key_schedule(key, params);
  std::optional<RoundTables> tables;
  if (params.block_bits() <= 32) tables.emplace(keys, params, from, to);
  for (uint64_t i = 0; i < count; ++i) {
    const uint64_t p = scramble_index(i, params.block_bits(), seed);
    const Block pb = Block::from_packed(p, params);
    const Block cb = tables ? tables->encrypt(pb) : encrypt_rounds(pb, keys, from, to, params);
    writer.add(p, cb.packed(params));
  }
  writer.finish();
}

std::vector<std::pair<uint64_t, uint64_t>> read_all_records(const std::string& path,
                                                            DatasetHeader* header) {
  DatasetReader reader(path);
  if (header) *header = reader.header();
  std::vector<std::pair<uint64_t, uint64_t>> records;
  records.reserve(reader.header().count);
  uint64_t p, c;
  while (reader.next(p, c)) records.emplace_back(p, c);
  return records;
}

}  // namespace zckw
