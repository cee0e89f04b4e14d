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

#include <cstdio>
#include <filesystem>
#include <set>

#include "zckw/dataset.hpp"

using namespace zckw;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const char* name)
      : path((std::filesystem::temp_directory_path() / name).string()) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("scrambled indices are distinct and block-sized") {
  std::set<uint64_t> seen;
  for (uint64_t i = 0; i < 4096; ++i) {
    const uint64_t v = scramble_index(i, 32, 99);
    CHECK(v <= 0xFFFFFFFFull);
    seen.insert(v);
  }
  CHECK(seen.size() == 4096);
  // Different seeds give different orderings.
  CHECK(scramble_index(0, 32, 1) != scramble_index(0, 32, 2));
}

TEST_CASE("dataset round trip") {
  const CipherParams& p = CipherParams::mini();
  const MasterKey key = parse_key_hex("0123456789ABCDEF", p);
  TempFile tmp("zckw_test_dataset.bin");

  generate_dataset(tmp.path, p, key, 1, 6, 0, 1000, 7);

  DatasetHeader header;
  const auto records = read_all_records(tmp.path, &header);
  CHECK(header.w == 8);
  CHECK(header.from == 1);
  CHECK(header.to == 6);
  CHECK(header.variant == 0);
  CHECK(header.count == 1000);
  REQUIRE(records.size() == 1000);

  const RoundSubkeys ks = key_schedule(key, p);
  std::set<uint64_t> plaintexts;
  for (const auto& [pt, ct] : records) {
    plaintexts.insert(pt);
    CHECK(encrypt_rounds(Block::from_packed(pt, p), ks, 1, 6, p).packed(p) == ct);
  }
  CHECK(plaintexts.size() == 1000);
}

TEST_CASE("dataset header validation") {
  TempFile tmp("zckw_test_notds.bin");
  {
    std::ofstream out(tmp.path, std::ios::binary);
    out << "garbage that is not a dataset";
  }
  CHECK_THROWS(DatasetReader(tmp.path));
  CHECK_THROWS(DatasetReader("/nonexistent/path/data.bin"));
}

TEST_CASE("full-width datasets use wide records") {
  const CipherParams& p = CipherParams::kasumi();
  const MasterKey key = parse_key_hex("2BD6459F82C5B300952C49104881FF48", p);
  TempFile tmp("zckw_test_wide.bin");
  generate_dataset(tmp.path, p, key, 1, 8, 0, 64, 3);
  DatasetHeader header;
  const auto records = read_all_records(tmp.path, &header);
  CHECK(header.w == 16);
  REQUIRE(records.size() == 64);
  const RoundSubkeys ks = key_schedule(key, p);
  for (const auto& [pt, ct] : records) {
    CHECK(encrypt_rounds(Block::from_packed(pt, p), ks, 1, 8, p).packed(p) == ct);
  }
}
