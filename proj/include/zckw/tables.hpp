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

#ifndef ZCKW_TABLES_HPP_
#define ZCKW_TABLES_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace zckw {

// KASUMI S-boxes and key-schedule constants from the 3GPP specification
// (TS 35.202).  The reduced-width workbench boxes are fixed bijections
// generated once from a seeded shuffle and checked in as constants.
std::span<const uint16_t> kasumi_s9();
std::span<const uint8_t> kasumi_s7();
std::span<const uint8_t> mini_s5();
std::span<const uint8_t> mini_s3();
std::span<const uint16_t> kasumi_round_constants();  // c1..c8
std::span<const uint8_t> mini_round_constants();

// True when every value in [0, 2^width) appears exactly once.
bool is_permutation(std::span<const uint16_t> table, unsigned width);

// Plain-text table format: first line is the entry width in bits, followed
// by 2^width lines with one decimal value each.
std::vector<uint16_t> load_table_text(std::istream& in, unsigned expected_width);
std::vector<uint16_t> load_table_file(const std::string& path, unsigned expected_width);
void save_table_text(std::ostream& out, std::span<const uint16_t> table, unsigned width);

}  // namespace zckw

#endif  // ZCKW_TABLES_HPP_
