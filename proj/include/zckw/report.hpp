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

#ifndef ZCKW_REPORT_HPP_
#define ZCKW_REPORT_HPP_

#include <iosfwd>
#include <string>

#include "zckw/attack.hpp"

namespace zckw {

enum class ReportFormat { kText, kCsv, kJson };

ReportFormat parse_report_format(const std::string& name);

void render_report(std::ostream& out, const AttackReport& report, ReportFormat format);

std::string variant_name(AttackVariant variant);

}  // namespace zckw

#endif  // ZCKW_REPORT_HPP_
