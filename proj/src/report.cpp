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

#include "zckw/report.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace zckw {

ReportFormat parse_report_format(const std::string& name) {
  if (name == "text") return ReportFormat::kText;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw std::invalid_argument("unknown report format: " + name);
}

std::string variant_name(AttackVariant variant) {
  return variant == AttackVariant::kSixRound ? "6round" : "7round-wk";
}

namespace {

void render_text(std::ostream& out, const AttackReport& r) {
  char buf[160];
  out << "attack: " << variant_name(r.variant) << "  scale: "
      << (r.scale == AttackScale::kMiniExecute ? "mini-execute" : "full-estimate") << "\n";
  std::snprintf(buf, sizeof(buf), "block bits n=%u, family dimension m=%u\n", r.n, r.m);
  out << buf;
  std::snprintf(buf, sizeof(buf), "data: 2^%.3f known plaintexts", r.data_log2);
  out << buf;
  if (r.scale == AttackScale::kMiniExecute) {
    std::snprintf(buf, sizeof(buf), " (%llu records)",
                  static_cast<unsigned long long>(r.records_used));
    out << buf;
  }
  out << "\n";
  std::snprintf(buf, sizeof(buf), "threshold tau: %.6g (2^%.3f); normal-approximation tau: %.6g\n",
                r.tau, std::log2(r.tau), r.tau_normal);
  out << buf;
  std::snprintf(buf, sizeof(buf), "guess space: 2^%.0f\n", r.guess_space_log2);
  out << buf;

  if (r.scale == AttackScale::kMiniExecute) {
    std::snprintf(buf, sizeof(buf),
                  "survivors: %llu observed (expected %.1f); sampled wrong guesses: %llu with "
                  "%llu survivors (expected %.1f, sigma %.2f)\n",
                  static_cast<unsigned long long>(r.survivors), r.expected_survivors,
                  static_cast<unsigned long long>(r.sampled_wrong),
                  static_cast<unsigned long long>(r.sampled_survivors), r.sampled_expected,
                  r.sampled_sigma);
    out << buf;
    std::snprintf(buf, sizeof(buf), "wrong-guess statistic mean: %.4f\n", r.wrong_T_mean);
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "right guess: T=%.6g, rank %llu among survivors, %s\n", r.right_T,
                  static_cast<unsigned long long>(r.right_rank),
                  r.right_survived ? "survived" : "did not survive");
    out << buf;
    out << "key recovered: " << (r.key_recovered ? "yes" : "no");
    if (r.key_recovered) {
      out << " after " << r.finish_trials << " completion trials";
    }
    out << "\n";
    out << "executed fold widths:\n";
    render_ledger_text(out, r.mini_ledger);
  }

  out << "full-scale accounting (one memory access counted as one reduced-round encryption):\n";
  for (const auto& s : r.stage_costs) {
    std::snprintf(buf, sizeof(buf), "  %-28s guess-bits %2u  table 2^%-2u  cost 2^%.1f\n",
                  s.name.c_str(), s.guess_bits, s.table_width, s.cost_log2);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "total time 2^%.1f encryptions; memory 2^%.0f bytes; expected survivors 2^%.1f\n",
                r.time_log2, r.memory_bytes_log2, r.survivors_log2);
  out << buf;
  if (r.variant == AttackVariant::kSevenRoundWeakKey) {
    std::snprintf(buf, sizeof(buf), "weak-key fraction: 2^%.0f of the key space\n",
                  r.weak_fraction_log2);
    out << buf;
  }
  for (const auto& note : r.notes) out << "note: " << note << "\n";
  if (r.runtime_seconds > 0) {
    std::snprintf(buf, sizeof(buf), "runtime: %.1f s\n", r.runtime_seconds);
    out << buf;
  }
}

void render_csv(std::ostream& out, const AttackReport& r) {
  out << "stage,guessed_bits,table_width,cost_log2,N_log2,tau,survivors,right_key_rank\n";
  for (const auto& s : r.stage_costs) {
    out << s.name << ',' << s.guess_bits << ',' << s.table_width << ',' << s.cost_log2 << ','
        << r.data_log2 << ',' << r.tau << ',' << r.survivors << ',' << r.right_rank << '\n';
  }
}

void render_json(std::ostream& out, const AttackReport& r) {
  nlohmann::json j;
  j["variant"] = variant_name(r.variant);
  j["scale"] = r.scale == AttackScale::kMiniExecute ? "mini-execute" : "full-estimate";
  j["n"] = r.n;
  j["m"] = r.m;
  j["N_log2"] = r.data_log2;
  j["records_used"] = r.records_used;
  j["tau"] = r.tau;
  j["tau_log2"] = std::log2(r.tau);
  j["tau_normal"] = r.tau_normal;
  j["guess_space_log2"] = r.guess_space_log2;
  j["survivors"] = r.survivors;
  j["expected_survivors"] = r.expected_survivors;
  j["sampled_wrong"] = r.sampled_wrong;
  j["sampled_survivors"] = r.sampled_survivors;
  j["sampled_expected"] = r.sampled_expected;
  j["sampled_sigma"] = r.sampled_sigma;
  j["wrong_T_mean"] = r.wrong_T_mean;
  j["right_T"] = r.right_T;
  j["right_key_rank"] = r.right_rank;
  j["right_survived"] = r.right_survived;
  j["key_recovered"] = r.key_recovered;
  if (r.key_recovered) j["recovered_key"] = key_hex(r.recovered_key, CipherParams::mini());
  j["finish_trials"] = r.finish_trials;
  j["time_log2"] = r.time_log2;
  j["memory_bytes_log2"] = r.memory_bytes_log2;
  j["survivors_log2"] = r.survivors_log2;
  if (r.variant == AttackVariant::kSevenRoundWeakKey) {
    j["weak_fraction_log2"] = r.weak_fraction_log2;
  }
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : r.stage_costs) {
    stages.push_back({{"stage", s.name},
                      {"guessed_bits", s.guess_bits},
                      {"table_width", s.table_width},
                      {"cost_log2", s.cost_log2}});
  }
  j["stages"] = stages;
  j["notes"] = r.notes;
  j["runtime_seconds"] = r.runtime_seconds;
  out << j.dump(2) << "\n";
}

}  // namespace

void render_report(std::ostream& out, const AttackReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kText: render_text(out, report); break;
    case ReportFormat::kCsv: render_csv(out, report); break;
    case ReportFormat::kJson: render_json(out, report); break;
  }
}

}  // namespace zckw
