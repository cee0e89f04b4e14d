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

#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "zckw/attack.hpp"
#include "zckw/correlation.hpp"
#include "zckw/dataset.hpp"
#include "zckw/distinguisher.hpp"
#include "zckw/report.hpp"

namespace {

using namespace zckw;

const CipherParams& params_for_scale(const std::string& scale) {
  if (scale == "mini") return CipherParams::mini();
  if (scale == "full") return CipherParams::kasumi();
  throw CLI::ValidationError("--scale must be mini or full");
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

MasterKey random_key(const CipherParams& p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  MasterKey key;
  for (auto& w : key.k) w = static_cast<uint32_t>(rng()) & p.word_mask();
  return key;
}

int run_encrypt(const std::string& scale, const std::string& key_str,
                const std::string& block_str, unsigned from, unsigned to,
                const std::string& fixture, bool decrypt) {
  const CipherParams& p = params_for_scale(scale);
  if (!fixture.empty()) {
    std::ifstream in(fixture);
    if (!in) {
      std::cerr << "cannot open fixture: " << fixture << "\n";
      return 1;
    }
    std::string key_hex_str, pt_hex, ct_hex, range;
    unsigned checked = 0, failed = 0;
    while (in >> key_hex_str >> pt_hex >> ct_hex >> range) {
      const CipherParams& fp = key_hex_str.size() == 32 ? CipherParams::kasumi()
                                                        : CipherParams::mini();
      const size_t dash = range.find('-');
      const unsigned f = std::stoul(range.substr(0, dash));
      const unsigned t = std::stoul(range.substr(dash + 1));
      const MasterKey key = parse_key_hex(key_hex_str, fp);
      const RoundSubkeys keys = key_schedule(key, fp);
      const Block pt = parse_block_hex(pt_hex, fp);
      const Block ct = encrypt_rounds(pt, keys, f, t, fp);
      ++checked;
      if (block_hex(ct, fp) != ct_hex) {
        ++failed;
        std::cerr << "mismatch: key " << key_hex_str << " pt " << pt_hex << " expected "
                  << ct_hex << " got " << block_hex(ct, fp) << "\n";
      }
    }
    std::cout << checked << " fixture vectors checked, " << failed << " mismatches\n";
    return failed == 0 ? 0 : 1;
  }
  const MasterKey key = parse_key_hex(key_str, p);
  const RoundSubkeys keys = key_schedule(key, p);
  const Block b = parse_block_hex(block_str, p);
  const Block out = decrypt ? decrypt_rounds(b, keys, from, to, p)
                            : encrypt_rounds(b, keys, from, to, p);
  std::cout << block_hex(out, p) << "\n";
  return 0;
}

int run_keyschedule(const std::string& scale, const std::string& key_str) {
  const CipherParams& p = params_for_scale(scale);
  const MasterKey key = parse_key_hex(key_str, p);
  const RoundSubkeys keys = key_schedule(key, p);
  const unsigned digits = p.w / 4;
  auto hex = [&](uint32_t v) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%0*X", digits, v);
    return std::string(buf);
  };
  std::cout << "round  KL1   KL2   KO1   KO2   KO3   KI1   KI2   KI3\n";
  for (unsigned i = 0; i < 8; ++i) {
    const SubkeySet& s = keys.round[i];
    std::cout << "  " << (i + 1) << "    " << hex(s.kl1) << "  " << hex(s.kl2) << "  "
              << hex(s.ko1) << "  " << hex(s.ko2) << "  " << hex(s.ko3) << "  " << hex(s.ki1)
              << "  " << hex(s.ki2) << "  " << hex(s.ki3) << "\n";
  }
  return 0;
}

int run_zc_verify(const std::string& scale, unsigned from, unsigned to, unsigned n_keys,
                  uint64_t seed, unsigned threads) {
  if (scale == "toy") {
    int64_t worst = 0;
    for (unsigned k = 0; k < n_keys; ++k) {
      const ToyFeistel toy = ToyFeistel::random(8, to - from + 1, seed + k);
      const auto res = zc_sweep([&](uint64_t x) { return toy.encrypt(x); }, 16,
                                feistel_family(8, 8), threads);
      worst = std::max(worst, res.max_abs.abs_num());
    }
    std::cout << "toy feistel rounds=" << (to - from + 1) << " keys=" << n_keys
              << ": max |correlation| = " << worst << "/2^16\n";
    return worst == 0 ? 0 : 1;
  }
  const CipherParams& p = params_for_scale(scale);
  if (p.block_bits() > 32) {
    std::cerr << "whole-codebook verification requires the mini scale\n";
    return 2;
  }
  int64_t worst = 0;
  for (unsigned k = 0; k < n_keys; ++k) {
    const MasterKey key = random_key(p, seed + k);
    const RoundSubkeys keys = key_schedule(key, p);
    const auto res =
        verify_zero_correlation(p, keys, zc_family(p, keys.round[to - 1].kl2), from, to, threads);
    worst = std::max(worst, res.max_abs.abs_num());
    std::cout << "key " << key_hex(key, p) << ": max |correlation| = " << res.max_abs.abs_num()
              << "/2^" << p.block_bits() << "\n";
  }
  std::cout << "rounds " << from << ".." << to << " over " << n_keys
            << " keys: max |correlation| = " << worst << "/2^" << p.block_bits() << "\n";
  return worst == 0 ? 0 : 1;
}

int run_verify_observations(uint64_t seed) {
  const CipherParams& p = CipherParams::mini();
  bool all_ok = true;

  // Keyed OR/AND compatibility against exhaustive correlation at widths 3, 4.
  for (unsigned width : {3u, 4u}) {
    const uint32_t n = 1u << width;
    bool ok = true;
    for (uint32_t mv = 0; mv < n && ok; ++mv) {
      std::vector<uint32_t> h_or(n), h_and(n);
      for (uint32_t x = 0; x < n; ++x) {
        h_or[x] = mv | x;
        h_and[x] = mv & x;
      }
      for (uint32_t a = 0; a < n && ok; ++a) {
        for (uint32_t b = 0; b < n && ok; ++b) {
          const LinearMask M{width, mv}, alpha{width, a}, beta{width, b};
          const bool or_nonzero = !correlation(h_or, width, alpha, beta).is_zero();
          const bool and_nonzero = !correlation(h_and, width, alpha, beta).is_zero();
          ok = or_nonzero == or_mask_compatible(M, alpha, beta) &&
               and_nonzero == and_mask_compatible(M, alpha, beta);
        }
      }
    }
    std::cout << "observation: keyed OR/AND mask compatibility, width " << width << ": "
              << (ok ? "PASS" : "FAIL") << "\n";
    all_ok = all_ok && ok;
  }

  // FL companion mask: for the paired output masks, the only correlated
  // input mask is (beta, 0); checked over the whole input-mask spectrum.
  {
    bool ok = true;
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 12 && ok; ++trial) {
      const uint32_t kl1 = static_cast<uint32_t>(rng()) & p.word_mask();
      const uint32_t kl2 = trial == 0 ? 0 : (trial == 1 ? p.word_mask()
                                                        : static_cast<uint32_t>(rng()) & p.word_mask());
      for (uint32_t beta : beta_class_enumerate(p).masks) {
        const FlMaskPair mp = fl_mask_pair(beta, kl2, p);
        std::vector<uint32_t> fl_table(1u << (2 * p.w));
        for (uint32_t x = 0; x < fl_table.size(); ++x) {
          fl_table[x] = fl_apply(x, kl1, kl2, p);
        }
        const uint64_t out_mask = (static_cast<uint64_t>(mp.out_l) << p.w) | mp.out_r;
        const auto spectrum = input_mask_spectrum(fl_table, 2 * p.w, out_mask);
        const uint64_t expect = static_cast<uint64_t>(mp.in_l) << p.w;
        for (uint64_t a = 0; a < spectrum.size() && ok; ++a) {
          ok = (spectrum[a] != 0) == (a == expect);
        }
        if (!ok) break;
      }
    }
    std::cout << "observation: FL companion output mask pairs to input (beta, 0): "
              << (ok ? "PASS" : "FAIL") << "\n";
    all_ok = all_ok && ok;
  }

  // FI with a class-shaped output mask: the correlated input-mask set
  // depends on the inner key only through its top small-lane bits.
  {
    bool ok = true;
    std::mt19937_64 rng(seed ^ 0xabcdef);
    for (int trial = 0; trial < 16 && ok; ++trial) {
      const uint32_t ki_a = static_cast<uint32_t>(rng()) & p.word_mask();
      const uint32_t ki_b = (ki_a & (p.small_mask() << p.s_big)) |
                            (static_cast<uint32_t>(rng()) & width_mask(p.s_big));
      for (uint32_t beta : beta_class_enumerate(p).masks) {
        std::vector<uint32_t> fa(1u << p.w), fb(1u << p.w);
        for (uint32_t x = 0; x < fa.size(); ++x) {
          fa[x] = fi_apply(x, ki_a, p);
          fb[x] = fi_apply(x, ki_b, p);
        }
        const auto sa = input_mask_spectrum(fa, p.w, beta);
        const auto sb = input_mask_spectrum(fb, p.w, beta);
        for (size_t a = 0; a < sa.size() && ok; ++a) ok = (sa[a] != 0) == (sb[a] != 0);
        if (!ok) break;
      }
    }
    std::cout << "observation: FI input-mask support under class masks depends only on the "
              << "top inner-key lane: " << (ok ? "PASS" : "FAIL") << "\n";
    all_ok = all_ok && ok;
  }

  return all_ok ? 0 : 1;
}

int run_simulate(unsigned trials, uint64_t samples, uint64_t seed, const std::string& cfg_path) {
  DistinguisherConfig cfg;
  cfg.n = 16;
  cfg.m = 3;
  if (!cfg_path.empty()) {
    std::ifstream in(cfg_path);
    if (!in) throw std::runtime_error("cannot open config: " + cfg_path);
    cfg = parse_config(in);
  }
  if (samples == 0) samples = uint64_t{1} << (cfg.n - 2);

  const ApproximationFamily fam = feistel_family(cfg.n / 2, cfg.m);
  std::mt19937_64 rng(seed);
  double right_sum = 0, wrong_sum = 0;
  for (unsigned t = 0; t < trials; ++t) {
    const ToyFeistel toy = ToyFeistel::random(cfg.n / 2, 5, rng());
    const uint64_t codebook = uint64_t{1} << cfg.n;
    std::vector<uint8_t> z_of(codebook);
    for (uint64_t x = 0; x < codebook; ++x) {
      const uint64_t c = toy.encrypt(x);
      uint32_t z = 0;
      for (unsigned i = 0; i < cfg.m; ++i) {
        z |= static_cast<uint32_t>(dot(fam.masks[i].first, x) ^ dot(fam.masks[i].second, c)) << i;
      }
      z_of[x] = static_cast<uint8_t>(z);
    }
    // Right key: distinct texts without replacement.
    std::vector<uint32_t> order(codebook);
    for (uint64_t i = 0; i < codebook; ++i) order[i] = static_cast<uint32_t>(i);
    for (uint64_t i = 0; i < samples; ++i) {
      const uint64_t j = i + rng() % (codebook - i);
      std::swap(order[i], order[j]);
    }
    DataCounter right = DataCounter::zeros(cfg.m);
    for (uint64_t i = 0; i < samples; ++i) right.add(z_of[order[i]]);
    right_sum += statistic_T(right);

    // Wrong key: uniform values with replacement.
    DataCounter wrong = DataCounter::zeros(cfg.m);
    for (uint64_t i = 0; i < samples; ++i) {
      wrong.add(static_cast<uint32_t>(rng() & ((1u << cfg.m) - 1)));
    }
    wrong_sum += statistic_T(wrong);
  }
  const Moments m0 = right_key_moments(cfg.n, cfg.m, static_cast<double>(samples));
  const Moments m1 = wrong_key_moments(cfg.m);
  std::printf("trials=%u samples=%llu\n", trials, static_cast<unsigned long long>(samples));
  std::printf("right-key mean T = %.4f (model %.4f)\n", right_sum / trials, m0.mean);
  std::printf("wrong-key mean T = %.4f (model %.4f)\n", wrong_sum / trials, m1.mean);
  const bool ok = std::fabs(right_sum / trials - m0.mean) <= 0.1 * m0.mean &&
                  std::fabs(wrong_sum / trials - m1.mean) <= 0.1 * m1.mean;
  std::printf("within 10%% of the model means: %s\n", ok ? "yes" : "no");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-correlation cryptanalysis workbench"};
  app.require_subcommand(1);

  std::string scale = "mini", key_str, block_str, fixture, data_path, out_path, report_fmt = "text";
  std::string variant_str = "6round", cfg_path;
  unsigned from = 1, to = 8, n_keys = 10, threads = 0, trials = 200, wrong_stage1 = 3;
  uint64_t seed = 1, count = 0, samples = 0, finish_limit = 0;
  double beta0_log2 = -2.7, beta1_log2 = -5;
  bool decrypt_mode = false, true_quantiles = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scale", scale, "cipher configuration: mini or full");
    cmd->add_option("--seed", seed, "seed for all sampled choices");
    cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
  };

  auto* enc = app.add_subcommand("encrypt", "encrypt a block or check a fixture file");
  add_common(enc);
  enc->add_option("--key-hex", key_str);
  enc->add_option("--block-hex", block_str);
  enc->add_option("--from", from);
  enc->add_option("--to", to);
  enc->add_option("--fixture", fixture, "key-hex plaintext-hex ciphertext-hex from-to lines");

  auto* dec = app.add_subcommand("decrypt", "decrypt a block");
  add_common(dec);
  dec->add_option("--key-hex", key_str)->required();
  dec->add_option("--block-hex", block_str)->required();
  dec->add_option("--from", from);
  dec->add_option("--to", to);

  auto* ks = app.add_subcommand("keyschedule", "print the round subkeys");
  add_common(ks);
  ks->add_option("--key-hex", key_str)->required();

  auto* zc = app.add_subcommand("zc-verify", "whole-codebook zero-correlation check");
  add_common(zc);
  zc->add_option("--from", from)->default_val(2);
  zc->add_option("--to", to)->default_val(6);
  zc->add_option("--keys", n_keys);

  auto* obs = app.add_subcommand("verify-observations", "mask-propagation brute-force suites");
  add_common(obs);

  auto* sim = app.add_subcommand("simulate", "distinguisher statistic simulation");
  add_common(sim);
  sim->add_option("--trials", trials);
  sim->add_option("--samples", samples);
  sim->add_option("--config", cfg_path, "key=value file: n, m, beta0_log2, beta1_log2");

  auto* atk = app.add_subcommand("attack", "run a key-recovery attack at the mini scale");
  add_common(atk);
  atk->add_option("--variant", variant_str, "6round or 7round-wk");
  atk->add_option("--key-hex", key_str, "planted key (random weak key when omitted)");
  atk->add_option("--beta0-log2", beta0_log2);
  atk->add_option("--beta1-log2", beta1_log2);
  atk->add_option("--data", data_path, "ZCKP1 dataset path (defaults to streaming)");
  atk->add_option("--count", count, "known plaintexts (0 = full codebook)");
  atk->add_option("--wrong-stage1", wrong_stage1, "7round-wk: wrong first-stage guesses");
  atk->add_option("--finish-limit", finish_limit);
  atk->add_option("--report", report_fmt, "text, csv or json");
  atk->add_option("--out", out_path);

  auto* est = app.add_subcommand("estimate", "full-scale complexity report");
  est->add_option("--variant", variant_str, "6round or 7round-wk");
  est->add_flag("--true-quantiles", true_quantiles,
                "use computed normal quantiles instead of the published rounded values");
  est->add_option("--report", report_fmt, "text, csv or json");
  est->add_option("--out", out_path);

  auto* gen = app.add_subcommand("gen-data", "generate a planted-key dataset");
  add_common(gen);
  gen->add_option("--variant", variant_str);
  gen->add_option("--key-hex", key_str)->required();
  gen->add_option("--count", count)->required();
  gen->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (enc->parsed()) return run_encrypt(scale, key_str, block_str, from, to, fixture, false);
    if (dec->parsed()) return run_encrypt(scale, key_str, block_str, from, to, fixture, true);
    if (ks->parsed()) return run_keyschedule(scale, key_str);
    if (zc->parsed()) return run_zc_verify(scale, from, to, n_keys, seed, threads);
    if (obs->parsed()) return run_verify_observations(seed);
    if (sim->parsed()) return run_simulate(trials, samples, seed, cfg_path);

    const AttackVariant variant =
        variant_str == "6round" ? AttackVariant::kSixRound : AttackVariant::kSevenRoundWeakKey;
    if (variant_str != "6round" && variant_str != "7round-wk") {
      std::cerr << "unknown variant: " << variant_str << "\n";
      return 2;
    }

    if (gen->parsed()) {
      const CipherParams& p = params_for_scale(scale);
      const MasterKey key = parse_key_hex(key_str, p);
      const unsigned gfrom = variant == AttackVariant::kSixRound ? 1 : 2;
      const unsigned gto = variant == AttackVariant::kSixRound ? 6 : 8;
      generate_dataset(out_path, p, key, gfrom, gto,
                       variant == AttackVariant::kSixRound ? 0 : 1, count, seed);
      std::cout << "wrote " << out_path << "\n";
      return 0;
    }

    if (est->parsed()) {
      const AttackReport report = estimate_full_scale(
          variant, default_config(variant, AttackScale::kFullEstimate, true_quantiles));
      std::ofstream file;
      render_report(open_output(file, out_path), report, parse_report_format(report_fmt));
      return 0;
    }

    if (atk->parsed()) {
      if (scale == "full") {
        // Full-scale execution is out of reach; only the analytic report is
        // produced for this configuration.
        const AttackReport report = estimate_full_scale(
            variant, default_config(variant, AttackScale::kFullEstimate, true_quantiles));
        std::ofstream file;
        render_report(open_output(file, out_path), report, parse_report_format(report_fmt));
        return 0;
      }
      AttackPlan plan;
      plan.variant = variant;
      plan.scale = AttackScale::kMiniExecute;
      plan.params = &params_for_scale(scale);
      plan.config = default_config(variant, plan.scale);
      plan.config.beta0_log2 = beta0_log2;
      plan.config.beta1_log2 = beta1_log2;
      plan.seed = seed;
      plan.wrong_stage1_guesses = wrong_stage1;
      plan.record_count = count;
      plan.data_path = data_path;
      plan.threads = threads;
      plan.finish_limit = finish_limit;
      if (!key_str.empty()) {
        plan.planted_key = parse_key_hex(key_str, *plan.params);
      } else {
        plan.planted_key = random_key(*plan.params, seed);
        if (variant == AttackVariant::kSevenRoundWeakKey) {
          // Force the weak-key relation on the planted key.
          plan.planted_key.k[1] =
              (plan.planted_key.k[3] ^ plan.params->constants[1] ^ plan.params->constants[3]) &
              plan.params->word_mask();
        }
        std::cerr << "planted key: " << key_hex(plan.planted_key, *plan.params) << "\n";
      }
      const AttackReport report = variant == AttackVariant::kSixRound
                                      ? attack_6round(plan)
                                      : attack_7round_weak(plan);
      std::ofstream file;
      render_report(open_output(file, out_path), report, parse_report_format(report_fmt));
      return report.key_recovered || plan.scale == AttackScale::kFullEstimate ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
