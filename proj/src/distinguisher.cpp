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

#include "zckw/distinguisher.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace zckw {

DataCounter DataCounter::zeros(unsigned m) {
  if (m > 30) throw std::invalid_argument("counter dimension must be <= 30");
  DataCounter c;
  c.m = m;
  c.v.assign(size_t{1} << m, 0);
  return c;
}

DataCounter build_counters(std::span<const std::pair<uint64_t, uint64_t>> records,
                           const ApproximationFamily& family) {
  DataCounter counter = DataCounter::zeros(family.dimension);
  for (const auto& [p, c] : records) {
    uint32_t z = 0;
    for (unsigned i = 0; i < family.dimension; ++i) {
      z |= static_cast<uint32_t>(dot(family.masks[i].first, p) ^
                                 dot(family.masks[i].second, c))
           << i;
    }
    counter.add(z);
  }
  return counter;
}

double statistic_T(const DataCounter& counter) {
  if (counter.total == 0) throw std::domain_error("statistic undefined for empty counters");
  const double cells = static_cast<double>(counter.v.size());
  const double expected = static_cast<double>(counter.total) / cells;
  double t = 0;
  for (uint64_t count : counter.v) {
    const double d = static_cast<double>(count) - expected;
    t += d * d;
  }
  return t / expected;
}

Moments right_key_moments(unsigned n, unsigned m, double N) {
  const long double codebook = std::exp2l(static_cast<long double>(n));
  if (!(N > 0) || static_cast<long double>(N) > codebook) {
    throw std::domain_error("N must satisfy 0 < N <= 2^n");
  }
  const long double l = std::exp2l(static_cast<long double>(m));
  const long double ratio = (codebook - static_cast<long double>(N)) / (codebook - 1.0L);
  Moments out;
  out.mean = static_cast<double>((l - 1.0L) * ratio);
  out.variance = static_cast<double>(2.0L * (l - 1.0L) * ratio * ratio);
  return out;
}

Moments wrong_key_moments(unsigned m) {
  const double l = std::exp2(static_cast<double>(m));
  return Moments{l - 1.0, 2.0 * (l - 1.0)};
}


double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("quantile requires 0 < p < 1");

  // Rational approximation (Acklam), |error| < 1.2e-9 before refinement.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }

  // Newton refinement against whichever tail keeps full relative precision.
  for (int it = 0; it < 2; ++it) {
    const long double xl = x;
    const long double pdf = expl(-xl * xl / 2.0L) / sqrtl(2.0L * static_cast<long double>(M_PI));
    if (pdf <= 0) break;
    if (p >= 0.5) {
      const long double q = 1.0L - static_cast<long double>(p);
      const long double tail = 0.5L * erfcl(xl / sqrtl(2.0L));
      x += static_cast<double>((tail - q) / pdf);
    } else {
      const long double head = 0.5L * erfcl(-xl / sqrtl(2.0L));
      x -= static_cast<double>((head - static_cast<long double>(p)) / pdf);
    }
  }
  return x;
}

namespace {

// Regularized lower incomplete gamma P(a, x), series/continued-fraction form.
double gamma_p(double a, double x) {
  if (x < 0 || a <= 0) throw std::domain_error("gamma_p domain");
  if (x == 0) return 0;
  const double gln = std::lgamma(a);
  if (x < a + 1) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Lentz continued fraction for Q(a, x).
  const double tiny = 1e-300;
  double b = x + 1 - a;
  double c = 1 / tiny;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - gln) * h;
  return 1 - q;
}

}  // namespace

double chi2_cdf(double k, double x) {
  if (x <= 0) return 0;
  return gamma_p(k / 2, x / 2);
}

double chi2_quantile(double k, double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("quantile requires 0 < p < 1");
  // Wilson-Hilferty start, then Newton on the CDF.
  const double z = normal_quantile(p);
  const double t = 1 - 2.0 / (9 * k) + z * std::sqrt(2.0 / (9 * k));
  double x = k * t * t * t;
  if (x <= 0) x = 1e-8;
  for (int i = 0; i < 64; ++i) {
    const double f = chi2_cdf(k, x) - p;
    const double pdf = std::exp((k / 2 - 1) * std::log(x) - x / 2 -
                                std::lgamma(k / 2) - (k / 2) * std::log(2.0));
    if (pdf <= 0) break;
    double step = f / pdf;
    if (std::fabs(step) > x / 2) step = std::copysign(x / 2, step);
    x -= step;
    if (std::fabs(step) < 1e-12 * (1 + x)) break;
  }
  return x;
}

double DistinguisherConfig::beta0() const { return std::exp2(beta0_log2); }
double DistinguisherConfig::beta1() const { return std::exp2(beta1_log2); }

double DistinguisherConfig::z0() const {
  if (z0_override) return *z0_override;
  return normal_quantile(1 - beta0());
}

double DistinguisherConfig::z1() const {
  if (z1_override) return *z1_override;
  return normal_quantile(1 - beta1());
}

double decision_threshold(const DistinguisherConfig& config, double N) {
  const Moments m0 = right_key_moments(config.n, config.m, N);
  return m0.mean + std::sqrt(m0.variance) * config.z0();
}

double data_complexity(const DistinguisherConfig& config) {
  const long double l = std::exp2l(static_cast<long double>(config.m));
  const long double codebook = std::exp2l(static_cast<long double>(config.n));
  const long double z0 = config.z0();
  const long double z1 = config.z1();
  const long double n =
      (codebook - 1.0L) * (z0 + z1) / (sqrtl((l - 1.0L) / 2.0L) + z0) + 1.0L;
  return static_cast<double>(n);
}

DistinguisherConfig parse_config(std::istream& in) {
  DistinguisherConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) continue;
    if (key == "n") cfg.n = static_cast<unsigned>(std::stoul(value));
    else if (key == "m") cfg.m = static_cast<unsigned>(std::stoul(value));
    else if (key == "beta0_log2") cfg.beta0_log2 = std::stod(value);
    else if (key == "beta1_log2") cfg.beta1_log2 = std::stod(value);
    else throw std::invalid_argument("unknown config key: " + key);
  }
  return cfg;
}

DistinguisherConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

void write_counter_csv(std::ostream& out, const DataCounter& counter) {
  out << "z,count\n";
  for (size_t z = 0; z < counter.v.size(); ++z) out << z << ',' << counter.v[z] << '\n';
}

DataCounter read_counter_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("z,count", 0) != 0) {
    throw std::runtime_error("counter csv: missing header");
  }
  std::vector<uint64_t> counts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("counter csv: bad row");
    const size_t z = std::stoull(line.substr(0, comma));
    if (z != counts.size()) throw std::runtime_error("counter csv: rows must be in order");
    counts.push_back(std::stoull(line.substr(comma + 1)));
  }
  unsigned m = 0;
  while ((size_t{1} << m) < counts.size()) ++m;
  if ((size_t{1} << m) != counts.size()) throw std::runtime_error("counter csv: size not 2^m");
  DataCounter counter = DataCounter::zeros(m);
  for (size_t z = 0; z < counts.size(); ++z) counter.add(static_cast<uint32_t>(z), counts[z]);
  counter.total = 0;
  for (uint64_t c : counts) counter.total += c;
  return counter;
}

}  // namespace zckw
