// Copyright 2026 The qsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsched/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "qsched/error.hpp"

namespace qsched {
namespace {

void check_pair(const CountsDistribution& p, const CountsDistribution& q) {
  if (p.num_bits != q.num_bits) {
    throw Error(ErrorCode::WidthMismatch, "distributions have " + std::to_string(p.num_bits) +
                                              " and " + std::to_string(q.num_bits) + " bits");
  }
  if (p.total_shots == 0 || q.total_shots == 0) {
    throw Error(ErrorCode::EmptyDistribution, "distribution has no shots");
  }
}

// Frequencies of both inputs over the union of keys, in key order.
struct Aligned {
  std::vector<std::string_view> keys;
  std::vector<double> p;
  std::vector<double> q;
};

Aligned align(const CountsDistribution& p, const CountsDistribution& q) {
  Aligned out;
  const double np = static_cast<double>(p.total_shots);
  const double nq = static_cast<double>(q.total_shots);
  auto ip = p.counts.begin();
  auto iq = q.counts.begin();
  while (ip != p.counts.end() || iq != q.counts.end()) {
    const bool take_p = iq == q.counts.end() || (ip != p.counts.end() && ip->first <= iq->first);
    const bool take_q = ip == p.counts.end() || (iq != q.counts.end() && iq->first <= ip->first);
    out.keys.push_back(take_p ? std::string_view(ip->first) : std::string_view(iq->first));
    out.p.push_back(take_p ? static_cast<double>(ip->second) / np : 0.0);
    out.q.push_back(take_q ? static_cast<double>(iq->second) / nq : 0.0);
    if (take_p) ++ip;
    if (take_q) ++iq;
  }
  return out;
}

std::uint64_t msb_value(std::string_view key) {
  std::uint64_t v = 0;
  for (char c : key) v = (v << 1) | (c == '1' ? 1u : 0u);
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

}  // namespace

double hellinger(const CountsDistribution& p, const CountsDistribution& q) {
  check_pair(p, q);
  const Aligned a = align(p, q);
  double acc = 0.0;
  for (std::size_t k = 0; k < a.keys.size(); ++k) {
    const double d = std::sqrt(a.p[k]) - std::sqrt(a.q[k]);
    acc += d * d;
  }
  return std::sqrt(std::clamp(0.5 * acc, 0.0, 1.0));
}

double wasserstein_normalized(const CountsDistribution& p, const CountsDistribution& q) {
  check_pair(p, q);
  const std::size_t n = p.num_bits;
  if (n == 0 || n > 63) {
    throw Error(ErrorCode::InvalidArgument,
                "Wasserstein distance needs 1..63 bits, got " + std::to_string(n));
  }
  const Aligned a = align(p, q);
  // Keys of equal length sort lexicographically in integer order, so the CDF
  // difference is constant between consecutive support points.
  long double w1 = 0.0L;
  long double cdf_p = 0.0L;
  long double cdf_q = 0.0L;
  for (std::size_t k = 0; k + 1 < a.keys.size(); ++k) {
    cdf_p += a.p[k];
    cdf_q += a.q[k];
    const auto gap = static_cast<long double>(msb_value(a.keys[k + 1]) - msb_value(a.keys[k]));
    w1 += std::fabs(cdf_p - cdf_q) * gap;
  }
  const long double range = static_cast<long double>((std::uint64_t{1} << n) - 1);
  return std::clamp(static_cast<double>(w1 / range), 0.0, 1.0);
}

DistanceReport compare_runs(std::span<const RunPair> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::EmptyDistribution, "no runs to compare");
  DistanceReport report;
  double sum_h = 0.0;
  double sum_w = 0.0;
  for (const RunPair& pair : pairs) {
    JobDistance d{pair.job_id, pair.name, pair.width, pair.shots, 0.0, 0.0};
    try {
      d.hellinger = hellinger(pair.individual, pair.scheduled);
      d.wasserstein = wasserstein_normalized(pair.individual, pair.scheduled);
    } catch (const Error& e) {
      throw Error(e.code(), "job " + pair.job_id.value + ": " + e.what(), pair.job_id.value);
    }
    sum_h += d.hellinger;
    sum_w += d.wasserstein;
    report.per_job.push_back(std::move(d));
  }
  const auto n = static_cast<double>(pairs.size());
  report.mean_hellinger_pct = sum_h / n * 100.0;
  report.mean_wasserstein_pct = sum_w / n * 100.0;
  return report;
}

std::string report_csv(const DistanceReport& report) {
  std::string out = "job_id,name,width,shots,hellinger,wasserstein\n";
  std::size_t total_width = 0;
  std::uint64_t shots = 0;
  for (const JobDistance& d : report.per_job) {
    out += csv_field(d.job_id.value) + ',' + csv_field(d.name) + ',' + std::to_string(d.width) +
           ',' + std::to_string(d.shots) + ',' + fixed10(d.hellinger) + ',' +
           fixed10(d.wasserstein) + '\n';
    total_width += d.width;
    shots = std::max(shots, d.shots);
  }
  out += "summary,mean_pct," + std::to_string(total_width) + ',' + std::to_string(shots) + ',' +
         fixed10(report.mean_hellinger_pct) + ',' + fixed10(report.mean_wasserstein_pct) + '\n';
  return out;
}

}  // namespace qsched
