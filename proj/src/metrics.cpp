// Copyright 2026 The Optonet Authors
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

#include "optonet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace optonet {

MetricsReport metrics_from_counts(const TraceCounts& counts) {
  MetricsReport r;
  r.n_mis = counts.n_missed;
  r.n_covered = counts.n_covered;
  r.n_spurious = counts.n_spurious;
  r.n_emissions = counts.n_emissions;
  r.total_spikes = counts.total_spikes;
  if (r.total_spikes == 0) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    r.gamma_mis = r.eta_stim = r.gamma_stim = nan;
    r.ratios_defined = false;
    return r;
  }
  const double total = static_cast<double>(r.total_spikes);
  r.gamma_mis = static_cast<double>(r.n_mis) / total;
  r.eta_stim = 100.0 - 100.0 * r.gamma_mis;
  r.gamma_stim = static_cast<double>(r.n_emissions) / total;
  r.ratios_defined = true;
  return r;
}

MetricsReport compute_metrics(const SimTrace& trace) { return metrics_from_counts(trace.counts); }

namespace {

MetricStats stats_of(std::span<const double> xs) {
  MetricStats s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return s;
  if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
    s.mean = xs.front();
    return s;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return s;
}

}  // namespace

AggregateStats aggregate(std::span<const MetricsReport> reports) {
  std::vector<double> gs, es, ms;
  for (const auto& r : reports) {
    if (!r.ratios_defined) continue;
    gs.push_back(r.gamma_stim);
    es.push_back(r.eta_stim);
    ms.push_back(r.gamma_mis);
  }
  AggregateStats out;
  out.n = gs.size();
  out.std_defined = out.n >= 2;
  out.gamma_stim = stats_of(gs);
  out.eta_stim = stats_of(es);
  out.gamma_mis = stats_of(ms);
  return out;
}

std::map<std::string, AggregateStats> aggregate_by_group(std::span<const KeyedReport> reports) {
  std::map<std::string, std::vector<MetricsReport>> groups;
  for (const auto& k : reports) groups[k.group].push_back(k.report);
  std::map<std::string, AggregateStats> out;
  for (const auto& [key, rs] : groups) out.emplace(key, aggregate(rs));
  return out;
}

}  // namespace optonet
