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

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "optonet/simengine.hpp"

namespace optonet {

struct MetricsReport {
  std::uint64_t n_mis = 0;
  std::uint64_t n_covered = 0;
  std::uint64_t n_spurious = 0;
  std::uint64_t n_emissions = 0;
  std::uint64_t total_spikes = 0;
  // Ratios are NaN when total_spikes == 0; check ratios_defined.
  double gamma_mis = 0.0;
  double eta_stim = 0.0;    // percent
  double gamma_stim = 0.0;
  bool ratios_defined = false;
};

MetricsReport metrics_from_counts(const TraceCounts& counts);

// A spike is a misfire iff the trace classified it as missed, whether
// because nothing targeted it or because the device lacked energy.
MetricsReport compute_metrics(const SimTrace& trace);

struct MetricStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n - 1)
};

struct AggregateStats {
  std::size_t n = 0;
  bool std_defined = false;  // false for a single report; std is then 0
  MetricStats gamma_stim;
  MetricStats eta_stim;
  MetricStats gamma_mis;
};

// Reports with undefined ratios are skipped.
AggregateStats aggregate(std::span<const MetricsReport> reports);

struct KeyedReport {
  std::string group;
  MetricsReport report;
};

std::map<std::string, AggregateStats> aggregate_by_group(std::span<const KeyedReport> reports);

}  // namespace optonet
