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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "optonet/metrics.hpp"
#include "optonet/model.hpp"
#include "optonet/protocols.hpp"
#include "optonet/simengine.hpp"

namespace optonet {

// Sparse raster CSV: header `device_id,slot_index`, one row per spike,
// ordered by device then slot.
std::string raster_to_csv(const RasterPlot& raster);
RasterPlot raster_from_csv(std::string_view text, std::size_t device_count, std::size_t slot_count,
                           double slot_duration_ms);

// Dense JSON: {"slot_duration_ms": x, "spikes": [[0,1,...], ...]} (rows = devices).
std::string raster_to_json(const RasterPlot& raster);
RasterPlot raster_from_json(std::string_view text);

std::string bank_to_json(const PatternBank& bank);
PatternBank bank_from_json(std::string_view text);

// `rank,sequence,chain_score`, rank starting at 1.
std::string rank_table_csv(const std::vector<LayerSequence>& ranked);

// One JSON object per slot, LF-terminated.
std::string trace_to_jsonl(const SimTrace& trace);
std::string trace_summary_json(const SimTrace& trace);
SimTrace trace_from_files(std::string_view summary_json, std::string_view jsonl);

struct MetricsRow {
  std::string protocol;
  double spike_rate_hz = 0.0;
  std::size_t n_patterns = 0;
  std::size_t device_count = 0;
  std::uint64_t seed = 0;
  MetricsReport report;
};

std::string_view metrics_csv_header();
std::string metrics_csv_row(const MetricsRow& row);  // LF-terminated
std::vector<MetricsRow> metrics_from_csv(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace optonet
