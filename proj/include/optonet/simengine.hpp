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
#include <optional>
#include <vector>

#include "optonet/energy.hpp"
#include "optonet/model.hpp"
#include "optonet/protocols.hpp"

namespace optonet {

inline constexpr int kTraceVersion = 1;

struct DeviceState {
  CapacitorState capacitor;
  std::optional<Slot> pending_discharge;
  Layer layer = Layer::kL23;
};

// Everything that happened in one slot. Device lists are sorted ascending.
struct SlotRecord {
  Slot slot = 0;
  std::optional<FrequencyId> emitted;
  std::vector<DeviceId> spikes;        // raster content of this slot
  std::vector<DeviceId> charged;       // devices receiving charging this slot
  std::vector<ScheduledDischarge> scheduled;
  std::vector<DeviceId> replaced;      // pending discharges overwritten by `scheduled`
  std::vector<DeviceId> discharged;    // successful LED pulses
  std::vector<DeviceId> failed;        // due, but energy below e_max
  std::vector<DeviceId> covered;
  std::vector<DeviceId> missed;
  std::vector<DeviceId> spurious;
  double energy_added_j = 0.0;
  double energy_drained_j = 0.0;

  friend bool operator==(const SlotRecord&, const SlotRecord&) = default;
};

struct TraceCounts {
  std::uint64_t n_covered = 0;
  std::uint64_t n_missed = 0;
  std::uint64_t n_spurious = 0;
  std::uint64_t n_emissions = 0;
  std::uint64_t total_spikes = 0;
  std::uint64_t n_failed = 0;
  std::uint64_t n_replaced = 0;

  friend bool operator==(const TraceCounts&, const TraceCounts&) = default;
};

struct SimTrace {
  int trace_version = kTraceVersion;
  Protocol protocol = Protocol::kChargeAndFire;
  std::size_t device_count = 0;
  std::size_t slot_count = 0;
  double slot_duration_ms = 1.0;
  std::uint64_t seed = 0;
  double e_max_j = 0.0;
  double initial_energy_j = 0.0;
  double energy_added_j = 0.0;
  double energy_drained_j = 0.0;
  std::vector<SlotRecord> records;
  TraceCounts counts;

  friend bool operator==(const SimTrace&, const SimTrace&) = default;
};

// Slot-by-slot execution of the configured protocol against a raster. Per
// slot: protocol decision; broadcast charging on emission; registration of
// new discharge schedules; due discharges and spike classification.
// Throws ConfigError on protocol/bank or raster/config mismatches.
SimTrace run(const SimConfig& cfg, const RasterPlot& raster,
             const PatternBank* bank = nullptr);

// Recomputes counts from the per-slot records and checks them against the
// stored totals. Throws TraceError naming the first inconsistent slot.
TraceCounts replay(const SimTrace& trace);

}  // namespace optonet
