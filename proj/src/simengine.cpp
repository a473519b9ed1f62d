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

#include "optonet/simengine.hpp"

#include <algorithm>
#include <string>

#include "optonet/error.hpp"

namespace optonet {

namespace {

void check_inputs(const SimConfig& cfg, const RasterPlot& raster, const PatternBank* bank) {
  if (raster.device_count() != cfg.device_count) {
    throw ConfigError("raster has " + std::to_string(raster.device_count()) +
                      " devices, config expects " + std::to_string(cfg.device_count));
  }
  if (raster.slot_duration_ms() != cfg.slot_duration_ms) {
    throw ConfigError("raster slot duration differs from sim.slot_duration_ms");
  }
  if (cfg.device_layers.size() != cfg.device_count) {
    throw ConfigError("sim.device_layers must list one layer per device");
  }
  if (cfg.emission_slots < 1) throw ConfigError("sim.emission_slots must be >= 1");
  switch (cfg.protocol) {
    case Protocol::kChargeAndFire:
      if (bank != nullptr) throw ConfigError("charge_and_fire does not use a pattern bank");
      if (cfg.device_count > cfg.frequency_count) {
        throw ConfigError("charge_and_fire needs one frequency per device");
      }
      break;
    case Protocol::kPsdwRandom:
    case Protocol::kPsdwMarkov:
      if (bank == nullptr) {
        throw ConfigError(std::string(protocol_name(cfg.protocol)) + " needs a pattern bank");
      }
      if (bank->size() != cfg.frequency_count) {
        throw ConfigError("pattern bank size differs from sim.frequency_count");
      }
      if (bank->device_count() != cfg.device_count) {
        throw ConfigError("pattern bank device count differs from sim.device_count");
      }
      break;
  }
}

bool contains(const std::vector<DeviceId>& v, DeviceId d) {
  return std::find(v.begin(), v.end(), d) != v.end();
}

}  // namespace

SimTrace run(const SimConfig& cfg, const RasterPlot& raster, const PatternBank* bank) {
  check_inputs(cfg, raster, bank);

  const EnergyParams& energy = cfg.energy;
  const std::size_t n = cfg.device_count;
  const std::size_t slots = raster.slot_count();
  const bool pattern_protocol = cfg.protocol != Protocol::kChargeAndFire;
  const bool broadcast = pattern_protocol || cfg.cf_broadcast_charging;

  std::vector<DeviceState> devices(n);
  SimTrace trace;
  trace.protocol = cfg.protocol;
  trace.device_count = n;
  trace.slot_count = slots;
  trace.slot_duration_ms = cfg.slot_duration_ms;
  trace.seed = cfg.seed;
  trace.e_max_j = energy.e_max_j;
  for (std::size_t d = 0; d < n; ++d) {
    devices[d].layer = cfg.device_layers[d];
    devices[d].capacitor =
        cfg.start_charged ? CapacitorState::full(energy) : CapacitorState::empty();
    trace.initial_energy_j += devices[d].capacitor.stored_energy;
  }
  trace.records.reserve(slots);

  RasterPlot remaining = raster;
  std::optional<Slot> charging_until;
  std::vector<DeviceId> addressed;  // charged devices when broadcast is off
  Slot next_emission_allowed = 0;
  TraceCounts& counts = trace.counts;

  for (Slot t = 0; t < slots; ++t) {
    SlotRecord rec;
    rec.slot = t;
    rec.spikes = raster.spiking_at(t);
    counts.total_spikes += rec.spikes.size();

    ProtocolDecision decision;
    if (t >= next_emission_allowed) {
      if (pattern_protocol) {
        decision = psdw_step(remaining, t, *bank).decision;
      } else {
        decision = charge_and_fire_step(raster, t);
      }
    }

    if (decision.emit) {
      rec.emitted = decision.emit;
      ++counts.n_emissions;
      charging_until = t + cfg.emission_slots - 1;
      next_emission_allowed = t + 1 + cfg.min_emission_gap;
      addressed = decision.immediate_discharges;
      for (const auto& s : decision.scheduled) addressed.push_back(s.device);
    }

    if (charging_until && t <= *charging_until) {
      for (std::size_t d = 0; d < n; ++d) {
        const DeviceId id{d};
        if (!broadcast && !contains(addressed, id)) continue;
        auto& cap = devices[d].capacitor;
        const double before = cap.stored_energy;
        cap = step_slot(cap, energy, true, cfg.slot_duration_ms);
        rec.energy_added_j += cap.stored_energy - before;
        rec.charged.push_back(id);
      }
    }

    auto schedule = [&](DeviceId id, Slot at) {
      auto& pending = devices[id.value].pending_discharge;
      if (pending) {
        rec.replaced.push_back(id);
        ++counts.n_replaced;
      }
      pending = at;
    };
    for (DeviceId id : decision.immediate_discharges) schedule(id, t);
    for (const auto& s : decision.scheduled) schedule(s.device, s.slot);
    rec.scheduled = decision.scheduled;
    for (DeviceId id : decision.immediate_discharges) rec.scheduled.push_back({id, t});
    std::sort(rec.replaced.begin(), rec.replaced.end());

    for (std::size_t d = 0; d < n; ++d) {
      auto& dev = devices[d];
      if (!dev.pending_discharge || *dev.pending_discharge != t) continue;
      dev.pending_discharge.reset();
      const DeviceId id{d};
      auto [next, fired] = discharge_pulse(dev.capacitor, energy);
      if (fired) {
        rec.energy_drained_j += dev.capacitor.stored_energy - next.stored_energy;
        dev.capacitor = next;
        rec.discharged.push_back(id);
        if (contains(rec.spikes, id)) {
          rec.covered.push_back(id);
        } else {
          rec.spurious.push_back(id);
        }
      } else {
        rec.failed.push_back(id);
      }
    }
    for (DeviceId id : rec.spikes) {
      if (!contains(rec.covered, id)) rec.missed.push_back(id);
    }

    counts.n_covered += rec.covered.size();
    counts.n_missed += rec.missed.size();
    counts.n_spurious += rec.spurious.size();
    counts.n_failed += rec.failed.size();
    trace.energy_added_j += rec.energy_added_j;
    trace.energy_drained_j += rec.energy_drained_j;
    trace.records.push_back(std::move(rec));
  }
  return trace;
}

TraceCounts replay(const SimTrace& trace) {
  TraceCounts counts;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const SlotRecord& rec = trace.records[i];
    if (rec.slot != i) {
      throw TraceError(i, "expected record for slot " + std::to_string(i) + ", found slot " +
                              std::to_string(rec.slot));
    }
    for (DeviceId d : rec.spikes) {
      const bool c = contains(rec.covered, d);
      const bool m = contains(rec.missed, d);
      if (c == m) throw TraceError(i, "spike must be classified exactly once");
    }
    for (DeviceId d : rec.covered) {
      if (!contains(rec.spikes, d) || !contains(rec.discharged, d)) {
        throw TraceError(i, "covered spike without a matching spike and discharge");
      }
    }
    for (DeviceId d : rec.missed) {
      if (!contains(rec.spikes, d)) throw TraceError(i, "missed entry without a spike");
    }
    for (DeviceId d : rec.discharged) {
      if (contains(rec.failed, d)) throw TraceError(i, "device both fired and failed");
      if (contains(rec.spikes, d) != !contains(rec.spurious, d)) {
        throw TraceError(i, "discharge without spike must be spurious");
      }
    }
    for (DeviceId d : rec.spurious) {
      if (!contains(rec.discharged, d)) throw TraceError(i, "spurious entry without discharge");
    }
    if (rec.emitted) ++counts.n_emissions;
    counts.total_spikes += rec.spikes.size();
    counts.n_covered += rec.covered.size();
    counts.n_missed += rec.missed.size();
    counts.n_spurious += rec.spurious.size();
    counts.n_failed += rec.failed.size();
    counts.n_replaced += rec.replaced.size();
  }
  if (trace.records.size() != trace.slot_count) {
    const std::size_t at = std::min(trace.records.size(), trace.slot_count);
    throw TraceError(at, "trace has " + std::to_string(trace.records.size()) +
                             " records for " + std::to_string(trace.slot_count) + " slots");
  }
  if (counts != trace.counts) {
    throw TraceError(trace.slot_count, "recomputed totals differ from stored totals");
  }
  return counts;
}

}  // namespace optonet
