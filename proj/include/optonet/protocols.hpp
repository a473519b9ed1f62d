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
#include <string>
#include <utility>
#include <vector>

#include "optonet/model.hpp"
#include "optonet/transition_matrix.hpp"

namespace optonet {

// Per-device discharge offsets (slots after the emission) for one frequency.
struct Pattern {
  std::vector<std::size_t> delays;  // indexed by DeviceId
  std::vector<std::size_t> layer_order;  // Markov patterns only: state index per position

  std::size_t delay(DeviceId d) const { return delays.at(d.value); }

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

// One pattern per frequency, all sharing the same window width.
class PatternBank {
 public:
  PatternBank() = default;
  PatternBank(std::size_t window_width, std::vector<Pattern> patterns);

  std::size_t window_width() const noexcept { return window_; }
  std::size_t size() const noexcept { return patterns_.size(); }
  std::size_t device_count() const noexcept;
  const Pattern& at(FrequencyId f) const { return patterns_.at(f.value); }
  const std::vector<Pattern>& patterns() const noexcept { return patterns_; }

  friend bool operator==(const PatternBank&, const PatternBank&) = default;

 private:
  std::size_t window_ = 1;
  std::vector<Pattern> patterns_;
};

struct ScheduledDischarge {
  DeviceId device;
  Slot slot;

  friend bool operator==(const ScheduledDischarge&, const ScheduledDischarge&) = default;
};

struct ProtocolDecision {
  std::optional<FrequencyId> emit;               // nullopt = idle
  std::vector<DeviceId> immediate_discharges;    // charge-and-fire
  std::vector<ScheduledDischarge> scheduled;     // pattern protocols

  bool idle() const noexcept { return !emit.has_value(); }
};

// Emits the frequency of the lowest-indexed device spiking at t and fires it
// in the same slot. Other devices spiking at t stay unserved.
ProtocolDecision charge_and_fire_step(const RasterPlot& raster, Slot t);

// Number of spikes the pattern would cover if its frequency were emitted at
// t0. Offsets past the end of the raster cover nothing.
std::size_t match_score(const Pattern& pattern, const RasterPlot& raster, Slot t0);

struct PsdwOutcome {
  ProtocolDecision decision;
  std::vector<DeviceId> covered;     // spikes removed from the remaining raster
  std::vector<std::size_t> scores;   // per frequency; empty when idle
};

// One step of the predictive sliding detection window. Idle unless the
// remaining raster has a spike at t. Otherwise emits the best-matching
// frequency (lowest index on ties), schedules every device at t + delay and
// removes the covered spikes from `remaining`.
PsdwOutcome psdw_step(RasterPlot& remaining, Slot t, const PatternBank& bank);

struct ConnectionDistribution {
  std::vector<double> pre;       // incoming weight share per state
  std::vector<double> post;      // outgoing weight share per state
  std::vector<double> combined;  // (pre + post) / 2
};

// Throws std::domain_error for an all-zero matrix.
ConnectionDistribution connection_distribution(const TransitionMatrix& m);

struct LayerSequence {
  std::vector<std::size_t> order;  // permutation of state indices
  double chain_score = 0.0;        // product of transitions along the order

  friend bool operator==(const LayerSequence&, const LayerSequence&) = default;
};

// All n! orderings, by descending chain score, ties in lexicographic order.
std::vector<LayerSequence> rank_layer_sequences(const TransitionMatrix& m);

std::string format_sequence(const LayerSequence& s);

// Pattern k gives every device in the layer at position p of the k-th
// ranked sequence a delay of p.
PatternBank build_markov_bank(const std::vector<LayerSequence>& ranked, std::size_t n_freq,
                              const std::vector<Layer>& layer_map, std::size_t window_width);

// Independent uniform delays in [0, W-1].
PatternBank random_pattern_bank(std::size_t n_freq, std::size_t window_width,
                                std::size_t devices, std::uint64_t seed);

}  // namespace optonet
