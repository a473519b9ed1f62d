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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "optonet/energy.hpp"
#include "optonet/photonics.hpp"
#include "optonet/transition_matrix.hpp"

namespace optonet {

// Cortical layers in their canonical order; the underlying value is the index.
enum class Layer : std::uint8_t { kL23 = 0, kL4 = 1, kL5 = 2, kL6 = 3 };

inline constexpr std::size_t kLayerCount = 4;
inline constexpr std::array<Layer, kLayerCount> kAllLayers = {Layer::kL23, Layer::kL4, Layer::kL5,
                                                              Layer::kL6};

constexpr std::size_t layer_index(Layer l) noexcept { return static_cast<std::size_t>(l); }
std::string_view layer_name(Layer l) noexcept;
std::optional<Layer> parse_layer(std::string_view name) noexcept;

struct DeviceId {
  std::size_t value{};
  friend constexpr auto operator<=>(DeviceId, DeviceId) = default;
};

struct FrequencyId {
  std::size_t value{};
  friend constexpr auto operator<=>(FrequencyId, FrequencyId) = default;
};

using Slot = std::size_t;

// Binary spike matrix (devices x slots). Setting a spike twice is idempotent,
// so several spikes of one device inside one slot collapse to one.
class RasterPlot {
 public:
  RasterPlot() = default;
  RasterPlot(std::size_t device_count, std::size_t slot_count, double slot_duration_ms);

  // ceil(duration / slot), guarded against representation noise.
  static std::size_t slots_for(double duration_s, double slot_duration_ms);

  std::size_t device_count() const noexcept { return devices_; }
  std::size_t slot_count() const noexcept { return slots_; }
  double slot_duration_ms() const noexcept { return slot_ms_; }

  // Out-of-range slots read as "no spike"; out-of-range devices throw.
  bool spike(DeviceId d, Slot t) const;
  void set(DeviceId d, Slot t, bool value = true);

  bool any_spike_at(Slot t) const;
  std::vector<DeviceId> spiking_at(Slot t) const;
  std::size_t total_spikes() const noexcept;
  std::size_t spike_count(DeviceId d) const;

  friend bool operator==(const RasterPlot&, const RasterPlot&) = default;

 private:
  std::size_t devices_ = 0;
  std::size_t slots_ = 0;
  double slot_ms_ = 1.0;
  std::vector<std::uint8_t> bits_;  // row-major by device
};

enum class Protocol { kChargeAndFire, kPsdwRandom, kPsdwMarkov };

std::string_view protocol_name(Protocol p) noexcept;
std::optional<Protocol> parse_protocol(std::string_view name) noexcept;

enum class SpikeSource { kPoisson, kDirectionSwitch, kFile };

std::string_view spike_source_name(SpikeSource s) noexcept;
std::optional<SpikeSource> parse_spike_source(std::string_view name) noexcept;

struct SpikeSettings {
  SpikeSource source = SpikeSource::kPoisson;
  double rate_hz = 100.0;
  double rate_after_hz = 130.0;  // direction-switch only
  double switch_time_s = 5.0;    // direction-switch only
  std::string raster_file;       // file only

  friend bool operator==(const SpikeSettings&, const SpikeSettings&) = default;
};

struct SimConfig {
  std::size_t device_count = 32;
  std::vector<Layer> device_layers;  // one entry per device
  std::size_t frequency_count = 10;
  std::size_t window_width = 4;
  double slot_duration_ms = 1.0;
  double duration_s = 10.0;
  std::uint64_t seed = 1;
  Protocol protocol = Protocol::kPsdwMarkov;

  std::size_t emission_slots = 1;    // slots of charging per emission
  std::size_t min_emission_gap = 0;  // idle slots forced after an emission
  bool start_charged = true;
  bool cf_broadcast_charging = true;

  SpikeSettings spikes;
  OpticsParams optics;
  LedParams led;
  EnergyParams energy;
  TransitionMatrix transitions = TransitionMatrix::cortical_column();

  std::size_t slot_count() const { return RasterPlot::slots_for(duration_s, slot_duration_ms); }

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

std::vector<Layer> round_robin_layers(std::size_t device_count);

// Defaults with round-robin layers and e_max derived from the optics/LED chain.
SimConfig default_config();

enum class ViolationKind { kConfig, kPhysics };

struct Violation {
  ViolationKind kind;
  std::string field;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate_config(const SimConfig& cfg);

}  // namespace optonet
