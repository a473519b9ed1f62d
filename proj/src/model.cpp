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

#include "optonet/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace optonet {

namespace {

constexpr std::array<std::string_view, kLayerCount> kLayerNames = {"L2/3", "L4", "L5", "L6"};

}  // namespace

std::string_view layer_name(Layer l) noexcept { return kLayerNames[layer_index(l)]; }

std::optional<Layer> parse_layer(std::string_view name) noexcept {
  for (Layer l : kAllLayers) {
    if (layer_name(l) == name) return l;
  }
  if (name == "L23") return Layer::kL23;
  return std::nullopt;
}

RasterPlot::RasterPlot(std::size_t device_count, std::size_t slot_count, double slot_duration_ms)
    : devices_(device_count),
      slots_(slot_count),
      slot_ms_(slot_duration_ms),
      bits_(device_count * slot_count, 0) {
  if (!(slot_duration_ms > 0.0)) throw std::invalid_argument("slot duration must be positive");
}

std::size_t RasterPlot::slots_for(double duration_s, double slot_duration_ms) {
  if (!(slot_duration_ms > 0.0)) throw std::invalid_argument("slot duration must be positive");
  if (!(duration_s >= 0.0)) throw std::invalid_argument("duration must be non-negative");
  const double exact = duration_s * 1000.0 / slot_duration_ms;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) < 1e-9 * std::max(1.0, rounded)) {
    return static_cast<std::size_t>(rounded);
  }
  return static_cast<std::size_t>(std::ceil(exact));
}

bool RasterPlot::spike(DeviceId d, Slot t) const {
  if (d.value >= devices_) throw std::out_of_range("device index out of range");
  if (t >= slots_) return false;
  return bits_[d.value * slots_ + t] != 0;
}

void RasterPlot::set(DeviceId d, Slot t, bool value) {
  if (d.value >= devices_ || t >= slots_) throw std::out_of_range("raster index out of range");
  bits_[d.value * slots_ + t] = value ? 1 : 0;
}

bool RasterPlot::any_spike_at(Slot t) const {
  if (t >= slots_) return false;
  for (std::size_t d = 0; d < devices_; ++d) {
    if (bits_[d * slots_ + t]) return true;
  }
  return false;
}

std::vector<DeviceId> RasterPlot::spiking_at(Slot t) const {
  std::vector<DeviceId> out;
  if (t >= slots_) return out;
  for (std::size_t d = 0; d < devices_; ++d) {
    if (bits_[d * slots_ + t]) out.push_back(DeviceId{d});
  }
  return out;
}

std::size_t RasterPlot::total_spikes() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::size_t RasterPlot::spike_count(DeviceId d) const {
  if (d.value >= devices_) throw std::out_of_range("device index out of range");
  std::size_t n = 0;
  for (std::size_t t = 0; t < slots_; ++t) n += bits_[d.value * slots_ + t];
  return n;
}

std::string_view protocol_name(Protocol p) noexcept {
  switch (p) {
    case Protocol::kChargeAndFire: return "charge_and_fire";
    case Protocol::kPsdwRandom: return "psdw_random";
    case Protocol::kPsdwMarkov: return "psdw_markov";
  }
  return "unknown";
}

std::optional<Protocol> parse_protocol(std::string_view name) noexcept {
  for (Protocol p : {Protocol::kChargeAndFire, Protocol::kPsdwRandom, Protocol::kPsdwMarkov}) {
    if (protocol_name(p) == name) return p;
  }
  return std::nullopt;
}

std::string_view spike_source_name(SpikeSource s) noexcept {
  switch (s) {
    case SpikeSource::kPoisson: return "poisson";
    case SpikeSource::kDirectionSwitch: return "direction_switch";
    case SpikeSource::kFile: return "file";
  }
  return "unknown";
}

std::optional<SpikeSource> parse_spike_source(std::string_view name) noexcept {
  for (SpikeSource s : {SpikeSource::kPoisson, SpikeSource::kDirectionSwitch, SpikeSource::kFile}) {
    if (spike_source_name(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<Layer> round_robin_layers(std::size_t device_count) {
  std::vector<Layer> out(device_count);
  for (std::size_t i = 0; i < device_count; ++i) out[i] = kAllLayers[i % kLayerCount];
  return out;
}

SimConfig default_config() {
  SimConfig cfg;
  cfg.device_layers = round_robin_layers(cfg.device_count);
  cfg.energy.e_max_j = led_pulse_energy(cfg.optics, cfg.led);
  return cfg;
}

std::vector<Violation> validate_config(const SimConfig& cfg) {
  std::vector<Violation> out;
  auto config = [&out](std::string field, std::string message) {
    out.push_back({ViolationKind::kConfig, std::move(field), std::move(message)});
  };
  auto physics = [&out](std::string field, std::string message) {
    out.push_back({ViolationKind::kPhysics, std::move(field), std::move(message)});
  };

  if (cfg.device_count < 1) config("sim.device_count", "device_count >= 1 required");
  if (cfg.frequency_count < 1) config("sim.frequency_count", "frequency_count >= 1 required");
  if (cfg.window_width < 1) config("sim.window_width", "window_width >= 1 required");
  if (!(cfg.slot_duration_ms > 0.0)) config("sim.slot_duration_ms", "slot duration must be > 0");
  if (!(cfg.duration_s >= 0.0)) config("sim.duration_s", "duration must be >= 0");
  if (cfg.emission_slots < 1) config("sim.emission_slots", "emission_slots >= 1 required");
  if (cfg.device_layers.size() != cfg.device_count) {
    config("sim.device_layers", "need exactly one layer per device (" +
                                    std::to_string(cfg.device_count) + "), got " +
                                    std::to_string(cfg.device_layers.size()));
  }
  if (cfg.protocol == Protocol::kChargeAndFire && cfg.device_count > cfg.frequency_count) {
    config("sim.frequency_count",
           "charge_and_fire addresses one frequency per device: device_count must not exceed "
           "frequency_count");
  }
  if (cfg.protocol == Protocol::kPsdwMarkov) {
    if (cfg.transitions.size() != kLayerCount) {
      config("markov.matrix", "markov patterns need a 4x4 layer matrix");
    }
    if (cfg.window_width < kLayerCount) {
      config("sim.window_width", "markov patterns need window_width >= 4");
    }
    if (cfg.frequency_count > 24) {
      config("sim.frequency_count", "at most 4! = 24 markov patterns exist");
    }
  }

  const auto& s = cfg.spikes;
  if (!(s.rate_hz >= 0.0)) config("spikes.rate_hz", "rate must be >= 0");
  if (s.source == SpikeSource::kDirectionSwitch) {
    if (!(s.rate_after_hz >= 0.0)) config("spikes.rate_after_hz", "rate must be >= 0");
    if (!(s.switch_time_s >= 0.0 && s.switch_time_s <= cfg.duration_s)) {
      config("spikes.switch_time_s", "switch time must lie within [0, duration]");
    }
  }
  if (s.source == SpikeSource::kFile && s.raster_file.empty()) {
    config("spikes.raster_file", "file source needs a raster path");
  }

  const auto& o = cfg.optics;
  if (!(o.mu_a_per_mm > 0.0)) physics("optics.mu_a_per_mm", "absorption coefficient must be > 0");
  if (!(o.mu_s_prime_per_mm > 0.0)) {
    physics("optics.mu_s_prime_per_mm", "reduced scattering coefficient must be > 0");
  }
  if (!(o.target_mw_mm2 > 0.0)) physics("optics.target_mw_mm2", "target intensity must be > 0");
  const auto& led = cfg.led;
  if (!(led.area_mm2 > 0.0)) physics("led.area_mm2", "LED area must be > 0");
  if (!(led.pulse_ms > 0.0)) physics("led.pulse_ms", "pulse length must be > 0");
  if (!(led.efficiency > 0.0 && led.efficiency <= 1.0)) {
    physics("led.efficiency", "LED efficiency must lie in (0, 1]");
  }
  if (!(led.distance_mm >= 0.0)) physics("led.distance_mm", "distance must be >= 0");

  for (auto& msg : energy_violations(cfg.energy)) physics("energy", std::move(msg));
  return out;
}

}  // namespace optonet
