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

#include "optonet/config_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "optonet/error.hpp"

namespace optonet {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view text, std::string_view key) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

std::size_t parse_size(std::string_view text, std::string_view key) {
  return static_cast<std::size_t>(parse_u64(text, key));
}

bool parse_bool(std::string_view text, std::string_view key) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(text) + "'");
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

// Settings that can only be resolved once every entry has been applied.
struct Deferred {
  bool derive_e_max = true;
  std::optional<std::vector<Layer>> layers;  // nullopt = round robin
};

struct Field {
  std::string_view key;
  std::string_view description;
  std::function<void(SimConfig&, Deferred&, std::string_view)> set;
  std::function<std::string(const SimConfig&)> get;
};

#define OPTONET_DOUBLE_FIELD(KEY, DESC, MEMBER)                                           \
  Field {                                                                                 \
    KEY, DESC,                                                                            \
        [](SimConfig& c, Deferred&, std::string_view v) { c.MEMBER = parse_double(v, KEY); }, \
        [](const SimConfig& c) { return format_double(c.MEMBER); }                        \
  }

#define OPTONET_SIZE_FIELD(KEY, DESC, MEMBER)                                           \
  Field {                                                                               \
    KEY, DESC,                                                                          \
        [](SimConfig& c, Deferred&, std::string_view v) { c.MEMBER = parse_size(v, KEY); }, \
        [](const SimConfig& c) { return std::to_string(c.MEMBER); }                     \
  }

#define OPTONET_BOOL_FIELD(KEY, DESC, MEMBER)                                           \
  Field {                                                                               \
    KEY, DESC,                                                                          \
        [](SimConfig& c, Deferred&, std::string_view v) { c.MEMBER = parse_bool(v, KEY); }, \
        [](const SimConfig& c) { return format_bool(c.MEMBER); }                        \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      OPTONET_SIZE_FIELD("sim.device_count", "number of implanted devices", device_count),
      Field{"sim.device_layers", "round_robin or a comma list of L2/3, L4, L5, L6 per device",
            [](SimConfig&, Deferred& d, std::string_view v) {
              if (v == "round_robin") {
                d.layers.reset();
                return;
              }
              std::vector<Layer> layers;
              for (auto item : split(v, ',')) {
                auto l = parse_layer(item);
                if (!l) throw ConfigError("sim.device_layers: unknown layer '" + std::string(item) + "'");
                layers.push_back(*l);
              }
              d.layers = std::move(layers);
            },
            [](const SimConfig& c) {
              std::string out;
              for (std::size_t i = 0; i < c.device_layers.size(); ++i) {
                if (i > 0) out += ',';
                out += layer_name(c.device_layers[i]);
              }
              return out.empty() ? std::string("round_robin") : out;
            }},
      OPTONET_SIZE_FIELD("sim.frequency_count", "ultrasound frequencies (= patterns)", frequency_count),
      OPTONET_SIZE_FIELD("sim.window_width", "detection window width in slots", window_width),
      OPTONET_DOUBLE_FIELD("sim.slot_duration_ms", "time slot length in ms", slot_duration_ms),
      OPTONET_DOUBLE_FIELD("sim.duration_s", "simulated time in s", duration_s),
      Field{"sim.seed", "64-bit seed for every stochastic draw",
            [](SimConfig& c, Deferred&, std::string_view v) { c.seed = parse_u64(v, "sim.seed"); },
            [](const SimConfig& c) { return std::to_string(c.seed); }},
      Field{"sim.protocol", "charge_and_fire, psdw_random or psdw_markov",
            [](SimConfig& c, Deferred&, std::string_view v) {
              auto p = parse_protocol(v);
              if (!p) throw ConfigError("sim.protocol: unknown protocol '" + std::string(v) + "'");
              c.protocol = *p;
            },
            [](const SimConfig& c) { return std::string(protocol_name(c.protocol)); }},
      OPTONET_SIZE_FIELD("sim.emission_slots", "slots of charging per emission", emission_slots),
      OPTONET_SIZE_FIELD("sim.min_emission_gap", "idle slots forced after each emission", min_emission_gap),
      OPTONET_BOOL_FIELD("sim.start_charged", "devices start at e_max", start_charged),
      OPTONET_BOOL_FIELD("sim.cf_broadcast_charging",
                         "charge_and_fire emissions charge every device", cf_broadcast_charging),
      Field{"spikes.source", "poisson, direction_switch or file",
            [](SimConfig& c, Deferred&, std::string_view v) {
              auto s = parse_spike_source(v);
              if (!s) throw ConfigError("spikes.source: unknown source '" + std::string(v) + "'");
              c.spikes.source = *s;
            },
            [](const SimConfig& c) { return std::string(spike_source_name(c.spikes.source)); }},
      OPTONET_DOUBLE_FIELD("spikes.rate_hz", "mean firing rate (before the switch)", spikes.rate_hz),
      OPTONET_DOUBLE_FIELD("spikes.rate_after_hz", "firing rate after the switch", spikes.rate_after_hz),
      OPTONET_DOUBLE_FIELD("spikes.switch_time_s", "direction switch time in s", spikes.switch_time_s),
      Field{"spikes.raster_file", "raster CSV (device_id,slot_index) for the file source",
            [](SimConfig& c, Deferred&, std::string_view v) { c.spikes.raster_file = std::string(v); },
            [](const SimConfig& c) { return c.spikes.raster_file; }},
      OPTONET_DOUBLE_FIELD("optics.mu_a_per_mm", "absorption coefficient, 1/mm", optics.mu_a_per_mm),
      OPTONET_DOUBLE_FIELD("optics.mu_s_prime_per_mm", "reduced scattering coefficient, 1/mm",
                           optics.mu_s_prime_per_mm),
      OPTONET_DOUBLE_FIELD("optics.g_const", "medium/geometry constant", optics.g_const),
      OPTONET_DOUBLE_FIELD("optics.target_mw_mm2", "activation intensity at the neuron, mW/mm^2",
                           optics.target_mw_mm2),
      OPTONET_DOUBLE_FIELD("optics.wavelength_nm", "wavelength (informational)", optics.wavelength_nm),
      OPTONET_DOUBLE_FIELD("led.area_mm2", "LED emitting area, mm^2", led.area_mm2),
      OPTONET_DOUBLE_FIELD("led.pulse_ms", "LED pulse length, ms", led.pulse_ms),
      OPTONET_DOUBLE_FIELD("led.efficiency", "LED optical/electrical efficiency", led.efficiency),
      OPTONET_DOUBLE_FIELD("led.distance_mm", "LED to neuron distance, mm", led.distance_mm),
      OPTONET_DOUBLE_FIELD("energy.source_mw_cm2", "ultrasound source intensity, mW/cm^2",
                           energy.source_mw_cm2),
      OPTONET_DOUBLE_FIELD("energy.alpha_db_cm_mhz", "attenuation, dB/(cm MHz)", energy.alpha_db_cm_mhz),
      OPTONET_DOUBLE_FIELD("energy.frequency_hz", "ultrasound frequency, Hz", energy.frequency_hz),
      OPTONET_DOUBLE_FIELD("energy.depth_cm", "transceiver to device depth, cm", energy.depth_cm),
      OPTONET_DOUBLE_FIELD("energy.harvester_area_cm2", "nanowire harvester area, cm^2",
                           energy.harvester_area_cm2),
      OPTONET_DOUBLE_FIELD("energy.eta", "electromechanical conversion rate", energy.eta),
      OPTONET_DOUBLE_FIELD("energy.v_g", "generated voltage, V", energy.v_g),
      OPTONET_DOUBLE_FIELD("energy.c_cap_f", "storage capacitance, F", energy.c_cap_f),
      Field{"energy.e_max_j", "energy per LED pulse in J, or auto (from optics and LED)",
            [](SimConfig& c, Deferred& d, std::string_view v) {
              if (v == "auto") {
                d.derive_e_max = true;
                return;
              }
              d.derive_e_max = false;
              c.energy.e_max_j = parse_double(v, "energy.e_max_j");
            },
            [](const SimConfig& c) { return format_double(c.energy.e_max_j); }},
      Field{"markov.matrix", "row-major n x n connection weights (presynaptic rows)",
            [](SimConfig& c, Deferred&, std::string_view v) {
              std::vector<double> values;
              for (auto item : split(v, ',')) values.push_back(parse_double(item, "markov.matrix"));
              const auto n = static_cast<std::size_t>(std::llround(std::sqrt(values.size())));
              if (n * n != values.size()) throw ConfigError("markov.matrix: need n*n values");
              try {
                c.transitions = TransitionMatrix(n, std::move(values));
              } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("markov.matrix: ") + e.what());
              }
            },
            [](const SimConfig& c) {
              std::string out;
              for (std::size_t i = 0; i < c.transitions.values().size(); ++i) {
                if (i > 0) out += ',';
                out += format_double(c.transitions.values()[i]);
              }
              return out;
            }},
  };
  return table;
}

#undef OPTONET_DOUBLE_FIELD
#undef OPTONET_SIZE_FIELD
#undef OPTONET_BOOL_FIELD

const Field* find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text, std::string_view key) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": expected a plain number, got '" + std::string(text) +
                      "'");
  }
  return v;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  std::map<std::string, std::size_t, std::less<>> seen;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    KeyValue kv{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                line_no};
    if (kv.key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (auto it = seen.find(kv.key); it != seen.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + kv.key +
                        "' already set on line " + std::to_string(it->second));
    }
    seen.emplace(kv.key, line_no);
    out.push_back(std::move(kv));
  }
  return out;
}

KeyValue parse_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' must look like key=value");
  }
  return {std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))),
          0};
}

SimConfig build_config(std::span<const KeyValue> entries) {
  SimConfig cfg;
  Deferred deferred;
  for (const auto& kv : entries) {
    const Field* f = find_field(kv.key);
    if (f == nullptr) {
      const std::string where = kv.line > 0 ? "line " + std::to_string(kv.line) + ": " : "";
      throw ConfigError(where + "unknown key '" + kv.key + "'");
    }
    f->set(cfg, deferred, kv.value);
  }
  cfg.device_layers = deferred.layers ? *deferred.layers : round_robin_layers(cfg.device_count);
  if (deferred.derive_e_max) {
    try {
      cfg.energy.e_max_j = led_pulse_energy(cfg.optics, cfg.led);
    } catch (const std::domain_error& e) {
      throw PhysicsError(std::string("cannot derive energy.e_max_j: ") + e.what());
    }
  }
  return cfg;
}

SimConfig parse_config(std::string_view text, std::span<const KeyValue> overrides) {
  auto entries = parse_key_values(text);
  entries.insert(entries.end(), overrides.begin(), overrides.end());
  return build_config(entries);
}

SimConfig load_config(const std::filesystem::path& path, std::span<const KeyValue> overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (path.extension() == ".json") {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config sidecar '" + path.string() + "': " + e.what());
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw ConfigError("config sidecar '" + path.string() + "' lacks a \"config\" object");
    }
    std::vector<KeyValue> entries;
    for (auto& [key, value] : doc["config"].items()) {
      if (!value.is_string()) throw ConfigError("config sidecar: value of '" + key + "' must be a string");
      entries.push_back({key, value.get<std::string>(), 0});
    }
    entries.insert(entries.end(), overrides.begin(), overrides.end());
    return build_config(entries);
  }
  return parse_config(text, overrides);
}

std::vector<KeyValue> config_entries(const SimConfig& cfg) {
  std::vector<KeyValue> out;
  for (const auto& f : fields()) out.push_back({std::string(f.key), f.get(cfg), 0});
  return out;
}

std::string serialize_config(const SimConfig& cfg) {
  std::string out;
  for (const auto& kv : config_entries(cfg)) out += kv.key + " = " + kv.value + "\n";
  return out;
}

std::string config_sidecar_json(const SimConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& kv : config_entries(cfg)) doc["config"][kv.key] = kv.value;
  return doc.dump(2) + "\n";
}

std::span<const ConfigKeyInfo> config_schema() {
  static const std::vector<ConfigKeyInfo> schema = [] {
    std::vector<ConfigKeyInfo> s;
    for (const auto& f : fields()) s.push_back({f.key, f.description});
    return s;
  }();
  return schema;
}

}  // namespace optonet
