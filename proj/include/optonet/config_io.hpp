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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optonet/model.hpp"

namespace optonet {

struct KeyValue {
  std::string key;
  std::string value;
  std::size_t line = 0;  // 0 for overrides
};

// Parses `key = value` lines; '#' starts a comment. Throws ConfigError on
// malformed lines or repeated keys.
std::vector<KeyValue> parse_key_values(std::string_view text);

// Splits "key=value" as given to --set.
KeyValue parse_override(std::string_view assignment);

// Builds a config from defaults plus the given entries, applied in order so
// later entries win. Unknown keys and unparsable values throw ConfigError.
// `energy.e_max_j = auto` (the default) derives e_max from optics and LED.
SimConfig build_config(std::span<const KeyValue> entries);

SimConfig parse_config(std::string_view text, std::span<const KeyValue> overrides = {});

// Reads either the text format or a JSON sidecar written by config_sidecar_json.
SimConfig load_config(const std::filesystem::path& path, std::span<const KeyValue> overrides = {});

// Every key, fully resolved, in schema order. parse_config(serialize_config(c)) == c.
std::string serialize_config(const SimConfig& cfg);
std::vector<KeyValue> config_entries(const SimConfig& cfg);

// {"config": {key: value, ...}} with every resolved key as a string.
std::string config_sidecar_json(const SimConfig& cfg);

struct ConfigKeyInfo {
  std::string_view key;
  std::string_view description;
};
std::span<const ConfigKeyInfo> config_schema();

std::string format_double(double v);
double parse_double(std::string_view text, std::string_view key);

}  // namespace optonet
