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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optonet/config_io.hpp"
#include "optonet/io.hpp"
#include "optonet/metrics.hpp"
#include "optonet/model.hpp"
#include "optonet/protocols.hpp"
#include "optonet/simengine.hpp"

namespace optonet {

// Raster for cfg.spikes drawn with `seed`. Relative raster files resolve
// against base_dir.
RasterPlot make_raster(const SimConfig& cfg, std::uint64_t seed,
                       const std::filesystem::path& base_dir = {});

// Pattern bank for the configured protocol; nullopt for charge_and_fire.
std::optional<PatternBank> make_bank(const SimConfig& cfg, std::uint64_t seed);

struct ReplicateResult {
  RasterPlot raster;
  std::optional<PatternBank> bank;
  SimTrace trace;
  MetricsReport metrics;
};

// Validates, then runs one simulation seeded by cfg.seed. Throws
// ConfigError / PhysicsError listing every violation.
ReplicateResult run_replicate(const SimConfig& cfg, const std::filesystem::path& base_dir = {});

// Throws the error class matching the most severe violation, if any.
void require_valid(const SimConfig& cfg);

enum class SweepAxis { kSpikeRate, kNPatterns, kDeviceCount, kUltrasoundFrequency, kHarvesterArea };

std::string_view axis_name(SweepAxis a) noexcept;
std::optional<SweepAxis> parse_axis(std::string_view name) noexcept;

struct SweepSpec {
  std::string name = "sweep";
  SweepAxis axis = SweepAxis::kSpikeRate;
  std::vector<double> values;
  std::size_t replicates = 10;
  std::vector<Protocol> protocols;
  std::vector<std::size_t> pattern_counts;  // empty = base frequency_count
  SimConfig base;
};

// Applies one axis value (device_count re-derives round-robin layers).
SimConfig apply_axis(SimConfig cfg, SweepAxis axis, double value);

// Replicate r of any run uses seed derive_seed(base.seed, r), so protocols
// and axis values at the same replicate see the same raster.
std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t replicate);

struct AggregateRow {
  std::string protocol;
  std::size_t n_patterns = 0;
  std::string axis;
  double axis_value = 0.0;
  AggregateStats stats;
};

struct SweepResult {
  std::vector<MetricsRow> rows;  // ordered by (protocol, patterns, value, replicate)
  std::vector<AggregateRow> aggregate;
};

// Output order is independent of `jobs`.
SweepResult run_sweep(const SweepSpec& spec, std::size_t jobs = 1);

// Sweep files use the config format plus sweep.* keys:
// sweep.axis, sweep.values (list or start:step:stop), sweep.replicates,
// sweep.protocols, sweep.n_patterns.
SweepSpec parse_sweep(std::string_view text, std::span<const KeyValue> overrides = {});

std::vector<double> parse_value_list(std::string_view text, std::string_view key);

std::string aggregate_csv(const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> aggregate_from_csv(std::string_view text);

// Names of the bundled figure presets.
std::span<const std::string_view> preset_names();
bool is_simulation_preset(std::string_view name);
std::vector<SweepSpec> preset_sweeps(std::string_view name, const SimConfig& base);

// gnuplot-friendly columns, one block per (protocol, n_patterns) series:
// x, mean and std of the metric chosen by kind (gamma_stim, eta_stim, gamma_mis).
std::string emit_plot_data(std::string_view aggregate_csv_text, std::string_view kind);

struct PlotSeries {
  std::string label;
  std::vector<std::array<double, 3>> points;
};
std::vector<PlotSeries> parse_plot_data(std::string_view text);

// Capacitor curves (charging clamps at e_max; discharging starts from the
// full-charge voltage), CSV columns t_ms,n_cycles,voltage_v,energy_j.
std::string curve_csv(const EnergyParams& p, CapacitorPhase phase, double duration_ms,
                      double step_ms);

// Photonics table over a distance grid: d_mm,dpf,transmittance,required_source_mw_mm2.
std::string photonics_csv(const OpticsParams& p, std::span<const double> distances_mm);

struct CurveFile {
  std::string filename;
  std::string contents;
};

// fig7 / fig8 presets: capacitor curves for intensity, area and frequency variants.
std::vector<CurveFile> energy_preset_files(std::string_view name, const SimConfig& base);

}  // namespace optonet
