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

#include "optonet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "optonet/error.hpp"
#include "optonet/photonics.hpp"
#include "optonet/rng.hpp"
#include "optonet/spikegen.hpp"

namespace optonet {

namespace {

constexpr std::array<std::string_view, 5> kPresets = {"fig7", "fig8", "fig14", "fig15", "fig18"};

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

std::string x_column(std::string_view axis) {
  if (axis == "spike_rate") return "rate_hz";
  if (axis == "ultrasound_frequency") return "frequency_hz";
  if (axis == "harvester_area") return "area_cm2";
  return std::string(axis);
}

}  // namespace

RasterPlot make_raster(const SimConfig& cfg, std::uint64_t seed,
                       const std::filesystem::path& base_dir) {
  const auto& s = cfg.spikes;
  switch (s.source) {
    case SpikeSource::kPoisson:
      return generate_poisson_raster(SpikeRateProfile::uniform(cfg.device_count, s.rate_hz),
                                     cfg.duration_s, cfg.slot_duration_ms, seed);
    case SpikeSource::kDirectionSwitch:
      return direction_switch_scenario(s.rate_hz, s.rate_after_hz, s.switch_time_s, cfg.duration_s,
                                       cfg.device_count, cfg.slot_duration_ms, seed);
    case SpikeSource::kFile: {
      std::filesystem::path path(s.raster_file);
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      return raster_from_csv(read_file(path), cfg.device_count, cfg.slot_count(),
                             cfg.slot_duration_ms);
    }
  }
  throw ConfigError("unknown spike source");
}

std::optional<PatternBank> make_bank(const SimConfig& cfg, std::uint64_t seed) {
  switch (cfg.protocol) {
    case Protocol::kChargeAndFire: return std::nullopt;
    case Protocol::kPsdwRandom:
      return random_pattern_bank(cfg.frequency_count, cfg.window_width, cfg.device_count, seed);
    case Protocol::kPsdwMarkov:
      return build_markov_bank(rank_layer_sequences(cfg.transitions), cfg.frequency_count,
                               cfg.device_layers, cfg.window_width);
  }
  throw ConfigError("unknown protocol");
}

void require_valid(const SimConfig& cfg) {
  const auto violations = validate_config(cfg);
  if (violations.empty()) return;
  std::string msg;
  bool physics = false;
  for (const auto& v : violations) {
    if (!msg.empty()) msg += "; ";
    msg += v.field + ": " + v.message;
    physics = physics || v.kind == ViolationKind::kPhysics;
  }
  if (physics) throw PhysicsError(msg);
  throw ConfigError(msg);
}

ReplicateResult run_replicate(const SimConfig& cfg, const std::filesystem::path& base_dir) {
  require_valid(cfg);
  ReplicateResult out;
  out.raster = make_raster(cfg, cfg.seed, base_dir);
  out.bank = make_bank(cfg, cfg.seed);
  out.trace = run(cfg, out.raster, out.bank ? &*out.bank : nullptr);
  out.metrics = compute_metrics(out.trace);
  return out;
}

std::string_view axis_name(SweepAxis a) noexcept {
  switch (a) {
    case SweepAxis::kSpikeRate: return "spike_rate";
    case SweepAxis::kNPatterns: return "n_patterns";
    case SweepAxis::kDeviceCount: return "device_count";
    case SweepAxis::kUltrasoundFrequency: return "ultrasound_frequency";
    case SweepAxis::kHarvesterArea: return "harvester_area";
  }
  return "unknown";
}

std::optional<SweepAxis> parse_axis(std::string_view name) noexcept {
  for (auto a : {SweepAxis::kSpikeRate, SweepAxis::kNPatterns, SweepAxis::kDeviceCount,
                 SweepAxis::kUltrasoundFrequency, SweepAxis::kHarvesterArea}) {
    if (axis_name(a) == name) return a;
  }
  return std::nullopt;
}

SimConfig apply_axis(SimConfig cfg, SweepAxis axis, double value) {
  auto as_count = [&](std::string_view what) {
    if (!(value >= 0.0) || value != std::floor(value)) {
      throw ConfigError(std::string(what) + " values must be whole numbers");
    }
    return static_cast<std::size_t>(value);
  };
  switch (axis) {
    case SweepAxis::kSpikeRate:
      cfg.spikes.rate_hz = value;
      break;
    case SweepAxis::kNPatterns:
      cfg.frequency_count = as_count("n_patterns");
      break;
    case SweepAxis::kDeviceCount:
      cfg.device_count = as_count("device_count");
      cfg.device_layers = round_robin_layers(cfg.device_count);
      break;
    case SweepAxis::kUltrasoundFrequency:
      cfg.energy.frequency_hz = value;
      break;
    case SweepAxis::kHarvesterArea:
      cfg.energy.harvester_area_cm2 = value;
      break;
  }
  return cfg;
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t replicate) {
  return derive_seed(base_seed, replicate);
}

SweepResult run_sweep(const SweepSpec& spec, std::size_t jobs) {
  if (spec.values.empty()) throw ConfigError("sweep.values must not be empty");
  if (spec.replicates < 1) throw ConfigError("sweep.replicates must be >= 1");
  if (spec.protocols.empty()) throw ConfigError("sweep.protocols must not be empty");

  struct Task {
    SimConfig cfg;
    std::size_t group;
  };
  std::vector<Task> tasks;
  std::vector<AggregateRow> groups;
  for (Protocol protocol : spec.protocols) {
    const bool patterned = protocol != Protocol::kChargeAndFire;
    std::vector<std::size_t> counts = {spec.base.frequency_count};
    if (patterned && !spec.pattern_counts.empty() && spec.axis != SweepAxis::kNPatterns) {
      counts = spec.pattern_counts;
    }
    for (std::size_t count : counts) {
      for (double value : spec.values) {
        SimConfig cfg = spec.base;
        cfg.protocol = protocol;
        cfg.frequency_count = count;
        cfg = apply_axis(std::move(cfg), spec.axis, value);
        // One frequency per device is the defining trait of charge-and-fire.
        if (!patterned) cfg.frequency_count = cfg.device_count;
        require_valid(cfg);
        groups.push_back({std::string(protocol_name(protocol)), cfg.frequency_count,
                          std::string(axis_name(spec.axis)), value, {}});
        for (std::size_t r = 0; r < spec.replicates; ++r) {
          SimConfig rep = cfg;
          rep.seed = replicate_seed(spec.base.seed, r);
          tasks.push_back({std::move(rep), groups.size() - 1});
        }
      }
    }
  }

  std::vector<MetricsRow> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const auto& cfg = tasks[i].cfg;
        auto result = run_replicate(cfg);
        rows[i] = {std::string(protocol_name(cfg.protocol)), cfg.spikes.rate_hz,
                   cfg.frequency_count, cfg.device_count, cfg.seed, result.metrics};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::vector<MetricsReport>> per_group(groups.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) per_group[tasks[i].group].push_back(rows[i].report);
  for (std::size_t g = 0; g < groups.size(); ++g) groups[g].stats = aggregate(per_group[g]);
  return {std::move(rows), std::move(groups)};
}

std::vector<double> parse_value_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  const auto range = split(text, ':');
  if (range.size() == 3) {
    const double start = parse_double(range[0], key);
    const double step = parse_double(range[1], key);
    const double stop = parse_double(range[2], key);
    if (!(step > 0.0) || stop < start) {
      throw ConfigError(std::string(key) + ": range needs start <= stop and step > 0");
    }
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  if (range.size() != 1) throw ConfigError(std::string(key) + ": use a list or start:step:stop");
  for (auto item : split(text, ',')) out.push_back(parse_double(item, key));
  return out;
}

SweepSpec parse_sweep(std::string_view text, std::span<const KeyValue> overrides) {
  auto entries = parse_key_values(text);
  entries.insert(entries.end(), overrides.begin(), overrides.end());
  std::vector<KeyValue> base_entries;
  std::map<std::string, std::string> sweep;
  for (auto& kv : entries) {
    if (kv.key.rfind("sweep.", 0) == 0) {
      sweep[kv.key] = kv.value;
    } else {
      base_entries.push_back(kv);
    }
  }
  SweepSpec spec;
  spec.base = build_config(base_entries);
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = sweep.find(key);
    if (it == sweep.end()) return std::nullopt;
    std::string v = it->second;
    sweep.erase(it);
    return v;
  };
  if (auto v = take("sweep.name")) spec.name = *v;
  const auto axis = take("sweep.axis");
  if (!axis) throw ConfigError("sweep.axis is required");
  const auto parsed_axis = parse_axis(*axis);
  if (!parsed_axis) throw ConfigError("sweep.axis: unknown axis '" + *axis + "'");
  spec.axis = *parsed_axis;
  const auto values = take("sweep.values");
  if (!values) throw ConfigError("sweep.values is required");
  spec.values = parse_value_list(*values, "sweep.values");
  if (auto v = take("sweep.replicates")) {
    const double r = parse_double(*v, "sweep.replicates");
    if (!(r >= 1.0) || r != std::floor(r)) throw ConfigError("sweep.replicates must be >= 1");
    spec.replicates = static_cast<std::size_t>(r);
  }
  if (auto v = take("sweep.protocols")) {
    for (auto item : split(*v, ',')) {
      auto p = parse_protocol(item);
      if (!p) throw ConfigError("sweep.protocols: unknown protocol '" + std::string(item) + "'");
      spec.protocols.push_back(*p);
    }
  } else {
    spec.protocols = {spec.base.protocol};
  }
  if (auto v = take("sweep.n_patterns")) {
    for (double x : parse_value_list(*v, "sweep.n_patterns")) {
      spec.pattern_counts.push_back(static_cast<std::size_t>(x));
    }
  }
  if (!sweep.empty()) throw ConfigError("unknown key '" + sweep.begin()->first + "'");
  return spec;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::string out =
      "protocol,n_patterns,axis,axis_value,n_runs,mean_gamma_stim,std_gamma_stim,"
      "mean_eta_stim_pct,std_eta_stim_pct,mean_gamma_mis,std_gamma_mis,std_defined\n";
  for (const auto& r : rows) {
    const auto& s = r.stats;
    out += r.protocol + ',' + std::to_string(r.n_patterns) + ',' + r.axis + ',' +
           format_double(r.axis_value) + ',' + std::to_string(s.n) + ',' +
           format_double(s.gamma_stim.mean) + ',' + format_double(s.gamma_stim.std) + ',' +
           format_double(s.eta_stim.mean) + ',' + format_double(s.eta_stim.std) + ',' +
           format_double(s.gamma_mis.mean) + ',' + format_double(s.gamma_mis.std) + ',' +
           (s.std_defined ? "true" : "false") + '\n';
  }
  return out;
}

std::vector<AggregateRow> aggregate_from_csv(std::string_view text) {
  std::vector<AggregateRow> out;
  bool header = true;
  for (auto line : split(text, '\n')) {
    if (line.empty()) continue;
    if (header) {
      if (line.rfind("protocol,n_patterns,axis,axis_value", 0) != 0) {
        throw IoError("aggregate CSV has an unexpected header");
      }
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 12) throw IoError("aggregate CSV rows need 12 fields");
    AggregateRow r;
    try {
      r.protocol = std::string(f[0]);
      r.n_patterns = static_cast<std::size_t>(parse_double(f[1], "n_patterns"));
      r.axis = std::string(f[2]);
      r.axis_value = parse_double(f[3], "axis_value");
      r.stats.n = static_cast<std::size_t>(parse_double(f[4], "n_runs"));
      r.stats.gamma_stim = {parse_double(f[5], "mean_gamma_stim"), parse_double(f[6], "std_gamma_stim")};
      r.stats.eta_stim = {parse_double(f[7], "mean_eta_stim_pct"), parse_double(f[8], "std_eta_stim_pct")};
      r.stats.gamma_mis = {parse_double(f[9], "mean_gamma_mis"), parse_double(f[10], "std_gamma_mis")};
    } catch (const ConfigError& e) {
      throw IoError(std::string("aggregate CSV: ") + e.what());
    }
    r.stats.std_defined = f[11] == "true";
    out.push_back(std::move(r));
  }
  if (header) throw IoError("aggregate CSV is empty");
  return out;
}

std::span<const std::string_view> preset_names() { return kPresets; }

bool is_simulation_preset(std::string_view name) {
  return name == "fig14" || name == "fig15" || name == "fig18";
}

std::vector<SweepSpec> preset_sweeps(std::string_view name, const SimConfig& base) {
  const auto rates = parse_value_list("100:5:130", "rates");
  std::vector<SweepSpec> out;
  if (name == "fig14") {
    SweepSpec s;
    s.name = "fig14";
    s.axis = SweepAxis::kSpikeRate;
    s.values = rates;
    s.replicates = 10;
    s.protocols = {Protocol::kChargeAndFire, Protocol::kPsdwRandom};
    s.base = base;
    out.push_back(std::move(s));
  } else if (name == "fig15") {
    SweepSpec patterns;
    patterns.name = "fig15_patterns";
    patterns.axis = SweepAxis::kNPatterns;
    patterns.values = {5, 10, 20};
    patterns.replicates = 10;
    patterns.protocols = {Protocol::kPsdwRandom};
    patterns.base = base;
    out.push_back(patterns);
    SweepSpec devices = patterns;
    devices.name = "fig15_devices";
    devices.axis = SweepAxis::kDeviceCount;
    devices.values = {4, 8, 16, 32};
    out.push_back(std::move(devices));
  } else if (name == "fig18") {
    SweepSpec s;
    s.name = "fig18";
    s.axis = SweepAxis::kSpikeRate;
    s.values = rates;
    s.replicates = 10;
    s.protocols = {Protocol::kChargeAndFire, Protocol::kPsdwMarkov};
    s.pattern_counts = {5, 10, 20};
    s.base = base;
    out.push_back(std::move(s));
  } else {
    throw ConfigError("unknown simulation preset '" + std::string(name) + "'");
  }
  return out;
}

std::string emit_plot_data(std::string_view aggregate_csv_text, std::string_view kind) {
  if (kind != "gamma_stim" && kind != "eta_stim" && kind != "gamma_mis") {
    throw ConfigError("unknown plot kind '" + std::string(kind) +
                      "' (expected gamma_stim, eta_stim or gamma_mis)");
  }
  const auto rows = aggregate_from_csv(aggregate_csv_text);
  const std::string x = rows.empty() ? "x" : x_column(rows.front().axis);
  std::string out = "# kind: " + std::string(kind) + "\n# columns: " + x + " mean_" +
                    std::string(kind) + " std_" + std::string(kind) + "\n";

  std::vector<std::string> order;
  std::map<std::string, std::vector<const AggregateRow*>> series;
  for (const auto& r : rows) {
    const std::string label = "protocol=" + r.protocol + " n_patterns=" + std::to_string(r.n_patterns);
    if (!series.count(label)) order.push_back(label);
    series[label].push_back(&r);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += "# series: " + order[i] + "\n";
    for (const AggregateRow* r : series[order[i]]) {
      const MetricStats& m = kind == "gamma_stim" ? r->stats.gamma_stim
                             : kind == "eta_stim" ? r->stats.eta_stim
                                                  : r->stats.gamma_mis;
      out += format_double(r->axis_value) + ' ' + format_double(m.mean) + ' ' +
             format_double(m.std) + '\n';
    }
  }
  return out;
}

std::vector<PlotSeries> parse_plot_data(std::string_view text) {
  std::vector<PlotSeries> out;
  for (auto line : split(text, '\n')) {
    if (line.empty()) continue;
    if (line.rfind("# series: ", 0) == 0) {
      out.push_back({std::string(line.substr(10)), {}});
      continue;
    }
    if (line.front() == '#') continue;
    if (out.empty()) throw IoError("plot data point outside a series");
    const auto cols = split(line, ' ');
    if (cols.size() != 3) throw IoError("plot data rows need 3 columns");
    out.back().points.push_back({parse_double(cols[0], "x"), parse_double(cols[1], "mean"),
                                 parse_double(cols[2], "std")});
  }
  return out;
}

std::string curve_csv(const EnergyParams& p, CapacitorPhase phase, double duration_ms,
                      double step_ms) {
  std::string out = "t_ms,n_cycles,voltage_v,energy_j\n";
  for (const auto& pt : capacitor_curve(p, phase, duration_ms, step_ms)) {
    out += format_double(pt.t_ms) + ',' + std::to_string(pt.n_cycles) + ',' +
           format_double(pt.voltage_v) + ',' + format_double(pt.energy_j) + '\n';
  }
  return out;
}

std::string photonics_csv(const OpticsParams& p, std::span<const double> distances_mm) {
  std::string out = "d_mm,dpf,transmittance,required_source_mw_mm2\n";
  for (double d : distances_mm) {
    out += format_double(d) + ',' + format_double(dpf(p, d)) + ',' +
           format_double(transmittance(p, d)) + ',' +
           format_double(required_source_intensity(p, d)) + '\n';
  }
  return out;
}

std::vector<CurveFile> energy_preset_files(std::string_view name, const SimConfig& base) {
  constexpr double kDurationMs = 20.0;
  constexpr double kStepMs = 0.1;
  std::vector<CurveFile> out;
  auto with_target = [&](double target, double area_cm2, double frequency_hz) {
    SimConfig cfg = base;
    cfg.optics.target_mw_mm2 = target;
    cfg.energy.harvester_area_cm2 = area_cm2;
    cfg.energy.frequency_hz = frequency_hz;
    cfg.energy.e_max_j = led_pulse_energy(cfg.optics, cfg.led);
    for (const auto& msg : energy_violations(cfg.energy)) throw PhysicsError(msg);
    return cfg.energy;
  };
  const double area = base.energy.harvester_area_cm2;
  if (name == "fig7") {
    for (double target : {8.0, 10.0, 12.0}) {
      const auto p = with_target(target, area, 500.0);
      const std::string tag = format_double(target);
      out.push_back({"fig7b_charge_target" + tag + ".csv",
                     curve_csv(p, CapacitorPhase::kCharging, kDurationMs, kStepMs)});
      out.push_back({"fig7c_discharge_target" + tag + ".csv",
                     curve_csv(p, CapacitorPhase::kDischarging, kDurationMs, kStepMs)});
    }
    for (double scale : {1.0, 2.0}) {
      const auto p = with_target(10.0, area * scale, 500.0);
      const std::string tag = "x" + format_double(scale);
      out.push_back({"fig7d_charge_area" + tag + ".csv",
                     curve_csv(p, CapacitorPhase::kCharging, kDurationMs, kStepMs)});
      out.push_back({"fig7e_discharge_area" + tag + ".csv",
                     curve_csv(p, CapacitorPhase::kDischarging, kDurationMs, kStepMs)});
    }
    for (double f : {500.0, 1e3, 1e6, 3e6}) {
      const auto p = with_target(10.0, area, f);
      out.push_back({"fig7f_charge_f" + format_double(f) + ".csv",
                     curve_csv(p, CapacitorPhase::kCharging, kDurationMs, kStepMs)});
    }
  } else if (name == "fig8") {
    std::string summary = "area_um2,frequency_hz,cycles_to_charge,time_to_full_ms\n";
    for (double area_um2 : {1e4, 2e4}) {
      for (double f : {500.0, 1e6, 3e6}) {
        const auto p = with_target(10.0, area_um2 * 1e-8, f);
        const auto cycles = cycles_to_charge(p);
        summary += format_double(area_um2) + ',' + format_double(f) + ',' +
                   std::to_string(cycles) + ',' +
                   format_double(static_cast<double>(cycles) / f * 1e3) + '\n';
        out.push_back({"fig8_charge_area" + format_double(area_um2) + "_f" + format_double(f) + ".csv",
                       curve_csv(p, CapacitorPhase::kCharging, kDurationMs, kStepMs)});
      }
    }
    out.push_back({"fig8_time_to_full.csv", std::move(summary)});
  } else {
    throw ConfigError("unknown energy preset '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace optonet
