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

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "optonet/config_io.hpp"
#include "optonet/energy.hpp"
#include "optonet/error.hpp"
#include "optonet/experiment.hpp"
#include "optonet/io.hpp"
#include "optonet/photonics.hpp"
#include "optonet/protocols.hpp"

namespace fs = std::filesystem;
using namespace optonet;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;
constexpr int kExitIo = 4;
constexpr int kExitTrace = 5;

struct CommonOptions {
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_out) {
  cmd->add_option("--config", o.config, "Config file (key = value text, or a JSON sidecar)");
  cmd->add_option("--set", o.sets, "Override key=value (repeatable)");
  cmd->add_option("--seed", o.seed, "Base seed (overrides sim.seed)");
  if (with_out) cmd->add_option("--out", o.out, "Output directory");
}

std::vector<KeyValue> overrides(const CommonOptions& o) {
  std::vector<KeyValue> out;
  for (const auto& s : o.sets) out.push_back(parse_override(s));
  if (o.seed) out.push_back({"sim.seed", std::to_string(*o.seed), 0});
  return out;
}

SimConfig resolve_config(const CommonOptions& o) {
  const auto ov = overrides(o);
  if (o.config.empty()) return build_config(ov);
  return load_config(o.config, ov);
}

fs::path base_dir(const CommonOptions& o) {
  return o.config.empty() ? fs::path{} : fs::path(o.config).parent_path();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

void write_artifact(const fs::path& path, std::string_view contents) {
  write_file(path, contents);
  spdlog::info("wrote {}", path.string());
}

void cmd_run(const CommonOptions& o, const std::string& format) {
  const SimConfig cfg = resolve_config(o);
  const fs::path out(o.out);
  const auto result = run_replicate(cfg, base_dir(o));
  ensure_dir(out);
  write_artifact(out / "config.json", config_sidecar_json(cfg));
  write_artifact(out / "raster.csv", raster_to_csv(result.raster));
  write_artifact(out / "trace.jsonl", trace_to_jsonl(result.trace));
  write_artifact(out / "trace_summary.json", trace_summary_json(result.trace));
  const MetricsRow row{std::string(protocol_name(cfg.protocol)), cfg.spikes.rate_hz,
                       cfg.frequency_count, cfg.device_count, cfg.seed, result.metrics};
  write_artifact(out / "metrics.csv", std::string(metrics_csv_header()) + "\n" + metrics_csv_row(row));
  if (result.bank) write_artifact(out / "bank.json", bank_to_json(*result.bank));
  if (format == "json") write_artifact(out / "raster.json", raster_to_json(result.raster));
  const auto& m = result.metrics;
  std::cout << "spikes " << m.total_spikes << ", covered " << m.n_covered << ", missed " << m.n_mis
            << ", spurious " << m.n_spurious << ", emissions " << m.n_emissions
            << ", gamma_stim " << format_double(m.gamma_stim) << ", eta_stim "
            << format_double(m.eta_stim) << "%\n";
}

void write_sweep(const SweepSpec& spec, std::size_t jobs, const fs::path& out) {
  spdlog::info("sweep {}: {} values x {} protocols x {} replicates", spec.name, spec.values.size(),
               spec.protocols.size(), spec.replicates);
  const auto result = run_sweep(spec, jobs);
  std::string runs(metrics_csv_header());
  runs += '\n';
  for (const auto& row : result.rows) runs += metrics_csv_row(row);
  ensure_dir(out);
  write_artifact(out / (spec.name + "_config.json"), config_sidecar_json(spec.base));
  write_artifact(out / (spec.name + "_runs.csv"), runs);
  write_artifact(out / (spec.name + "_aggregate.csv"), aggregate_csv(result.aggregate));
}

void cmd_sweep(const CommonOptions& o, const std::string& preset, std::optional<std::size_t> replicates,
               std::size_t jobs) {
  const fs::path out(o.out);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  if (preset.empty()) {
    if (o.config.empty()) throw ConfigError("sweep needs --preset or --config");
    auto spec = parse_sweep(read_file(o.config), overrides(o));
    if (replicates) spec.replicates = *replicates;
    write_sweep(spec, jobs, out);
    return;
  }
  const SimConfig base = resolve_config(o);
  if (is_simulation_preset(preset)) {
    for (auto spec : preset_sweeps(preset, base)) {
      if (replicates) spec.replicates = *replicates;
      write_sweep(spec, jobs, out);
    }
    return;
  }
  const auto files = energy_preset_files(preset, base);
  ensure_dir(out);
  write_artifact(out / (preset + "_config.json"), config_sidecar_json(base));
  for (const auto& f : files) write_artifact(out / f.filename, f.contents);
}

void emit(const std::string& out_file, std::string_view text) {
  if (out_file.empty() || out_file == "-") {
    std::cout << text;
  } else {
    write_artifact(out_file, text);
  }
}

int exit_with(int code, std::string_view kind, const std::exception& e) {
  std::cerr << "optonet: " << kind << ": " << e.what() << '\n';
  return code;
}

void init_logging() {
  auto logger = spdlog::stderr_color_mt("optonet");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("WIOPTND_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only honor it when asked for.
    if (level != spdlog::level::off || std::string_view(env) == "off") spdlog::set_level(level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Slot-based simulator for wireless optogenetic nanonetworks"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  std::string format = "csv";
  auto* run = app.add_subcommand("run", "Run one simulation and write its artifacts");
  add_common(run, run_opts, true);
  run->add_option("--format", format, "Extra raster format")->check(CLI::IsMember({"csv", "json"}));

  CommonOptions sweep_opts;
  std::string preset;
  std::optional<std::size_t> replicates;
  std::size_t jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep file or a figure preset");
  add_common(sweep, sweep_opts, true);
  sweep->add_option("--preset", preset, "fig7, fig8, fig14, fig15 or fig18");
  sweep->add_option("--replicates", replicates, "Replicates per point")->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  std::string plot_input, plot_kind = "gamma_stim", plot_out;
  auto* plot = app.add_subcommand("plot", "Project an aggregate CSV into gnuplot columns");
  plot->add_option("aggregate", plot_input, "Aggregate CSV")->required();
  plot->add_option("--kind", plot_kind, "gamma_stim, eta_stim or gamma_mis");
  plot->add_option("--out", plot_out, "Output file (default stdout)");

  CommonOptions phot_opts;
  std::string distances = "0:0.1:3", phot_out;
  auto* phot = app.add_subcommand("photonics", "DPF / transmittance / source intensity table");
  add_common(phot, phot_opts, false);
  phot->add_option("--distances", distances, "Distances in mm, list or start:step:stop");
  phot->add_option("--out", phot_out, "Output file (default stdout)");

  CommonOptions energy_opts;
  std::string phase = "charge", energy_out;
  double duration_ms = 20.0, step_ms = 0.1;
  auto* energy = app.add_subcommand("energy", "Capacitor charging or discharging curve");
  add_common(energy, energy_opts, false);
  energy->add_option("--phase", phase)->check(CLI::IsMember({"charge", "discharge"}));
  energy->add_option("--duration-ms", duration_ms)->check(CLI::PositiveNumber);
  energy->add_option("--step-ms", step_ms)->check(CLI::PositiveNumber);
  energy->add_option("--out", energy_out, "Output file (default stdout)");

  CommonOptions rank_opts;
  std::string rank_out;
  auto* rank = app.add_subcommand("rank", "Rank layer sequences of markov.matrix");
  add_common(rank, rank_opts, false);
  rank->add_option("--out", rank_out, "Output file (default stdout)");

  CommonOptions bank_opts;
  std::string bank_out;
  auto* bank = app.add_subcommand("bank", "Write the pattern bank of the configured protocol");
  add_common(bank, bank_opts, false);
  bank->add_option("--out", bank_out, "Output file (default stdout)");

  std::string replay_dir = ".";
  auto* replay_cmd = app.add_subcommand("replay", "Audit trace.jsonl against trace_summary.json");
  replay_cmd->add_option("dir", replay_dir, "Directory holding the trace files");

  auto* schema = app.add_subcommand("schema", "List config keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      cmd_run(run_opts, format);
    } else if (*sweep) {
      cmd_sweep(sweep_opts, preset, replicates, jobs);
    } else if (*plot) {
      emit(plot_out, emit_plot_data(read_file(plot_input), plot_kind));
    } else if (*phot) {
      const SimConfig cfg = resolve_config(phot_opts);
      const auto grid = parse_value_list(distances, "--distances");
      emit(phot_out, photonics_csv(cfg.optics, grid));
    } else if (*energy) {
      const SimConfig cfg = resolve_config(energy_opts);
      require_valid(cfg);
      const auto ph = phase == "charge" ? CapacitorPhase::kCharging : CapacitorPhase::kDischarging;
      emit(energy_out, curve_csv(cfg.energy, ph, duration_ms, step_ms));
    } else if (*rank) {
      const SimConfig cfg = resolve_config(rank_opts);
      emit(rank_out, rank_table_csv(rank_layer_sequences(cfg.transitions)));
    } else if (*bank) {
      const SimConfig cfg = resolve_config(bank_opts);
      require_valid(cfg);
      const auto b = make_bank(cfg, cfg.seed);
      if (!b) throw ConfigError("charge_and_fire has no pattern bank");
      emit(bank_out, bank_to_json(*b));
    } else if (*replay_cmd) {
      const fs::path dir(replay_dir);
      const auto trace = trace_from_files(read_file(dir / "trace_summary.json"),
                                          read_file(dir / "trace.jsonl"));
      const auto counts = replay(trace);
      std::cout << "replay ok: " << trace.records.size() << " slots, " << counts.total_spikes
                << " spikes, " << counts.n_covered << " covered, " << counts.n_missed
                << " missed\n";
    } else if (*schema) {
      for (const auto& k : config_schema()) std::cout << k.key << "\t" << k.description << '\n';
    }
  } catch (const ConfigError& e) {
    return exit_with(kExitConfig, "config error", e);
  } catch (const PhysicsError& e) {
    return exit_with(kExitPhysics, "physics error", e);
  } catch (const IoError& e) {
    return exit_with(kExitIo, "I/O error", e);
  } catch (const TraceError& e) {
    return exit_with(kExitTrace, "trace error", e);
  } catch (const std::domain_error& e) {
    return exit_with(kExitPhysics, "physics error", e);
  } catch (const std::exception& e) {
    return exit_with(1, "error", e);
  }
  return 0;
}
