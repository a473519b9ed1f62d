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

#include "optonet/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "optonet/config_io.hpp"
#include "optonet/error.hpp"

namespace optonet {

using nlohmann::json;

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t to_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw IoError(std::string(what) + ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

double to_double(std::string_view s, std::string_view what) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw IoError(std::string(what) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string(what) + ": " + e.what());
  }
}

json ids(const std::vector<DeviceId>& v) {
  json a = json::array();
  for (auto d : v) a.push_back(d.value);
  return a;
}

std::vector<DeviceId> ids_from(const json& a) {
  std::vector<DeviceId> out;
  for (const auto& x : a) out.push_back(DeviceId{x.get<std::size_t>()});
  return out;
}

}  // namespace

std::string raster_to_csv(const RasterPlot& raster) {
  std::string out = "device_id,slot_index\n";
  for (std::size_t d = 0; d < raster.device_count(); ++d) {
    for (Slot t = 0; t < raster.slot_count(); ++t) {
      if (raster.spike(DeviceId{d}, t)) out += std::to_string(d) + ',' + std::to_string(t) + '\n';
    }
  }
  return out;
}

RasterPlot raster_from_csv(std::string_view text, std::size_t device_count, std::size_t slot_count,
                           double slot_duration_ms) {
  RasterPlot raster(device_count, slot_count, slot_duration_ms);
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "device_id,slot_index") {
    throw IoError("raster CSV must start with 'device_id,slot_index'");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    if (f.size() != 2) throw IoError("raster CSV line " + std::to_string(i + 1) + ": need 2 fields");
    const auto d = to_u64(f[0], "device_id");
    const auto t = to_u64(f[1], "slot_index");
    if (d >= device_count || t >= slot_count) {
      throw IoError("raster CSV line " + std::to_string(i + 1) + ": spike outside " +
                    std::to_string(device_count) + " devices x " + std::to_string(slot_count) +
                    " slots");
    }
    raster.set(DeviceId{d}, t);
  }
  return raster;
}

std::string raster_to_json(const RasterPlot& raster) {
  json rows = json::array();
  for (std::size_t d = 0; d < raster.device_count(); ++d) {
    json row = json::array();
    for (Slot t = 0; t < raster.slot_count(); ++t) row.push_back(raster.spike(DeviceId{d}, t) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  json doc = {{"slot_duration_ms", raster.slot_duration_ms()}, {"spikes", std::move(rows)}};
  return doc.dump() + "\n";
}

RasterPlot raster_from_json(std::string_view text) {
  const json doc = parse_json(text, "raster JSON");
  try {
    const auto& rows = doc.at("spikes");
    const std::size_t devices = rows.size();
    const std::size_t slots = devices > 0 ? rows.at(0).size() : 0;
    RasterPlot raster(devices, slots, doc.at("slot_duration_ms").get<double>());
    for (std::size_t d = 0; d < devices; ++d) {
      if (rows[d].size() != slots) throw IoError("raster JSON rows must have equal length");
      for (Slot t = 0; t < slots; ++t) {
        const int v = rows[d][t].get<int>();
        if (v != 0 && v != 1) throw IoError("raster JSON entries must be 0 or 1");
        if (v) raster.set(DeviceId{d}, t);
      }
    }
    return raster;
  } catch (const json::exception& e) {
    throw IoError(std::string("raster JSON: ") + e.what());
  }
}

std::string bank_to_json(const PatternBank& bank) {
  json patterns = json::array();
  for (std::size_t f = 0; f < bank.size(); ++f) {
    const Pattern& p = bank.patterns()[f];
    json delays = json::object();
    for (std::size_t d = 0; d < p.delays.size(); ++d) delays[std::to_string(d)] = p.delays[d];
    json entry = {{"frequency", f}, {"delays", std::move(delays)}};
    if (!p.layer_order.empty()) {
      json layers = json::object();
      for (std::size_t pos = 0; pos < p.layer_order.size(); ++pos) {
        const auto state = p.layer_order[pos];
        const std::string name = p.layer_order.size() == kLayerCount
                                     ? std::string(layer_name(static_cast<Layer>(state)))
                                     : "S" + std::to_string(state);
        layers[name] = pos;
      }
      entry["layer_delays"] = std::move(layers);
      entry["layer_order"] = p.layer_order;
    }
    patterns.push_back(std::move(entry));
  }
  json doc = {{"window_width", bank.window_width()}, {"patterns", std::move(patterns)}};
  return doc.dump(2) + "\n";
}

PatternBank bank_from_json(std::string_view text) {
  const json doc = parse_json(text, "pattern bank JSON");
  try {
    std::vector<Pattern> patterns;
    for (const auto& entry : doc.at("patterns")) {
      if (entry.at("frequency").get<std::size_t>() != patterns.size()) {
        throw IoError("pattern bank frequencies must be listed in order from 0");
      }
      const auto& delays = entry.at("delays");
      Pattern p;
      p.delays.resize(delays.size());
      for (std::size_t d = 0; d < delays.size(); ++d) {
        p.delays[d] = delays.at(std::to_string(d)).get<std::size_t>();
      }
      if (entry.contains("layer_order")) {
        p.layer_order = entry["layer_order"].get<std::vector<std::size_t>>();
      }
      patterns.push_back(std::move(p));
    }
    return PatternBank(doc.at("window_width").get<std::size_t>(), std::move(patterns));
  } catch (const json::exception& e) {
    throw IoError(std::string("pattern bank JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("pattern bank JSON: ") + e.what());
  }
}

std::string rank_table_csv(const std::vector<LayerSequence>& ranked) {
  std::string out = "rank,sequence,chain_score\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out += std::to_string(i + 1) + ',' + format_sequence(ranked[i]) + ',' +
           format_double(ranked[i].chain_score) + '\n';
  }
  return out;
}

std::string trace_to_jsonl(const SimTrace& trace) {
  std::string out;
  for (const auto& rec : trace.records) {
    json scheduled = json::array();
    for (const auto& s : rec.scheduled) scheduled.push_back({s.device.value, s.slot});
    json obj = {
        {"slot", rec.slot},
        {"emit", rec.emitted ? json(rec.emitted->value) : json(nullptr)},
        {"spikes", ids(rec.spikes)},
        {"charged", ids(rec.charged)},
        {"scheduled", std::move(scheduled)},
        {"replaced", ids(rec.replaced)},
        {"discharged", ids(rec.discharged)},
        {"failed", ids(rec.failed)},
        {"covered", ids(rec.covered)},
        {"missed", ids(rec.missed)},
        {"spurious", ids(rec.spurious)},
        {"energy_added_j", rec.energy_added_j},
        {"energy_drained_j", rec.energy_drained_j},
    };
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string trace_summary_json(const SimTrace& trace) {
  const auto& c = trace.counts;
  json doc = {
      {"trace_version", trace.trace_version},
      {"protocol", std::string(protocol_name(trace.protocol))},
      {"device_count", trace.device_count},
      {"slot_count", trace.slot_count},
      {"slot_duration_ms", trace.slot_duration_ms},
      {"seed", trace.seed},
      {"e_max_j", trace.e_max_j},
      {"initial_energy_j", trace.initial_energy_j},
      {"energy_added_j", trace.energy_added_j},
      {"energy_drained_j", trace.energy_drained_j},
      {"counts",
       {{"n_covered", c.n_covered},
        {"n_missed", c.n_missed},
        {"n_spurious", c.n_spurious},
        {"n_emissions", c.n_emissions},
        {"total_spikes", c.total_spikes},
        {"n_failed", c.n_failed},
        {"n_replaced", c.n_replaced}}},
  };
  return doc.dump(2) + "\n";
}

SimTrace trace_from_files(std::string_view summary_json, std::string_view jsonl) {
  const json s = parse_json(summary_json, "trace summary");
  SimTrace trace;
  try {
    trace.trace_version = s.at("trace_version").get<int>();
    if (trace.trace_version != kTraceVersion) {
      throw IoError("unsupported trace_version " + std::to_string(trace.trace_version));
    }
    const auto protocol = parse_protocol(s.at("protocol").get<std::string>());
    if (!protocol) throw IoError("trace summary: unknown protocol");
    trace.protocol = *protocol;
    trace.device_count = s.at("device_count").get<std::size_t>();
    trace.slot_count = s.at("slot_count").get<std::size_t>();
    trace.slot_duration_ms = s.at("slot_duration_ms").get<double>();
    trace.seed = s.at("seed").get<std::uint64_t>();
    trace.e_max_j = s.at("e_max_j").get<double>();
    trace.initial_energy_j = s.at("initial_energy_j").get<double>();
    trace.energy_added_j = s.at("energy_added_j").get<double>();
    trace.energy_drained_j = s.at("energy_drained_j").get<double>();
    const auto& c = s.at("counts");
    trace.counts.n_covered = c.at("n_covered").get<std::uint64_t>();
    trace.counts.n_missed = c.at("n_missed").get<std::uint64_t>();
    trace.counts.n_spurious = c.at("n_spurious").get<std::uint64_t>();
    trace.counts.n_emissions = c.at("n_emissions").get<std::uint64_t>();
    trace.counts.total_spikes = c.at("total_spikes").get<std::uint64_t>();
    trace.counts.n_failed = c.at("n_failed").get<std::uint64_t>();
    trace.counts.n_replaced = c.at("n_replaced").get<std::uint64_t>();

    for (auto line : lines_of(jsonl)) {
      const json r = parse_json(line, "trace record");
      SlotRecord rec;
      rec.slot = r.at("slot").get<Slot>();
      if (!r.at("emit").is_null()) rec.emitted = FrequencyId{r["emit"].get<std::size_t>()};
      rec.spikes = ids_from(r.at("spikes"));
      rec.charged = ids_from(r.at("charged"));
      for (const auto& pair : r.at("scheduled")) {
        rec.scheduled.push_back({DeviceId{pair.at(0).get<std::size_t>()}, pair.at(1).get<Slot>()});
      }
      rec.replaced = ids_from(r.at("replaced"));
      rec.discharged = ids_from(r.at("discharged"));
      rec.failed = ids_from(r.at("failed"));
      rec.covered = ids_from(r.at("covered"));
      rec.missed = ids_from(r.at("missed"));
      rec.spurious = ids_from(r.at("spurious"));
      rec.energy_added_j = r.at("energy_added_j").get<double>();
      rec.energy_drained_j = r.at("energy_drained_j").get<double>();
      trace.records.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("trace: ") + e.what());
  }
  return trace;
}

std::string_view metrics_csv_header() {
  return "protocol,spike_rate_hz,n_patterns,device_count,seed,n_mis,n_covered,n_spurious,"
         "n_emissions,total_spikes,gamma_mis,eta_stim_pct,gamma_stim";
}

std::string metrics_csv_row(const MetricsRow& row) {
  const auto& r = row.report;
  std::string out = row.protocol;
  for (const std::string& f :
       {format_double(row.spike_rate_hz), std::to_string(row.n_patterns),
        std::to_string(row.device_count), std::to_string(row.seed), std::to_string(r.n_mis),
        std::to_string(r.n_covered), std::to_string(r.n_spurious), std::to_string(r.n_emissions),
        std::to_string(r.total_spikes), format_double(r.gamma_mis), format_double(r.eta_stim),
        format_double(r.gamma_stim)}) {
    out += ',';
    out += f;
  }
  out += '\n';
  return out;
}

std::vector<MetricsRow> metrics_from_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != metrics_csv_header()) {
    throw IoError("metrics CSV has an unexpected header");
  }
  std::vector<MetricsRow> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    if (f.size() != 13) throw IoError("metrics CSV line " + std::to_string(i + 1) + ": need 13 fields");
    MetricsRow row;
    row.protocol = std::string(f[0]);
    row.spike_rate_hz = to_double(f[1], "spike_rate_hz");
    row.n_patterns = to_u64(f[2], "n_patterns");
    row.device_count = to_u64(f[3], "device_count");
    row.seed = to_u64(f[4], "seed");
    auto& r = row.report;
    r.n_mis = to_u64(f[5], "n_mis");
    r.n_covered = to_u64(f[6], "n_covered");
    r.n_spurious = to_u64(f[7], "n_spurious");
    r.n_emissions = to_u64(f[8], "n_emissions");
    r.total_spikes = to_u64(f[9], "total_spikes");
    r.gamma_mis = to_double(f[10], "gamma_mis");
    r.eta_stim = to_double(f[11], "eta_stim_pct");
    r.gamma_stim = to_double(f[12], "gamma_stim");
    r.ratios_defined = r.total_spikes > 0;
    out.push_back(std::move(row));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace optonet
