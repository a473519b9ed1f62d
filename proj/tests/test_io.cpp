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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "golden.hpp"
#include "optonet/config_io.hpp"
#include "optonet/error.hpp"
#include "optonet/io.hpp"
#include "optonet/spikegen.hpp"

namespace optonet {
namespace {

TEST(RasterIo, CsvRoundTrip) {
  const auto r = generate_poisson_raster(SpikeRateProfile::uniform(5, 90.0), 0.5, 1.0, 8);
  const auto text = raster_to_csv(r);
  EXPECT_EQ(text.rfind("device_id,slot_index\n", 0), 0u);
  EXPECT_EQ(raster_from_csv(text, 5, 500, 1.0), r);
}

TEST(RasterIo, CsvRejectsOutOfRange) {
  EXPECT_THROW(raster_from_csv("device_id,slot_index\n3,0\n", 2, 5, 1.0), IoError);
  EXPECT_THROW(raster_from_csv("device_id,slot_index\n0,9\n", 2, 5, 1.0), IoError);
  EXPECT_THROW(raster_from_csv("wrong\n", 2, 5, 1.0), IoError);
}

TEST(RasterIo, JsonRoundTrip) {
  const auto g = golden::sliding_window_walk();
  EXPECT_EQ(raster_from_json(raster_to_json(g.raster)), g.raster);
}

TEST(BankIo, JsonRoundTrip) {
  const auto g = golden::sliding_window_walk();
  EXPECT_EQ(bank_from_json(bank_to_json(*g.bank)), *g.bank);
}

TEST(MetricsIo, CsvRoundTrip) {
  MetricsRow row{"psdw_markov", 115.0, 10, 32, 12345678901234ULL, {}};
  row.report = {3, 7, 2, 4, 10, 0.3, 70.0, 0.4, true};
  const std::string text = std::string(metrics_csv_header()) + "\n" + metrics_csv_row(row);
  EXPECT_EQ(std::string(metrics_csv_header()),
            "protocol,spike_rate_hz,n_patterns,device_count,seed,n_mis,n_covered,n_spurious,"
            "n_emissions,total_spikes,gamma_mis,eta_stim_pct,gamma_stim");
  const auto back = metrics_from_csv(text);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].seed, row.seed);
  EXPECT_EQ(back[0].report.n_covered, 7u);
  EXPECT_DOUBLE_EQ(back[0].report.eta_stim, 70.0);
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_THROW(read_file("/nonexistent/optonet/x.csv"), IoError);
  EXPECT_THROW(load_config("/nonexistent/optonet/x.cfg"), IoError);
}

TEST(Sidecar, ReloadsToSameConfig) {
  auto cfg = default_config();
  cfg.seed = 99;
  cfg.spikes.rate_hz = 125.0;
  const auto path = std::filesystem::temp_directory_path() / "optonet_sidecar_test.json";
  write_file(path, config_sidecar_json(cfg));
  EXPECT_EQ(load_config(path), cfg);
  std::filesystem::remove(path);
}

TEST(Numbers, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 3.431365713193709e-09, 1e300, -0.0}) {
    EXPECT_EQ(parse_double(format_double(v), "x"), v);
  }
  EXPECT_THROW(parse_double("nan", "x"), ConfigError);
  EXPECT_THROW(parse_double("1.0x", "x"), ConfigError);
}

}  // namespace
}  // namespace optonet
