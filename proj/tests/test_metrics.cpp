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
#include <vector>

#include "golden.hpp"
#include "optonet/metrics.hpp"
#include "optonet/simengine.hpp"

namespace optonet {
namespace {

MetricsReport with_eta(double eta) {
  MetricsReport r;
  r.total_spikes = 100;
  r.gamma_mis = (100.0 - eta) / 100.0;
  r.eta_stim = eta;
  r.gamma_stim = 0.5;
  r.ratios_defined = true;
  return r;
}

TEST(Metrics, AllCovered) {
  TraceCounts c;
  c.n_covered = c.total_spikes = c.n_emissions = 8;
  const auto m = metrics_from_counts(c);
  EXPECT_EQ(m.gamma_mis, 0.0);
  EXPECT_EQ(m.eta_stim, 100.0);
}

TEST(Metrics, UndefinedWithoutSpikes) {
  const auto m = metrics_from_counts(TraceCounts{});
  EXPECT_FALSE(m.ratios_defined);
  EXPECT_TRUE(std::isnan(m.gamma_mis));
}

TEST(Metrics, ChargeAndFireHandTrace) {
  auto cfg = golden::small_config(2, 4, Protocol::kChargeAndFire);
  const auto raster = golden::raster_from(4, {{1, 3}, {1}});
  const auto m = compute_metrics(run(cfg, raster));
  EXPECT_EQ(m.n_mis, 1u);
  EXPECT_EQ(m.total_spikes, 3u);
  EXPECT_EQ(m.n_emissions, 2u);
  EXPECT_NEAR(m.gamma_mis, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.eta_stim, 66.7, 0.05);
  EXPECT_NEAR(m.gamma_stim, 2.0 / 3.0, 1e-15);
}

TEST(Metrics, OneEmissionCoveringTwoSpikes) {
  auto cfg = golden::small_config(2, 4, Protocol::kPsdwRandom);
  cfg.frequency_count = 1;
  PatternBank bank(3, {Pattern{{0, 1}, {}}});
  const auto raster = golden::raster_from(4, {{1}, {2}});
  const auto m = compute_metrics(run(cfg, raster, &bank));
  EXPECT_EQ(m.n_emissions, 1u);
  EXPECT_EQ(m.n_covered, 2u);
  EXPECT_DOUBLE_EQ(m.gamma_stim, 0.5);
}

TEST(Aggregate, SingleReportHasZeroStd) {
  const std::vector<MetricsReport> one = {with_eta(70)};
  const auto a = aggregate(one);
  EXPECT_EQ(a.n, 1u);
  EXPECT_FALSE(a.std_defined);
  EXPECT_EQ(a.eta_stim.std, 0.0);
}

TEST(Aggregate, IdenticalReportsHaveZeroStd) {
  const std::vector<MetricsReport> same(5, with_eta(63.1));
  const auto a = aggregate(same);
  EXPECT_TRUE(a.std_defined);
  EXPECT_EQ(a.eta_stim.std, 0.0);
  EXPECT_EQ(a.gamma_mis.std, 0.0);
}

TEST(Aggregate, SampleStatistics) {
  const std::vector<MetricsReport> r = {with_eta(60), with_eta(70), with_eta(80)};
  const auto a = aggregate(r);
  EXPECT_NEAR(a.eta_stim.mean, 70.0, 1e-12);
  EXPECT_NEAR(a.eta_stim.std, 10.0, 1e-12);
}

TEST(Aggregate, SkipsUndefinedAndGroups) {
  std::vector<KeyedReport> r = {{"a", with_eta(60)}, {"a", with_eta(80)}, {"b", MetricsReport{}}};
  r[2].report.ratios_defined = false;
  const auto g = aggregate_by_group(r);
  EXPECT_EQ(g.at("a").n, 2u);
  EXPECT_EQ(g.at("b").n, 0u);
}

}  // namespace
}  // namespace optonet
