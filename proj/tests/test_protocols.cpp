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

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "golden.hpp"
#include "optonet/error.hpp"
#include "optonet/protocols.hpp"

namespace optonet {
namespace {

RasterPlot random_raster(std::mt19937_64& rng, std::size_t devices, std::size_t slots, double p) {
  std::bernoulli_distribution spike(p);
  RasterPlot r(devices, slots, 1.0);
  for (std::size_t d = 0; d < devices; ++d) {
    for (Slot t = 0; t < slots; ++t) {
      if (spike(rng)) r.set(DeviceId{d}, t);
    }
  }
  return r;
}

TEST(ChargeAndFire, IdleWithoutSpikes) {
  RasterPlot r(3, 4, 1.0);
  EXPECT_TRUE(charge_and_fire_step(r, 2).idle());
}

TEST(ChargeAndFire, LowestDeviceWinsClash) {
  RasterPlot r(3, 4, 1.0);
  r.set(DeviceId{0}, 1);
  r.set(DeviceId{2}, 1);
  const auto d = charge_and_fire_step(r, 1);
  EXPECT_EQ(d.emit, FrequencyId{0});
  EXPECT_EQ(d.immediate_discharges, std::vector<DeviceId>{DeviceId{0}});
}

TEST(ChargeAndFire, FrequencyFollowsDevice) {
  RasterPlot r(3, 4, 1.0);
  r.set(DeviceId{1}, 0);
  const auto d = charge_and_fire_step(r, 0);
  EXPECT_EQ(d.emit, FrequencyId{1});
  EXPECT_EQ(d.immediate_discharges, std::vector<DeviceId>{DeviceId{1}});
}

TEST(MatchScore, EmptyWindowScoresZero) {
  RasterPlot r(3, 6, 1.0);
  EXPECT_EQ(match_score(Pattern{{0, 1, 2}, {}}, r, 0), 0u);
}

TEST(MatchScore, WalkThroughFirstWindow) {
  const auto g = golden::sliding_window_walk();
  const auto& bank = *g.bank;
  const auto s1 = match_score(bank.at(FrequencyId{0}), g.raster, 1);
  EXPECT_EQ(s1, 2u);
  EXPECT_GT(s1, match_score(bank.at(FrequencyId{1}), g.raster, 1));
  EXPECT_GT(s1, match_score(bank.at(FrequencyId{2}), g.raster, 1));
}

TEST(MatchScore, EqualsMembershipCount) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto r = random_raster(rng, 5, 12, 0.3);
    Pattern p;
    for (int d = 0; d < 5; ++d) p.delays.push_back(rng() % 4);
    const Slot t0 = rng() % 12;
    std::size_t ref = 0;
    for (std::size_t d = 0; d < 5; ++d) {
      for (Slot t = 0; t < 12; ++t) ref += r.spike(DeviceId{d}, t) && t == t0 + p.delays[d];
    }
    EXPECT_EQ(match_score(p, r, t0), ref);
  }
}

TEST(Psdw, IdleWhenNoSpikeAtWindowStart) {
  const auto g = golden::sliding_window_walk();
  RasterPlot remaining = g.raster;
  const auto out = psdw_step(remaining, 0, *g.bank);
  EXPECT_TRUE(out.decision.idle());
  EXPECT_TRUE(out.scores.empty());
  EXPECT_EQ(remaining, g.raster);
}

TEST(Psdw, FirstWindowOfWalkThrough) {
  const auto g = golden::sliding_window_walk();
  RasterPlot remaining = g.raster;
  const auto out = psdw_step(remaining, 1, *g.bank);
  EXPECT_EQ(out.decision.emit, FrequencyId{0});
  EXPECT_EQ(out.covered, (std::vector<DeviceId>{DeviceId{0}, DeviceId{2}}));
  EXPECT_FALSE(remaining.spike(DeviceId{0}, 3));
  EXPECT_FALSE(remaining.spike(DeviceId{2}, 2));
  EXPECT_TRUE(remaining.spike(DeviceId{2}, 1));
  // ND2 is scheduled at its delay even though it does not spike there.
  const auto& sched = out.decision.scheduled;
  ASSERT_EQ(sched.size(), 3u);
  EXPECT_EQ(sched[1], (ScheduledDischarge{DeviceId{1}, 1}));
}

TEST(PsdwProperty, MatchesExhaustiveArgmax) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t devices = 1 + rng() % 5, n_pat = 1 + rng() % 4, w = 1 + rng() % 4;
    const std::size_t slots = 2 + rng() % 10;
    std::vector<Pattern> pats(n_pat);
    for (auto& p : pats) {
      for (std::size_t d = 0; d < devices; ++d) p.delays.push_back(rng() % w);
    }
    const PatternBank bank(w, pats);
    RasterPlot remaining = random_raster(rng, devices, slots, 0.35);
    const Slot t = rng() % slots;
    const RasterPlot before = remaining;

    const auto out = psdw_step(remaining, t, bank);
    if (!before.any_spike_at(t)) {
      EXPECT_TRUE(out.decision.idle());
      continue;
    }
    std::size_t best = 0, best_score = 0;
    for (std::size_t f = 0; f < n_pat; ++f) {
      std::size_t s = 0;
      for (std::size_t d = 0; d < devices; ++d) s += before.spike(DeviceId{d}, t + pats[f].delays[d]);
      if (s > best_score) {
        best = f;
        best_score = s;
      }
    }
    ASSERT_EQ(out.decision.emit, FrequencyId{best});
    std::vector<DeviceId> covered;
    RasterPlot expect = before;
    for (std::size_t d = 0; d < devices; ++d) {
      const Slot at = t + pats[best].delays[d];
      if (before.spike(DeviceId{d}, at)) {
        covered.push_back(DeviceId{d});
        expect.set(DeviceId{d}, at, false);
      }
    }
    EXPECT_EQ(out.covered, covered);
    EXPECT_EQ(remaining, expect);
    EXPECT_EQ(out.decision.scheduled.size(), devices);
  }
}

TEST(Markov, UniformMatrixIsSymmetric) {
  const auto cd = connection_distribution(TransitionMatrix::uniform(4, 0.3));
  for (double v : cd.combined) EXPECT_NEAR(v, 0.25, 1e-15);
}

TEST(Markov, CorticalColumnDistribution) {
  const auto cd = connection_distribution(TransitionMatrix::cortical_column());
  // Column and row sums of L5 over a total mass of 2.325.
  EXPECT_NEAR(cd.combined[2], (0.82 / 2.325 + 0.65 / 2.325) / 2.0, 1e-12);
  EXPECT_NEAR(cd.combined[2], 0.3161, 1e-4);
  EXPECT_NEAR(std::accumulate(cd.pre.begin(), cd.pre.end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(std::accumulate(cd.post.begin(), cd.post.end(), 0.0), 1.0, 1e-12);
}

TEST(Markov, AllZeroMatrixRejected) {
  EXPECT_THROW(connection_distribution(TransitionMatrix::uniform(4, 0.0)), std::domain_error);
}

TEST(Markov, RankingMatchesProductOracle) {
  const auto m = TransitionMatrix::cortical_column();
  const auto ranked = rank_layer_sequences(m);
  ASSERT_EQ(ranked.size(), 24u);
  std::vector<std::size_t> order = {0, 1, 2, 3};
  std::map<std::vector<std::size_t>, double> oracle;
  do {
    double s = 1.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) s *= m.at(order[i], order[i + 1]);
    oracle[order] = s;
  } while (std::next_permutation(order.begin(), order.end()));
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    EXPECT_NEAR(ranked[i].chain_score, oracle.at(ranked[i].order), 1e-15);
    if (i > 0) EXPECT_LE(ranked[i].chain_score, ranked[i - 1].chain_score);
  }
  EXPECT_EQ(format_sequence(ranked.front()), "L4->L2/3->L5->L6");
  EXPECT_NEAR(ranked.front().chain_score, 0.25 * 0.27 * 0.325, 1e-15);
  const auto l5_first = std::find_if(ranked.begin(), ranked.end(), [](const auto& s) {
    return s.order == std::vector<std::size_t>{2, 3, 1, 0};
  });
  ASSERT_NE(l5_first, ranked.end());
  EXPECT_NEAR(l5_first->chain_score, 0.01625, 1e-6);
  EXPECT_EQ(rank_layer_sequences(m), ranked);
}

TEST(Markov, StrongerFirstHopOutranks) {
  const auto ranked = rank_layer_sequences(TransitionMatrix::cortical_column());
  auto pos = [&](std::vector<std::size_t> o) {
    return std::find_if(ranked.begin(), ranked.end(), [&](const auto& s) { return s.order == o; }) -
           ranked.begin();
  };
  // L5->L6->L4->L2/3 vs L5->L4->L6->L2/3 differ only in the first hop weight.
  EXPECT_LT(pos({2, 3, 1, 0}), pos({2, 1, 3, 0}));
}

TEST(Markov, ScalingKeepsOrder) {
  const auto m = TransitionMatrix::cortical_column();
  const auto a = rank_layer_sequences(m);
  const auto b = rank_layer_sequences(m.scaled(0.37));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].order, b[i].order);
}

TEST(Markov, UniformTiesFallBackToLexicographicOrder) {
  const auto ranked = rank_layer_sequences(TransitionMatrix::uniform(4, 0.5));
  std::vector<std::size_t> order = {0, 1, 2, 3};
  for (const auto& s : ranked) {
    EXPECT_EQ(s.order, order);
    EXPECT_EQ(s.chain_score, ranked.front().chain_score);
    std::next_permutation(order.begin(), order.end());
  }
}

TEST(Markov, BankFollowsTopSequence) {
  const auto ranked = rank_layer_sequences(TransitionMatrix::cortical_column());
  const auto layers = round_robin_layers(8);
  const auto bank = build_markov_bank(ranked, 1, layers, 4);
  // Top sequence by product: L4 -> L2/3 -> L5 -> L6.
  const std::map<Layer, std::size_t> expected = {
      {Layer::kL4, 0}, {Layer::kL23, 1}, {Layer::kL5, 2}, {Layer::kL6, 3}};
  for (std::size_t d = 0; d < layers.size(); ++d) {
    EXPECT_EQ(bank.at(FrequencyId{0}).delay(DeviceId{d}), expected.at(layers[d]));
  }
}

TEST(Markov, FullBankAndSharedLayerDelays) {
  const auto ranked = rank_layer_sequences(TransitionMatrix::cortical_column());
  const auto layers = round_robin_layers(12);
  const auto bank = build_markov_bank(ranked, 24, layers, 4);
  EXPECT_EQ(bank.size(), 24u);
  for (const auto& p : bank.patterns()) {
    for (std::size_t a = 0; a < layers.size(); ++a) {
      for (std::size_t b = 0; b < layers.size(); ++b) {
        if (layers[a] == layers[b]) EXPECT_EQ(p.delays[a], p.delays[b]);
      }
    }
  }
  EXPECT_THROW(build_markov_bank(ranked, 25, layers, 4), ConfigError);
  EXPECT_THROW(build_markov_bank(ranked, 2, layers, 3), ConfigError);
}

TEST(RandomBank, WidthOneMeansZeroDelays) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto bank = random_pattern_bank(4, 1, 6, seed);
    for (const auto& p : bank.patterns()) {
      for (auto d : p.delays) EXPECT_EQ(d, 0u);
    }
  }
}

TEST(RandomBank, Deterministic) {
  EXPECT_EQ(random_pattern_bank(5, 4, 7, 3), random_pattern_bank(5, 4, 7, 3));
}

TEST(RandomBank, DelaysAreUniform) {
  std::array<std::array<std::size_t, 3>, 3> counts{};
  constexpr int kSeeds = 10000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const auto bank = random_pattern_bank(3, 3, 3, static_cast<std::uint64_t>(seed));
    for (std::size_t d = 0; d < 3; ++d) ++counts[d][bank.at(FrequencyId{0}).delay(DeviceId{d})];
  }
  for (const auto& row : counts) {
    for (auto c : row) EXPECT_NEAR(static_cast<double>(c) / kSeeds, 1.0 / 3.0, 0.03);
  }
}

TEST(PatternBank, RejectsDelaysOutsideWindow) {
  EXPECT_THROW(PatternBank(2, {Pattern{{0, 2}, {}}}), std::invalid_argument);
  EXPECT_THROW(PatternBank(3, {Pattern{{0, 1}, {}}, Pattern{{0}, {}}}), std::invalid_argument);
}

}  // namespace
}  // namespace optonet
