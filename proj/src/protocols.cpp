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

#include "optonet/protocols.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "optonet/error.hpp"
#include "optonet/rng.hpp"

namespace optonet {

PatternBank::PatternBank(std::size_t window_width, std::vector<Pattern> patterns)
    : window_(window_width), patterns_(std::move(patterns)) {
  if (window_ < 1) throw std::invalid_argument("window width must be >= 1");
  for (const auto& p : patterns_) {
    if (p.delays.size() != device_count()) {
      throw std::invalid_argument("all patterns must cover the same devices");
    }
    for (auto d : p.delays) {
      if (d >= window_) throw std::invalid_argument("pattern delay outside the window");
    }
  }
}

std::size_t PatternBank::device_count() const noexcept {
  return patterns_.empty() ? 0 : patterns_.front().delays.size();
}

ProtocolDecision charge_and_fire_step(const RasterPlot& raster, Slot t) {
  ProtocolDecision decision;
  const auto spiking = raster.spiking_at(t);
  if (spiking.empty()) return decision;
  const DeviceId first = spiking.front();
  decision.emit = FrequencyId{first.value};
  decision.immediate_discharges.push_back(first);
  return decision;
}

std::size_t match_score(const Pattern& pattern, const RasterPlot& raster, Slot t0) {
  std::size_t score = 0;
  for (std::size_t d = 0; d < pattern.delays.size(); ++d) {
    if (raster.spike(DeviceId{d}, t0 + pattern.delays[d])) ++score;
  }
  return score;
}

PsdwOutcome psdw_step(RasterPlot& remaining, Slot t, const PatternBank& bank) {
  PsdwOutcome out;
  if (!remaining.any_spike_at(t)) return out;
  if (bank.size() == 0) throw std::invalid_argument("pattern bank is empty");
  if (bank.device_count() != remaining.device_count()) {
    throw std::invalid_argument("pattern bank and raster disagree on device count");
  }

  out.scores.reserve(bank.size());
  std::size_t best = 0;
  for (std::size_t f = 0; f < bank.size(); ++f) {
    out.scores.push_back(match_score(bank.patterns()[f], remaining, t));
    if (out.scores[f] > out.scores[best]) best = f;
  }

  const Pattern& chosen = bank.patterns()[best];
  out.decision.emit = FrequencyId{best};
  for (std::size_t d = 0; d < chosen.delays.size(); ++d) {
    const DeviceId id{d};
    const Slot at = t + chosen.delays[d];
    out.decision.scheduled.push_back({id, at});
    if (remaining.spike(id, at)) {
      remaining.set(id, at, false);
      out.covered.push_back(id);
    }
  }
  return out;
}

ConnectionDistribution connection_distribution(const TransitionMatrix& m) {
  const std::size_t n = m.size();
  ConnectionDistribution out;
  out.pre.assign(n, 0.0);
  out.post.assign(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = m.at(i, j);
      out.post[i] += w;
      out.pre[j] += w;
      total += w;
    }
  }
  if (!(total > 0.0)) throw std::domain_error("transition matrix has no connection weight");
  out.combined.resize(n);
  for (std::size_t y = 0; y < n; ++y) {
    out.pre[y] /= total;
    out.post[y] /= total;
    out.combined[y] = 0.5 * (out.pre[y] + out.post[y]);
  }
  return out;
}

std::vector<LayerSequence> rank_layer_sequences(const TransitionMatrix& m) {
  const std::size_t n = m.size();
  if (n > 10) throw std::invalid_argument("too many states to enumerate every ordering");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<LayerSequence> out;
  std::vector<double> factors(n > 0 ? n - 1 : 0);
  do {
    for (std::size_t k = 0; k + 1 < n; ++k) factors[k] = m.at(order[k], order[k + 1]);
    // Multiplying in sorted order makes equal factor multisets give bit-identical scores.
    std::sort(factors.begin(), factors.end());
    double score = 1.0;
    for (double f : factors) score *= f;
    out.push_back({order, score});
  } while (std::next_permutation(order.begin(), order.end()));

  std::stable_sort(out.begin(), out.end(), [](const LayerSequence& a, const LayerSequence& b) {
    return a.chain_score > b.chain_score;
  });
  return out;
}

std::string format_sequence(const LayerSequence& s) {
  std::string out;
  for (std::size_t k = 0; k < s.order.size(); ++k) {
    if (k > 0) out += "->";
    if (s.order.size() == kLayerCount) {
      out += layer_name(static_cast<Layer>(s.order[k]));
    } else {
      out += "S" + std::to_string(s.order[k]);
    }
  }
  return out;
}

PatternBank build_markov_bank(const std::vector<LayerSequence>& ranked, std::size_t n_freq,
                              const std::vector<Layer>& layer_map, std::size_t window_width) {
  if (n_freq > ranked.size()) {
    throw ConfigError("requested " + std::to_string(n_freq) + " markov patterns but only " +
                      std::to_string(ranked.size()) + " layer orderings exist");
  }
  if (window_width < kLayerCount) {
    throw ConfigError("markov patterns need a window of at least 4 slots");
  }
  std::vector<Pattern> patterns;
  patterns.reserve(n_freq);
  for (std::size_t k = 0; k < n_freq; ++k) {
    const auto& order = ranked[k].order;
    if (order.size() != kLayerCount) throw ConfigError("markov patterns need a 4-layer ordering");
    std::array<std::size_t, kLayerCount> position{};
    for (std::size_t p = 0; p < order.size(); ++p) position[order[p]] = p;
    Pattern pattern;
    pattern.layer_order = order;
    pattern.delays.reserve(layer_map.size());
    for (Layer l : layer_map) pattern.delays.push_back(position[layer_index(l)]);
    patterns.push_back(std::move(pattern));
  }
  return PatternBank(window_width, std::move(patterns));
}

PatternBank random_pattern_bank(std::size_t n_freq, std::size_t window_width, std::size_t devices,
                                std::uint64_t seed) {
  if (window_width < 1) throw std::invalid_argument("window width must be >= 1");
  auto engine = make_engine(seed, StreamTag::kBank);
  std::uniform_int_distribution<std::size_t> delay(0, window_width - 1);
  std::vector<Pattern> patterns(n_freq);
  for (auto& p : patterns) {
    p.delays.resize(devices);
    for (auto& d : p.delays) d = delay(engine);
  }
  return PatternBank(window_width, std::move(patterns));
}

}  // namespace optonet
