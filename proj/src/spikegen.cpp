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

#include "optonet/spikegen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "optonet/rng.hpp"

namespace optonet {

SpikeRateProfile SpikeRateProfile::uniform(std::size_t devices, double rate_hz) {
  SpikeRateProfile p;
  p.per_device.assign(devices, {RateSegment{0.0, rate_hz}});
  return p;
}

SpikeRateProfile SpikeRateProfile::step(std::size_t devices, double rate_before_hz,
                                        double rate_after_hz, double switch_time_s) {
  if (!(switch_time_s >= 0.0)) throw std::invalid_argument("switch time must be >= 0");
  if (switch_time_s == 0.0) return uniform(devices, rate_after_hz);
  SpikeRateProfile p;
  p.per_device.assign(devices,
                      {RateSegment{0.0, rate_before_hz}, RateSegment{switch_time_s, rate_after_hz}});
  return p;
}

RasterPlot generate_poisson_raster(const SpikeRateProfile& profile, double duration_s,
                                   double slot_duration_ms, std::uint64_t seed) {
  RasterPlot raster(profile.device_count(), RasterPlot::slots_for(duration_s, slot_duration_ms),
                    slot_duration_ms);
  const double slot_s = slot_duration_ms * 1e-3;

  for (std::size_t d = 0; d < profile.device_count(); ++d) {
    const auto& segments = profile.per_device[d];
    if (segments.empty() || segments.front().start_s != 0.0) {
      throw std::invalid_argument("rate profile must start at t = 0");
    }
    auto engine = make_engine(seed, StreamTag::kRaster, d);

    std::size_t i = 0;
    while (i < segments.size()) {
      const double rate = segments[i].rate_hz;
      if (!(rate >= 0.0)) throw std::invalid_argument("spike rate must be >= 0");
      // Adjacent equal-rate segments form one renewal process.
      std::size_t j = i + 1;
      while (j < segments.size() && segments[j].rate_hz == rate) ++j;
      const double begin = segments[i].start_s;
      const double end = j < segments.size() ? segments[j].start_s : duration_s;
      if (j < segments.size() && !(end > begin)) {
        throw std::invalid_argument("rate segments must have increasing start times");
      }
      if (rate > 0.0) {
        std::exponential_distribution<double> interval(rate);
        double t = begin;
        while (true) {
          t += interval(engine);
          if (t >= end || t >= duration_s) break;
          const auto slot = static_cast<Slot>(std::floor(t / slot_s));
          if (slot < raster.slot_count()) raster.set(DeviceId{d}, slot);
        }
      }
      i = j;
    }
  }
  return raster;
}

RasterPlot direction_switch_scenario(double rate_before_hz, double rate_after_hz,
                                     double switch_time_s, double duration_s, std::size_t devices,
                                     double slot_duration_ms, std::uint64_t seed) {
  if (!(switch_time_s >= 0.0 && switch_time_s <= duration_s)) {
    throw std::invalid_argument("switch time must lie within [0, duration]");
  }
  return generate_poisson_raster(
      SpikeRateProfile::step(devices, rate_before_hz, rate_after_hz, switch_time_s), duration_s,
      slot_duration_ms, seed);
}

std::vector<double> keat_filter_response(std::span<const double> stimulus,
                                         std::span<const double> filter,
                                         double slot_duration_ms) {
  if (filter.empty()) throw std::invalid_argument("filter needs at least one tap");
  std::vector<double> g(stimulus.size(), 0.0);
  for (std::size_t t = 0; t < stimulus.size(); ++t) {
    const std::size_t taps = std::min(filter.size(), t + 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc += stimulus[t - k] * filter[k];
    g[t] = acc * slot_duration_ms;
  }
  return g;
}

std::vector<double> biphasic_filter(std::size_t taps, double tau_fast_slots,
                                    double tau_slow_slots, double negative_ratio) {
  std::vector<double> f(taps);
  double peak = 0.0;
  for (std::size_t k = 0; k < taps; ++k) {
    const double x = static_cast<double>(k);
    f[k] = std::exp(-x / tau_fast_slots) - negative_ratio * std::exp(-x / tau_slow_slots);
    peak = std::max(peak, std::abs(f[k]));
  }
  if (peak > 0.0) {
    for (auto& v : f) v /= peak;
  }
  return f;
}

std::vector<double> afterpotential_kernel(std::size_t taps, double depth, double tau_slots) {
  std::vector<double> p(taps);
  for (std::size_t k = 0; k < taps; ++k) p[k] = -depth * std::exp(-static_cast<double>(k) / tau_slots);
  return p;
}

KeatParams KeatParams::defaults() {
  KeatParams p;
  p.theta = 1.0;
  p.filter_f = biphasic_filter(30, 2.0, 6.0, 0.5);
  p.feedback_p = afterpotential_kernel(30, 2.0, 5.0);
  p.noise_a_sigma = 0.1;
  p.noise_b_sigma = 0.1;
  p.slot_duration_ms = 1.0;
  return p;
}

KeatTrace keat_spikes(std::span<const double> stimulus, const KeatParams& p, std::uint64_t seed) {
  if (p.filter_f.empty() || p.feedback_p.empty()) {
    throw std::invalid_argument("keat filters need at least one tap");
  }
  if (!(p.noise_a_sigma >= 0.0) || !(p.noise_b_sigma >= 0.0)) {
    throw std::invalid_argument("noise sigmas must be >= 0");
  }
  const auto g = keat_filter_response(stimulus, p.filter_f, p.slot_duration_ms);
  auto engine = make_engine(seed, StreamTag::kNoise);
  std::normal_distribution<double> unit(0.0, 1.0);

  struct PastSpike {
    std::size_t slot;
    double gain;  // 1 + b
  };
  std::vector<PastSpike> recent;

  KeatTrace out;
  out.spikes.assign(stimulus.size(), 0);
  out.potential.assign(stimulus.size(), 0.0);
  double previous = 0.0;
  for (std::size_t t = 0; t < stimulus.size(); ++t) {
    double h = g[t];
    if (p.noise_a_sigma > 0.0) h += p.noise_a_sigma * unit(engine);

    std::erase_if(recent, [&](const PastSpike& s) { return t - s.slot > p.feedback_p.size(); });
    for (const auto& s : recent) h += s.gain * p.feedback_p[t - s.slot - 1];

    out.potential[t] = h;
    if (h > p.theta && previous <= p.theta && h - previous > 0.0) {
      out.spikes[t] = 1;
      const double b = p.noise_b_sigma > 0.0 ? p.noise_b_sigma * unit(engine) : 0.0;
      recent.push_back({t, 1.0 + b});
    }
    previous = h;
  }
  return out;
}

}  // namespace optonet
