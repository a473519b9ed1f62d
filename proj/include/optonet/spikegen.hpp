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
#include <span>
#include <vector>

#include "optonet/model.hpp"

namespace optonet {

// Rate in effect from start_s until the next segment (or the end of the run).
struct RateSegment {
  double start_s;
  double rate_hz;
};

// Piecewise-constant firing rate per device. Each device's segments start at
// 0 and have strictly increasing start times.
struct SpikeRateProfile {
  std::vector<std::vector<RateSegment>> per_device;

  static SpikeRateProfile uniform(std::size_t devices, double rate_hz);
  static SpikeRateProfile step(std::size_t devices, double rate_before_hz, double rate_after_hz,
                               double switch_time_s);

  std::size_t device_count() const noexcept { return per_device.size(); }
};

// Exponential inter-spike intervals per device, quantized to slots. Each
// device draws from its own stream derived from (seed, device).
RasterPlot generate_poisson_raster(const SpikeRateProfile& profile, double duration_s,
                                   double slot_duration_ms, std::uint64_t seed);

// Stimulus-direction change modeled as a rate step at switch_time_s.
RasterPlot direction_switch_scenario(double rate_before_hz, double rate_after_hz,
                                     double switch_time_s, double duration_s, std::size_t devices,
                                     double slot_duration_ms, std::uint64_t seed);

// g(t) = sum_{k>=0} s(t-k) F(k) * slot_ms (causal, truncated at t=0).
std::vector<double> keat_filter_response(std::span<const double> stimulus,
                                         std::span<const double> filter, double slot_duration_ms);

struct KeatParams {
  double theta = 1.0;
  std::vector<double> filter_f;    // tap k weighs the stimulus k slots back
  std::vector<double> feedback_p;  // tap k applies k+1 slots after a spike
  double noise_a_sigma = 0.0;      // additive, drawn once per slot
  double noise_b_sigma = 0.0;      // multiplicative, drawn once per emitted spike
  double slot_duration_ms = 1.0;

  static KeatParams defaults();
};

// Difference of exponentials: positive fast lobe, negative slow lobe.
std::vector<double> biphasic_filter(std::size_t taps, double tau_fast_slots,
                                    double tau_slow_slots, double negative_ratio);

// -depth * exp(-k / tau) for k = 0..taps-1.
std::vector<double> afterpotential_kernel(std::size_t taps, double depth, double tau_slots);

struct KeatTrace {
  std::vector<std::uint8_t> spikes;  // one entry per slot
  std::vector<double> potential;     // h(t)
};

// Threshold-crossing spike generator: a spike is emitted at slot t when
// h(t) > theta, h(t-1) <= theta and h rises (h(-1) is taken as 0).
KeatTrace keat_spikes(std::span<const double> stimulus, const KeatParams& p, std::uint64_t seed);

}  // namespace optonet
