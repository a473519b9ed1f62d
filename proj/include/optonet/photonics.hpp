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

namespace optonet {

// Optical properties of brain tissue. Distances are in mm, intensities in mW/mm^2.
struct OpticsParams {
  double mu_a_per_mm = 0.07;         // absorption coefficient
  double mu_s_prime_per_mm = 1.404;  // reduced scattering coefficient
  double g_const = 0.0;              // medium/geometry constant, additive in the exponent
  double target_mw_mm2 = 10.0;       // ChR2 activation threshold, nominally 8..12
  double wavelength_nm = 470.0;      // informational only

  friend bool operator==(const OpticsParams&, const OpticsParams&) = default;
};

inline constexpr double kChr2ThresholdLowMwMm2 = 8.0;
inline constexpr double kChr2ThresholdHighMwMm2 = 12.0;

// Differential pathlength factor at source distance d (modified Beer-Lambert).
// Throws std::domain_error for d < 0 or non-positive coefficients.
double dpf(const OpticsParams& p, double distance_mm);

// Supremum of dpf() as d grows without bound: 0.5 * sqrt(3 mu_s' / mu_a).
double dpf_limit(const OpticsParams& p);

// Intensity ratio I(d)/I0 = exp(-mu_a * d * DPF(d) + G).
double transmittance(const OpticsParams& p, double distance_mm);

// LED irradiance needed at the source so that target_mw_mm2 arrives at d.
double required_source_intensity(const OpticsParams& p, double distance_mm);

}  // namespace optonet
