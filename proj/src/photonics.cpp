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

#include "optonet/photonics.hpp"

#include <cmath>
#include <stdexcept>

namespace optonet {

namespace {

void check(const OpticsParams& p, double d) {
  if (!(p.mu_a_per_mm > 0.0) || !(p.mu_s_prime_per_mm > 0.0)) {
    throw std::domain_error("optical coefficients must be positive");
  }
  if (!(d >= 0.0)) throw std::domain_error("distance must be non-negative");
}

}  // namespace

double dpf_limit(const OpticsParams& p) {
  check(p, 0.0);
  return 0.5 * std::sqrt(3.0 * p.mu_s_prime_per_mm / p.mu_a_per_mm);
}

double dpf(const OpticsParams& p, double distance_mm) {
  check(p, distance_mm);
  const double k = std::sqrt(3.0 * p.mu_a_per_mm * p.mu_s_prime_per_mm);
  // 1 - 1/(1 + dk) == dk/(1 + dk); avoids cancellation for small d.
  const double kd = distance_mm * k;
  return dpf_limit(p) * (kd / (1.0 + kd));
}

double transmittance(const OpticsParams& p, double distance_mm) {
  return std::exp(-p.mu_a_per_mm * distance_mm * dpf(p, distance_mm) + p.g_const);
}

double required_source_intensity(const OpticsParams& p, double distance_mm) {
  return p.target_mw_mm2 / transmittance(p, distance_mm);
}

}  // namespace optonet
