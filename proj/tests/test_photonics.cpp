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
#include <stdexcept>

#include "optonet/photonics.hpp"

namespace optonet {
namespace {

// Reference values from a 40-digit evaluation of the modified Beer-Lambert law.
constexpr double kDpf05 = 0.82815842046547535;
constexpr double kDpf10 = 1.36488095350255351;
constexpr double kT05 = 0.97143050666868943;
constexpr double kT10 = 0.90888049077289155;
constexpr double kT30 = 0.60370129371663278;
constexpr double kReq05 = 10.294097139581126;
constexpr double kDpfLimit = 3.8785122331710059;

TEST(Dpf, VanishesAtZeroDistance) { EXPECT_EQ(dpf(OpticsParams{}, 0.0), 0.0); }

TEST(Dpf, MatchesHighPrecisionReference) {
  const OpticsParams p;
  EXPECT_NEAR(dpf(p, 0.5), kDpf05, 1e-12);
  EXPECT_NEAR(dpf(p, 1.0), kDpf10, 1e-12);
  EXPECT_NEAR(dpf(p, 0.5), 0.8282, 1e-3);
}

TEST(Dpf, ApproachesLimitFromBelow) {
  const OpticsParams p;
  EXPECT_NEAR(dpf_limit(p), kDpfLimit, 1e-12);
  EXPECT_NEAR(dpf(p, 1e6), 3.8785, 1e-3);
  EXPECT_LT(dpf(p, 1e6), dpf_limit(p));
}

TEST(Dpf, RejectsBadInputs) {
  EXPECT_THROW(dpf(OpticsParams{}, -0.1), std::domain_error);
  OpticsParams p;
  p.mu_a_per_mm = 0.0;
  EXPECT_THROW(dpf(p, 1.0), std::domain_error);
  p = {};
  p.mu_s_prime_per_mm = -1.0;
  EXPECT_THROW(transmittance(p, 1.0), std::domain_error);
}

TEST(Transmittance, UnityAtSource) { EXPECT_EQ(transmittance(OpticsParams{}, 0.0), 1.0); }

TEST(Transmittance, MatchesHighPrecisionReference) {
  const OpticsParams p;
  EXPECT_NEAR(transmittance(p, 0.5), kT05, 1e-12);
  EXPECT_NEAR(transmittance(p, 1.0), kT10, 1e-12);
  EXPECT_NEAR(transmittance(p, 3.0), kT30, 1e-12);
  EXPECT_NEAR(transmittance(p, 0.5), 0.9714, 1e-3);
  EXPECT_NEAR(transmittance(p, 1.0), 0.9089, 1e-3);
}

TEST(Transmittance, GeometryConstantScalesExponentially) {
  OpticsParams p;
  p.g_const = -0.5;
  EXPECT_NEAR(transmittance(p, 1.0), kT10 * std::exp(-0.5), 1e-12);
}

TEST(RequiredSource, InvertsTransmittance) {
  OpticsParams p;
  EXPECT_DOUBLE_EQ(required_source_intensity(p, 0.0), 10.0);
  EXPECT_NEAR(required_source_intensity(p, 0.5), kReq05, 1e-9);
  EXPECT_NEAR(required_source_intensity(p, 0.5), 10.294, 0.01);
}

TEST(RequiredSource, LinearInTarget) {
  OpticsParams lo, hi;
  lo.target_mw_mm2 = kChr2ThresholdLowMwMm2;
  hi.target_mw_mm2 = kChr2ThresholdHighMwMm2;
  for (double d : {0.1, 0.5, 1.7}) {
    EXPECT_NEAR(required_source_intensity(lo, d) / required_source_intensity(hi, d), 8.0 / 12.0,
                1e-15);
  }
}

TEST(PhotonicsProperty, MonotoneInDistance) {
  const OpticsParams p;
  double prev_dpf = -1.0, prev_t = 2.0, prev_req = 0.0;
  for (int i = 0; i <= 3000; ++i) {
    const double d = i * 1e-3;
    const double a = dpf(p, d), t = transmittance(p, d), r = required_source_intensity(p, d);
    EXPECT_GT(a, prev_dpf);
    EXPECT_LT(t, prev_t);
    EXPECT_GT(r, prev_req);
    prev_dpf = a;
    prev_t = t;
    prev_req = r;
  }
}

}  // namespace
}  // namespace optonet
