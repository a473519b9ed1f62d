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
#include <random>
#include <stdexcept>

#include "optonet/energy.hpp"
#include "optonet/photonics.hpp"

namespace optonet {
namespace {

EnergyParams at_frequency(double f) {
  EnergyParams p;
  p.frequency_hz = f;
  return p;
}

// v_g = 1 V, C = 10 nF, dQ = 1 nC, e_max = 2.5 nJ: sqrt(2 e_max / C v^2) = sqrt(0.5).
ChargeModel half_model() { return {1.0, 10e-9, 1e-9, 2.5e-9}; }

TEST(Attenuation, ZeroFrequencyIsLossless) {
  EXPECT_DOUBLE_EQ(intensity_at_depth(at_frequency(0.0)), 720.0);
}

TEST(Attenuation, MatchesDecibelLaw) {
  // Independent evaluation: 720 * exp(-ln(10) * 0.435 * f_MHz * 0.2 / 10).
  const auto oracle = [](double f_mhz) { return 720.0 * std::exp(-std::log(10.0) * 0.435 * f_mhz * 0.02); };
  EXPECT_NEAR(intensity_at_depth(at_frequency(3e6)), oracle(3.0), 1e-9);
  EXPECT_NEAR(intensity_at_depth(at_frequency(3e6)), 678.0044, 1e-4);
  EXPECT_NEAR(intensity_at_depth(at_frequency(1e6)), 705.7, 0.1);
}

TEST(HarvestedPower, AreaTimesEfficiency) {
  EnergyParams p = at_frequency(0.0);
  p.eta = 1.0;
  p.harvester_area_cm2 = 1.0;
  EXPECT_NEAR(harvested_electrical_power(p), 0.72, 1e-15);
  EXPECT_NEAR(harvested_electrical_power(at_frequency(0.0)) * 1e6, 36.0, 0.01);
  EXPECT_NEAR(harvested_electrical_power(at_frequency(3e6)) * 1e6, 33.88, 0.05);
}

TEST(GeneratedCurrent, PowerOverVoltage) {
  EXPECT_NEAR(generated_current(at_frequency(0.0)) * 1e6, 36.0, 1e-9);
  EnergyParams zero = at_frequency(0.0);
  zero.source_mw_cm2 = 0.0;
  EXPECT_EQ(generated_current(zero), 0.0);
  EnergyParams doubled = at_frequency(3e6);
  doubled.harvester_area_cm2 *= 2.0;
  EXPECT_NEAR(generated_current(doubled), 2.0 * generated_current(at_frequency(3e6)), 1e-18);
  EnergyParams bad;
  bad.v_g = 0.0;
  EXPECT_THROW(generated_current(bad), std::domain_error);
}

TEST(ChargePerCycle, CurrentOverFrequency) {
  // 500 Hz barely attenuates; the 36 uA oracle holds to within 0.01%.
  EXPECT_NEAR(charge_per_cycle(at_frequency(500.0)) * 1e9, 72.0, 0.01);
  const double q1 = charge_per_cycle(at_frequency(1e6));
  EnergyParams p2 = at_frequency(2e6);
  p2.alpha_db_cm_mhz = 0.0;
  EnergyParams p1 = at_frequency(1e6);
  p1.alpha_db_cm_mhz = 0.0;
  EXPECT_NEAR(charge_per_cycle(p2), charge_per_cycle(p1) / 2.0, 1e-24);
  EXPECT_GT(q1, 0.0);
  EXPECT_THROW(charge_per_cycle(at_frequency(0.0)), std::domain_error);
}

TEST(Cycles, ChargeFromEmpty) {
  EXPECT_EQ(cycles_to_charge(half_model()), 13);
  ChargeModel tiny = half_model();
  tiny.e_max_j = 1e-30;
  EXPECT_EQ(cycles_to_charge(tiny), 1);
}

TEST(Cycles, ExactlyOneCycleWhenLogTermIsMinusOne) {
  const double e = std::exp(1.0);
  ChargeModel m{1.0, 10e-9, 10e-9, 0.5 * 10e-9 * std::pow(1.0 - 1.0 / e, 2)};
  EXPECT_EQ(cycles_to_charge(m), 1);
  m.e_max_j = 0.5 * 10e-9 * std::exp(-2.0);
  EXPECT_EQ(cycles_to_discharge(m), 1);
}

TEST(Cycles, Discharge) {
  EXPECT_EQ(cycles_to_discharge(half_model()), 4);
  ChargeModel near_full = half_model();
  near_full.e_max_j = 0.5 * 10e-9 * (1.0 - 1e-15);
  EXPECT_EQ(cycles_to_discharge(near_full), 0);
}

TEST(Cycles, UnreachableEnergyThrows) {
  ChargeModel m = half_model();
  m.e_max_j = 5e-9;
  EXPECT_THROW(cycles_to_charge(m), std::domain_error);
}

TEST(Voltage, Endpoints) {
  const auto m = half_model();
  EXPECT_EQ(voltage_at_cycle(m, 0, CapacitorPhase::kCharging), 0.0);
  EXPECT_EQ(voltage_at_cycle(m, 0, CapacitorPhase::kDischarging), 1.0);
  EXPECT_NEAR(voltage_at_cycle(m, 13, CapacitorPhase::kCharging), 0.7275, 1e-4);
  EXPECT_THROW(voltage_at_cycle(m, 1, CapacitorPhase::kHolding), std::invalid_argument);
}

TEST(Voltage, ChargeAndDischargeSumToSupply) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int i = 0; i < 500; ++i) {
    const ChargeModel m{u(rng), u(rng) * 1e-8, u(rng) * 1e-9, 0.0};
    const double n = std::floor(u(rng) * 20);
    EXPECT_NEAR(voltage_at_cycle(m, n, CapacitorPhase::kCharging) +
                    voltage_at_cycle(m, n, CapacitorPhase::kDischarging),
                m.v_g, 1e-12);
  }
}

TEST(CyclesProperty, CeilingIsTight) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    ChargeModel m{0.5 + 4.5 * u(rng), (1 + 99 * u(rng)) * 1e-9, (0.01 + 5 * u(rng)) * 1e-9, 0.0};
    const double fraction = 0.01 + 0.97 * u(rng);
    m.e_max_j = 0.5 * m.c_cap_f * m.v_g * m.v_g * fraction * fraction;
    const double v_full = std::sqrt(2.0 * m.e_max_j / m.c_cap_f);
    const auto n = cycles_to_charge(m);
    EXPECT_GE(voltage_at_cycle(m, static_cast<double>(n), CapacitorPhase::kCharging), v_full * (1 - 1e-12));
    if (n > 1) {
      EXPECT_LT(voltage_at_cycle(m, static_cast<double>(n - 1), CapacitorPhase::kCharging), v_full);
    }
  }
}

TEST(StepSlot, HoldLeavesStateUntouched) {
  EnergyParams p;
  CapacitorState s = CapacitorState::empty();
  s.voltage = 0.3;
  s.stored_energy = 0.5 * p.c_cap_f * 0.09;
  s.cycle_remainder = 0.25;
  EXPECT_EQ(step_slot(s, p, false, 1.0), s);
}

TEST(StepSlot, AppliesWholeCyclesOfOneSlot) {
  // Keep e_max out of reach of 3000 cycles so the clamp does not engage.
  EnergyParams p;
  p.e_max_j = 0.49 * p.c_cap_f * p.v_g * p.v_g;
  p.harvester_area_cm2 = 1e-8;
  const CapacitorState s = step_slot(CapacitorState::empty(), p, true, 1.0);
  EXPECT_EQ(s.charge_cycles_elapsed, 3000);
  EXPECT_NEAR(s.voltage, voltage_at_cycle(p, 3000, CapacitorPhase::kCharging), 1e-12);
  const CapacitorState s2 = step_slot(s, p, true, 1.0);
  EXPECT_NEAR(s2.voltage, voltage_at_cycle(p, 6000, CapacitorPhase::kCharging), 1e-12);
}

TEST(StepSlot, CarriesFractionalCycles) {
  EnergyParams p;
  p.frequency_hz = 500.0;
  p.e_max_j = 0.49 * p.c_cap_f;
  p.harvester_area_cm2 = 1e-9;
  CapacitorState s = CapacitorState::empty();
  s = step_slot(s, p, true, 1.0);
  EXPECT_EQ(s.charge_cycles_elapsed, 0);
  EXPECT_DOUBLE_EQ(s.cycle_remainder, 0.5);
  s = step_slot(s, p, true, 1.0);
  EXPECT_EQ(s.charge_cycles_elapsed, 1);
  EXPECT_NEAR(s.voltage, voltage_at_cycle(p, 1, CapacitorPhase::kCharging), 1e-15);
}

TEST(StepSlot, ConvergesMonotonicallyToEmax) {
  EnergyParams p;
  p.frequency_hz = 5e3;
  CapacitorState s = CapacitorState::empty();
  double prev = 0.0;
  for (int i = 0; i < 200; ++i) {
    s = step_slot(s, p, true, 1.0);
    EXPECT_GE(s.stored_energy, prev);
    EXPECT_LE(s.stored_energy, p.e_max_j);
    prev = s.stored_energy;
  }
  EXPECT_EQ(s.stored_energy, p.e_max_j);
}

TEST(Discharge, DrainsExactlyOnePulse) {
  EnergyParams p;
  const auto full = CapacitorState::full(p);
  const auto fired = discharge_pulse(full, p);
  EXPECT_TRUE(fired.pulse_emitted);
  EXPECT_EQ(fired.state.stored_energy, 0.0);

  CapacitorState half = full;
  half.stored_energy = 0.5 * p.e_max_j;
  const auto dud = discharge_pulse(half, p);
  EXPECT_FALSE(dud.pulse_emitted);
  EXPECT_EQ(dud.state, half);
}

TEST(Discharge, ChargeFireFire) {
  EnergyParams p;
  auto s = step_slot(CapacitorState::empty(), p, true, 1.0);
  const auto first = discharge_pulse(s, p);
  const auto second = discharge_pulse(first.state, p);
  EXPECT_TRUE(first.pulse_emitted);
  EXPECT_FALSE(second.pulse_emitted);
}

TEST(Curve, ChargingSaturatesAndDischargingStartsFull) {
  EnergyParams p;
  p.frequency_hz = 500.0;
  p.harvester_area_cm2 = 1e-6;
  const auto charge = capacitor_curve(p, CapacitorPhase::kCharging, 10.0, 1.0);
  ASSERT_EQ(charge.size(), 11u);
  EXPECT_EQ(charge.front().energy_j, 0.0);
  for (std::size_t i = 1; i < charge.size(); ++i) EXPECT_GE(charge[i].energy_j, charge[i - 1].energy_j);
  EXPECT_LE(charge.back().energy_j, p.e_max_j);
  const auto dis = capacitor_curve(p, CapacitorPhase::kDischarging, 10.0, 1.0);
  EXPECT_NEAR(dis.front().energy_j, p.e_max_j, 1e-20);
  for (std::size_t i = 1; i < dis.size(); ++i) EXPECT_LE(dis[i].energy_j, dis[i - 1].energy_j);
}

TEST(StoredEnergy, WallClockIndependentOfFrequencyAtFixedPower) {
  // With dQ = P / (v_g f) the exponent n / k equals t P / (v_g^2 C) at whole
  // cycles, whatever f is. Sample at whole cycles of the slow carrier.
  const double power_w = 1e-6, c = 10e-9;
  const ChargeModel slow{1.0, c, power_w / 500.0, 0.0};
  const ChargeModel fast{1.0, c, power_w / 3e6, 0.0};
  for (int k = 1; k <= 20; ++k) {
    const double t = k / 500.0;
    const double oracle = 0.5 * c * std::pow(1.0 - std::exp(-t * power_w / c), 2);
    EXPECT_NEAR(stored_energy_at_time(slow, 500.0, t), oracle, 0.02 * oracle);
    EXPECT_NEAR(stored_energy_at_time(fast, 3e6, t), oracle, 0.02 * oracle);
  }
}

TEST(LedEnergy, SizedFromOptics) {
  const double expected = 10.294097139581126 * 1e-4 * 1.0 * 1e-6 / 0.3;
  EXPECT_NEAR(led_pulse_energy(OpticsParams{}, LedParams{}), expected, 1e-18);
}

TEST(Violations, FdaCapCitesLimit) {
  EnergyParams p;
  p.source_mw_cm2 = 800.0;
  const auto v = energy_violations(p);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().find("720"), std::string::npos);
  EXPECT_TRUE(energy_violations(EnergyParams{}).empty());
}

TEST(Violations, UnreachableEmax) {
  EnergyParams p;
  p.e_max_j = 0.6 * p.c_cap_f;
  EXPECT_FALSE(energy_violations(p).empty());
}

}  // namespace
}  // namespace optonet
