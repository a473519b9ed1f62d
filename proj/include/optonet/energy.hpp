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
#include <string>
#include <vector>

#include "optonet/photonics.hpp"

namespace optonet {

inline constexpr double kFdaIntensityCapMwCm2 = 720.0;

// Ultrasound link and storage-capacitor parameters for one device.
struct EnergyParams {
  double source_mw_cm2 = 720.0;       // I_s at the transceiver
  double alpha_db_cm_mhz = 0.435;     // brain tissue attenuation
  double frequency_hz = 3.0e6;        // ultrasound / nanowire vibration frequency
  double depth_cm = 0.2;              // transceiver to device
  double harvester_area_cm2 = 1e-4;   // 100 x 100 um^2
  double eta = 0.5;                   // electromechanical conversion rate
  double v_g = 1.0;                   // generated voltage, V
  double c_cap_f = 10e-9;             // storage capacitance, F
  double e_max_j = 3.4313e-9;         // energy drawn by one LED pulse, J

  // Each stimulation pulse drains exactly one full charge.
  double led_pulse_energy_j() const noexcept { return e_max_j; }

  friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

// LED electrical model used to size e_max from the optics.
struct LedParams {
  double area_mm2 = 1e-4;     // 10 x 10 um emitter
  double pulse_ms = 1.0;
  double efficiency = 0.3;    // optical out / electrical in
  double distance_mm = 0.5;   // LED to target neuron

  friend bool operator==(const LedParams&, const LedParams&) = default;
};

// e_max = required_source_intensity(d) * area * pulse / efficiency, in joules.
double led_pulse_energy(const OpticsParams& optics, const LedParams& led);

// Human-readable reasons why p is inadmissible; empty when valid.
std::vector<std::string> energy_violations(const EnergyParams& p);

// Intensity reaching the harvester, mW/cm^2: I_s * 10^(-alpha * f_MHz * d / 10).
double intensity_at_depth(const EnergyParams& p);

// Electrical power after conversion, W.
double harvested_electrical_power(const EnergyParams& p);

// i_g = P_e / V_g, A. Throws std::domain_error if v_g <= 0.
double generated_current(const EnergyParams& p);

// Charge delivered per vibration cycle, C. Throws std::domain_error if f <= 0.
double charge_per_cycle(const EnergyParams& p);

// The four scalars that govern the cycle-level capacitor law.
struct ChargeModel {
  double v_g;
  double c_cap_f;
  double delta_q_c;
  double e_max_j;

  static ChargeModel from(const EnergyParams& p);
};

enum class CapacitorPhase { kCharging, kHolding, kDischarging };

// Cycles needed to charge from empty to e_max. Throws std::domain_error
// ("capacitor cannot reach e_max") unless 2 e_max < C V_g^2.
std::int64_t cycles_to_charge(const ChargeModel& m);
std::int64_t cycles_to_charge(const EnergyParams& p);
std::int64_t cycles_to_discharge(const ChargeModel& m);
std::int64_t cycles_to_discharge(const EnergyParams& p);

// Capacitor voltage after n cycles. kHolding is rejected with std::invalid_argument.
double voltage_at_cycle(const ChargeModel& m, double n_cycles, CapacitorPhase phase);
double voltage_at_cycle(const EnergyParams& p, double n_cycles, CapacitorPhase phase);

// Stored energy at wall-clock time t while charging continuously from empty:
// 0.5 C v(floor(f t))^2. Unclamped.
double stored_energy_at_time(const ChargeModel& m, double frequency_hz, double t_s);

struct CapacitorState {
  std::int64_t charge_cycles_elapsed = 0;
  double voltage = 0.0;
  double stored_energy = 0.0;
  CapacitorPhase phase = CapacitorPhase::kHolding;
  double cycle_remainder = 0.0;  // fractional cycle carried between charging slots

  static CapacitorState empty() { return {}; }
  static CapacitorState full(const EnergyParams& p);

  friend bool operator==(const CapacitorState&, const CapacitorState&) = default;
};

// Advances the capacitor by one slot. While charged, whole vibration cycles
// (f * slot plus the carried remainder) move the voltage along the charging
// law; stored energy saturates at e_max.
CapacitorState step_slot(const CapacitorState& s, const EnergyParams& p, bool being_charged,
                         double slot_duration_ms);

struct PulseResult {
  CapacitorState state;
  bool pulse_emitted;
};

// Fires the LED iff stored_energy >= e_max, draining e_max.
PulseResult discharge_pulse(const CapacitorState& s, const EnergyParams& p);

struct CurvePoint {
  double t_ms;
  std::int64_t n_cycles;
  double voltage_v;
  double energy_j;
};

// Charging curve from empty (saturating at e_max) or discharge curve from a
// full charge, sampled every step_ms up to duration_ms inclusive.
std::vector<CurvePoint> capacitor_curve(const EnergyParams& p, CapacitorPhase phase,
                                        double duration_ms, double step_ms);

}  // namespace optonet
