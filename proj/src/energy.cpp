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

#include "optonet/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optonet {

namespace {

// ceil() that ignores representation noise just above an integer.
std::int64_t ceil_snapped(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(x));
}

// sqrt(2 e_max / (C V_g^2)), the full-charge voltage as a fraction of V_g.
double full_fraction(const ChargeModel& m) {
  if (!(m.v_g > 0.0) || !(m.c_cap_f > 0.0) || !(m.delta_q_c > 0.0) || !(m.e_max_j >= 0.0)) {
    throw std::domain_error("capacitor parameters must be positive");
  }
  const double ratio = 2.0 * m.e_max_j / (m.c_cap_f * m.v_g * m.v_g);
  if (!(ratio < 1.0)) throw std::domain_error("capacitor cannot reach e_max");
  return std::sqrt(ratio);
}

double cycle_constant(const ChargeModel& m) { return m.v_g * m.c_cap_f / m.delta_q_c; }

}  // namespace

double led_pulse_energy(const OpticsParams& optics, const LedParams& led) {
  // mW/mm^2 * mm^2 * ms = uJ.
  const double microjoules =
      required_source_intensity(optics, led.distance_mm) * led.area_mm2 * led.pulse_ms;
  return microjoules * 1e-6 / led.efficiency;
}

std::vector<std::string> energy_violations(const EnergyParams& p) {
  std::vector<std::string> out;
  if (p.source_mw_cm2 > kFdaIntensityCapMwCm2) {
    out.push_back("source intensity " + std::to_string(p.source_mw_cm2) +
                  " mW/cm^2 exceeds the FDA limit of 720 mW/cm^2");
  }
  auto positive = [&out](double v, const char* name) {
    if (!(v > 0.0)) out.push_back(std::string(name) + " must be > 0");
  };
  positive(p.source_mw_cm2, "source intensity");
  positive(p.alpha_db_cm_mhz, "attenuation coefficient");
  positive(p.frequency_hz, "ultrasound frequency");
  positive(p.depth_cm, "depth");
  positive(p.harvester_area_cm2, "harvester area");
  positive(p.v_g, "generated voltage");
  positive(p.c_cap_f, "capacitance");
  positive(p.e_max_j, "e_max");
  if (!(p.eta > 0.0 && p.eta <= 1.0)) out.push_back("conversion rate eta must lie in (0, 1]");
  if (p.c_cap_f > 0.0 && p.v_g > 0.0 && !(2.0 * p.e_max_j < p.c_cap_f * p.v_g * p.v_g)) {
    out.push_back("capacitor cannot reach e_max: need 2 e_max < C V_g^2");
  }
  return out;
}

double intensity_at_depth(const EnergyParams& p) {
  const double f_mhz = p.frequency_hz / 1e6;
  return p.source_mw_cm2 * std::pow(10.0, -p.alpha_db_cm_mhz * f_mhz * p.depth_cm / 10.0);
}

double harvested_electrical_power(const EnergyParams& p) {
  // mW/cm^2 * cm^2 = mW.
  return intensity_at_depth(p) * p.harvester_area_cm2 * p.eta * 1e-3;
}

double generated_current(const EnergyParams& p) {
  if (!(p.v_g > 0.0)) throw std::domain_error("generated voltage must be positive");
  return harvested_electrical_power(p) / p.v_g;
}

double charge_per_cycle(const EnergyParams& p) {
  if (!(p.frequency_hz > 0.0)) throw std::domain_error("vibration frequency must be positive");
  return generated_current(p) / p.frequency_hz;
}

ChargeModel ChargeModel::from(const EnergyParams& p) {
  return {p.v_g, p.c_cap_f, charge_per_cycle(p), p.e_max_j};
}

std::int64_t cycles_to_charge(const ChargeModel& m) {
  const double frac = full_fraction(m);
  const auto n = ceil_snapped(-cycle_constant(m) * std::log1p(-frac));
  return m.e_max_j > 0.0 ? std::max<std::int64_t>(n, 1) : n;
}

std::int64_t cycles_to_charge(const EnergyParams& p) { return cycles_to_charge(ChargeModel::from(p)); }

std::int64_t cycles_to_discharge(const ChargeModel& m) {
  const double frac = full_fraction(m);
  if (frac == 0.0) throw std::domain_error("discharge cycles undefined for e_max = 0");
  return ceil_snapped(-cycle_constant(m) * std::log(frac));
}

std::int64_t cycles_to_discharge(const EnergyParams& p) {
  return cycles_to_discharge(ChargeModel::from(p));
}

double voltage_at_cycle(const ChargeModel& m, double n_cycles, CapacitorPhase phase) {
  if (!(n_cycles >= 0.0)) throw std::domain_error("cycle count must be non-negative");
  const double decay = std::exp(-n_cycles / cycle_constant(m));
  switch (phase) {
    case CapacitorPhase::kCharging: return m.v_g * (1.0 - decay);
    case CapacitorPhase::kDischarging: return m.v_g * decay;
    case CapacitorPhase::kHolding: break;
  }
  throw std::invalid_argument("voltage_at_cycle needs a charging or discharging phase");
}

double voltage_at_cycle(const EnergyParams& p, double n_cycles, CapacitorPhase phase) {
  return voltage_at_cycle(ChargeModel::from(p), n_cycles, phase);
}

double stored_energy_at_time(const ChargeModel& m, double frequency_hz, double t_s) {
  const double n = std::floor(frequency_hz * t_s + 1e-9);
  const double v = voltage_at_cycle(m, n, CapacitorPhase::kCharging);
  return 0.5 * m.c_cap_f * v * v;
}

CapacitorState CapacitorState::full(const EnergyParams& p) {
  CapacitorState s;
  s.stored_energy = p.e_max_j;
  s.voltage = std::sqrt(2.0 * p.e_max_j / p.c_cap_f);
  return s;
}

CapacitorState step_slot(const CapacitorState& s, const EnergyParams& p, bool being_charged,
                         double slot_duration_ms) {
  if (!being_charged) return s;

  const double available = p.frequency_hz * slot_duration_ms * 1e-3 + s.cycle_remainder;
  const double whole = std::floor(available + 1e-9);
  CapacitorState next = s;
  next.phase = CapacitorPhase::kCharging;
  next.cycle_remainder = std::max(0.0, available - whole);
  next.charge_cycles_elapsed += static_cast<std::int64_t>(whole);

  if (s.stored_energy >= p.e_max_j) return next;

  const ChargeModel m = ChargeModel::from(p);
  // Shift along v(n) = V_g (1 - exp(-n / k)) by `whole` cycles from the current voltage.
  double v = p.v_g - (p.v_g - s.voltage) * std::exp(-whole / cycle_constant(m));
  double e = 0.5 * p.c_cap_f * v * v;
  if (e >= p.e_max_j) {
    e = p.e_max_j;
    v = std::sqrt(2.0 * p.e_max_j / p.c_cap_f);
  }
  next.voltage = v;
  next.stored_energy = e;
  return next;
}

PulseResult discharge_pulse(const CapacitorState& s, const EnergyParams& p) {
  if (!(s.stored_energy >= p.e_max_j)) return {s, false};
  CapacitorState next = s;
  next.stored_energy = std::max(0.0, s.stored_energy - p.e_max_j);
  next.voltage = std::sqrt(2.0 * next.stored_energy / p.c_cap_f);
  next.phase = CapacitorPhase::kDischarging;
  return {next, true};
}

std::vector<CurvePoint> capacitor_curve(const EnergyParams& p, CapacitorPhase phase,
                                        double duration_ms, double step_ms) {
  if (!(step_ms > 0.0)) throw std::invalid_argument("curve step must be positive");
  if (phase == CapacitorPhase::kHolding) {
    throw std::invalid_argument("curve needs a charging or discharging phase");
  }
  const ChargeModel m = ChargeModel::from(p);
  const double v_full = std::sqrt(2.0 * p.e_max_j / p.c_cap_f);
  std::vector<CurvePoint> out;
  const auto steps = static_cast<std::size_t>(std::floor(duration_ms / step_ms + 1e-9));
  out.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t_ms = static_cast<double>(i) * step_ms;
    const double n = std::floor(p.frequency_hz * t_ms * 1e-3 + 1e-9);
    double v = 0.0;
    if (phase == CapacitorPhase::kCharging) {
      v = std::min(voltage_at_cycle(m, n, phase), v_full);
    } else {
      v = v_full * std::exp(-n / cycle_constant(m));
    }
    const double e = v == v_full ? p.e_max_j : 0.5 * p.c_cap_f * v * v;
    out.push_back({t_ms, static_cast<std::int64_t>(n), v, e});
  }
  return out;
}

}  // namespace optonet
