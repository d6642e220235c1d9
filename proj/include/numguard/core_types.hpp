// Copyright 2026 The numguard Authors
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
#include <string_view>
#include <vector>

#include "json.hpp"

namespace numguard {

enum class UseCase { kEmbb, kUrllc, kMmtc, kOther };

std::string_view to_string(UseCase use_case);
UseCase use_case_from_string(std::string_view label);

// One bandwidth part's parameter bundle. Powers and SIRs stay in dB.
struct Numerology {
  std::string id;
  double delta_f_hz = 15e3;
  int num_subcarriers = 256;
  double power_db = 0.0;
  double required_sir_db = 0.0;
  UseCase use_case = UseCase::kOther;

  // Occupied bandwidth, num_subcarriers * delta_f.
  double obw_hz() const { return num_subcarriers * delta_f_hz; }
  double t_ofdm_s() const { return 1.0 / delta_f_hz; }

  // Throws InvalidArgument unless delta_f is an NR spacing (15/30/60/120 kHz),
  // num_subcarriers > 0 and required_sir >= 0.
  void validate() const;

  friend bool operator==(const Numerology&, const Numerology&) = default;
};

// Allowed interference level on the adjacent band; a scalar brick-wall bound.
struct ThresholdSpec {
  double theta_db = 0.0;
  double source_delta_f_hz = 15e3;
};

// Durations of one windowed-OFDM symbol.
struct SymbolGeometry {
  double t_ofdm_s = 0.0;    // useful symbol, 1 / delta_f
  double t_cp_ch_s = 0.0;   // channel cyclic prefix
  double t_cp_win_s = 0.0;  // windowing extension (the guard duration)
  double sample_rate_hz = 0.0;

  // Spacing between consecutive symbol starts after overlap-add.
  double period_s() const { return t_ofdm_s + t_cp_ch_s + t_cp_win_s; }

  void validate() const;
};

// A (GB, GD) pair and the efficiency it yields.
struct GuardAllocation {
  double guard_band_hz = 0.0;  // per band edge
  double alpha = 0.0;
  double guard_duration_s = 0.0;
  double eta_time = 1.0;
  double eta_freq = 1.0;
  double eta = 1.0;

  // Builds the allocation for a numerology whose symbol has the given channel
  // prefix; GD = alpha * T_OFDM and eta = eta_time * eta_freq.
  static GuardAllocation make(const Numerology& num, double t_cp_ch_s, double alpha,
                              double guard_band_hz);
};

// theta = P_interferer - P_victim + SIR_victim, all in dB.
double compute_theta(const Numerology& interferer, const Numerology& victim);

// T_OFDM / (T_OFDM + T_CP-Ch + T_CP-Win).
double eta_time(const SymbolGeometry& geom);

// OBW / (OBW + 2 GB).
double eta_freq(double obw_hz, double gb_hz);

void to_json(nlohmann::json& j, const Numerology& num);
void from_json(const nlohmann::json& j, Numerology& num);

std::vector<Numerology> numerologies_from_json(const nlohmann::json& doc);
nlohmann::json numerologies_to_json(const std::vector<Numerology>& nums);
std::vector<Numerology> load_numerologies(const std::string& path);

}  // namespace numguard
