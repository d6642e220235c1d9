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

#include <optional>
#include <string>

#include "json.hpp"
#include "numguard/core_types.hpp"

namespace numguard {

// How the channel cyclic prefix is sized for each numerology.
enum class PrefixMode {
  kFixed,   // one absolute duration for every numerology: cp_ratio / reference_delta_f
  kScaled,  // cp_ratio of each numerology's own T_OFDM
};

// How an interference threshold is tested against a spectrum.
enum class MaskMode {
  kPeak,        // every frequency beyond the guard stays below -theta
  kIntegrated,  // mean PSD over the adjacent (victim) band stays below -theta
};

// Model-wide defaults shared by the spectrum, guard optimizer and harness.
struct ModelConfig {
  PrefixMode prefix_mode = PrefixMode::kFixed;
  double cp_ratio = 1.0 / 16.0;
  double reference_delta_f_hz = 15e3;
  int sample_rate_multiplier = 4;  // FFT size per subcarrier count
  int grid_resolution_div = 16;    // analytic grid step = delta_f / div
  double span_obw = 3.0;           // analytic span beyond each band edge, in OBWs
  int alpha_grid_points = 33;
  MaskMode mask_mode = MaskMode::kPeak;

  double t_cp_ch_s(const Numerology& num) const;
  double sample_rate_hz(const Numerology& num) const;
  SymbolGeometry geometry(const Numerology& num, double alpha) const;

  void validate() const;

  // Keys absent from the document keep their current value.
  void merge_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  static ModelConfig from_file(const std::string& path);
  // Reads the file named by NUMGUARD_CONFIG when set, defaults otherwise.
  static ModelConfig from_environment();
};

}  // namespace numguard
