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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "numguard/core_types.hpp"

namespace numguard {

// Raised-cosine window shape. alpha * n_t is rounded to the nearest sample.
struct WindowParams {
  double alpha = 0.0;
  int n_t = 0;
  // Per-side roll-offs for multi-window operation.
  std::optional<double> alpha_left;
  std::optional<double> alpha_right;

  int ramp_samples() const;
  void validate() const;
};

// g[n] of length n_t + round(alpha n_t): raised-cosine ramp-up, flat top over
// [ramp, n_t], mirrored ramp-down. alpha == 0 gives n_t ones.
std::vector<double> rc_window(const WindowParams& params);
std::vector<double> rc_window_samples(int n_t, int ramp);

// Complex subcarrier values, one row of num_subcarriers per symbol. Subcarrier
// k sits at (k - num_subcarriers / 2) * delta_f from the carrier.
class DataGrid {
 public:
  DataGrid(int num_subcarriers, int num_symbols);

  int num_subcarriers() const { return num_subcarriers_; }
  int num_symbols() const { return num_symbols_; }
  std::span<std::complex<double>> symbol(int s);
  std::span<const std::complex<double>> symbol(int s) const;

 private:
  int num_subcarriers_;
  int num_symbols_;
  std::vector<std::complex<double>> values_;
};

// Unit-power 16-QAM from a seeded generator.
DataGrid qam16_grid(int num_subcarriers, int num_symbols, std::uint64_t seed);

// Windowed-OFDM baseband samples plus the sampled geometry that produced them.
struct SymbolStream {
  std::vector<std::complex<double>> samples;
  double sample_rate_hz = 0.0;
  SymbolGeometry geometry;  // durations after rounding to whole samples
  int num_symbols = 0;
  int num_subcarriers = 0;
  int fft_size = 0;
  int cp_samples = 0;      // channel prefix
  int ramp_left = 0;       // taper of subcarriers below the split
  int ramp_right = 0;      // taper of subcarriers at/above the split
  int ramp_max = 0;        // windowing extension reserved in every symbol
  int split_index = 0;
  int period_samples = 0;  // fft_size + cp_samples + ramp_max

  double delta_f_hz() const { return sample_rate_hz / fft_size; }
};

// Per symbol: inverse FFT, cyclic prefix of T_CP-Ch + T_CP-Win, cyclic suffix
// of T_CP-Win, raised-cosine taper, then overlap-add of adjacent tapers.
// Only t_ofdm, t_cp_ch and sample_rate are read from geom; the windowing
// extension comes from win.alpha.
SymbolStream synthesize_wofdm(const DataGrid& data, const SymbolGeometry& geom,
                              const WindowParams& win);

// Subcarriers below split_index are tapered with alpha_left, the rest with
// alpha_right. Every symbol reserves the larger extension; the side with the
// shorter taper keeps the remainder as flat prefix.
SymbolStream synthesize_multiwindow(const DataGrid& data, const SymbolGeometry& geom,
                                    const WindowParams& win, int split_index);

// Writes interleaved re/im float64 little-endian to path and a JSON sidecar
// describing the geometry to path + ".json".
void write_raw_samples(const SymbolStream& stream, const std::string& path);

}  // namespace numguard
