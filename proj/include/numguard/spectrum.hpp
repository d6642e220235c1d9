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

#include <cstddef>
#include <string>
#include <vector>

#include "numguard/config.hpp"
#include "numguard/core_types.hpp"
#include "numguard/waveform.hpp"

namespace numguard {

// Raised-cosine window frequency response at u (units of 1/T), finite at the
// removable singularities u = 0 and 2 alpha u = +-1.
double rc_spectrum(double u, double alpha);

struct FrequencyGrid {
  double start_hz = 0.0;
  double step_hz = 1.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return start_hz + step_hz * static_cast<double>(i); }
  std::vector<double> values() const;

  // Uniform grid from lo to hi inclusive (hi rounded down to a whole step).
  static FrequencyGrid spanning(double lo_hz, double hi_hz, double step_hz);
};

// Sampled PSD in dB relative to the in-band average.
struct PsdCurve {
  std::vector<double> freqs_hz;
  std::vector<double> psd_db;
  double resolution_hz = 0.0;
};

// Continuous-time description of one windowed-OFDM signal: subcarrier layout,
// symbol period and the taper applied on each side of an optional split.
struct PulseShape {
  double delta_f_hz = 15e3;
  int num_subcarriers = 256;
  double period_s = 0.0;
  double ramp_left_s = 0.0;
  double ramp_right_s = 0.0;
  int split_index = 0;  // subcarriers below use ramp_left_s

  // Period T_OFDM + T_CP-Ch + T_CP-Win; taper T_CP-Win on both sides.
  static PulseShape from_geometry(const Numerology& num, const SymbolGeometry& geom);
  // Per-side roll-offs; the symbol reserves the larger taper.
  static PulseShape multi_window(const Numerology& num, const SymbolGeometry& geom,
                                 double alpha_left, double alpha_right, int split_index);
  static PulseShape from_stream(const SymbolStream& stream);

  // Frequency of subcarrier k relative to the carrier.
  double subcarrier_hz(int k) const {
    return (k - num_subcarriers / 2) * delta_f_hz;
  }
  double left_edge_hz() const { return subcarrier_hz(0) - 0.5 * delta_f_hz; }
  double right_edge_hz() const { return subcarrier_hz(num_subcarriers - 1) + 0.5 * delta_f_hz; }

  void validate() const;
};

struct AnalyticOptions {
  // When positive, adds spectral images at multiples of this rate (|m| <= images)
  // to model a sampled stream.
  double sample_rate_hz = 0.0;
  int images = 0;
  // In-band reference grid step = delta_f / reference_div.
  int reference_div = 16;
};

// Unnormalized sum over subcarriers of |G|^2 at each frequency.
std::vector<double> analytic_psd_linear(const PulseShape& shape, std::span<const double> freqs_hz,
                                        const AnalyticOptions& options = {});
// Mean of analytic_psd_linear over the occupied band.
double analytic_inband_mean(const PulseShape& shape, const AnalyticOptions& options = {});

PsdCurve analytic_psd(const PulseShape& shape, const FrequencyGrid& grid,
                      const AnalyticOptions& options = {});
PsdCurve analytic_psd(const Numerology& num, double alpha, const ModelConfig& config,
                      const FrequencyGrid& grid);

// Band plus config.span_obw occupied bandwidths on each side at delta_f / div.
FrequencyGrid default_grid(const Numerology& num, const ModelConfig& config);

struct WelchOptions {
  int segment_factor = 8;  // segment length = segment_factor * fft_size
  double overlap = 0.75;
  int min_symbols = 100;
};

// Welch estimate with a 4-term Blackman-Harris window, over the FFT bins from
// -fs/2 to fs/2, normalized to the mean of the in-band bins.
PsdCurve welch_psd(const SymbolStream& stream, const WelchOptions& options = {});

// welch_psd resampled onto grid (linear interpolation of power).
PsdCurve empirical_psd(const SymbolStream& stream, const FrequencyGrid& grid,
                       const WelchOptions& options = {});

// Expected value of welch_psd for a stream of this shape: the aliased analytic
// PSD smoothed by the estimator's spectral window, on the same bins and with
// the same in-band normalization.
PsdCurve expected_welch_psd(const PulseShape& shape, double sample_rate_hz, int fft_size,
                            const WelchOptions& options = {}, int images = 8);

std::vector<double> blackman_harris(std::size_t length);

// Normalized PSD beyond the right band edge of one pulse shape, with suffix
// statistics used to size guard bands.
class GuardProfile {
 public:
  GuardProfile(const PulseShape& shape, const ModelConfig& config);

  double step_hz() const { return step_hz_; }
  std::size_t size() const { return level_db_.size(); }
  double offset_hz(std::size_t i) const { return step_hz_ * static_cast<double>(i); }
  const std::vector<double>& level_db() const { return level_db_; }
  // Highest level at or beyond each offset.
  const std::vector<double>& tail_peak_db() const { return tail_peak_db_; }

  // Smallest offset beyond which the threshold holds, before quantization.
  // kIntegrated averages over victim_bw_hz (defaults to the own OBW).
  // Throws GridExhausted when the span never gets there.
  double required_offset_hz(double theta_db, MaskMode mode = MaskMode::kPeak,
                            double victim_bw_hz = 0.0) const;

  // Lowest level a full-length tail reaches on the span, in dB.
  double deepest_db() const { return tail_peak_db_[starts_ - 1]; }

 private:
  double step_hz_;
  double obw_hz_;
  std::size_t starts_ = 0;  // offsets eligible as a peak-mode guard
  std::vector<double> level_db_;
  std::vector<double> tail_peak_db_;
  std::vector<double> prefix_linear_;
};

// Rounds gb up to a whole number of granularity steps.
double quantize_guard(double gb_hz, double granularity_hz);

// Guard band beyond the band edge for which the analytic PSD of num with
// roll-off alpha stays at or below -theta. granularity 0 means num.delta_f.
double required_gb(const Numerology& num, double alpha, double theta_db, const ModelConfig& config,
                   double granularity_hz = 0.0);

// CSV with header "freq_hz,psd_db".
void write_psd_csv(const PsdCurve& curve, const std::string& path);

}  // namespace numguard
