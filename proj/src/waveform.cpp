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

#include "numguard/waveform.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>

#include "numguard/error.hpp"
#include "numguard/fft.hpp"
#include "numguard/kernels/kernels.hpp"

namespace numguard {

namespace {

void check_alpha(double alpha, const char* name) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  }
}

struct Layout {
  int fft_size = 0;
  int cp_samples = 0;
};

Layout layout_for(const DataGrid& data, const SymbolGeometry& geom) {
  geom.validate();
  if (!(geom.sample_rate_hz > 0.0)) throw InvalidArgument("sample rate must be positive");
  const double fft_exact = geom.t_ofdm_s * geom.sample_rate_hz;
  const double fft_rounded = std::round(fft_exact);
  if (std::abs(fft_exact - fft_rounded) > 1e-6 * fft_exact) {
    throw InvalidArgument("T_OFDM is not a whole number of samples at this sample rate");
  }
  Layout out;
  out.fft_size = static_cast<int>(fft_rounded);
  out.cp_samples = static_cast<int>(std::lround(geom.t_cp_ch_s * geom.sample_rate_hz));
  if (out.fft_size < 2 * data.num_subcarriers()) {
    throw InvalidArgument("sample rate must be at least twice the occupied bandwidth");
  }
  return out;
}

int ramp_for(double alpha, int fft_size) {
  return static_cast<int>(std::lround(alpha * fft_size));
}

// Synthesizes subcarriers [first, last) with taper `ramp` into a stream whose
// symbols reserve `ramp_max` samples of windowing extension.
void render_partition(const DataGrid& data, const Layout& layout, int first, int last, int ramp,
                      int ramp_max, std::span<std::complex<double>> out) {
  const int n = layout.fft_size;
  const int period = n + layout.cp_samples + ramp_max;
  const int extended = period + ramp;
  const int body_offset = layout.cp_samples + ramp_max;
  const std::vector<double> window = rc_window_samples(period, ramp);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.num_subcarriers()));
  const int half = data.num_subcarriers() / 2;

  FftPlan ifft(static_cast<std::size_t>(n), FftPlan::Direction::kInverse);
  std::vector<std::complex<double>> spectrum(n);
  std::vector<std::complex<double>> body(n);
  std::vector<std::complex<double>> ext(extended);

  for (int s = 0; s < data.num_symbols(); ++s) {
    std::fill(spectrum.begin(), spectrum.end(), std::complex<double>{});
    const auto row = data.symbol(s);
    for (int k = first; k < last; ++k) {
      const int bin = ((k - half) % n + n) % n;
      spectrum[bin] = row[k] * scale;
    }
    ifft.execute(spectrum, body);
    for (int j = 0; j < extended; ++j) {
      ext[j] = body[((j - body_offset) % n + n) % n];
    }
    const std::size_t start = static_cast<std::size_t>(s) * period;
    kernels::window_accumulate(ext, window, out.subspan(start, extended));
  }
}

SymbolStream make_stream(const DataGrid& data, const SymbolGeometry& geom, const Layout& layout,
                         int ramp_left, int ramp_right, int split) {
  SymbolStream stream;
  stream.sample_rate_hz = geom.sample_rate_hz;
  stream.num_symbols = data.num_symbols();
  stream.num_subcarriers = data.num_subcarriers();
  stream.fft_size = layout.fft_size;
  stream.cp_samples = layout.cp_samples;
  stream.ramp_left = ramp_left;
  stream.ramp_right = ramp_right;
  stream.ramp_max = std::max(ramp_left, ramp_right);
  stream.split_index = split;
  stream.period_samples = layout.fft_size + layout.cp_samples + stream.ramp_max;
  const double fs = geom.sample_rate_hz;
  stream.geometry = SymbolGeometry{layout.fft_size / fs, layout.cp_samples / fs,
                                   stream.ramp_max / fs, fs};
  stream.samples.assign(
      static_cast<std::size_t>(data.num_symbols()) * stream.period_samples + stream.ramp_max,
      std::complex<double>{});
  return stream;
}

}  // namespace

int WindowParams::ramp_samples() const {
  return static_cast<int>(std::lround(alpha * n_t));
}

void WindowParams::validate() const {
  check_alpha(alpha, "alpha");
  if (alpha_left) check_alpha(*alpha_left, "alpha_left");
  if (alpha_right) check_alpha(*alpha_right, "alpha_right");
  if (n_t <= 0) throw InvalidArgument("window length n_t must be positive");
}

std::vector<double> rc_window_samples(int n_t, int ramp) {
  if (n_t <= 0) throw InvalidArgument("window length n_t must be positive");
  if (ramp < 0 || ramp > n_t) throw InvalidArgument("ramp must lie in [0, n_t]");
  std::vector<double> g(static_cast<std::size_t>(n_t + ramp), 1.0);
  for (int n = 0; n < ramp; ++n) {
    g[n] = 0.5 + 0.5 * std::cos(std::numbers::pi + std::numbers::pi * n / ramp);
  }
  // Ramp-down mirrors ramp-up: g[n] = g[n_t + ramp - n].
  for (int n = n_t + 1; n < n_t + ramp; ++n) g[n] = g[n_t + ramp - n];
  return g;
}

std::vector<double> rc_window(const WindowParams& params) {
  params.validate();
  return rc_window_samples(params.n_t, params.ramp_samples());
}

DataGrid::DataGrid(int num_subcarriers, int num_symbols)
    : num_subcarriers_(num_subcarriers), num_symbols_(num_symbols) {
  if (num_subcarriers <= 0 || num_symbols <= 0) {
    throw InvalidArgument("data grid dimensions must be positive");
  }
  values_.assign(static_cast<std::size_t>(num_subcarriers) * num_symbols, {});
}

std::span<std::complex<double>> DataGrid::symbol(int s) {
  return std::span(values_).subspan(static_cast<std::size_t>(s) * num_subcarriers_,
                                    num_subcarriers_);
}

std::span<const std::complex<double>> DataGrid::symbol(int s) const {
  return std::span(values_).subspan(static_cast<std::size_t>(s) * num_subcarriers_,
                                    num_subcarriers_);
}

DataGrid qam16_grid(int num_subcarriers, int num_symbols, std::uint64_t seed) {
  DataGrid grid(num_subcarriers, num_symbols);
  std::mt19937_64 rng(seed);
  const double norm = 1.0 / std::sqrt(10.0);
  constexpr double levels[4] = {-3.0, -1.0, 1.0, 3.0};
  for (int s = 0; s < num_symbols; ++s) {
    for (auto& v : grid.symbol(s)) {
      const std::uint64_t bits = rng();
      v = {levels[bits >> 62] * norm, levels[(bits >> 60) & 3u] * norm};
    }
  }
  return grid;
}

SymbolStream synthesize_wofdm(const DataGrid& data, const SymbolGeometry& geom,
                              const WindowParams& win) {
  check_alpha(win.alpha, "alpha");
  const Layout layout = layout_for(data, geom);
  const int ramp = ramp_for(win.alpha, layout.fft_size);
  SymbolStream stream = make_stream(data, geom, layout, ramp, ramp, 0);
  render_partition(data, layout, 0, data.num_subcarriers(), ramp, ramp, stream.samples);
  return stream;
}

SymbolStream synthesize_multiwindow(const DataGrid& data, const SymbolGeometry& geom,
                                    const WindowParams& win, int split_index) {
  if (!win.alpha_left || !win.alpha_right) {
    throw InvalidArgument("multi-window synthesis needs alpha_left and alpha_right");
  }
  check_alpha(*win.alpha_left, "alpha_left");
  check_alpha(*win.alpha_right, "alpha_right");
  if (split_index < 0 || split_index > data.num_subcarriers()) {
    throw InvalidArgument("split index must lie in [0, num_subcarriers]");
  }
  // Degenerate splits are single-window syntheses, sample for sample.
  if (split_index == 0 || *win.alpha_left == *win.alpha_right) {
    WindowParams single = win;
    single.alpha = *win.alpha_right;
    SymbolStream s = synthesize_wofdm(data, geom, single);
    s.split_index = split_index;
    return s;
  }
  if (split_index == data.num_subcarriers()) {
    WindowParams single = win;
    single.alpha = *win.alpha_left;
    SymbolStream s = synthesize_wofdm(data, geom, single);
    s.split_index = split_index;
    return s;
  }

  const Layout layout = layout_for(data, geom);
  const int ramp_left = ramp_for(*win.alpha_left, layout.fft_size);
  const int ramp_right = ramp_for(*win.alpha_right, layout.fft_size);
  SymbolStream stream = make_stream(data, geom, layout, ramp_left, ramp_right, split_index);
  render_partition(data, layout, 0, split_index, ramp_left, stream.ramp_max, stream.samples);
  render_partition(data, layout, split_index, data.num_subcarriers(), ramp_right, stream.ramp_max,
                   stream.samples);
  return stream;
}

void write_raw_samples(const SymbolStream& stream, const std::string& path) {
  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw InvalidArgument("cannot open '" + path + "' for writing");
  for (const auto& z : stream.samples) {
    for (double part : {z.real(), z.imag()}) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(part);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      char bytes[8];
      std::memcpy(bytes, &bits, sizeof bits);
      bin.write(bytes, sizeof bytes);
    }
  }
  if (!bin) throw Error("failed writing '" + path + "'");

  const nlohmann::json sidecar = {
      {"format", "complex128-interleaved-le"},
      {"num_samples", stream.samples.size()},
      {"sample_rate_hz", stream.sample_rate_hz},
      {"num_symbols", stream.num_symbols},
      {"num_subcarriers", stream.num_subcarriers},
      {"fft_size", stream.fft_size},
      {"cp_samples", stream.cp_samples},
      {"ramp_left_samples", stream.ramp_left},
      {"ramp_right_samples", stream.ramp_right},
      {"split_index", stream.split_index},
      {"period_samples", stream.period_samples},
      {"t_ofdm_s", stream.geometry.t_ofdm_s},
      {"t_cp_ch_s", stream.geometry.t_cp_ch_s},
      {"t_cp_win_s", stream.geometry.t_cp_win_s}};
  std::ofstream meta(path + ".json");
  if (!meta) throw InvalidArgument("cannot open '" + path + ".json' for writing");
  meta << sidecar.dump(2) << '\n';
}

}  // namespace numguard
