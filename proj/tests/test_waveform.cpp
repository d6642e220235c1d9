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

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "json.hpp"
#include "numguard/config.hpp"
#include "numguard/error.hpp"
#include "numguard/fft.hpp"
#include "numguard/spectrum.hpp"
#include "numguard/waveform.hpp"

using namespace numguard;
using cd = std::complex<double>;

namespace {

// 64 subcarriers at 15 kHz, 4x oversampled: 256-point FFT, 16-sample prefix.
SymbolGeometry small_geometry(double alpha) {
  ModelConfig cfg;
  Numerology n;
  n.delta_f_hz = 15e3;
  n.num_subcarriers = 64;
  return cfg.geometry(n, alpha);
}

WindowParams win(double alpha) {
  WindowParams w;
  w.alpha = alpha;
  w.n_t = 256;
  return w;
}

WindowParams multi(double left, double right) {
  WindowParams w = win(std::max(left, right));
  w.alpha_left = left;
  w.alpha_right = right;
  return w;
}

}  // namespace

TEST_CASE("rc_window examples") {
  WindowParams p;
  p.alpha = 0.5;
  p.n_t = 64;
  const auto g = rc_window(p);
  REQUIRE(g.size() == 96);
  CHECK(g[0] == 0.0);
  CHECK(g[16] == doctest::Approx(0.5).epsilon(1e-15));
  for (int n = 32; n <= 64; ++n) CHECK(g[n] == 1.0);

  p.alpha = 0.0;
  const auto rect = rc_window(p);
  CHECK(rect.size() == 64);
  for (double v : rect) CHECK(v == 1.0);
}

TEST_CASE("rc_window properties over a sweep") {
  for (int n_t : {64, 256, 1024}) {
    for (int i = 0; i <= 10; ++i) {
      WindowParams p;
      p.alpha = i / 10.0;
      p.n_t = n_t;
      const auto g = rc_window(p);
      const int ramp = static_cast<int>(std::lround(p.alpha * n_t));
      CAPTURE(n_t);
      CAPTURE(p.alpha);
      REQUIRE(static_cast<int>(g.size()) == n_t + ramp);
      if (ramp > 0) CHECK(g[0] == 0.0);
      const int len = static_cast<int>(g.size());
      for (int n = 1; n < len; ++n) CHECK(g[n] == g[len - n]);
      int ones = 0;
      for (double v : g) ones += v == 1.0;
      // Rounding alpha * n_t to a whole sample leaves the residue in the flat part.
      CHECK(ones == n_t - ramp + 1 - (ramp == 0 ? 1 : 0));
      if (std::abs(p.alpha * n_t - ramp) < 1e-9 && ramp > 0) {
        CHECK(ones == static_cast<int>(std::floor((1.0 - p.alpha) * n_t)) + 1);
      }
      for (double v : g) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("rc_window rejects invalid parameters") {
  WindowParams p;
  p.n_t = 64;
  p.alpha = 1.5;
  CHECK_THROWS_AS(rc_window(p), InvalidArgument);
  p.alpha = -0.1;
  CHECK_THROWS_AS(rc_window(p), InvalidArgument);
  p.alpha = 0.1;
  p.n_t = 0;
  CHECK_THROWS_AS(rc_window(p), InvalidArgument);
}

TEST_CASE("16-QAM grid has unit average power and is seeded") {
  const auto a = qam16_grid(256, 200, 9);
  const auto b = qam16_grid(256, 200, 9);
  const auto c = qam16_grid(256, 200, 10);
  double power = 0.0;
  bool same = true, differs = false;
  for (int s = 0; s < 200; ++s) {
    for (int k = 0; k < 256; ++k) {
      power += std::norm(a.symbol(s)[k]);
      same = same && a.symbol(s)[k] == b.symbol(s)[k];
      differs = differs || a.symbol(s)[k] != c.symbol(s)[k];
    }
  }
  CHECK(power / (256 * 200) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("alpha = 0 synthesis is a plain CP-OFDM stream") {
  const auto data = qam16_grid(64, 3, 1);
  const auto geom = small_geometry(0.0);
  const auto stream = synthesize_wofdm(data, geom, win(0.0));
  const int n = 256, cp = 16, p = n + cp;
  REQUIRE(stream.fft_size == n);
  REQUIRE(stream.cp_samples == cp);
  REQUIRE(stream.samples.size() == 3u * p);

  FftPlan ifft(n, FftPlan::Direction::kInverse);
  for (int s = 0; s < 3; ++s) {
    std::vector<cd> spec(n), body(n);
    for (int k = 0; k < 64; ++k) spec[(k - 32 + n) % n] = data.symbol(s)[k] / 8.0;
    ifft.execute(spec, body);
    for (int j = 0; j < p; ++j) {
      // Bit-exact against a CP-OFDM symbol built from the same transform.
      CHECK(stream.samples[s * p + j] == body[(j - cp + n) % n]);
      // And close to a direct inverse DFT.
      cd direct = 0.0;
      for (int k = 0; k < 64; ++k) {
        direct += data.symbol(s)[k] / 8.0 *
                  std::polar(1.0, 2.0 * std::numbers::pi * (k - 32) * (j - cp) / n);
      }
      CHECK(std::abs(stream.samples[s * p + j] - direct) < 1e-12);
    }
  }
}

TEST_CASE("stream lengths follow the symbol geometry") {
  const auto geom = small_geometry(0.1);
  const int n = 256, cp = 16, ramp = 26;  // round(0.1 * 256)
  const auto one = synthesize_wofdm(qam16_grid(64, 1, 2), geom, win(0.1));
  CHECK(one.samples.size() == static_cast<std::size_t>(n + cp + 2 * ramp));
  CHECK(one.period_samples == n + cp + ramp);

  // Reference overlap-add: place each extended symbol and track the furthest sample.
  const auto two = synthesize_wofdm(qam16_grid(64, 2, 2), geom, win(0.1));
  std::size_t reach = 0;
  for (int s = 0; s < 2; ++s) {
    reach = std::max<std::size_t>(reach, s * (n + cp + ramp) + (n + cp + 2 * ramp));
  }
  CHECK(two.samples.size() == reach);
  CHECK(two.samples.size() == static_cast<std::size_t>(2 * (n + cp + ramp) + ramp));
}

TEST_CASE("overlap-add keeps the symbol spacing") {
  // A single active subcarrier at DC with constant data gives a constant
  // envelope inside every flat region.
  DataGrid data(64, 4);
  for (int s = 0; s < 4; ++s) data.symbol(s)[32] = 1.0;
  const auto geom = small_geometry(0.25);
  const auto st = synthesize_wofdm(data, geom, win(0.25));
  const int ramp = st.ramp_max;
  const int p = st.period_samples;
  const double level = 1.0 / 8.0;
  for (int s = 0; s < 4; ++s) {
    // Flat region of symbol s spans [s p + ramp, s p + p].
    CHECK(std::abs(st.samples[s * p + ramp]) == doctest::Approx(level));
    CHECK(std::abs(st.samples[s * p + p - 1]) == doctest::Approx(level));
  }
  // Inside the first ramp the envelope is below the flat level.
  CHECK(std::abs(st.samples[ramp / 2]) < level * 0.75);
}

TEST_CASE("multi-window degenerate cases are sample-exact") {
  const auto data = qam16_grid(64, 5, 4);
  const auto geom = small_geometry(0.2);
  const auto single = synthesize_wofdm(data, geom, win(0.2));
  CHECK(synthesize_multiwindow(data, geom, multi(0.2, 0.2), 32).samples == single.samples);
  CHECK(synthesize_multiwindow(data, geom, multi(0.05, 0.2), 0).samples == single.samples);
  CHECK(synthesize_multiwindow(data, geom, multi(0.2, 0.05), 64).samples == single.samples);
}

TEST_CASE("multi-window reserves the larger taper") {
  const auto data = qam16_grid(64, 5, 4);
  const auto geom = small_geometry(0.2);
  const auto mw = synthesize_multiwindow(data, geom, multi(0.2, 0.05), 32);
  const auto ref = synthesize_wofdm(data, geom, win(0.2));
  CHECK(mw.period_samples == ref.period_samples);
  CHECK(mw.samples.size() == ref.samples.size());
  CHECK(mw.ramp_left == 51);
  CHECK(mw.ramp_right == 13);
  CHECK(mw.samples != ref.samples);
}

TEST_CASE("multi-window rejects bad inputs") {
  const auto data = qam16_grid(64, 2, 4);
  const auto geom = small_geometry(0.2);
  CHECK_THROWS_AS(synthesize_multiwindow(data, geom, multi(0.1, 0.2), 65), InvalidArgument);
  CHECK_THROWS_AS(synthesize_multiwindow(data, geom, multi(0.1, 0.2), -1), InvalidArgument);
  CHECK_THROWS_AS(synthesize_multiwindow(data, geom, win(0.1), 10), InvalidArgument);
  CHECK_THROWS_AS(synthesize_multiwindow(data, geom, multi(0.1, 1.2), 10), InvalidArgument);
}

TEST_CASE("synthesis rejects undersampled geometry") {
  const auto data = qam16_grid(64, 2, 4);
  auto geom = small_geometry(0.0);
  geom.sample_rate_hz = 64 * 15e3;  // fs == OBW
  CHECK_THROWS_AS(synthesize_wofdm(data, geom, win(0.0)), InvalidArgument);
  geom.sample_rate_hz = 1.1e6;  // T_OFDM not a whole number of samples
  CHECK_THROWS_AS(synthesize_wofdm(data, geom, win(0.0)), InvalidArgument);
}

TEST_CASE("multi-window edges follow their own roll-off") {
  // Lower edge tapered with 0.2, upper edge untapered. The upper edge must look
  // like plain OFDM with the same symbol period and the lower edge much lower.
  ModelConfig cfg;
  Numerology num;
  num.delta_f_hz = 15e3;
  const auto geom = cfg.geometry(num, 0.2);
  const auto data = qam16_grid(256, 400, 8);
  const auto mw = synthesize_multiwindow(data, geom, multi(0.2, 0.0), 128);

  auto plain_geom = cfg.geometry(num, 0.0);
  plain_geom.t_cp_ch_s = (mw.cp_samples + mw.ramp_max) / geom.sample_rate_hz;
  const auto plain = synthesize_wofdm(data, plain_geom, win(0.0));
  REQUIRE(plain.period_samples == mw.period_samples);

  WelchOptions wo;
  wo.min_symbols = 100;
  const auto a = welch_psd(mw, wo);
  const auto b = welch_psd(plain, wo);
  const double edge = (128 - 0.5) * 15e3;
  double worst_upper = 0.0, lower_gap = 0.0;
  int counted = 0;
  for (std::size_t i = 0; i < a.freqs_hz.size(); ++i) {
    const double f = a.freqs_hz[i];
    if (f > edge + 2 * 15e3 && f < edge + 40 * 15e3) {
      worst_upper = std::max(worst_upper, std::abs(a.psd_db[i] - b.psd_db[i]));
    }
    if (f < -edge - 1 * 15e3 - 15e3 && f > -edge - 40 * 15e3) {
      lower_gap += b.psd_db[i] - a.psd_db[i];
      ++counted;
    }
  }
  CHECK(worst_upper < 1.5);
  CHECK(lower_gap / counted > 10.0);
}

TEST_CASE("raw sample dump") {
  const auto st = synthesize_wofdm(qam16_grid(64, 2, 3), small_geometry(0.1), win(0.1));
  const std::string path = "waveform_dump.bin";
  write_raw_samples(st, path);
  CHECK(std::filesystem::file_size(path) == st.samples.size() * 16);
  std::ifstream meta(path + ".json");
  const auto doc = nlohmann::json::parse(meta);
  CHECK(doc.at("num_samples") == st.samples.size());
  CHECK(doc.at("period_samples") == st.period_samples);
  std::ifstream bin(path, std::ios::binary);
  double first[2];
  bin.read(reinterpret_cast<char*>(first), sizeof first);
  CHECK(first[0] == st.samples[0].real());
  CHECK(first[1] == st.samples[0].imag());
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}
