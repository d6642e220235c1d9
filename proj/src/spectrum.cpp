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

#include "numguard/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>

#include "numguard/error.hpp"
#include "numguard/fft.hpp"
#include "numguard/kernels/kernels.hpp"
#include "numguard/kernels/rc_math.hpp"

namespace numguard {

namespace {

constexpr double kFloorLinear = 1e-300;

double to_db(double linear) { return 10.0 * std::log10(std::max(linear, kFloorLinear)); }

struct TrigTable {
  std::vector<double> v, s, c, sa, ca;

  TrigTable(std::vector<double> values, double alpha) : v(std::move(values)) {
    const std::size_t n = v.size();
    s.resize(n);
    c.resize(n);
    sa.resize(n);
    ca.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = kernels::sin_pi(v[i]);
      c[i] = kernels::cos_pi(v[i]);
      sa[i] = kernels::sin_pi(alpha * v[i]);
      ca[i] = kernels::cos_pi(alpha * v[i]);
    }
  }
};

// Bins strictly inside the occupied band.
bool in_band(const PulseShape& shape, double f) {
  return f > shape.left_edge_hz() && f < shape.right_edge_hz();
}

}  // namespace

double rc_spectrum(double u, double alpha) { return kernels::rc_spectrum(u, alpha); }

std::vector<double> FrequencyGrid::values() const {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = at(i);
  return out;
}

FrequencyGrid FrequencyGrid::spanning(double lo_hz, double hi_hz, double step_hz) {
  if (!(step_hz > 0.0)) throw InvalidArgument("grid step must be positive");
  if (hi_hz < lo_hz) throw InvalidArgument("grid upper bound below lower bound");
  const auto steps = static_cast<std::size_t>(std::floor((hi_hz - lo_hz) / step_hz + 1e-9));
  return FrequencyGrid{lo_hz, step_hz, steps + 1};
}

PulseShape PulseShape::from_geometry(const Numerology& num, const SymbolGeometry& geom) {
  PulseShape p;
  p.delta_f_hz = num.delta_f_hz;
  p.num_subcarriers = num.num_subcarriers;
  p.period_s = geom.period_s();
  p.ramp_left_s = geom.t_cp_win_s;
  p.ramp_right_s = geom.t_cp_win_s;
  p.split_index = 0;
  return p;
}

PulseShape PulseShape::multi_window(const Numerology& num, const SymbolGeometry& geom,
                                    double alpha_left, double alpha_right, int split_index) {
  PulseShape p;
  p.delta_f_hz = num.delta_f_hz;
  p.num_subcarriers = num.num_subcarriers;
  p.period_s = geom.t_ofdm_s + geom.t_cp_ch_s + std::max(alpha_left, alpha_right) * geom.t_ofdm_s;
  p.ramp_left_s = alpha_left * geom.t_ofdm_s;
  p.ramp_right_s = alpha_right * geom.t_ofdm_s;
  p.split_index = split_index;
  p.validate();
  return p;
}

PulseShape PulseShape::from_stream(const SymbolStream& stream) {
  PulseShape p;
  p.delta_f_hz = stream.delta_f_hz();
  p.num_subcarriers = stream.num_subcarriers;
  p.period_s = stream.period_samples / stream.sample_rate_hz;
  p.ramp_left_s = stream.ramp_left / stream.sample_rate_hz;
  p.ramp_right_s = stream.ramp_right / stream.sample_rate_hz;
  p.split_index = stream.split_index;
  return p;
}

void PulseShape::validate() const {
  if (!(delta_f_hz > 0.0)) throw InvalidArgument("pulse shape: delta_f must be positive");
  if (num_subcarriers <= 0) throw InvalidArgument("pulse shape: no subcarriers");
  if (!(period_s > 0.0)) throw InvalidArgument("pulse shape: period must be positive");
  if (ramp_left_s < 0.0 || ramp_right_s < 0.0 || ramp_left_s > period_s ||
      ramp_right_s > period_s) {
    throw InvalidArgument("pulse shape: taper must lie in [0, period]");
  }
  if (split_index < 0 || split_index > num_subcarriers) {
    throw InvalidArgument("pulse shape: split index out of range");
  }
}

std::vector<double> analytic_psd_linear(const PulseShape& shape, std::span<const double> freqs_hz,
                                        const AnalyticOptions& options) {
  shape.validate();
  if (options.images < 0) throw InvalidArgument("image count must be non-negative");
  if (options.images > 0 && !(options.sample_rate_hz > 0.0)) {
    throw InvalidArgument("images need a sample rate");
  }
  const double t = shape.period_s;
  std::vector<double> out(freqs_hz.size(), 0.0);

  struct Part {
    int begin, end;
    double alpha;
  };
  const Part parts[2] = {{0, shape.split_index, shape.ramp_left_s / t},
                         {shape.split_index, shape.num_subcarriers, shape.ramp_right_s / t}};

  for (const Part& part : parts) {
    if (part.begin == part.end) continue;
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(part.end - part.begin));
    for (int k = part.begin; k < part.end; ++k) c.push_back(shape.subcarrier_hz(k) * t);
    const TrigTable centers(std::move(c), part.alpha);

    for (int m = -options.images; m <= options.images; ++m) {
      std::vector<double> x(freqs_hz.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = (freqs_hz[i] + m * options.sample_rate_hz) * t;
      }
      const TrigTable points(std::move(x), part.alpha);
      kernels::RcSumInput in{points.v,  points.s,  points.c,  points.sa,  points.ca,
                             centers.v, centers.s, centers.c, centers.sa, centers.ca,
                             part.alpha};
      kernels::rc_power_accumulate(in, out);
    }
  }
  return out;
}

double analytic_inband_mean(const PulseShape& shape, const AnalyticOptions& options) {
  if (options.reference_div <= 0) throw InvalidArgument("reference_div must be positive");
  const double step = shape.delta_f_hz / options.reference_div;
  const std::size_t n = static_cast<std::size_t>(shape.num_subcarriers) * options.reference_div;
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = shape.left_edge_hz() + (j + 0.5) * step;
  const auto p = analytic_psd_linear(shape, f, options);
  double sum = 0.0;
  for (double v : p) sum += v;
  return sum / static_cast<double>(n);
}

PsdCurve analytic_psd(const PulseShape& shape, const FrequencyGrid& grid,
                      const AnalyticOptions& options) {
  PsdCurve curve;
  curve.freqs_hz = grid.values();
  curve.resolution_hz = grid.step_hz;
  const auto p = analytic_psd_linear(shape, curve.freqs_hz, options);
  const double ref = analytic_inband_mean(shape, options);
  curve.psd_db.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) curve.psd_db[i] = to_db(p[i] / ref);
  return curve;
}

PsdCurve analytic_psd(const Numerology& num, double alpha, const ModelConfig& config,
                      const FrequencyGrid& grid) {
  num.validate();
  const auto shape = PulseShape::from_geometry(num, config.geometry(num, alpha));
  AnalyticOptions opt;
  opt.reference_div = config.grid_resolution_div;
  return analytic_psd(shape, grid, opt);
}

FrequencyGrid default_grid(const Numerology& num, const ModelConfig& config) {
  const auto shape = PulseShape::from_geometry(num, config.geometry(num, 0.0));
  const double span = config.span_obw * num.obw_hz();
  return FrequencyGrid::spanning(shape.left_edge_hz() - span, shape.right_edge_hz() + span,
                                 num.delta_f_hz / config.grid_resolution_div);
}

std::vector<double> blackman_harris(std::size_t length) {
  constexpr double a0 = 0.35875, a1 = 0.48829, a2 = 0.14128, a3 = 0.01168;
  std::vector<double> w(length);
  if (length == 1) {
    w[0] = 1.0;
    return w;
  }
  const double d = 2.0 * std::numbers::pi / static_cast<double>(length - 1);
  for (std::size_t n = 0; n < length; ++n) {
    const double x = d * static_cast<double>(n);
    w[n] = a0 - a1 * std::cos(x) + a2 * std::cos(2 * x) - a3 * std::cos(3 * x);
  }
  return w;
}

namespace {

std::size_t segment_length(int fft_size, const WelchOptions& options) {
  if (options.segment_factor <= 0) throw InvalidArgument("segment_factor must be positive");
  if (!(options.overlap >= 0.0 && options.overlap < 1.0)) {
    throw InvalidArgument("overlap must lie in [0, 1)");
  }
  return static_cast<std::size_t>(options.segment_factor) * static_cast<std::size_t>(fft_size);
}

// Bin frequencies from -fs/2 in steps of fs / n.
std::vector<double> centered_bins(std::size_t n, double fs) {
  std::vector<double> f(n);
  const double df = fs / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    f[j] = (static_cast<double>(j) - static_cast<double>(n / 2)) * df;
  }
  return f;
}

PsdCurve normalize_inband(const PulseShape& shape, std::vector<double> freqs,
                          const std::vector<double>& linear, double resolution) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    if (in_band(shape, freqs[j])) {
      sum += linear[j];
      ++count;
    }
  }
  if (count == 0 || !(sum > 0.0)) throw Error("no in-band power to normalize against");
  const double ref = sum / static_cast<double>(count);
  PsdCurve curve;
  curve.freqs_hz = std::move(freqs);
  curve.resolution_hz = resolution;
  curve.psd_db.resize(linear.size());
  for (std::size_t j = 0; j < linear.size(); ++j) curve.psd_db[j] = to_db(linear[j] / ref);
  return curve;
}

}  // namespace

PsdCurve welch_psd(const SymbolStream& stream, const WelchOptions& options) {
  if (stream.num_symbols < options.min_symbols) {
    throw InvalidArgument("empirical PSD needs at least " + std::to_string(options.min_symbols) +
                          " symbols");
  }
  const std::size_t seg = segment_length(stream.fft_size, options);
  if (stream.samples.size() < seg) throw InvalidArgument("stream shorter than one segment");
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(seg) * (1.0 - options.overlap))));

  const auto window = blackman_harris(seg);
  FftPlan plan(seg, FftPlan::Direction::kForward);
  std::vector<std::complex<double>> buf(seg);
  std::vector<double> acc(seg, 0.0);
  std::size_t segments = 0;
  for (std::size_t start = 0; start + seg <= stream.samples.size(); start += hop) {
    kernels::window_into(std::span(stream.samples).subspan(start, seg), window, buf);
    plan.execute(buf, buf);
    kernels::accumulate_norm(buf, acc);
    ++segments;
  }

  // Reorder so that index 0 is -fs/2.
  std::vector<double> linear(seg);
  for (std::size_t j = 0; j < seg; ++j) linear[j] = acc[(j + seg / 2) % seg] / segments;
  const auto shape = PulseShape::from_stream(stream);
  const double fs = stream.sample_rate_hz;
  return normalize_inband(shape, centered_bins(seg, fs), linear, fs / static_cast<double>(seg));
}

PsdCurve empirical_psd(const SymbolStream& stream, const FrequencyGrid& grid,
                       const WelchOptions& options) {
  const auto bins = welch_psd(stream, options);
  const auto& bf = bins.freqs_hz;
  PsdCurve curve;
  curve.freqs_hz = grid.values();
  curve.resolution_hz = bins.resolution_hz;
  curve.psd_db.resize(curve.freqs_hz.size());
  for (std::size_t i = 0; i < curve.freqs_hz.size(); ++i) {
    const double f = curve.freqs_hz[i];
    if (f < bf.front() || f > bf.back()) {
      throw InvalidArgument("grid extends beyond the sampled band");
    }
    auto hi = static_cast<std::size_t>(std::upper_bound(bf.begin(), bf.end(), f) - bf.begin());
    hi = std::min(hi, bf.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (f - bf[lo]) / (bf[hi] - bf[lo]);
    const double p = (1.0 - w) * std::pow(10.0, bins.psd_db[lo] / 10.0) +
                     w * std::pow(10.0, bins.psd_db[hi] / 10.0);
    curve.psd_db[i] = to_db(p);
  }
  return curve;
}

PsdCurve expected_welch_psd(const PulseShape& shape, double sample_rate_hz, int fft_size,
                            const WelchOptions& options, int images) {
  constexpr std::size_t kUpsample = 8;
  constexpr std::size_t kKernelBins = 40;  // Blackman-Harris sidelobes are below -92 dB
  const std::size_t seg = segment_length(fft_size, options);
  const std::size_t nf = seg * kUpsample;

  // Spectral window of the estimator on the fine grid.
  const auto w = blackman_harris(seg);
  std::vector<std::complex<double>> wz(nf, 0.0);
  for (std::size_t n = 0; n < seg; ++n) wz[n] = w[n];
  FftPlan plan(nf, FftPlan::Direction::kForward);
  plan.execute(wz, wz);
  const std::size_t half = kKernelBins * kUpsample;
  std::vector<double> kernel(2 * half + 1);
  for (std::size_t s = 0; s < kernel.size(); ++s) {
    // Symmetric in frequency, so no reversal is needed for the correlation below.
    const std::size_t idx = (s + nf - half) % nf;
    kernel[s] = std::norm(wz[idx]);
  }

  AnalyticOptions opt;
  opt.sample_rate_hz = sample_rate_hz;
  opt.images = images;
  const auto fine_f = centered_bins(nf, sample_rate_hz);
  const auto fine = analytic_psd_linear(shape, fine_f, opt);

  std::vector<double> ext(nf + 2 * half);
  for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = fine[(i + nf - half) % nf];

  std::vector<double> linear(seg);
  for (std::size_t j = 0; j < seg; ++j) {
    linear[j] = kernels::dot(kernel, std::span<const double>(ext).subspan(j * kUpsample, kernel.size()));
  }
  return normalize_inband(shape, centered_bins(seg, sample_rate_hz), linear,
                          sample_rate_hz / static_cast<double>(seg));
}

GuardProfile::GuardProfile(const PulseShape& shape, const ModelConfig& config)
    : step_hz_(shape.delta_f_hz / config.grid_resolution_div),
      obw_hz_(shape.num_subcarriers * shape.delta_f_hz) {
  config.validate();
  const double span = config.span_obw * obw_hz_;
  const auto n = static_cast<std::size_t>(std::floor(span / step_hz_ + 1e-9)) + 1;
  // A tail must cover at least one subcarrier spacing, so that isolated nulls
  // of the sampled PSD near the end of the span do not count as compliance.
  const auto min_tail = static_cast<std::size_t>(config.grid_resolution_div);
  if (n <= min_tail) throw InvalidArgument("analytic span shorter than one subcarrier spacing");
  starts_ = n - min_tail;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = shape.right_edge_hz() + offset_hz(i);

  AnalyticOptions opt;
  opt.reference_div = config.grid_resolution_div;
  auto linear = analytic_psd_linear(shape, f, opt);
  const double ref = analytic_inband_mean(shape, opt);

  level_db_.resize(n);
  tail_peak_db_.resize(n);
  prefix_linear_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    linear[i] /= ref;
    level_db_[i] = to_db(linear[i]);
    prefix_linear_[i + 1] = prefix_linear_[i] + linear[i];
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = n; i-- > 0;) {
    peak = std::max(peak, level_db_[i]);
    tail_peak_db_[i] = peak;
  }
}

double GuardProfile::required_offset_hz(double theta_db, MaskMode mode,
                                        double victim_bw_hz) const {
  if (!(theta_db >= 0.0)) throw InvalidArgument("threshold must be non-negative");
  const std::size_t n = level_db_.size();
  if (mode == MaskMode::kPeak) {
    for (std::size_t i = 0; i < starts_; ++i) {
      if (tail_peak_db_[i] <= -theta_db) return offset_hz(i);
    }
    throw GridExhausted("PSD never falls to -" + std::to_string(theta_db) + " dB on the span",
                        deepest_db());
  }

  const double bw = victim_bw_hz > 0.0 ? victim_bw_hz : obw_hz_;
  const auto w = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(bw / step_hz_)));
  if (w >= n) throw InvalidArgument("victim band wider than the analytic span");
  const std::size_t last = n - w;  // window starts 0..last
  const double limit = std::pow(10.0, -theta_db / 10.0);
  // Smallest start from which every later window satisfies the limit.
  std::size_t best = last + 1;
  double deepest = std::numeric_limits<double>::infinity();
  for (std::size_t i = last + 1; i-- > 0;) {
    const double mean = (prefix_linear_[i + w] - prefix_linear_[i]) / static_cast<double>(w);
    deepest = std::min(deepest, to_db(mean));
    if (mean > limit) break;
    best = i;
  }
  if (best > last) {
    throw GridExhausted("victim-band power never falls to -" + std::to_string(theta_db) + " dB",
                        deepest);
  }
  return offset_hz(best);
}

double quantize_guard(double gb_hz, double granularity_hz) {
  if (!(granularity_hz > 0.0)) throw InvalidArgument("granularity must be positive");
  if (gb_hz <= 0.0) return 0.0;
  return std::ceil(gb_hz / granularity_hz - 1e-9) * granularity_hz;
}

double required_gb(const Numerology& num, double alpha, double theta_db, const ModelConfig& config,
                   double granularity_hz) {
  num.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  const GuardProfile profile(PulseShape::from_geometry(num, config.geometry(num, alpha)), config);
  const double g = granularity_hz > 0.0 ? granularity_hz : num.delta_f_hz;
  return quantize_guard(profile.required_offset_hz(theta_db, config.mask_mode), g);
}

void write_psd_csv(const PsdCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.precision(10);
  out << "freq_hz,psd_db\n";
  for (std::size_t i = 0; i < curve.freqs_hz.size(); ++i) {
    out << curve.freqs_hz[i] << ',' << curve.psd_db[i] << '\n';
  }
  if (!out) throw Error("failed writing " + path);
}

}  // namespace numguard
