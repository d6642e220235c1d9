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

#include <cassert>
#include <cmath>
#include <numbers>

#include "numguard/kernels/kernels.hpp"
#include "numguard/kernels/rc_math.hpp"

namespace numguard::kernels::scalar {

void rc_power_accumulate(const RcSumInput& in, std::span<double> out) {
  assert(out.size() == in.x.size());
  const double a = in.alpha;
  const double two_a = 2.0 * a;
  const double inv_pi = 1.0 / std::numbers::pi;
  const std::size_t n = in.x.size();
  const std::size_t m = in.c.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double u = in.x[i] - in.c[k];
      double g;
      if (rc_near_singular(u, a)) {
        g = rc_spectrum(u, a);
      } else {
        // sin(pi (x - c)) and cos(pi a (x - c)) by angle addition.
        const double s = in.sin_x[i] * in.cos_c[k] - in.cos_x[i] * in.sin_c[k];
        const double cr = in.cos_ax[i] * in.cos_ac[k] + in.sin_ax[i] * in.sin_ac[k];
        const double v = two_a * u;
        g = (s * inv_pi / u) * cr / (1.0 - v * v);
      }
      acc += g * g;
    }
    out[i] += acc;
  }
}

void window_into(std::span<const Complex> src, std::span<const double> w, std::span<Complex> dst) {
  assert(src.size() == w.size() && dst.size() == w.size());
  for (std::size_t i = 0; i < w.size(); ++i) dst[i] = src[i] * w[i];
}

void window_accumulate(std::span<const Complex> src, std::span<const double> w,
                       std::span<Complex> dst) {
  assert(src.size() == w.size() && dst.size() == w.size());
  for (std::size_t i = 0; i < w.size(); ++i) dst[i] += src[i] * w[i];
}

void accumulate_norm(std::span<const Complex> z, std::span<double> acc) {
  assert(z.size() == acc.size());
  for (std::size_t i = 0; i < z.size(); ++i) acc[i] += std::norm(z[i]);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace numguard::kernels::scalar
