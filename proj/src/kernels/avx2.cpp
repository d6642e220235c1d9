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

// Compiled with -mavx2 -mfma; only reached after the dispatcher has checked CPUID.

#include <immintrin.h>

#include <cassert>
#include <numbers>

#include "numguard/kernels/kernels.hpp"
#include "numguard/kernels/rc_math.hpp"

namespace numguard::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// [w0, w0, w1, w1] from two consecutive window taps.
inline __m256d widen_pair(const double* w) {
  const __m128d pair = _mm_loadu_pd(w);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(pair), 0b01010000);
}

}  // namespace

void rc_power_accumulate(const RcSumInput& in, std::span<double> out) {
  assert(out.size() == in.x.size());
  const double a = in.alpha;
  const std::size_t n = in.x.size();
  const std::size_t m = in.c.size();

  const __m256d two_a = _mm256_set1_pd(2.0 * a);
  const __m256d inv_pi = _mm256_set1_pd(1.0 / std::numbers::pi);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d tol = _mm256_set1_pd(kSeriesTolerance);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(&in.x[i]);
    const __m256d sx = _mm256_loadu_pd(&in.sin_x[i]);
    const __m256d cx = _mm256_loadu_pd(&in.cos_x[i]);
    const __m256d sax = _mm256_loadu_pd(&in.sin_ax[i]);
    const __m256d cax = _mm256_loadu_pd(&in.cos_ax[i]);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < m; ++k) {
      const __m256d u = _mm256_sub_pd(x, _mm256_set1_pd(in.c[k]));
      const __m256d s = _mm256_fmsub_pd(sx, _mm256_set1_pd(in.cos_c[k]),
                                        _mm256_mul_pd(cx, _mm256_set1_pd(in.sin_c[k])));
      const __m256d cr = _mm256_fmadd_pd(cax, _mm256_set1_pd(in.cos_ac[k]),
                                         _mm256_mul_pd(sax, _mm256_set1_pd(in.sin_ac[k])));
      const __m256d v = _mm256_mul_pd(two_a, u);
      const __m256d den = _mm256_fnmadd_pd(v, v, one);
      __m256d g = _mm256_div_pd(_mm256_mul_pd(_mm256_div_pd(_mm256_mul_pd(s, inv_pi), u), cr), den);

      const __m256d near_zero = _mm256_cmp_pd(abs_pd(u), tol, _CMP_LT_OQ);
      const __m256d near_pole =
          _mm256_cmp_pd(abs_pd(_mm256_sub_pd(abs_pd(v), one)), tol, _CMP_LT_OQ);
      if (_mm256_movemask_pd(_mm256_or_pd(near_zero, near_pole)) != 0) {
        alignas(32) double lanes[4];
        alignas(32) double us[4];
        _mm256_store_pd(lanes, g);
        _mm256_store_pd(us, u);
        for (int l = 0; l < 4; ++l) {
          if (rc_near_singular(us[l], a)) lanes[l] = rc_spectrum(us[l], a);
        }
        g = _mm256_load_pd(lanes);
      }
      acc = _mm256_fmadd_pd(g, g, acc);
    }
    _mm256_storeu_pd(&out[i], _mm256_add_pd(_mm256_loadu_pd(&out[i]), acc));
  }

  if (i < n) {
    RcSumInput tail = in;
    tail.x = in.x.subspan(i);
    tail.sin_x = in.sin_x.subspan(i);
    tail.cos_x = in.cos_x.subspan(i);
    tail.sin_ax = in.sin_ax.subspan(i);
    tail.cos_ax = in.cos_ax.subspan(i);
    scalar::rc_power_accumulate(tail, out.subspan(i));
  }
}

void window_into(std::span<const Complex> src, std::span<const double> w, std::span<Complex> dst) {
  assert(src.size() == w.size() && dst.size() == w.size());
  const std::size_t n = w.size();
  const double* s = reinterpret_cast<const double*>(src.data());
  double* d = reinterpret_cast<double*>(dst.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(s + 2 * i), widen_pair(&w[i])));
  }
  for (; i < n; ++i) dst[i] = src[i] * w[i];
}

void window_accumulate(std::span<const Complex> src, std::span<const double> w,
                       std::span<Complex> dst) {
  assert(src.size() == w.size() && dst.size() == w.size());
  const std::size_t n = w.size();
  const double* s = reinterpret_cast<const double*>(src.data());
  double* d = reinterpret_cast<double*>(dst.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d sum =
        _mm256_fmadd_pd(_mm256_loadu_pd(s + 2 * i), widen_pair(&w[i]), _mm256_loadu_pd(d + 2 * i));
    _mm256_storeu_pd(d + 2 * i, sum);
  }
  for (; i < n; ++i) dst[i] += src[i] * w[i];
}

void accumulate_norm(std::span<const Complex> z, std::span<double> acc) {
  assert(z.size() == acc.size());
  const std::size_t n = z.size();
  const double* p = reinterpret_cast<const double*>(z.data());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo = _mm256_loadu_pd(p + 2 * i);      // re0 im0 re1 im1
    const __m256d hi = _mm256_loadu_pd(p + 2 * i + 4);  // re2 im2 re3 im3
    // hadd gives |z0|^2 |z2|^2 |z1|^2 |z3|^2
    const __m256d sums = _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
    const __m256d ordered = _mm256_permute4x64_pd(sums, 0b11011000);
    _mm256_storeu_pd(&acc[i], _mm256_add_pd(_mm256_loadu_pd(&acc[i]), ordered));
  }
  for (; i < n; ++i) acc[i] += std::norm(z[i]);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]), acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d half = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double sum = _mm_cvtsd_f64(_mm_add_sd(half, _mm_unpackhi_pd(half, half)));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

}  // namespace numguard::kernels::avx2
