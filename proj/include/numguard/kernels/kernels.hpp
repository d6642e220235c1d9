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

// Data-parallel inner loops. Every kernel has a scalar reference and, on x86-64,
// an AVX2+FMA variant; the variant is picked once at runtime from CPUID and may
// be overridden with NUMGUARD_ISA=scalar|avx2 or set_isa().

#include <complex>
#include <span>
#include <string_view>

namespace numguard::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);
bool isa_supported(Isa isa);
Isa detected_isa();
Isa active_isa();
// Throws InvalidArgument when the CPU or build lacks the ISA.
void set_isa(Isa isa);

class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active_isa()) { set_isa(isa); }
  ~ScopedIsa() { set_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

// Trig tables for sum_k rc_spectrum(x_i - c_k, alpha)^2. Grid points x and
// subcarrier centres c are in units of 1/T; sin/cos arrays hold sin(pi x),
// cos(pi x), sin(pi alpha x), cos(pi alpha x) (likewise for c).
struct RcSumInput {
  std::span<const double> x, sin_x, cos_x, sin_ax, cos_ax;
  std::span<const double> c, sin_c, cos_c, sin_ac, cos_ac;
  double alpha = 0.0;
};

using Complex = std::complex<double>;

// out[i] += sum_k G(x_i - c_k)^2
void rc_power_accumulate(const RcSumInput& in, std::span<double> out);
// dst[i] = src[i] * w[i]
void window_into(std::span<const Complex> src, std::span<const double> w, std::span<Complex> dst);
// dst[i] += src[i] * w[i]
void window_accumulate(std::span<const Complex> src, std::span<const double> w,
                       std::span<Complex> dst);
// acc[i] += |z[i]|^2
void accumulate_norm(std::span<const Complex> z, std::span<double> acc);
double dot(std::span<const double> a, std::span<const double> b);

namespace scalar {
void rc_power_accumulate(const RcSumInput& in, std::span<double> out);
void window_into(std::span<const Complex> src, std::span<const double> w, std::span<Complex> dst);
void window_accumulate(std::span<const Complex> src, std::span<const double> w,
                       std::span<Complex> dst);
void accumulate_norm(std::span<const Complex> z, std::span<double> acc);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

namespace avx2 {
void rc_power_accumulate(const RcSumInput& in, std::span<double> out);
void window_into(std::span<const Complex> src, std::span<const double> w, std::span<Complex> dst);
void window_accumulate(std::span<const Complex> src, std::span<const double> w,
                       std::span<Complex> dst);
void accumulate_norm(std::span<const Complex> z, std::span<double> acc);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace avx2

}  // namespace numguard::kernels
