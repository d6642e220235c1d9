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

#include <atomic>
#include <cstdlib>
#include <string>

#include "numguard/error.hpp"
#include "numguard/kernels/kernels.hpp"

namespace numguard::kernels {

namespace {

Isa initial_isa() {
  const Isa detected = detected_isa();
  const char* env = std::getenv("NUMGUARD_ISA");
  if (env == nullptr) return detected;
  const std::string requested(env);
  if (requested == "scalar") return Isa::kScalar;
  if (requested == "avx2" && isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  return detected;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

bool use_avx2() {
#if defined(NUMGUARD_HAVE_AVX2)
  return current().load(std::memory_order_relaxed) == Isa::kAvx2;
#else
  return false;
#endif
}

}  // namespace

std::string_view to_string(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

bool isa_supported(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(NUMGUARD_HAVE_AVX2)
  static const bool has_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return has_avx2;
#else
  return false;
#endif
}

Isa detected_isa() {
  return isa_supported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw InvalidArgument("instruction set '" + std::string(to_string(isa)) +
                          "' is not available on this CPU/build");
  }
  current().store(isa, std::memory_order_relaxed);
}

#if defined(NUMGUARD_HAVE_AVX2)
#define NUMGUARD_DISPATCH(fn, ...) \
  (use_avx2() ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define NUMGUARD_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void rc_power_accumulate(const RcSumInput& in, std::span<double> out) {
  NUMGUARD_DISPATCH(rc_power_accumulate, in, out);
}

void window_into(std::span<const Complex> src, std::span<const double> w, std::span<Complex> dst) {
  NUMGUARD_DISPATCH(window_into, src, w, dst);
}

void window_accumulate(std::span<const Complex> src, std::span<const double> w,
                       std::span<Complex> dst) {
  NUMGUARD_DISPATCH(window_accumulate, src, w, dst);
}

void accumulate_norm(std::span<const Complex> z, std::span<double> acc) {
  NUMGUARD_DISPATCH(accumulate_norm, z, acc);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return NUMGUARD_DISPATCH(dot, a, b);
}

#undef NUMGUARD_DISPATCH

}  // namespace numguard::kernels
