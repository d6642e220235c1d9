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

#include "numguard/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "numguard/error.hpp"

namespace numguard {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FftPlan::Impl {
  fftw_complex* buffer = nullptr;
  fftw_plan plan = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (plan != nullptr) fftw_destroy_plan(plan);
    if (buffer != nullptr) fftw_free(buffer);
  }
};

FftPlan::FftPlan(std::size_t size, Direction direction) : size_(size), impl_(new Impl) {
  if (size == 0) throw InvalidArgument("FFT size must be positive");
  std::lock_guard lock(planner_mutex());
  impl_->buffer = fftw_alloc_complex(size);
  const int sign = direction == Direction::kForward ? FFTW_FORWARD : FFTW_BACKWARD;
  impl_->plan = fftw_plan_dft_1d(static_cast<int>(size), impl_->buffer, impl_->buffer, sign,
                                 FFTW_ESTIMATE);
  if (impl_->plan == nullptr) throw Error("FFTW failed to create a plan");
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::execute(std::span<const std::complex<double>> in,
                      std::span<std::complex<double>> out) {
  if (in.size() != size_ || out.size() != size_) {
    throw InvalidArgument("FFT buffer length does not match the plan size");
  }
  auto* buf = reinterpret_cast<std::complex<double>*>(impl_->buffer);
  std::copy(in.begin(), in.end(), buf);
  fftw_execute(impl_->plan);
  std::copy(buf, buf + size_, out.begin());
}

}  // namespace numguard
