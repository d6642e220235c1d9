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
#include <cstddef>
#include <memory>
#include <span>

namespace numguard {

// RAII wrapper over an FFTW complex-to-complex plan. Unnormalized in both
// directions. Not thread-safe: one plan per thread.
class FftPlan {
 public:
  enum class Direction { kForward, kInverse };

  FftPlan(std::size_t size, Direction direction);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return size_; }

  // in and out must both hold size() samples; they may alias.
  void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

 private:
  struct Impl;
  std::size_t size_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace numguard
