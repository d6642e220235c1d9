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

// Scalar helpers for the raised-cosine window spectrum. Shared by the kernels
// (to patch removable singularities) and by the spectrum module.

#include <cmath>
#include <numbers>

namespace numguard::kernels {

// Half-width of the neighbourhoods where the closed form is replaced by a series.
inline constexpr double kSeriesTolerance = 1e-6;

// sin(pi x), exactly zero at integers. The argument is reduced to [-1/2, 1/2]
// by steps that are exact in floating point.
inline double sin_pi(double x) {
  double r = x - 2.0 * std::nearbyint(0.5 * x);  // [-1, 1]
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(std::numbers::pi * r);
}

// cos(pi x), exactly zero at half-integers.
inline double cos_pi(double x) {
  const double r = std::abs(x - 2.0 * std::nearbyint(0.5 * x));  // [0, 1]
  if (r < 0.25) return std::cos(std::numbers::pi * r);
  return sin_pi(0.5 - r);
}

// sin(pi u) / (pi u), with the u -> 0 limit.
inline double sinc_pi(double u) {
  const double pu = std::numbers::pi * u;
  if (std::abs(u) < kSeriesTolerance) return 1.0 - pu * pu / 6.0;
  return sin_pi(u) / pu;
}

// Series of cos(pi v / 2) / (1 - v^2) around |v| = 1, in eps = |v| - 1.
inline double rc_taper_series(double eps) {
  constexpr double pi = std::numbers::pi;
  return pi / 4.0 - pi / 8.0 * eps + (pi / 16.0 - pi * pi * pi / 96.0) * eps * eps;
}

// cos(pi a u) / (1 - (2 a u)^2), finite across 2 a u = +-1.
inline double rc_taper(double u, double alpha) {
  const double v = 2.0 * alpha * u;
  const double eps = std::abs(v) - 1.0;
  if (std::abs(eps) < kSeriesTolerance) return rc_taper_series(eps);
  return cos_pi(alpha * u) / (1.0 - v * v);
}

// Frequency response of the raised-cosine window at u (in units of 1/T):
// sinc(pi u) * cos(pi alpha u) / (1 - (2 alpha u)^2).
inline double rc_spectrum(double u, double alpha) {
  return sinc_pi(u) * rc_taper(u, alpha);
}

// True where the angle-addition form loses the removable-singularity limit.
inline bool rc_near_singular(double u, double alpha) {
  return std::abs(u) < kSeriesTolerance ||
         std::abs(std::abs(2.0 * alpha * u) - 1.0) < kSeriesTolerance;
}

}  // namespace numguard::kernels
