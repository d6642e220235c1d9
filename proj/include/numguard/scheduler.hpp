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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "numguard/core_types.hpp"
#include "numguard/guard_opt.hpp"

namespace numguard {

using Order = std::vector<std::size_t>;  // slot -> index into the numerology list

struct BoundaryGuard {
  std::string left_id;
  std::string right_id;
  double theta_left_to_right_db = 0.0;  // left interferes with right
  double theta_right_to_left_db = 0.0;
  double guard_band_hz = 0.0;
  double left_alpha = 0.0;   // right-edge roll-off of the left numerology
  double right_alpha = 0.0;  // left-edge roll-off of the right numerology
  double left_gd_s = 0.0;
  double right_gd_s = 0.0;
};

struct Arrangement {
  Order order;
  std::vector<std::string> ids;
  std::vector<BoundaryGuard> boundaries;
  // Per slot: roll-offs at the lower and upper band edge, and the windowing
  // extension the symbol reserves (the larger of the two).
  std::vector<double> alpha_left;
  std::vector<double> alpha_right;
  std::vector<double> gd_s;
  double total_gb_hz = 0.0;
  double total_gd_s = 0.0;
  double total_eta = 0.0;

  nlohmann::json to_json() const;
};

// beta = required SIR - power.
double similarity(const Numerology& num);

void validate_order(std::span<const std::size_t> order, std::size_t m);

// Adaptive guards: every internal boundary gets the larger of the two
// directional guard bands (granularity = finer spacing of the pair) and each
// side of a numerology its own directional roll-off. Negative thresholds are
// treated as 0 dB. Outer band edges are unconstrained.
Arrangement evaluate_arrangement(std::span<const std::size_t> order,
                                 std::span<const Numerology> nums, GuardSource& source);

// Worst-case baseline: every numerology uses its optimal allocation at
// theta_db on both edges regardless of neighbours.
Arrangement evaluate_fixed_guards(std::span<const std::size_t> order,
                                  std::span<const Numerology> nums, GuardSource& source,
                                  double theta_db = 60.0);

struct IniOptions {
  enum class SpacingOrder { kAscending, kDescending };
  enum class BetaOrder {
    kAscending,
    kDescending,
    // Ascending, except the first of several spacing groups is reversed so
    // that high-beta numerologies sit at both outer edges.
    kEdgesOutward,
  };
  SpacingOrder spacing = SpacingOrder::kAscending;
  BetaOrder beta = BetaOrder::kEdgesOutward;
  double tie_tolerance_db = 1e-9;
  bool edge_rule = true;
};

Order schedule_ini(std::span<const Numerology> nums, const IniOptions& options = {});

// Uniform permutation of m slots.
Order schedule_random(std::size_t m, std::uint64_t seed);
Order schedule_random(std::span<const Numerology> nums, std::uint64_t seed);

inline constexpr std::size_t kBruteForceLimit = 8;

// Exhaustive search for the highest total_eta; the lexicographically first
// order wins ties.
Order schedule_bruteforce(std::span<const Numerology> nums, GuardSource& source);

std::string arrangement_csv_header();
std::string arrangement_csv_row(const std::string& strategy, const Arrangement& arr);

}  // namespace numguard
