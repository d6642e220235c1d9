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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "numguard/config.hpp"
#include "numguard/core_types.hpp"

namespace numguard {

enum class FrequencyRange { kFr1, kFr2 };

std::string_view to_string(FrequencyRange range);
FrequencyRange frequency_range_from_string(std::string_view text);  // "fr1" | "fr2"
std::vector<double> range_spacings_hz(FrequencyRange range);

// Independent sub-seed for a named stream and trial index.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index);

struct ScenarioLaw {
  double power_min_db = 0.0;
  double power_max_db = 20.0;
  double sir_min_db = 10.0;
  double sir_max_db = 40.0;
  double theta_min_db = 0.0;  // every ordered pair must land in [min, max]
  double theta_max_db = 60.0;
  int num_subcarriers = 256;
  int max_attempts = 100000;
};

struct Scenario {
  FrequencyRange range = FrequencyRange::kFr1;
  int m = 0;
  std::uint64_t seed = 0;
  std::vector<Numerology> numerologies;
};

// Spacing uniform over the range, power and SIR uniform over the law's
// intervals; whole sets are redrawn until every pairwise theta is in range.
Scenario generate_scenario(FrequencyRange range, int m, std::uint64_t seed,
                           const ScenarioLaw& law = {});

struct StrategyTotals {
  double total_gb_hz = 0.0;
  double total_gd_s = 0.0;
  double total_eta = 0.0;
};

struct TrialResult {
  std::uint64_t scenario_seed = 0;
  std::uint64_t scheduler_seed = 0;
  StrategyTotals fixed_random;
  StrategyTotals adaptive_random;
  StrategyTotals adaptive_ini;
};

struct StrategyMeans {
  std::string strategy;
  double mean_total_gb_hz = 0.0;
  double mean_total_gd_s = 0.0;
  double mean_eta = 0.0;
};

struct ComparisonReport {
  FrequencyRange range = FrequencyRange::kFr1;
  int m = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<StrategyMeans> strategies;  // fixed_random, adaptive_random, adaptive_ini
  std::vector<TrialResult> per_trial;

  const StrategyMeans& strategy(std::string_view name) const;

  // (baseline - candidate) / baseline, in percent.
  double gd_reduction_adaptive_pct() const;
  double gb_reduction_adaptive_pct() const;
  double gd_reduction_ini_pct() const;
  double gb_reduction_ini_pct() const;
};

double reduction_pct(double baseline, double candidate);

// Fixed worst-case guards with random order, adaptive guards with random
// order, adaptive guards with the INI heuristic.
ComparisonReport run_comparison(FrequencyRange range, int m, int trials, std::uint64_t seed,
                                const ModelConfig& config, const ScenarioLaw& law = {});

// Columns: strategy, mean_total_gb_hz, mean_total_gd_s, mean_eta, trials, seed.
std::string comparison_csv(const ComparisonReport& report);
void write_comparison_csv(const ComparisonReport& report, const std::string& path);

}  // namespace numguard
