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

#include "numguard/harness.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "numguard/error.hpp"
#include "numguard/guard_opt.hpp"
#include "numguard/scheduler.hpp"

namespace numguard {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Draws are taken from the raw engine output so that scenarios do not depend
// on the standard library's distribution implementations.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

StrategyTotals totals(const Arrangement& arr) {
  return {arr.total_gb_hz, arr.total_gd_s, arr.total_eta};
}

}  // namespace

std::string_view to_string(FrequencyRange range) {
  return range == FrequencyRange::kFr1 ? "fr1" : "fr2";
}

FrequencyRange frequency_range_from_string(std::string_view text) {
  if (text == "fr1" || text == "FR1") return FrequencyRange::kFr1;
  if (text == "fr2" || text == "FR2") return FrequencyRange::kFr2;
  throw InvalidArgument("frequency range must be fr1 or fr2, got '" + std::string(text) + "'");
}

std::vector<double> range_spacings_hz(FrequencyRange range) {
  if (range == FrequencyRange::kFr1) return {15e3, 30e3};
  return {60e3, 120e3};
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index) {
  std::uint64_t tag = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : stream) {
    tag ^= static_cast<unsigned char>(c);
    tag *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(master ^ tag) + index);
}

Scenario generate_scenario(FrequencyRange range, int m, std::uint64_t seed,
                           const ScenarioLaw& law) {
  if (m < 1) throw InvalidArgument("scenario needs at least one numerology");
  if (law.power_max_db < law.power_min_db || law.sir_max_db < law.sir_min_db ||
      law.theta_max_db < law.theta_min_db) {
    throw InvalidArgument("scenario law has an empty interval");
  }
  const auto spacings = range_spacings_hz(range);
  std::mt19937_64 rng(seed);
  Scenario sc{range, m, seed, {}};
  for (int attempt = 0; attempt < law.max_attempts; ++attempt) {
    std::vector<Numerology> nums(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
      Numerology& n = nums[static_cast<std::size_t>(k)];
      n.id = "n" + std::to_string(k);
      n.delta_f_hz = spacings[rng() % spacings.size()];
      n.num_subcarriers = law.num_subcarriers;
      n.power_db = uniform(rng, law.power_min_db, law.power_max_db);
      n.required_sir_db = uniform(rng, law.sir_min_db, law.sir_max_db);
      n.use_case = UseCase::kOther;
    }
    bool ok = true;
    for (std::size_t i = 0; i < nums.size() && ok; ++i) {
      for (std::size_t j = 0; j < nums.size() && ok; ++j) {
        if (i == j) continue;
        const double theta = compute_theta(nums[i], nums[j]);
        ok = theta >= law.theta_min_db && theta <= law.theta_max_db;
      }
    }
    if (ok) {
      sc.numerologies = std::move(nums);
      return sc;
    }
  }
  throw Error("scenario rejection budget exhausted after " + std::to_string(law.max_attempts) +
              " attempts (seed " + std::to_string(seed) + ")");
}

const StrategyMeans& ComparisonReport::strategy(std::string_view name) const {
  for (const auto& s : strategies) {
    if (s.strategy == name) return s;
  }
  throw InvalidArgument("no strategy named '" + std::string(name) + "'");
}

double reduction_pct(double baseline, double candidate) {
  if (baseline == 0.0) return 0.0;
  return 100.0 * (baseline - candidate) / baseline;
}

double ComparisonReport::gd_reduction_adaptive_pct() const {
  return reduction_pct(strategy("fixed_random").mean_total_gd_s,
                       strategy("adaptive_random").mean_total_gd_s);
}
double ComparisonReport::gb_reduction_adaptive_pct() const {
  return reduction_pct(strategy("fixed_random").mean_total_gb_hz,
                       strategy("adaptive_random").mean_total_gb_hz);
}
double ComparisonReport::gd_reduction_ini_pct() const {
  return reduction_pct(strategy("adaptive_random").mean_total_gd_s,
                       strategy("adaptive_ini").mean_total_gd_s);
}
double ComparisonReport::gb_reduction_ini_pct() const {
  return reduction_pct(strategy("adaptive_random").mean_total_gb_hz,
                       strategy("adaptive_ini").mean_total_gb_hz);
}

ComparisonReport run_comparison(FrequencyRange range, int m, int trials, std::uint64_t seed,
                                const ModelConfig& config, const ScenarioLaw& law) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  ComparisonReport report;
  report.range = range;
  report.m = m;
  report.trials = trials;
  report.seed = seed;

  OptimizerGuardSource source(config);
  for (int t = 0; t < trials; ++t) {
    TrialResult tr;
    tr.scenario_seed = derive_seed(seed, "scenario", static_cast<std::uint64_t>(t));
    tr.scheduler_seed = derive_seed(seed, "random-scheduler", static_cast<std::uint64_t>(t));
    try {
      const Scenario sc = generate_scenario(range, m, tr.scenario_seed, law);
      const auto& nums = sc.numerologies;
      const Order random = schedule_random(nums.size(), tr.scheduler_seed);
      const Order ini = schedule_ini(nums);
      tr.fixed_random = totals(evaluate_fixed_guards(random, nums, source, law.theta_max_db));
      tr.adaptive_random = totals(evaluate_arrangement(random, nums, source));
      tr.adaptive_ini = totals(evaluate_arrangement(ini, nums, source));
    } catch (const Error& ex) {
      throw Error("trial " + std::to_string(t) + " (scenario seed " +
                  std::to_string(tr.scenario_seed) + "): " + ex.what());
    }
    report.per_trial.push_back(tr);
  }

  auto mean_of = [&](const char* name, StrategyTotals TrialResult::*member) {
    StrategyMeans s;
    s.strategy = name;
    for (const auto& tr : report.per_trial) {
      s.mean_total_gb_hz += (tr.*member).total_gb_hz;
      s.mean_total_gd_s += (tr.*member).total_gd_s;
      s.mean_eta += (tr.*member).total_eta;
    }
    s.mean_total_gb_hz /= trials;
    s.mean_total_gd_s /= trials;
    s.mean_eta /= trials;
    return s;
  };
  report.strategies = {mean_of("fixed_random", &TrialResult::fixed_random),
                       mean_of("adaptive_random", &TrialResult::adaptive_random),
                       mean_of("adaptive_ini", &TrialResult::adaptive_ini)};
  return report;
}

std::string comparison_csv(const ComparisonReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "strategy,mean_total_gb_hz,mean_total_gd_s,mean_eta,trials,seed\n";
  for (const auto& s : report.strategies) {
    os << s.strategy << ',' << s.mean_total_gb_hz << ',' << s.mean_total_gd_s << ','
       << s.mean_eta << ',' << report.trials << ',' << report.seed << '\n';
  }
  return os.str();
}

void write_comparison_csv(const ComparisonReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << comparison_csv(report);
  if (!out) throw Error("failed writing " + path);
}

}  // namespace numguard
