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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "numguard/config.hpp"
#include "numguard/core_types.hpp"
#include "numguard/spectrum.hpp"

namespace numguard {

// {0, 1/(points-1), ..., 1}.
std::vector<double> uniform_alpha_grid(int points);
std::vector<double> default_alpha_grid(const ModelConfig& config);

// Joint (GB, GD) search for one numerology over a grid of roll-offs.
// Spectral profiles are computed once per roll-off and reused across thresholds.
class GuardOptimizer {
 public:
  GuardOptimizer(const Numerology& num, const ModelConfig& config, std::vector<double> alpha_grid);
  GuardOptimizer(const Numerology& num, const ModelConfig& config);

  struct Candidate {
    double alpha = 0.0;
    std::optional<GuardAllocation> allocation;  // empty when the span cannot reach theta
    double deepest_db = 0.0;
  };

  // Every roll-off on the grid with its minimal guard band.
  std::vector<Candidate> candidates(double theta_db, double granularity_hz = 0.0) const;

  // Highest-efficiency candidate; the smaller roll-off wins ties.
  // Throws Infeasible when no roll-off meets theta.
  GuardAllocation optimize(double theta_db, double granularity_hz = 0.0) const;

  const Numerology& numerology() const { return num_; }
  const std::vector<double>& alpha_grid() const { return alphas_; }
  const GuardProfile& profile(std::size_t i) const { return profiles_.at(i); }

 private:
  Numerology num_;
  ModelConfig config_;
  std::vector<double> alphas_;
  std::vector<GuardProfile> profiles_;
};

GuardAllocation optimize_guards(const Numerology& num, double theta_db, const ModelConfig& config,
                                std::span<const double> alpha_grid);

struct GuardTableEntry {
  double delta_f_hz = 0.0;
  double theta_db = 0.0;
  GuardAllocation allocation;
};

// Precomputed optimal guards over a (delta_f, theta) grid. The header records
// the symbol geometry the entries were derived under.
class GuardTable {
 public:
  GuardTable() = default;
  GuardTable(ModelConfig config, int num_subcarriers, std::vector<GuardTableEntry> entries);

  const ModelConfig& config() const { return config_; }
  int num_subcarriers() const { return num_subcarriers_; }
  const std::vector<GuardTableEntry>& entries() const { return entries_; }

  const GuardTableEntry* find(double delta_f_hz, double theta_db) const;
  // Entry with the smallest tabulated theta >= theta_db, or nullptr.
  const GuardTableEntry* lookup(double delta_f_hz, double theta_db) const;

  nlohmann::json to_json() const;
  static GuardTable from_json(const nlohmann::json& doc);
  std::string render_text() const;

 private:
  ModelConfig config_;
  int num_subcarriers_ = 256;
  std::vector<GuardTableEntry> entries_;  // sorted by (delta_f, theta)
};

GuardTable build_guard_table(std::span<const double> delta_fs_hz, std::span<const double> thetas_db,
                             const ModelConfig& config, int num_subcarriers = 256);

// Supplies the guard an interfering numerology needs toward a victim threshold.
class GuardSource {
 public:
  virtual ~GuardSource() = default;
  virtual GuardAllocation allocate(const Numerology& interferer, double theta_db,
                                   double granularity_hz) = 0;
  virtual const ModelConfig& config() const = 0;
};

class OptimizerGuardSource : public GuardSource {
 public:
  explicit OptimizerGuardSource(ModelConfig config);

  GuardAllocation allocate(const Numerology& interferer, double theta_db,
                           double granularity_hz) override;
  const ModelConfig& config() const override { return config_; }

 private:
  ModelConfig config_;
  std::vector<double> alphas_;
  std::mutex mutex_;
  std::map<std::pair<double, int>, std::unique_ptr<GuardOptimizer>> cache_;
};

// Conservative lookup: uses the entry at the next tabulated theta at or above
// the request. Throws Infeasible above the table.
class TableGuardSource : public GuardSource {
 public:
  explicit TableGuardSource(GuardTable table);

  GuardAllocation allocate(const Numerology& interferer, double theta_db,
                           double granularity_hz) override;
  const ModelConfig& config() const override { return table_.config(); }

 private:
  GuardTable table_;
};

}  // namespace numguard
