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

#include "numguard/guard_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "numguard/error.hpp"

namespace numguard {

namespace {

constexpr double kMatchTolerance = 1e-9;

bool close(double a, double b) { return std::abs(a - b) <= kMatchTolerance * std::max(1.0, std::abs(b)); }

std::string describe(double delta_f_hz, double theta_db) {
  std::ostringstream os;
  os << "delta_f " << delta_f_hz / 1e3 << " kHz, theta " << theta_db << " dB";
  return os.str();
}

}  // namespace

std::vector<double> uniform_alpha_grid(int points) {
  if (points < 1) throw InvalidArgument("alpha grid needs at least one point");
  if (points == 1) return {0.0};
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return grid;
}

std::vector<double> default_alpha_grid(const ModelConfig& config) {
  return uniform_alpha_grid(config.alpha_grid_points);
}

GuardOptimizer::GuardOptimizer(const Numerology& num, const ModelConfig& config,
                               std::vector<double> alpha_grid)
    : num_(num), config_(config), alphas_(std::move(alpha_grid)) {
  num_.validate();
  config_.validate();
  if (alphas_.empty()) throw InvalidArgument("empty alpha grid");
  std::sort(alphas_.begin(), alphas_.end());
  alphas_.erase(std::unique(alphas_.begin(), alphas_.end()), alphas_.end());
  if (alphas_.front() < 0.0 || alphas_.back() > 1.0) {
    throw InvalidArgument("alpha grid must lie in [0, 1]");
  }
  profiles_.reserve(alphas_.size());
  for (double a : alphas_) {
    profiles_.emplace_back(PulseShape::from_geometry(num_, config_.geometry(num_, a)), config_);
  }
}

GuardOptimizer::GuardOptimizer(const Numerology& num, const ModelConfig& config)
    : GuardOptimizer(num, config, default_alpha_grid(config)) {}

std::vector<GuardOptimizer::Candidate> GuardOptimizer::candidates(double theta_db,
                                                                  double granularity_hz) const {
  if (!(theta_db >= 0.0)) throw InvalidArgument("threshold must be non-negative");
  const double g = granularity_hz > 0.0 ? granularity_hz : num_.delta_f_hz;
  const double t_cp = config_.t_cp_ch_s(num_);
  std::vector<Candidate> out;
  out.reserve(alphas_.size());
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    Candidate c;
    c.alpha = alphas_[i];
    c.deepest_db = profiles_[i].deepest_db();
    try {
      const double offset = profiles_[i].required_offset_hz(theta_db, config_.mask_mode);
      c.allocation = GuardAllocation::make(num_, t_cp, alphas_[i], quantize_guard(offset, g));
    } catch (const GridExhausted&) {
    }
    out.push_back(c);
  }
  return out;
}

GuardAllocation GuardOptimizer::optimize(double theta_db, double granularity_hz) const {
  const auto cands = candidates(theta_db, granularity_hz);
  const GuardAllocation* best = nullptr;
  for (const auto& c : cands) {
    if (c.allocation && (best == nullptr || c.allocation->eta > best->eta)) best = &*c.allocation;
  }
  if (best == nullptr) {
    const auto deepest = std::min_element(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
      return a.deepest_db < b.deepest_db;
    });
    throw Infeasible("no roll-off meets the threshold for " + describe(num_.delta_f_hz, theta_db),
                     deepest->alpha);
  }
  return *best;
}

GuardAllocation optimize_guards(const Numerology& num, double theta_db, const ModelConfig& config,
                                std::span<const double> alpha_grid) {
  return GuardOptimizer(num, config, std::vector<double>(alpha_grid.begin(), alpha_grid.end()))
      .optimize(theta_db);
}

GuardTable::GuardTable(ModelConfig config, int num_subcarriers, std::vector<GuardTableEntry> entries)
    : config_(std::move(config)), num_subcarriers_(num_subcarriers), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return a.delta_f_hz != b.delta_f_hz ? a.delta_f_hz < b.delta_f_hz : a.theta_db < b.theta_db;
  });
}

const GuardTableEntry* GuardTable::find(double delta_f_hz, double theta_db) const {
  for (const auto& e : entries_) {
    if (close(e.delta_f_hz, delta_f_hz) && close(e.theta_db, theta_db)) return &e;
  }
  return nullptr;
}

const GuardTableEntry* GuardTable::lookup(double delta_f_hz, double theta_db) const {
  for (const auto& e : entries_) {
    if (close(e.delta_f_hz, delta_f_hz) && e.theta_db >= theta_db - kMatchTolerance) return &e;
  }
  return nullptr;
}

nlohmann::json GuardTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : entries_) {
    entries.push_back({{"delta_f_hz", e.delta_f_hz},
                       {"theta_db", e.theta_db},
                       {"alpha", e.allocation.alpha},
                       {"gb_hz", e.allocation.guard_band_hz},
                       {"gd_s", e.allocation.guard_duration_s},
                       {"eta", e.allocation.eta}});
  }
  nlohmann::json context = config_.to_json();
  context["num_subcarriers"] = num_subcarriers_;
  return {{"context", context}, {"entries", entries}};
}

GuardTable GuardTable::from_json(const nlohmann::json& doc) {
  try {
    const auto& context = doc.at("context");
    ModelConfig config;
    config.merge_json(context);
    const int n = context.at("num_subcarriers").get<int>();
    std::vector<GuardTableEntry> entries;
    for (const auto& item : doc.at("entries")) {
      Numerology num;
      num.delta_f_hz = item.at("delta_f_hz").get<double>();
      num.num_subcarriers = n;
      num.validate();
      GuardTableEntry e;
      e.delta_f_hz = num.delta_f_hz;
      e.theta_db = item.at("theta_db").get<double>();
      e.allocation = GuardAllocation::make(num, config.t_cp_ch_s(num), item.at("alpha").get<double>(),
                                           item.at("gb_hz").get<double>());
      entries.push_back(e);
    }
    return GuardTable(config, n, std::move(entries));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("malformed guard table: ") + ex.what());
  }
}

std::string GuardTable::render_text() const {
  std::ostringstream os;
  os << "delta_f_khz  theta_db  alpha     gb_khz    gd_us     eta\n";
  os.setf(std::ios::fixed);
  for (const auto& e : entries_) {
    os.precision(0);
    os.width(11);
    os << e.delta_f_hz / 1e3 << "  ";
    os.precision(1);
    os.width(8);
    os << e.theta_db << "  ";
    os.precision(5);
    os.width(8);
    os << e.allocation.alpha << "  ";
    os.precision(1);
    os.width(8);
    os << e.allocation.guard_band_hz / 1e3 << "  ";
    os.precision(3);
    os.width(7);
    os << e.allocation.guard_duration_s * 1e6 << "  ";
    os.precision(4);
    os << e.allocation.eta << '\n';
  }
  return os.str();
}

GuardTable build_guard_table(std::span<const double> delta_fs_hz, std::span<const double> thetas_db,
                             const ModelConfig& config, int num_subcarriers) {
  std::vector<GuardTableEntry> entries;
  for (double df : delta_fs_hz) {
    Numerology num;
    num.delta_f_hz = df;
    num.num_subcarriers = num_subcarriers;
    const GuardOptimizer opt(num, config);
    for (double theta : thetas_db) {
      try {
        entries.push_back({df, theta, opt.optimize(theta)});
      } catch (const Infeasible& ex) {
        throw Infeasible("guard table cell infeasible: " + describe(df, theta),
                         ex.best_effort_alpha());
      }
    }
  }
  return GuardTable(config, num_subcarriers, std::move(entries));
}

OptimizerGuardSource::OptimizerGuardSource(ModelConfig config)
    : config_(std::move(config)), alphas_(default_alpha_grid(config_)) {}

GuardAllocation OptimizerGuardSource::allocate(const Numerology& interferer, double theta_db,
                                               double granularity_hz) {
  const GuardOptimizer* opt = nullptr;
  {
    std::lock_guard lock(mutex_);
    auto& slot = cache_[{interferer.delta_f_hz, interferer.num_subcarriers}];
    if (!slot) slot = std::make_unique<GuardOptimizer>(interferer, config_, alphas_);
    opt = slot.get();
  }
  return opt->optimize(theta_db, granularity_hz);
}

TableGuardSource::TableGuardSource(GuardTable table) : table_(std::move(table)) {}

GuardAllocation TableGuardSource::allocate(const Numerology& interferer, double theta_db,
                                           double /*granularity_hz*/) {
  if (interferer.num_subcarriers != table_.num_subcarriers()) {
    throw InvalidArgument("guard table was built for a different subcarrier count");
  }
  const auto* e = table_.lookup(interferer.delta_f_hz, theta_db);
  if (e == nullptr) {
    throw Infeasible("guard table has no entry at or above " +
                         describe(interferer.delta_f_hz, theta_db),
                     std::numeric_limits<double>::quiet_NaN());
  }
  return e->allocation;
}

}  // namespace numguard
