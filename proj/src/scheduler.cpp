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

#include "numguard/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "numguard/error.hpp"

namespace numguard {

namespace {

std::string pair_name(const Numerology& a, const Numerology& b) {
  return "'" + a.id + "' -> '" + b.id + "'";
}

// Allocation for interferer i toward victim j.
GuardAllocation directional(std::span<const Numerology> nums, std::size_t i, std::size_t j,
                            GuardSource& source) {
  const double theta = std::max(0.0, compute_theta(nums[i], nums[j]));
  const double granularity = std::min(nums[i].delta_f_hz, nums[j].delta_f_hz);
  try {
    return source.allocate(nums[i], theta, granularity);
  } catch (const Infeasible& ex) {
    throw Infeasible("boundary " + pair_name(nums[i], nums[j]) + ": " + ex.what(),
                     ex.best_effort_alpha());
  } catch (const GridExhausted& ex) {
    throw GridExhausted("boundary " + pair_name(nums[i], nums[j]) + ": " + ex.what(),
                        ex.deepest_level_db());
  }
}

// Sums in ascending order, so totals do not depend on slot order and mirrored
// arrangements compare exactly equal.
double ordered_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum;
}

// Totals from the per-slot guard durations and the boundary guard bands.
void finish_totals(Arrangement& arr, std::span<const Numerology> nums, const ModelConfig& config) {
  std::vector<double> useful, occupied, gb;
  for (std::size_t s = 0; s < arr.order.size(); ++s) {
    const Numerology& num = nums[arr.order[s]];
    const SymbolGeometry geom{num.t_ofdm_s(), config.t_cp_ch_s(num), arr.gd_s[s], 0.0};
    useful.push_back(num.obw_hz() * eta_time(geom));
    occupied.push_back(num.obw_hz());
  }
  for (const auto& b : arr.boundaries) gb.push_back(b.guard_band_hz);
  arr.total_gd_s = ordered_sum(arr.gd_s);
  arr.total_gb_hz = ordered_sum(std::move(gb));
  const double occupied_hz = ordered_sum(std::move(occupied));
  arr.total_eta = ordered_sum(std::move(useful)) / (occupied_hz + arr.total_gb_hz);
}

template <class Directional>
Arrangement assemble(std::span<const std::size_t> order, std::span<const Numerology> nums,
                     const ModelConfig& config, Directional&& dir) {
  validate_order(order, nums.size());
  const std::size_t m = order.size();
  Arrangement arr;
  arr.order.assign(order.begin(), order.end());
  arr.alpha_left.assign(m, 0.0);
  arr.alpha_right.assign(m, 0.0);
  arr.gd_s.assign(m, 0.0);
  for (std::size_t s = 0; s < m; ++s) arr.ids.push_back(nums[order[s]].id);

  for (std::size_t s = 0; s + 1 < m; ++s) {
    const std::size_t l = order[s];
    const std::size_t r = order[s + 1];
    const GuardAllocation lr = dir(l, r);
    const GuardAllocation rl = dir(r, l);
    BoundaryGuard b;
    b.left_id = nums[l].id;
    b.right_id = nums[r].id;
    b.theta_left_to_right_db = compute_theta(nums[l], nums[r]);
    b.theta_right_to_left_db = compute_theta(nums[r], nums[l]);
    b.guard_band_hz = std::max(lr.guard_band_hz, rl.guard_band_hz);
    b.left_alpha = lr.alpha;
    b.right_alpha = rl.alpha;
    b.left_gd_s = lr.guard_duration_s;
    b.right_gd_s = rl.guard_duration_s;
    arr.alpha_right[s] = lr.alpha;
    arr.alpha_left[s + 1] = rl.alpha;
    arr.boundaries.push_back(b);
  }

  for (std::size_t s = 0; s < m; ++s) {
    const double alpha = std::max(arr.alpha_left[s], arr.alpha_right[s]);
    arr.gd_s[s] = alpha * nums[order[s]].t_ofdm_s();
  }
  finish_totals(arr, nums, config);
  return arr;
}

}  // namespace

nlohmann::json Arrangement::to_json() const {
  nlohmann::json bounds = nlohmann::json::array();
  for (const auto& b : boundaries) {
    bounds.push_back({{"left_id", b.left_id},
                      {"right_id", b.right_id},
                      {"theta_left_to_right_db", b.theta_left_to_right_db},
                      {"theta_right_to_left_db", b.theta_right_to_left_db},
                      {"gb_hz", b.guard_band_hz},
                      {"left_alpha", b.left_alpha},
                      {"right_alpha", b.right_alpha},
                      {"left_gd_s", b.left_gd_s},
                      {"right_gd_s", b.right_gd_s}});
  }
  nlohmann::json slots = nlohmann::json::array();
  for (std::size_t s = 0; s < ids.size(); ++s) {
    slots.push_back({{"id", ids[s]},
                     {"alpha_left", alpha_left[s]},
                     {"alpha_right", alpha_right[s]},
                     {"gd_s", gd_s[s]}});
  }
  return {{"order", ids},
          {"slots", slots},
          {"boundaries", bounds},
          {"total_gb_hz", total_gb_hz},
          {"total_gd_s", total_gd_s},
          {"total_eta", total_eta}};
}

double similarity(const Numerology& num) { return num.required_sir_db - num.power_db; }

void validate_order(std::span<const std::size_t> order, std::size_t m) {
  if (order.size() != m) throw InvalidArgument("order length does not match numerology count");
  std::vector<bool> seen(m, false);
  for (std::size_t idx : order) {
    if (idx >= m || seen[idx]) throw InvalidArgument("order is not a permutation");
    seen[idx] = true;
  }
}

Arrangement evaluate_arrangement(std::span<const std::size_t> order,
                                 std::span<const Numerology> nums, GuardSource& source) {
  return assemble(order, nums, source.config(), [&](std::size_t i, std::size_t j) {
    return directional(nums, i, j, source);
  });
}

Arrangement evaluate_fixed_guards(std::span<const std::size_t> order,
                                  std::span<const Numerology> nums, GuardSource& source,
                                  double theta_db) {
  std::vector<GuardAllocation> fixed;
  fixed.reserve(nums.size());
  for (const auto& num : nums) fixed.push_back(source.allocate(num, theta_db, num.delta_f_hz));
  Arrangement arr = assemble(order, nums, source.config(),
                             [&](std::size_t i, std::size_t) { return fixed[i]; });
  // The worst-case window applies to both edges, including the outer ones.
  for (std::size_t s = 0; s < arr.order.size(); ++s) {
    arr.alpha_left[s] = arr.alpha_right[s] = fixed[arr.order[s]].alpha;
    arr.gd_s[s] = fixed[arr.order[s]].guard_duration_s;
  }
  finish_totals(arr, nums, source.config());
  return arr;
}

Order schedule_ini(std::span<const Numerology> nums, const IniOptions& options) {
  const std::size_t m = nums.size();
  if (m == 0) return {};
  const double tol = options.tie_tolerance_db;

  // Step 1: group by subcarrier spacing.
  std::vector<double> spacings;
  for (const auto& n : nums) spacings.push_back(n.delta_f_hz);
  std::sort(spacings.begin(), spacings.end());
  spacings.erase(std::unique(spacings.begin(), spacings.end()), spacings.end());
  if (options.spacing == IniOptions::SpacingOrder::kDescending) {
    std::reverse(spacings.begin(), spacings.end());
  }

  Order order;
  order.reserve(m);
  for (std::size_t g = 0; g < spacings.size(); ++g) {
    Order group;
    for (std::size_t i = 0; i < m; ++i) {
      if (nums[i].delta_f_hz == spacings[g]) group.push_back(i);
    }
    // Steps 2-3: similarity order within the group.
    bool descending = options.beta == IniOptions::BetaOrder::kDescending;
    if (options.beta == IniOptions::BetaOrder::kEdgesOutward && spacings.size() > 1 && g == 0) {
      descending = true;
    }
    std::stable_sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) {
      const double ba = similarity(nums[a]);
      const double bb = similarity(nums[b]);
      if (std::abs(ba - bb) <= tol) return false;
      return descending ? ba > bb : ba < bb;
    });

    // Step 4: within a run of equal beta, place next the member whose power
    // is closest to the numerology placed just before it.
    std::size_t k = 0;
    while (k < group.size()) {
      std::size_t end = k + 1;
      while (end < group.size() &&
             std::abs(similarity(nums[group[end]]) - similarity(nums[group[k]])) <= tol) {
        ++end;
      }
      std::vector<std::size_t> pending(group.begin() + static_cast<std::ptrdiff_t>(k),
                                       group.begin() + static_cast<std::ptrdiff_t>(end));
      while (!pending.empty()) {
        std::size_t pick = 0;
        if (!order.empty()) {
          const double prev = nums[order.back()].power_db;
          for (std::size_t c = 1; c < pending.size(); ++c) {
            if (std::abs(nums[pending[c]].power_db - prev) <
                std::abs(nums[pending[pick]].power_db - prev) - tol) {
              pick = c;
            }
          }
        }
        order.push_back(pending[pick]);
        pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      k = end;
    }
  }

  // Step 5: at each outer edge, between two equal-power neighbours of the same
  // spacing, the higher SIR requirement takes the edge slot.
  if (options.edge_rule && m >= 2) {
    auto edge_swap = [&](std::size_t edge, std::size_t inner) {
      const Numerology& e = nums[order[edge]];
      const Numerology& n = nums[order[inner]];
      if (e.delta_f_hz == n.delta_f_hz && std::abs(e.power_db - n.power_db) <= tol &&
          n.required_sir_db > e.required_sir_db + tol) {
        std::swap(order[edge], order[inner]);
      }
    };
    edge_swap(0, 1);
    if (m > 2) edge_swap(m - 1, m - 2);
  }
  return order;
}

Order schedule_random(std::size_t m, std::uint64_t seed) {
  Order order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Fisher-Yates with an explicit draw so the permutation does not depend on
  // the standard library's shuffle.
  for (std::size_t i = m; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

Order schedule_random(std::span<const Numerology> nums, std::uint64_t seed) {
  return schedule_random(nums.size(), seed);
}

Order schedule_bruteforce(std::span<const Numerology> nums, GuardSource& source) {
  const std::size_t m = nums.size();
  if (m > kBruteForceLimit) {
    throw InvalidArgument("brute-force scheduling is limited to " +
                          std::to_string(kBruteForceLimit) + " numerologies");
  }
  Order order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (m <= 1) return order;

  std::vector<GuardAllocation> pair(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j) pair[i * m + j] = directional(nums, i, j, source);
    }
  }
  const auto lookup = [&](std::size_t i, std::size_t j) { return pair[i * m + j]; };

  Order best = order;
  double best_eta = assemble(order, nums, source.config(), lookup).total_eta;
  while (std::next_permutation(order.begin(), order.end())) {
    const double eta = assemble(order, nums, source.config(), lookup).total_eta;
    if (eta > best_eta) {
      best_eta = eta;
      best = order;
    }
  }
  return best;
}

std::string arrangement_csv_header() {
  return "strategy,order,total_gb_hz,total_gd_s,total_eta";
}

std::string arrangement_csv_row(const std::string& strategy, const Arrangement& arr) {
  std::ostringstream os;
  os.precision(12);
  os << strategy << ',';
  for (std::size_t s = 0; s < arr.ids.size(); ++s) os << (s ? ";" : "") << arr.ids[s];
  os << ',' << arr.total_gb_hz << ',' << arr.total_gd_s << ',' << arr.total_eta;
  return os.str();
}

}  // namespace numguard
