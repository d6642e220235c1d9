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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "numguard/error.hpp"
#include "numguard/harness.hpp"
#include "numguard/scheduler.hpp"

using namespace numguard;

namespace {

Numerology make(const std::string& id, double df, double p, double s) {
  Numerology n;
  n.id = id;
  n.delta_f_hz = df;
  n.power_db = p;
  n.required_sir_db = s;
  return n;
}

ModelConfig& config() {
  static ModelConfig cfg;
  return cfg;
}

OptimizerGuardSource& source() {
  static OptimizerGuardSource src(config());
  return src;
}

std::vector<Numerology> mixed4() {
  return {make("a", 15e3, 3, 22), make("b", 30e3, 12, 18), make("c", 15e3, 8, 30),
          make("d", 30e3, 0, 15)};
}

}  // namespace

TEST_CASE("similarity metric") {
  CHECK(similarity(make("x", 15e3, 4, 25)) == 21.0);
  CHECK(similarity(make("x", 15e3, 10, 10)) == 0.0);
}

TEST_CASE("single numerology has no boundaries") {
  const std::vector<Numerology> one = {make("solo", 30e3, 5, 20)};
  const Order order = {0};
  const auto arr = evaluate_arrangement(order, one, source());
  CHECK(arr.boundaries.empty());
  CHECK(arr.total_gb_hz == 0.0);
  CHECK(arr.total_gd_s == 0.0);
  CHECK(arr.total_eta == doctest::Approx(eta_time(config().geometry(one[0], 0.0))));
}

TEST_CASE("identical numerologies give identical totals in every order") {
  std::vector<Numerology> nums;
  for (int i = 0; i < 4; ++i) nums.push_back(make("n" + std::to_string(i), 15e3, 5, 25));
  Order order(4);
  std::iota(order.begin(), order.end(), 0);
  const auto ref = evaluate_arrangement(order, nums, source());
  while (std::next_permutation(order.begin(), order.end())) {
    const auto arr = evaluate_arrangement(order, nums, source());
    CHECK(arr.total_eta == ref.total_eta);
    CHECK(arr.total_gb_hz == ref.total_gb_hz);
    CHECK(arr.total_gd_s == ref.total_gd_s);
  }
  Order identity(4);
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(schedule_bruteforce(nums, source()) == identity);
}

TEST_CASE("evaluation matches a pair-at-a-time oracle") {
  const auto nums = mixed4();
  const Order order = {2, 0, 3, 1};
  const auto arr = evaluate_arrangement(order, nums, source());

  // Independent bookkeeping: optimize each direction of each adjacent pair on
  // its own and total the band by hand.
  std::vector<double> alpha(4, 0.0);
  double gb = 0.0;
  for (std::size_t s = 0; s + 1 < order.size(); ++s) {
    const auto& l = nums[order[s]];
    const auto& r = nums[order[s + 1]];
    const double gran = std::min(l.delta_f_hz, r.delta_f_hz);
    const auto lr = GuardOptimizer(l, config()).optimize(std::max(0.0, l.power_db - r.power_db + r.required_sir_db), gran);
    const auto rl = GuardOptimizer(r, config()).optimize(std::max(0.0, r.power_db - l.power_db + l.required_sir_db), gran);
    gb += std::max(lr.guard_band_hz, rl.guard_band_hz);
    alpha[s] = std::max(alpha[s], lr.alpha);
    alpha[s + 1] = std::max(alpha[s + 1], rl.alpha);
    CHECK(arr.boundaries[s].guard_band_hz == std::max(lr.guard_band_hz, rl.guard_band_hz));
    CHECK(arr.boundaries[s].left_alpha == lr.alpha);
    CHECK(arr.boundaries[s].right_alpha == rl.alpha);
  }
  double gd = 0.0, useful = 0.0, occupied = 0.0;
  for (std::size_t s = 0; s < 4; ++s) {
    const auto& n = nums[order[s]];
    gd += alpha[s] / n.delta_f_hz;
    const double t = 1.0 / n.delta_f_hz;
    useful += n.obw_hz() * t / (t + config().t_cp_ch_s(n) + alpha[s] * t);
    occupied += n.obw_hz();
  }
  CHECK(arr.total_gb_hz == doctest::Approx(gb));
  CHECK(arr.total_gd_s == doctest::Approx(gd));
  CHECK(arr.total_eta == doctest::Approx(useful / (occupied + gb)).epsilon(1e-12));
  CHECK(arr.boundaries.size() == 3);
}

TEST_CASE("mirrored arrangements have equal totals") {
  const auto sc = generate_scenario(FrequencyRange::kFr1, 6, 77);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto order = schedule_random(6, seed);
    const auto a = evaluate_arrangement(order, sc.numerologies, source());
    std::reverse(order.begin(), order.end());
    const auto b = evaluate_arrangement(order, sc.numerologies, source());
    CHECK(a.total_gb_hz == b.total_gb_hz);
    CHECK(a.total_gd_s == b.total_gd_s);
    CHECK(a.total_eta == b.total_eta);
  }
}

TEST_CASE("negative thresholds are treated as unconstrained") {
  // theta(b -> a) = 0 - 30 + 10 < 0.
  const std::vector<Numerology> nums = {make("a", 15e3, 30, 10), make("b", 15e3, 0, 20)};
  const Order order = {0, 1};
  const auto arr = evaluate_arrangement(order, nums, source());
  CHECK(arr.boundaries[0].theta_right_to_left_db < 0.0);
  CHECK(arr.boundaries[0].right_alpha == 0.0);
}

TEST_CASE("invalid orders are rejected") {
  const auto nums = mixed4();
  const Order short_order = {0, 1, 2};
  const Order repeated = {0, 1, 1, 2};
  const Order out_of_range = {0, 1, 2, 4};
  CHECK_THROWS_AS(evaluate_arrangement(short_order, nums, source()), InvalidArgument);
  CHECK_THROWS_AS(evaluate_arrangement(repeated, nums, source()), InvalidArgument);
  CHECK_THROWS_AS(evaluate_arrangement(out_of_range, nums, source()), InvalidArgument);
}

TEST_CASE("infeasible boundary names the pair") {
  const std::vector<double> dfs = {15e3}, thetas = {10};
  TableGuardSource table(build_guard_table(dfs, thetas, config()));
  const std::vector<Numerology> nums = {make("loud", 15e3, 20, 20), make("quiet", 15e3, 0, 30)};
  const Order order = {0, 1};
  try {
    evaluate_arrangement(order, nums, table);
    FAIL("expected Infeasible");
  } catch (const Infeasible& ex) {
    const std::string what = ex.what();
    CHECK(what.find("'loud'") != std::string::npos);
    CHECK(what.find("'quiet'") != std::string::npos);
  }
}

TEST_CASE("fixed worst-case guards") {
  const auto nums = mixed4();
  const Order order = {0, 1, 2, 3};
  const auto fixed = evaluate_fixed_guards(order, nums, source(), 60.0);
  for (std::size_t s = 0; s < 4; ++s) {
    const auto a = source().allocate(nums[s], 60.0, nums[s].delta_f_hz);
    CHECK(fixed.alpha_left[s] == a.alpha);
    CHECK(fixed.alpha_right[s] == a.alpha);
  }
  for (std::size_t s = 0; s < 3; ++s) {
    const double want = std::max(source().allocate(nums[s], 60.0, nums[s].delta_f_hz).guard_band_hz,
                                 source().allocate(nums[s + 1], 60.0, nums[s + 1].delta_f_hz).guard_band_hz);
    CHECK(fixed.boundaries[s].guard_band_hz == want);
  }
  const auto adaptive = evaluate_arrangement(order, nums, source());
  CHECK(adaptive.total_eta > fixed.total_eta);
}

TEST_CASE("INI: distinct spacings sort by spacing") {
  const std::vector<Numerology> nums = {make("a", 60e3, 0, 20), make("b", 15e3, 5, 20),
                                        make("c", 120e3, 1, 11), make("d", 30e3, 2, 40)};
  CHECK(schedule_ini(nums) == Order{1, 3, 0, 2});
  IniOptions desc;
  desc.spacing = IniOptions::SpacingOrder::kDescending;
  CHECK(schedule_ini(nums, desc) == Order{2, 0, 3, 1});
}

TEST_CASE("INI: one spacing group orders by similarity") {
  // beta = {30, 10, 20}
  const std::vector<Numerology> nums = {make("a", 15e3, 0, 30), make("b", 15e3, 5, 15),
                                        make("c", 15e3, 2, 22)};
  CHECK(schedule_ini(nums) == Order{1, 2, 0});
  IniOptions d;
  d.beta = IniOptions::BetaOrder::kDescending;
  CHECK(schedule_ini(nums, d) == Order{0, 2, 1});
}

TEST_CASE("INI: with several groups, high similarity faces the outer edges") {
  const std::vector<Numerology> nums = {make("a", 15e3, 1, 31), make("b", 15e3, 0, 10),
                                        make("c", 30e3, 0, 25), make("d", 30e3, 0, 12)};
  CHECK(schedule_ini(nums) == Order{0, 1, 3, 2});
  IniOptions asc;
  asc.beta = IniOptions::BetaOrder::kAscending;
  CHECK(schedule_ini(nums, asc) == Order{1, 0, 3, 2});
}

TEST_CASE("INI: similarity ties are ordered by power next to the placed neighbour") {
  // All beta = 10. After "a" (power 9) comes the closest power, then onwards.
  const std::vector<Numerology> nums = {make("a", 15e3, 9, 35), make("x", 30e3, 0, 10),
                                        make("y", 30e3, 10, 20), make("z", 30e3, 4, 14)};
  IniOptions asc;
  asc.beta = IniOptions::BetaOrder::kAscending;
  CHECK(schedule_ini(nums, asc) == Order{0, 2, 3, 1});
}

TEST_CASE("INI: at an outer edge the higher SIR takes the edge slot on equal power") {
  const std::vector<Numerology> nums = {make("lo", 15e3, 5, 15), make("hi", 15e3, 5, 30),
                                        make("far", 30e3, 0, 20)};
  IniOptions asc;
  asc.beta = IniOptions::BetaOrder::kAscending;
  CHECK(schedule_ini(nums, asc) == Order{1, 0, 2});
  asc.edge_rule = false;
  CHECK(schedule_ini(nums, asc) == Order{0, 1, 2});
}

TEST_CASE("INI output is a grouped permutation") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto sc = generate_scenario(seed % 2 ? FrequencyRange::kFr2 : FrequencyRange::kFr1, 8, seed);
    const auto order = schedule_ini(sc.numerologies);
    CHECK_NOTHROW(validate_order(order, 8));
    std::set<double> closed;
    for (std::size_t s = 0; s < order.size(); ++s) {
      const double df = sc.numerologies[order[s]].delta_f_hz;
      if (s > 0 && sc.numerologies[order[s - 1]].delta_f_hz != df) {
        closed.insert(sc.numerologies[order[s - 1]].delta_f_hz);
      }
      CHECK(closed.count(df) == 0);
    }
  }
}

TEST_CASE("random scheduler") {
  CHECK(schedule_random(1, 5) == Order{0});
  CHECK(schedule_random(7, 123) == schedule_random(7, 123));
  CHECK(schedule_random(7, 123) != schedule_random(7, 124));
  // Each numerology lands in each slot with probability 1/4.
  std::vector<std::vector<int>> counts(4, std::vector<int>(4, 0));
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto o = schedule_random(4, derive_seed(99, "chi", i));
    for (std::size_t s = 0; s < 4; ++s) ++counts[o[s]][s];
  }
  double chi2 = 0.0;
  for (const auto& row : counts) {
    for (int c : row) {
      CHECK(static_cast<double>(c) / draws == doctest::Approx(0.25).epsilon(0.08));
      chi2 += std::pow(c - draws / 4.0, 2) / (draws / 4.0);
    }
  }
  // 9 degrees of freedom; 27.9 is the 0.1% critical value.
  CHECK(chi2 < 27.9);
}

TEST_CASE("brute force bounds the heuristic") {
  const auto sc = generate_scenario(FrequencyRange::kFr1, 5, 1);
  const auto& nums = sc.numerologies;
  const auto bf = evaluate_arrangement(schedule_bruteforce(nums, source()), nums, source());
  const auto ini = evaluate_arrangement(schedule_ini(nums), nums, source());
  double mean_random = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    mean_random += evaluate_arrangement(schedule_random(5, s), nums, source()).total_eta / 20;
  }
  CHECK(bf.total_eta >= ini.total_eta);
  CHECK(ini.total_eta >= mean_random);

  // Exhaustive re-scan.
  Order order(5);
  std::iota(order.begin(), order.end(), 0);
  do {
    CHECK(evaluate_arrangement(order, nums, source()).total_eta <= bf.total_eta * (1 + 1e-12));
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("brute force limits") {
  CHECK(schedule_bruteforce(std::vector<Numerology>{make("a", 15e3, 0, 10)}, source()) == Order{0});
  const auto sc = generate_scenario(FrequencyRange::kFr1, 9, 3);
  CHECK_THROWS_AS(schedule_bruteforce(sc.numerologies, source()), InvalidArgument);
}

TEST_CASE("arrangement export") {
  const auto nums = mixed4();
  const Order order = {3, 1, 0, 2};
  const auto arr = evaluate_arrangement(order, nums, source());
  const auto doc = arr.to_json();
  CHECK(doc.at("order") == nlohmann::json({"d", "b", "a", "c"}));
  CHECK(doc.at("boundaries").size() == 3);
  CHECK(doc.at("boundaries")[0].at("left_id") == "d");
  for (const char* k : {"gb_hz", "left_gd_s", "right_gd_s", "theta_left_to_right_db"}) {
    CHECK(doc.at("boundaries")[0].contains(k));
  }
  CHECK(doc.at("total_eta") == arr.total_eta);
  CHECK(arrangement_csv_header() == "strategy,order,total_gb_hz,total_gd_s,total_eta");
  CHECK(arrangement_csv_row("ini", arr).rfind("ini,d;b;a;c,", 0) == 0);
}
