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

// numguard command-line front end.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "numguard/config.hpp"
#include "numguard/error.hpp"
#include "numguard/guard_opt.hpp"
#include "numguard/harness.hpp"
#include "numguard/scheduler.hpp"
#include "numguard/spectrum.hpp"
#include "numguard/waveform.hpp"

namespace {

using numguard::ModelConfig;
using numguard::Numerology;

struct ConfigFlags {
  std::string config_path;
  std::optional<std::string> prefix_mode;
  std::optional<std::string> mask_mode;
  std::optional<double> cp_ratio;
  std::optional<int> sample_rate_multiplier;
  std::optional<int> grid_div;
  std::optional<double> span_obw;
};

// File named by --config, else NUMGUARD_CONFIG, then explicit flags on top.
ModelConfig resolve_config(const ConfigFlags& flags, std::optional<int> alpha_grid = {}) {
  ModelConfig config = flags.config_path.empty() ? ModelConfig::from_environment()
                                                 : ModelConfig::from_file(flags.config_path);
  nlohmann::json over = nlohmann::json::object();
  if (flags.prefix_mode) over["prefix_mode"] = *flags.prefix_mode;
  if (flags.mask_mode) over["mask_mode"] = *flags.mask_mode;
  if (flags.cp_ratio) over["t_cp_ch_ratio"] = *flags.cp_ratio;
  if (flags.sample_rate_multiplier) over["sample_rate_multiplier"] = *flags.sample_rate_multiplier;
  if (flags.grid_div) over["grid_resolution_div"] = *flags.grid_div;
  if (flags.span_obw) over["span_obw"] = *flags.span_obw;
  if (alpha_grid) over["alpha_grid_points"] = *alpha_grid;
  config.merge_json(over);
  return config;
}

void write_json(const nlohmann::json& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw numguard::Error("cannot open " + path + " for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw numguard::Error("failed writing " + path);
}

nlohmann::json allocation_json(const numguard::GuardAllocation& a) {
  return {{"alpha", a.alpha},       {"gb_hz", a.guard_band_hz}, {"gd_s", a.guard_duration_s},
          {"eta", a.eta},           {"eta_time", a.eta_time},   {"eta_freq", a.eta_freq}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guard band / guard duration optimization for mixed OFDM numerologies"};
  app.require_subcommand(1);

  ConfigFlags cf;
  app.add_option("--config", cf.config_path, "JSON model config (default: $NUMGUARD_CONFIG)");
  app.add_option("--prefix-mode", cf.prefix_mode, "fixed | scaled");
  app.add_option("--mask-mode", cf.mask_mode, "peak | integrated");
  app.add_option("--cp-ratio", cf.cp_ratio, "channel prefix as a fraction of T_OFDM");
  app.add_option("--sample-rate-multiplier", cf.sample_rate_multiplier, "FFT size / subcarriers");
  app.add_option("--grid-div", cf.grid_div, "analytic grid step = delta_f / div");
  app.add_option("--span-obw", cf.span_obw, "analytic span beyond each edge, in OBWs");

  // psd
  auto* psd = app.add_subcommand("psd", "analytic or empirical PSD of one numerology");
  double psd_df = 15e3;
  double psd_alpha = 0.0;
  std::optional<double> psd_alpha_left, psd_alpha_right;
  int psd_split = -1;
  int psd_n = 256;
  bool psd_empirical = false;
  int psd_symbols = 1000;
  std::uint64_t psd_seed = 1;
  std::string psd_out;
  psd->add_option("--delta-f", psd_df, "subcarrier spacing in Hz")->required();
  psd->add_option("--alpha", psd_alpha, "window roll-off")->required();
  psd->add_option("--alpha-left", psd_alpha_left, "roll-off below the split (multi-window)");
  psd->add_option("--alpha-right", psd_alpha_right, "roll-off from the split up");
  psd->add_option("--split", psd_split, "first subcarrier of the upper partition (default N/2)");
  psd->add_option("--subcarriers", psd_n, "number of subcarriers")->required();
  psd->add_flag("--empirical", psd_empirical, "Welch estimate of a synthesized stream");
  psd->add_option("--symbols", psd_symbols, "symbols to synthesize");
  psd->add_option("--seed", psd_seed, "data seed");
  psd->add_option("--out", psd_out, "output CSV")->required();

  // optimize-guards
  auto* og = app.add_subcommand("optimize-guards", "optimal (GB, GD) for one threshold");
  double og_df = 15e3;
  double og_theta = 0.0;
  std::optional<int> og_grid;
  int og_n = 256;
  std::string og_out;
  og->add_option("--delta-f", og_df, "subcarrier spacing in Hz")->required();
  og->add_option("--theta", og_theta, "threshold in dB")->required();
  og->add_option("--alpha-grid", og_grid, "number of uniform roll-off grid points");
  og->add_option("--subcarriers", og_n, "number of subcarriers");
  og->add_option("--out", og_out, "output JSON")->required();

  // guard-table
  auto* gt = app.add_subcommand("guard-table", "optimal guards over a (delta_f, theta) grid");
  std::vector<double> gt_dfs, gt_thetas;
  int gt_n = 256;
  std::string gt_out;
  gt->add_option("--delta-f-set", gt_dfs, "comma-separated spacings in Hz")
      ->required()
      ->delimiter(',');
  gt->add_option("--theta-set", gt_thetas, "comma-separated thresholds in dB")
      ->required()
      ->delimiter(',');
  gt->add_option("--subcarriers", gt_n, "number of subcarriers");
  gt->add_option("--out", gt_out, "output JSON")->required();

  // schedule
  auto* sch = app.add_subcommand("schedule", "arrange numerologies onto subbands");
  std::string sch_in, sch_strategy, sch_out;
  std::uint64_t sch_seed = 0;
  std::string sch_spacing = "ascending";
  std::string sch_beta = "edges";
  sch->add_option("--input", sch_in, "numerologies JSON array")->required();
  sch->add_option("--strategy", sch_strategy, "ini | random | bruteforce")
      ->required()
      ->check(CLI::IsMember({"ini", "random", "bruteforce"}));
  sch->add_option("--seed", sch_seed, "seed for the random strategy");
  sch->add_option("--spacing-order", sch_spacing, "ini: ascending | descending")
      ->check(CLI::IsMember({"ascending", "descending"}));
  sch->add_option("--beta-order", sch_beta, "ini: edges | ascending | descending")
      ->check(CLI::IsMember({"edges", "ascending", "descending"}));
  sch->add_option("--out", sch_out, "output JSON")->required();

  // montecarlo
  auto* mc = app.add_subcommand("montecarlo", "compare guard/scheduling strategies");
  std::string mc_range;
  int mc_m = 8;
  int mc_trials = 100;
  std::uint64_t mc_seed = 1;
  std::string mc_out;
  mc->add_option("--range", mc_range, "fr1 | fr2")
      ->required()
      ->check(CLI::IsMember({"fr1", "fr2"}));
  mc->add_option("--m", mc_m, "numerologies per scenario");
  mc->add_option("--trials", mc_trials, "independent scenarios");
  mc->add_option("--seed", mc_seed, "master seed");
  mc->add_option("--out", mc_out, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*psd) {
      const ModelConfig config = resolve_config(cf);
      Numerology num;
      num.id = "psd";
      num.delta_f_hz = psd_df;
      num.num_subcarriers = psd_n;
      num.validate();
      const auto geom = config.geometry(num, psd_alpha);
      const bool multi = psd_alpha_left || psd_alpha_right;
      const double al = psd_alpha_left.value_or(psd_alpha);
      const double ar = psd_alpha_right.value_or(psd_alpha);
      const int split = psd_split >= 0 ? psd_split : psd_n / 2;
      numguard::PsdCurve curve;
      if (psd_empirical) {
        numguard::WindowParams win;
        win.alpha = psd_alpha;
        win.n_t = static_cast<int>(std::lround(geom.t_ofdm_s * geom.sample_rate_hz));
        const auto data = numguard::qam16_grid(psd_n, psd_symbols, psd_seed);
        numguard::SymbolStream stream;
        if (multi) {
          win.alpha_left = al;
          win.alpha_right = ar;
          stream = numguard::synthesize_multiwindow(data, geom, win, split);
        } else {
          stream = numguard::synthesize_wofdm(data, geom, win);
        }
        curve = numguard::welch_psd(stream);
      } else {
        const auto shape = multi ? numguard::PulseShape::multi_window(num, geom, al, ar, split)
                                 : numguard::PulseShape::from_geometry(num, geom);
        numguard::AnalyticOptions opt;
        opt.reference_div = config.grid_resolution_div;
        curve = numguard::analytic_psd(shape, numguard::default_grid(num, config), opt);
      }
      numguard::write_psd_csv(curve, psd_out);
      std::cout << "wrote " << curve.freqs_hz.size() << " points to " << psd_out << '\n';
    } else if (*og) {
      const ModelConfig config = resolve_config(cf, og_grid);
      Numerology num;
      num.id = "opt";
      num.delta_f_hz = og_df;
      num.num_subcarriers = og_n;
      const numguard::GuardOptimizer opt(num, config);
      const auto best = opt.optimize(og_theta);
      nlohmann::json doc = allocation_json(best);
      doc["delta_f_hz"] = og_df;
      doc["theta_db"] = og_theta;
      doc["num_subcarriers"] = og_n;
      doc["context"] = config.to_json();
      write_json(doc, og_out);
      std::cout << "alpha " << best.alpha << "  gb " << best.guard_band_hz << " Hz  gd "
                << best.guard_duration_s << " s  eta " << best.eta << '\n';
    } else if (*gt) {
      const ModelConfig config = resolve_config(cf);
      const auto table = numguard::build_guard_table(gt_dfs, gt_thetas, config, gt_n);
      write_json(table.to_json(), gt_out);
      std::cout << table.render_text();
    } else if (*sch) {
      const ModelConfig config = resolve_config(cf);
      const auto nums = numguard::load_numerologies(sch_in);
      numguard::OptimizerGuardSource source(config);
      numguard::Order order;
      if (sch_strategy == "ini") {
        numguard::IniOptions opt;
        opt.spacing = sch_spacing == "descending" ? numguard::IniOptions::SpacingOrder::kDescending
                                                  : numguard::IniOptions::SpacingOrder::kAscending;
        opt.beta = sch_beta == "ascending"    ? numguard::IniOptions::BetaOrder::kAscending
                   : sch_beta == "descending" ? numguard::IniOptions::BetaOrder::kDescending
                                              : numguard::IniOptions::BetaOrder::kEdgesOutward;
        order = numguard::schedule_ini(nums, opt);
      } else if (sch_strategy == "random") {
        order = numguard::schedule_random(nums, sch_seed);
      } else {
        order = numguard::schedule_bruteforce(nums, source);
      }
      const auto arr = numguard::evaluate_arrangement(order, nums, source);
      auto doc = arr.to_json();
      doc["strategy"] = sch_strategy;
      if (sch_strategy == "random") doc["seed"] = sch_seed;
      write_json(doc, sch_out);
      std::cout << numguard::arrangement_csv_header() << '\n'
                << numguard::arrangement_csv_row(sch_strategy, arr) << '\n';
    } else if (*mc) {
      const ModelConfig config = resolve_config(cf);
      const auto report = numguard::run_comparison(numguard::frequency_range_from_string(mc_range),
                                                   mc_m, mc_trials, mc_seed, config);
      numguard::write_comparison_csv(report, mc_out);
      std::cout << numguard::comparison_csv(report);
      std::cout << "adaptive vs fixed: GD -" << report.gd_reduction_adaptive_pct() << "%  GB -"
                << report.gb_reduction_adaptive_pct() << "%\n"
                << "INI vs random:     GD -" << report.gd_reduction_ini_pct() << "%  GB -"
                << report.gb_reduction_ini_pct() << "%\n";
    }
  } catch (const numguard::Error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
