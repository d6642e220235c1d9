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

#include "numguard/core_types.hpp"

#include <cmath>
#include <fstream>

#include "numguard/error.hpp"

namespace numguard {

namespace {

bool is_nr_spacing(double delta_f_hz) {
  for (double allowed : {15e3, 30e3, 60e3, 120e3}) {
    if (delta_f_hz == allowed) return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(UseCase use_case) {
  switch (use_case) {
    case UseCase::kEmbb:
      return "eMBB";
    case UseCase::kUrllc:
      return "URLLC";
    case UseCase::kMmtc:
      return "mMTC";
    case UseCase::kOther:
      return "other";
  }
  return "other";
}

UseCase use_case_from_string(std::string_view label) {
  if (label == "eMBB") return UseCase::kEmbb;
  if (label == "URLLC") return UseCase::kUrllc;
  if (label == "mMTC") return UseCase::kMmtc;
  if (label == "other") return UseCase::kOther;
  throw InvalidArgument("unknown use case label '" + std::string(label) + "'");
}

void Numerology::validate() const {
  if (!is_nr_spacing(delta_f_hz)) {
    throw InvalidArgument("numerology '" + id + "': subcarrier spacing " +
                          std::to_string(delta_f_hz) + " Hz is not one of 15/30/60/120 kHz");
  }
  if (num_subcarriers <= 0) {
    throw InvalidArgument("numerology '" + id + "': num_subcarriers must be positive");
  }
  if (!(required_sir_db >= 0.0) || !std::isfinite(required_sir_db)) {
    throw InvalidArgument("numerology '" + id + "': required SIR must be >= 0 dB");
  }
  if (!std::isfinite(power_db)) {
    throw InvalidArgument("numerology '" + id + "': power must be finite");
  }
}

void SymbolGeometry::validate() const {
  if (!(t_ofdm_s > 0.0)) throw InvalidArgument("T_OFDM must be positive");
  if (t_cp_ch_s < 0.0 || t_cp_win_s < 0.0) {
    throw InvalidArgument("guard durations must be non-negative");
  }
  if (sample_rate_hz < 0.0) throw InvalidArgument("sample rate must be non-negative");
}

GuardAllocation GuardAllocation::make(const Numerology& num, double t_cp_ch_s, double alpha,
                                      double guard_band_hz) {
  GuardAllocation out;
  out.alpha = alpha;
  out.guard_band_hz = guard_band_hz;
  out.guard_duration_s = alpha * num.t_ofdm_s();
  out.eta_time = numguard::eta_time(SymbolGeometry{num.t_ofdm_s(), t_cp_ch_s, out.guard_duration_s, 0.0});
  out.eta_freq = numguard::eta_freq(num.obw_hz(), guard_band_hz);
  out.eta = out.eta_time * out.eta_freq;
  return out;
}

double compute_theta(const Numerology& interferer, const Numerology& victim) {
  return interferer.power_db - victim.power_db + victim.required_sir_db;
}

double eta_time(const SymbolGeometry& geom) {
  geom.validate();
  return geom.t_ofdm_s / geom.period_s();
}

double eta_freq(double obw_hz, double gb_hz) {
  if (!(obw_hz > 0.0)) throw InvalidArgument("occupied bandwidth must be positive");
  if (gb_hz < 0.0) throw InvalidArgument("guard band must be non-negative");
  return obw_hz / (obw_hz + 2.0 * gb_hz);
}

void to_json(nlohmann::json& j, const Numerology& num) {
  j = nlohmann::json{{"id", num.id},
                     {"delta_f_hz", num.delta_f_hz},
                     {"num_subcarriers", num.num_subcarriers},
                     {"power_db", num.power_db},
                     {"required_sir_db", num.required_sir_db},
                     {"use_case", std::string(to_string(num.use_case))}};
}

void from_json(const nlohmann::json& j, Numerology& num) {
  j.at("id").get_to(num.id);
  j.at("delta_f_hz").get_to(num.delta_f_hz);
  j.at("num_subcarriers").get_to(num.num_subcarriers);
  j.at("power_db").get_to(num.power_db);
  j.at("required_sir_db").get_to(num.required_sir_db);
  num.use_case = use_case_from_string(j.value("use_case", std::string("other")));
}

std::vector<Numerology> numerologies_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) throw InvalidArgument("numerology document must be a JSON array");
  std::vector<Numerology> nums;
  nums.reserve(doc.size());
  for (const auto& item : doc) {
    try {
      nums.push_back(item.get<Numerology>());
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed numerology entry: ") + e.what());
    }
    nums.back().validate();
  }
  return nums;
}

nlohmann::json numerologies_to_json(const std::vector<Numerology>& nums) {
  return nlohmann::json(nums);
}

std::vector<Numerology> load_numerologies(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open numerology file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
  return numerologies_from_json(doc);
}

}  // namespace numguard
