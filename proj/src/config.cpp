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

#include "numguard/config.hpp"

#include <cstdlib>
#include <fstream>

#include "numguard/error.hpp"

namespace numguard {

double ModelConfig::t_cp_ch_s(const Numerology& num) const {
  if (prefix_mode == PrefixMode::kFixed) return cp_ratio / reference_delta_f_hz;
  return cp_ratio * num.t_ofdm_s();
}

double ModelConfig::sample_rate_hz(const Numerology& num) const {
  return static_cast<double>(sample_rate_multiplier) * num.num_subcarriers * num.delta_f_hz;
}

SymbolGeometry ModelConfig::geometry(const Numerology& num, double alpha) const {
  return SymbolGeometry{num.t_ofdm_s(), t_cp_ch_s(num), alpha * num.t_ofdm_s(),
                        sample_rate_hz(num)};
}

void ModelConfig::validate() const {
  if (cp_ratio < 0.0) throw InvalidArgument("cp_ratio must be non-negative");
  if (!(reference_delta_f_hz > 0.0)) throw InvalidArgument("reference_delta_f_hz must be positive");
  if (sample_rate_multiplier < 2) {
    throw InvalidArgument("sample_rate_multiplier must be >= 2 (sample rate >= 2 x OBW)");
  }
  if (grid_resolution_div < 1) throw InvalidArgument("grid_resolution_div must be >= 1");
  if (!(span_obw > 0.0)) throw InvalidArgument("span_obw must be positive");
  if (alpha_grid_points < 2) throw InvalidArgument("alpha_grid_points must be >= 2");
}

void ModelConfig::merge_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config document must be a JSON object");
  try {
    if (doc.contains("prefix_mode")) {
      const auto mode = doc.at("prefix_mode").get<std::string>();
      if (mode == "fixed") {
        prefix_mode = PrefixMode::kFixed;
      } else if (mode == "scaled") {
        prefix_mode = PrefixMode::kScaled;
      } else {
        throw InvalidArgument("prefix_mode must be 'fixed' or 'scaled'");
      }
    }
    if (doc.contains("mask_mode")) {
      const auto mode = doc.at("mask_mode").get<std::string>();
      if (mode == "peak") {
        mask_mode = MaskMode::kPeak;
      } else if (mode == "integrated") {
        mask_mode = MaskMode::kIntegrated;
      } else {
        throw InvalidArgument("mask_mode must be 'peak' or 'integrated'");
      }
    }
    cp_ratio = doc.value("t_cp_ch_ratio", cp_ratio);
    reference_delta_f_hz = doc.value("reference_delta_f_hz", reference_delta_f_hz);
    sample_rate_multiplier = doc.value("sample_rate_multiplier", sample_rate_multiplier);
    grid_resolution_div = doc.value("grid_resolution_div", grid_resolution_div);
    span_obw = doc.value("span_obw", span_obw);
    alpha_grid_points = doc.value("alpha_grid_points", alpha_grid_points);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  validate();
}

nlohmann::json ModelConfig::to_json() const {
  return {{"prefix_mode", prefix_mode == PrefixMode::kFixed ? "fixed" : "scaled"},
          {"mask_mode", mask_mode == MaskMode::kPeak ? "peak" : "integrated"},
          {"t_cp_ch_ratio", cp_ratio},
          {"reference_delta_f_hz", reference_delta_f_hz},
          {"sample_rate_multiplier", sample_rate_multiplier},
          {"grid_resolution_div", grid_resolution_div},
          {"span_obw", span_obw},
          {"alpha_grid_points", alpha_grid_points}};
}

ModelConfig ModelConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("config '" + path + "' is not valid JSON: " + e.what());
  }
  ModelConfig config;
  config.merge_json(doc);
  return config;
}

ModelConfig ModelConfig::from_environment() {
  const char* path = std::getenv("NUMGUARD_CONFIG");
  if (path == nullptr || *path == '\0') return ModelConfig{};
  return from_file(path);
}

}  // namespace numguard
