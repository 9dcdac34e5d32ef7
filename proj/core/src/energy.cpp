// Copyright 2026 The approxjpeg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "approxjpeg/energy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "approxjpeg/error.hpp"
#include "approxjpeg/fdct.hpp"
#include "approxjpeg/intops.hpp"

namespace ajpg {

namespace {

// Pixel range after level shift and truncation by 2^B.
std::pair<std::int32_t, std::int32_t> input_range(int truncLevel) {
  PixelBlock lohi;
  lohi[0] = -128;
  lohi[1] = 127;
  PixelBlock t = truncate_block(lohi, truncLevel);
  return {t[0], t[1]};
}

// Widest output register of the transform for inputs in [lo, hi].
int coefficient_width(std::int32_t lo, std::int32_t hi) {
  OpCensus scratch;
  std::vector<RangedInt> in;
  in.reserve(kBlockSize);
  for (int i = 0; i < kBlockSize; ++i) in.emplace_back(lo, hi, scratch);
  int width = 0;
  for (const RangedInt& c : fdct_2d_generic(in)) width = std::max(width, c.width());
  return width;
}

// Restoring divider: one subtract-and-select stage per quotient bit over a
// 9-bit divisor.
constexpr int kDividerStageWidth = 9;
// Two bound adders and two comparators per pixel, 9 bits each.
constexpr int kSkipCheckOpsPerPixel = 4;
constexpr int kSkipCheckWidth = 9;

}  // namespace

double EnergyModel::process_cost(int truncLevel) const {
  if (truncLevel < 0 || truncLevel > kMaxTruncLevel) throw ConfigError("truncation level out of range");
  if (processCostOverride[truncLevel]) return *processCostOverride[truncLevel];
  auto raw = [&](int b) { return weights.dct * dctOps[b] + weights.quant * quantOps[b] + weights.entropy * entropyOps[b]; };
  double base = raw(0);
  if (base <= 0.0) throw ConfigError("energy model has zero full-precision cost");
  return raw(truncLevel) / base;
}

double EnergyModel::skip_check_cost() const {
  if (skipCheckCostOverride) return *skipCheckCostOverride;
  double base = weights.dct * dctOps[0] + weights.quant * quantOps[0] + weights.entropy * entropyOps[0];
  if (base <= 0.0) throw ConfigError("energy model has zero full-precision cost");
  return weights.skipCheck * skipCheckOps / base;
}

void EnergyModel::validate() const {
  if (weights.dct < 0 || weights.quant < 0 || weights.entropy < 0 || weights.skipCheck < 0) {
    throw ConfigError("stage weights must be non-negative");
  }
  if (skipCost < 0 || skip_check_cost() < 0) throw ConfigError("energy costs must be non-negative");
  for (int b = 0; b <= kMaxTruncLevel; ++b) {
    double p = process_cost(b);
    if (!(p >= 0)) throw ConfigError("energy costs must be non-negative");
    if (skipCost >= p) throw ConfigError("skip cost must be below the process cost at every truncation level");
  }
}

EnergyModel default_activity_model(QuantMode mode) {
  EnergyModel m;
  for (int b = 0; b <= kMaxTruncLevel; ++b) {
    auto [lo, hi] = input_range(b);
    m.dctOps[b] = static_cast<double>(fdct_2d_width_census(lo, hi).bitOps);
    int width = coefficient_width(lo, hi);
    // Shifts are wiring; the divider is a chain of subtract stages.
    m.quantOps[b] = mode == QuantMode::kShift ? 0.0 : double{kBlockSize} * width * kDividerStageWidth;
    m.entropyOps[b] = double{kBlockSize} * width;
  }
  m.skipCheckOps = double{kBlockSize} * kSkipCheckOpsPerPixel * kSkipCheckWidth;
  return m;
}

BlockStats& BlockStats::operator+=(const BlockStats& o) {
  processed += o.processed;
  skipped += o.skipped;
  skippingEnabled = skippingEnabled || o.skippingEnabled;
  return *this;
}

double estimate_image_energy(const EnergyModel& model, const BlockStats& stats) {
  double e = static_cast<double>(stats.processed) * model.process_cost(stats.truncLevel) +
             static_cast<double>(stats.skipped) * model.skipCost;
  if (stats.skippingEnabled) e += static_cast<double>(stats.total()) * model.skip_check_cost();
  return e;
}

double reference_energy(const EnergyModel& model, const BlockStats& stats) {
  double e = static_cast<double>(stats.total()) * model.process_cost(stats.truncLevel);
  if (stats.skippingEnabled) e += static_cast<double>(stats.total()) * model.skip_check_cost();
  return e;
}

double energy_saved(const EnergyModel& model, const BlockStats& stats) {
  double ref = reference_energy(model, stats);
  if (ref <= 0.0) return 0.0;
  return 1.0 - estimate_image_energy(model, stats) / ref;
}

EnergyModel parse_calibration(const std::string& text, const EnergyModel& base) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("calibration: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("calibration: top level must be an object");
  EnergyModel m = base;
  auto number = [](const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw ParseError("calibration: '" + key + "' must be a number");
    return v.get<double>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "stage_weights") {
      if (!value.is_object()) throw ParseError("calibration: 'stage_weights' must be an object");
      for (const auto& [stage, w] : value.items()) {
        double v = number(w, stage);
        if (stage == "dct") m.weights.dct = v;
        else if (stage == "quant") m.weights.quant = v;
        else if (stage == "entropy") m.weights.entropy = v;
        else if (stage == "skip_check") m.weights.skipCheck = v;
        else throw ParseError("calibration: unknown stage '" + stage + "'");
      }
    } else if (key == "skip_cost") {
      m.skipCost = number(value, key);
    } else if (key == "skip_check_cost") {
      m.skipCheckCostOverride = number(value, key);
    } else if (key == "process_cost") {
      if (!value.is_object()) throw ParseError("calibration: 'process_cost' must be an object");
      for (const auto& [level, cost] : value.items()) {
        if (level.size() != 1 || level[0] < '0' || level[0] > '0' + kMaxTruncLevel) {
          throw ParseError("calibration: process_cost key '" + level + "' is not a truncation level");
        }
        m.processCostOverride[level[0] - '0'] = number(cost, level);
      }
    } else {
      throw ParseError("calibration: unknown key '" + key + "'");
    }
  }
  m.validate();
  return m;
}

std::string calibration_json(const EnergyModel& model) {
  nlohmann::ordered_json j;
  j["stage_weights"] = {{"dct", model.weights.dct},
                        {"quant", model.weights.quant},
                        {"entropy", model.weights.entropy},
                        {"skip_check", model.weights.skipCheck}};
  j["skip_cost"] = model.skipCost;
  j["skip_check_cost"] = model.skip_check_cost();
  nlohmann::ordered_json costs;
  for (int b = 0; b <= kMaxTruncLevel; ++b) costs[std::to_string(b)] = model.process_cost(b);
  j["process_cost"] = costs;
  return j.dump(2) + "\n";
}

}  // namespace ajpg
