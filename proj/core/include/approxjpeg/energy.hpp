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

#ifndef APPROXJPEG_ENERGY_HPP_
#define APPROXJPEG_ENERGY_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "approxjpeg/knobs.hpp"

namespace ajpg {

struct StageWeights {
  double dct = 1.0;
  double quant = 1.0;
  double entropy = 0.0;
  double skipCheck = 1.0;

  friend bool operator==(const StageWeights&, const StageWeights&) = default;
};

/// Relative energy proxy. Raw per-block costs are bit-operation counts (adder
/// operations weighted by their active width); process_cost() normalizes
/// them so a full-precision block costs 1.
struct EnergyModel {
  StageWeights weights;
  std::array<double, kMaxTruncLevel + 1> dctOps{};
  std::array<double, kMaxTruncLevel + 1> quantOps{};
  std::array<double, kMaxTruncLevel + 1> entropyOps{};
  double skipCheckOps = 0.0;
  /// Cost of a skipped block, already normalized.
  double skipCost = 0.0;
  std::array<std::optional<double>, kMaxTruncLevel + 1> processCostOverride{};
  std::optional<double> skipCheckCostOverride;

  double process_cost(int truncLevel) const;
  double skip_check_cost() const;
  /// Throws ConfigError on negative costs or skipCost >= process_cost(B).
  void validate() const;
};

/// Raw bit-op counts measured from the instrumented transform and quantizer.
EnergyModel default_activity_model(QuantMode mode = QuantMode::kShift);

/// Block counts of one encode, summed over channels.
struct BlockStats {
  std::size_t processed = 0;
  std::size_t skipped = 0;
  int truncLevel = 0;
  bool skippingEnabled = false;

  std::size_t total() const { return processed + skipped; }
  BlockStats& operator+=(const BlockStats& o);
};

double estimate_image_energy(const EnergyModel& model, const BlockStats& stats);
/// Energy of the same blocks with the checker running but nothing skipped.
double reference_energy(const EnergyModel& model, const BlockStats& stats);
/// 1 - estimate / reference.
double energy_saved(const EnergyModel& model, const BlockStats& stats);

/// Calibration JSON. Every field is optional and overrides `base`:
/// {"stage_weights": {"dct", "quant", "entropy", "skip_check"},
///  "skip_cost", "skip_check_cost", "process_cost": {"0".."4": cost}}
EnergyModel parse_calibration(const std::string& json, const EnergyModel& base);
std::string calibration_json(const EnergyModel& model);

}  // namespace ajpg

#endif  // APPROXJPEG_ENERGY_HPP_
