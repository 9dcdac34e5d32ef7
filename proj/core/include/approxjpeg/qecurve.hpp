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

#ifndef APPROXJPEG_QECURVE_HPP_
#define APPROXJPEG_QECURVE_HPP_

#include <span>
#include <string>
#include <vector>

#include "approxjpeg/energy.hpp"
#include "approxjpeg/imageio.hpp"
#include "approxjpeg/pipeline.hpp"

namespace ajpg {

enum class KnobKind { kLoop, kTrunc };

const char* knob_name(KnobKind kind);
KnobKind parse_knob_kind(const std::string& name);

struct QEPoint {
  int level = 0;
  double degradation = 0.0;  // SAD fraction against the level-0 output
  double relativeEnergy = 1.0;

  friend bool operator==(const QEPoint&, const QEPoint&) = default;
};

struct QECurve {
  KnobKind kind = KnobKind::kLoop;
  std::vector<QEPoint> points;

  /// Throws ConfigError unless levels strictly increase from a first point
  /// (0, 0, 1) and relative energy never increases.
  void validate() const;
  friend bool operator==(const QECurve&, const QECurve&) = default;
};

/// Header "kind,level,quality_degradation,relative_energy", one row per point.
std::string to_csv(const QECurve& curve);
/// Throws ParseError on malformed rows and ConfigError on invalid curves.
QECurve parse_qe_csv(const std::string& text);

struct LevelSelection {
  int level = 0;
  double degradation = 0.0;
  double relativeEnergy = 1.0;
  bool satisfied = true;  // false when not even level 0 meets the bound
};

/// For each bound, scans levels upward while the next level's degradation
/// stays within the bound and takes the last one that did.
std::vector<LevelSelection> select_levels(const QECurve& curve, std::span<const double> bounds);

struct ImageLevelResult {
  double degradation = 0.0;
  double relativeEnergy = 1.0;
  double energySaved = 0.0;
  BlockStats stats;
};

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
};
Summary summarize(std::span<const double> values);

struct QEExtraction {
  QECurve curve;
  std::vector<LevelSelection> selections;
  /// perImage[image][level]
  std::vector<std::vector<ImageLevelResult>> perImage;
};

/// Sweeps one knob over all its levels on every image (the other knob stays as
/// in `base`), averages degradation and relative energy over the corpus and
/// selects a level per bound. Images are processed in parallel.
QEExtraction extract_qe_curve(KnobKind kind, std::span<const RasterImage> corpus, const EncodeConfig& base,
                              const EnergyModel& model, std::span<const double> bounds);

}  // namespace ajpg

#endif  // APPROXJPEG_QECURVE_HPP_
