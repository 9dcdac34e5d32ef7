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

#ifndef APPROXJPEG_TUNER_HPP_
#define APPROXJPEG_TUNER_HPP_

#include <string>
#include <vector>

#include "approxjpeg/qecurve.hpp"

namespace ajpg {

struct TunerInput {
  QECurve loopCurve;
  QECurve truncCurve;
  double bound = 0.0;  // largest admissible SAD degradation

  void validate() const;
};

/// Selected loop-skip level i and truncation level j.
struct TunerResult {
  int i = 0;
  int j = 0;
  double predictedQuality = 0.0;  // degradation
  double predictedEnergy = 1.0;

  friend bool operator==(const TunerResult&, const TunerResult&) = default;
};

/// Composed prediction at point indices (i, j): degradations add, energy
/// savings add.
double composed_degradation(const TunerInput& in, int i, int j);
double composed_energy(const TunerInput& in, int i, int j);

/// Greedy descent: at each step advance the knob whose next step costs less
/// degradation per unit of energy saved (truncation on ties), provided the
/// composed degradation stays within the bound; otherwise advance the other
/// knob. Stops when neither knob can advance. With `trace`, every visited
/// configuration (starting at (0, 0)) is appended.
TunerResult tune(const TunerInput& in, std::vector<TunerResult>* trace = nullptr);

/// Minimum composed energy over all feasible (i, j); ties go to the smaller i,
/// then the smaller j.
TunerResult exhaustive_oracle(const TunerInput& in);

/// True when both curves have non-decreasing step ratios and every Pareto
/// point of the composed grid is a vertex of its lower convex hull.
bool composed_surface_convex(const TunerInput& in);

std::string to_json(const TunerResult& r);
/// Reads {i, j, ...}; only i and j are required.
TunerResult parse_tuner_json(const std::string& text);

}  // namespace ajpg

#endif  // APPROXJPEG_TUNER_HPP_
