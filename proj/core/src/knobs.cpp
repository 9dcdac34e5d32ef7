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

#include "approxjpeg/knobs.hpp"

#include <algorithm>
#include <string>

#include "approxjpeg/error.hpp"

namespace ajpg {

void KnobConfig::validate() const {
  if (truncLevel < 0 || truncLevel > kMaxTruncLevel) {
    throw ConfigError("truncation level " + std::to_string(truncLevel) + " outside [0, 4]");
  }
  if (skipLevel && (*skipLevel < 0 || *skipLevel > kMaxSkipLevel)) {
    throw ConfigError("skip level " + std::to_string(*skipLevel) + " outside [0, 6]");
  }
}

PixelBlock truncate_block(const PixelBlock& m, int truncLevel) {
  if (truncLevel == 0) return m;
  const std::int32_t half = 1 << (truncLevel - 1);
  PixelBlock out;
  for (int k = 0; k < kBlockSize; ++k) {
    std::int32_t v = m[k];
    std::int32_t mag = ((v < 0 ? -v : v) + half) >> truncLevel;
    out[k] = v < 0 ? -mag : mag;
  }
  return out;
}

bool skip_check(const PixelBlock& current, const PixelBlock& reference, int tolerance) {
  for (int k = 0; k < kBlockSize; ++k) {
    std::int32_t ceiling = std::min(reference[k] + tolerance, 127);
    std::int32_t floor = std::max(reference[k] - tolerance, -128);
    if (current[k] > ceiling || current[k] < floor) return false;
  }
  return true;
}

}  // namespace ajpg
