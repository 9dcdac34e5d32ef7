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

#ifndef APPROXJPEG_PIPELINE_HPP_
#define APPROXJPEG_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "approxjpeg/container.hpp"
#include "approxjpeg/energy.hpp"
#include "approxjpeg/imageio.hpp"
#include "approxjpeg/intops.hpp"
#include "approxjpeg/knobs.hpp"
#include "approxjpeg/quant.hpp"

namespace ajpg {

struct EncodeConfig {
  int quality = 50;
  /// Replaces the scaled standard table; recorded as quality 0.
  std::optional<QuantMatrix> customMatrix;
  KnobConfig knobs;
  /// Shift mode only: divide DC exactly by its table entry.
  bool dcExact = false;
  /// Shift mode only: add half a step before shifting. When false the
  /// shifter floors.
  bool roundedShift = true;

  /// Throws ConfigError for inconsistent settings.
  void validate() const;
  QuantMatrix matrix() const;
};

struct EncodeResult {
  Container container;
  std::vector<std::uint8_t> bytes;
  std::vector<BlockStats> channelStats;
  BlockStats stats;  // summed over channels
};

/// Encodes gray (1 channel) or RGB (3 channels, Y/Cb/Cr 4:2:0). With
/// `census` every transform and quantizer operation is counted.
EncodeResult encode(const RasterImage& img, const EncodeConfig& cfg, OpCensus* census = nullptr);

RasterImage decode(const Container& c, DecodeMatrix matrix = DecodeMatrix::kMatched);
RasterImage decode(std::span<const std::uint8_t> bytes, DecodeMatrix matrix = DecodeMatrix::kMatched);

struct Reconstruction {
  RasterImage image;
  BlockStats stats;
};

/// Same result as decode(encode(img)) without entropy coding.
Reconstruction reconstruct(const RasterImage& img, const EncodeConfig& cfg);

}  // namespace ajpg

#endif  // APPROXJPEG_PIPELINE_HPP_
