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

#ifndef APPROXJPEG_CONTAINER_HPP_
#define APPROXJPEG_CONTAINER_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "approxjpeg/entropy.hpp"
#include "approxjpeg/imageio.hpp"

namespace ajpg {

/// Quality byte value marking a quantization matrix that is not a scaled
/// standard table.
inline constexpr std::uint8_t kCustomQuality = 0;
inline constexpr std::uint8_t kSkipDisabled = 0xFF;

struct ContainerHeader {
  bool color = false;
  bool shiftQuant = true;
  bool dcExact = false;
  std::uint8_t quality = 50;
  std::uint8_t truncLevel = 0;
  std::optional<std::uint8_t> skipLevel;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  /// Row-major exponents (shift mode) or divisors (div mode). In DC-exact mode
  /// entry 0 is the exact DC divisor instead of an exponent.
  std::array<std::uint8_t, kBlockSize> quant{};

  friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

struct Container {
  ContainerHeader header;
  std::vector<ChannelStream> channels;

  friend bool operator==(const Container&, const Container&) = default;
};

/// Blocks per channel implied by the header: one plane for gray, Y plus two
/// half-resolution chroma planes for color.
std::vector<std::uint32_t> expected_block_counts(const ContainerHeader& header);

std::vector<std::uint8_t> write_container(const Container& c);
/// Throws CorruptStreamError on bad magic, unsupported version, inconsistent
/// lengths, out-of-range fields or trailing bytes.
Container read_container(std::span<const std::uint8_t> bytes);

/// Raw sample bits of `original` divided by container bits.
double compression_ratio(const RasterImage& original, std::span<const std::uint8_t> container);

}  // namespace ajpg

#endif  // APPROXJPEG_CONTAINER_HPP_
