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

#ifndef APPROXJPEG_IMAGEIO_HPP_
#define APPROXJPEG_IMAGEIO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "approxjpeg/block.hpp"

namespace ajpg {

/// 8-bit raster, row-major, channels interleaved.
struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> samples;

  static RasterImage filled(int width, int height, int channels, std::uint8_t value = 0);

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  std::uint8_t at(int x, int y, int c = 0) const {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t& at(int x, int y, int c = 0) {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

/// Throws ConfigError unless dimensions, channel count and sample count agree.
void validate(const RasterImage& img);

/// Parses binary P5 (gray) or P6 (RGB) with maxval 255. Comments are allowed
/// in the header. Throws ParseError naming the offending field.
RasterImage parse_pnm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pnm(const RasterImage& img);

RasterImage read_pnm_file(const std::filesystem::path& path);
void write_pnm_file(const std::filesystem::path& path, const RasterImage& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Splits an interleaved image into single-channel planes and back.
RasterImage extract_channel(const RasterImage& img, int channel);
RasterImage merge_channels(std::span<const RasterImage> planes);

struct BlockGrid {
  int blocksWide = 0;
  int blocksHigh = 0;
  int origWidth = 0;
  int origHeight = 0;
  std::vector<PixelBlock> blocks;  // row-major block order

  std::size_t block_count() const { return blocks.size(); }
};

/// Tiles a single-channel plane into 8x8 blocks. Partial edge blocks are
/// padded by replicating the last column and row. With `levelShifted` every
/// sample is stored as sample - 128.
BlockGrid tile_blocks(const RasterImage& plane, bool levelShifted);

/// Inverse of tile_blocks: crops the padding and, with `levelShifted`, adds
/// 128 and clamps to [0, 255].
RasterImage untile_blocks(const BlockGrid& grid, bool levelShifted);

}  // namespace ajpg

#endif  // APPROXJPEG_IMAGEIO_HPP_
