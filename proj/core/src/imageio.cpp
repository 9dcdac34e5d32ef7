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

#include "approxjpeg/imageio.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

#include "approxjpeg/error.hpp"

namespace ajpg {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (is_space(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int read_number(const char* field) {
    skip_whitespace_and_comments();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) throw ParseError(std::string("pnm: ") + field + " too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw ParseError(std::string("pnm: missing or malformed ") + field);
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the body.
  void consume_single_separator() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw ParseError("pnm: missing separator after maxval");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  static bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

RasterImage RasterImage::filled(int width, int height, int channels, std::uint8_t value) {
  RasterImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.samples.assign(static_cast<std::size_t>(width) * height * channels, value);
  return img;
}

void validate(const RasterImage& img) {
  if (img.width <= 0 || img.height <= 0) throw ConfigError("image has a zero dimension");
  if (img.channels != 1 && img.channels != 3) throw ConfigError("image must have 1 or 3 channels");
  if (img.samples.size() != img.pixel_count() * img.channels) {
    throw ConfigError("image sample count does not match its dimensions");
  }
}

RasterImage parse_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw ParseError("pnm: bad magic (expected P5 or P6)");
  }
  const int channels = bytes[1] == '5' ? 1 : 3;
  HeaderReader reader(bytes.subspan(2));
  const int width = reader.read_number("width");
  const int height = reader.read_number("height");
  const int maxval = reader.read_number("maxval");
  if (width <= 0) throw ParseError("pnm: width must be positive");
  if (height <= 0) throw ParseError("pnm: height must be positive");
  if (maxval != 255) throw ParseError("pnm: maxval must be 255");
  reader.consume_single_separator();

  const std::size_t offset = 2 + reader.position();
  const std::size_t need = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - offset < need) throw ParseError("pnm: truncated body");

  RasterImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.samples.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                     bytes.begin() + static_cast<std::ptrdiff_t>(offset + need));
  return img;
}

std::vector<std::uint8_t> write_pnm(const RasterImage& img) {
  validate(img);
  const std::string header = std::string(img.channels == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(img.width) + " " + std::to_string(img.height) +
                             "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.samples.begin(), img.samples.end());
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("write failed for " + path.string());
}

RasterImage read_pnm_file(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_pnm(bytes);
}

void write_pnm_file(const std::filesystem::path& path, const RasterImage& img) {
  write_file(path, write_pnm(img));
}

RasterImage extract_channel(const RasterImage& img, int channel) {
  validate(img);
  if (channel < 0 || channel >= img.channels) throw ConfigError("channel index out of range");
  RasterImage plane = RasterImage::filled(img.width, img.height, 1);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    plane.samples[i] = img.samples[i * img.channels + channel];
  }
  return plane;
}

RasterImage merge_channels(std::span<const RasterImage> planes) {
  if (planes.empty()) throw ConfigError("no planes to merge");
  const int w = planes[0].width;
  const int h = planes[0].height;
  const int n = static_cast<int>(planes.size());
  for (const auto& p : planes) {
    if (p.width != w || p.height != h || p.channels != 1) {
      throw ConfigError("planes must be single-channel with identical dimensions");
    }
  }
  RasterImage img = RasterImage::filled(w, h, n);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    for (int c = 0; c < n; ++c) img.samples[i * n + c] = planes[c].samples[i];
  }
  return img;
}

BlockGrid tile_blocks(const RasterImage& plane, bool levelShifted) {
  validate(plane);
  if (plane.channels != 1) throw ConfigError("tile_blocks expects a single-channel plane");

  BlockGrid grid;
  grid.origWidth = plane.width;
  grid.origHeight = plane.height;
  grid.blocksWide = (plane.width + kBlockDim - 1) / kBlockDim;
  grid.blocksHigh = (plane.height + kBlockDim - 1) / kBlockDim;
  grid.blocks.resize(static_cast<std::size_t>(grid.blocksWide) * grid.blocksHigh);

  const int shift = levelShifted ? 128 : 0;
  for (int by = 0; by < grid.blocksHigh; ++by) {
    for (int bx = 0; bx < grid.blocksWide; ++bx) {
      PixelBlock& block = grid.blocks[static_cast<std::size_t>(by) * grid.blocksWide + bx];
      for (int r = 0; r < kBlockDim; ++r) {
        const int y = std::min(by * kBlockDim + r, plane.height - 1);
        for (int c = 0; c < kBlockDim; ++c) {
          const int x = std::min(bx * kBlockDim + c, plane.width - 1);
          block.at(r, c) = static_cast<std::int32_t>(plane.at(x, y)) - shift;
        }
      }
    }
  }
  return grid;
}

RasterImage untile_blocks(const BlockGrid& grid, bool levelShifted) {
  if (grid.blocks.size() != static_cast<std::size_t>(grid.blocksWide) * grid.blocksHigh) {
    throw ConfigError("block grid is inconsistent");
  }
  RasterImage plane = RasterImage::filled(grid.origWidth, grid.origHeight, 1);
  const int shift = levelShifted ? 128 : 0;
  for (int y = 0; y < grid.origHeight; ++y) {
    for (int x = 0; x < grid.origWidth; ++x) {
      const auto& block =
          grid.blocks[static_cast<std::size_t>(y / kBlockDim) * grid.blocksWide + x / kBlockDim];
      const int v = block.at(y % kBlockDim, x % kBlockDim) + shift;
      plane.at(x, y) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
  return plane;
}

}  // namespace ajpg
