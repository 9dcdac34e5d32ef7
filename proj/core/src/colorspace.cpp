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

#include "approxjpeg/colorspace.hpp"

#include <algorithm>
#include <cmath>

#include "approxjpeg/error.hpp"

namespace ajpg {

namespace {

std::uint8_t round_clamp(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

}  // namespace

YcbcrPlanes rgb_to_ycbcr(const RasterImage& rgb) {
  validate(rgb);
  if (rgb.channels != 3) throw ConfigError("rgb_to_ycbcr expects a 3-channel image");
  YcbcrPlanes out{RasterImage::filled(rgb.width, rgb.height, 1),
                  RasterImage::filled(rgb.width, rgb.height, 1),
                  RasterImage::filled(rgb.width, rgb.height, 1)};
  for (std::size_t i = 0; i < rgb.pixel_count(); ++i) {
    const double r = rgb.samples[3 * i];
    const double g = rgb.samples[3 * i + 1];
    const double b = rgb.samples[3 * i + 2];
    out.y.samples[i] = round_clamp(0.299 * r + 0.587 * g + 0.114 * b);
    out.cb.samples[i] = round_clamp(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b);
    out.cr.samples[i] = round_clamp(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b);
  }
  return out;
}

RasterImage ycbcr_to_rgb(const YcbcrPlanes& planes) {
  validate(planes.y);
  validate(planes.cb);
  validate(planes.cr);
  const auto& y = planes.y;
  for (const auto* p : {&planes.cb, &planes.cr}) {
    if (p->width != y.width || p->height != y.height || p->channels != 1 || y.channels != 1) {
      throw ConfigError("ycbcr_to_rgb expects full-resolution single-channel planes");
    }
  }
  RasterImage rgb = RasterImage::filled(y.width, y.height, 3);
  for (std::size_t i = 0; i < y.pixel_count(); ++i) {
    const double luma = y.samples[i];
    const double cb = planes.cb.samples[i] - 128.0;
    const double cr = planes.cr.samples[i] - 128.0;
    rgb.samples[3 * i] = round_clamp(luma + 1.402 * cr);
    rgb.samples[3 * i + 1] = round_clamp(luma - 0.344136 * cb - 0.714136 * cr);
    rgb.samples[3 * i + 2] = round_clamp(luma + 1.772 * cb);
  }
  return rgb;
}

RasterImage downsample_420(const RasterImage& plane) {
  validate(plane);
  if (plane.channels != 1) throw ConfigError("downsample_420 expects a single-channel plane");
  const int w = (plane.width + 1) / 2;
  const int h = (plane.height + 1) / 2;
  RasterImage out = RasterImage::filled(w, h, 1);
  for (int y = 0; y < h; ++y) {
    const int y0 = 2 * y;
    const int y1 = std::min(y0 + 1, plane.height - 1);
    for (int x = 0; x < w; ++x) {
      const int x0 = 2 * x;
      const int x1 = std::min(x0 + 1, plane.width - 1);
      const int sum = plane.at(x0, y0) + plane.at(x1, y0) + plane.at(x0, y1) + plane.at(x1, y1);
      out.at(x, y) = static_cast<std::uint8_t>((sum + 2) / 4);
    }
  }
  return out;
}

RasterImage upsample_420(const RasterImage& plane, int targetWidth, int targetHeight) {
  validate(plane);
  if (plane.channels != 1) throw ConfigError("upsample_420 expects a single-channel plane");
  if (targetWidth <= 0 || targetHeight <= 0 || plane.width != (targetWidth + 1) / 2 ||
      plane.height != (targetHeight + 1) / 2) {
    throw ConfigError("upsample_420: plane is not the 4:2:0 size of the target");
  }
  RasterImage out = RasterImage::filled(targetWidth, targetHeight, 1);
  for (int y = 0; y < targetHeight; ++y) {
    for (int x = 0; x < targetWidth; ++x) out.at(x, y) = plane.at(x / 2, y / 2);
  }
  return out;
}

}  // namespace ajpg
