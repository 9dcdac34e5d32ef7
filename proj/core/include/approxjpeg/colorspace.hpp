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

#ifndef APPROXJPEG_COLORSPACE_HPP_
#define APPROXJPEG_COLORSPACE_HPP_

#include "approxjpeg/imageio.hpp"

namespace ajpg {

/// Luma plus two chroma planes. After rgb_to_ycbcr the chroma planes are full
/// resolution; after downsampling they are ceil(w/2) x ceil(h/2).
struct YcbcrPlanes {
  RasterImage y;
  RasterImage cb;
  RasterImage cr;
};

// JFIF (full-range BT.601) conversion. Results are rounded half-up and
// clamped to [0, 255].
YcbcrPlanes rgb_to_ycbcr(const RasterImage& rgb);
RasterImage ycbcr_to_rgb(const YcbcrPlanes& planes);

/// 2x2 box average with round-half-up; odd edges replicate.
RasterImage downsample_420(const RasterImage& plane);
/// Nearest-neighbour 2x replication cropped to the target size.
RasterImage upsample_420(const RasterImage& plane, int targetWidth, int targetHeight);

}  // namespace ajpg

#endif  // APPROXJPEG_COLORSPACE_HPP_
