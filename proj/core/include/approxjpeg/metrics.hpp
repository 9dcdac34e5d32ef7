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

#ifndef APPROXJPEG_METRICS_HPP_
#define APPROXJPEG_METRICS_HPP_

#include <optional>
#include <span>
#include <string>

#include "approxjpeg/imageio.hpp"

namespace ajpg {

/// sum |ref - test| / sum ref over all samples.
double sad_pct(const RasterImage& ref, const RasterImage& test);

/// 10 log10(255^2 / MSE); +infinity for identical images. Color images are
/// compared on luma.
double psnr(const RasterImage& ref, const RasterImage& test);

/// Mean SSIM over all 8x8 windows at stride 1 with uniform weights and
/// C1 = (0.01 * 255)^2, C2 = (0.03 * 255)^2. Color images are compared on luma.
double ssim(const RasterImage& ref, const RasterImage& test);

/// GLCM homogeneity on 64 gray levels, averaged over horizontal and vertical
/// neighbours. Single-channel input only.
double homogeneity(const RasterImage& img);

/// Sample Pearson correlation coefficient.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct MetricsReport {
  double sadPct = 0.0;
  double psnr = 0.0;
  double ssim = 0.0;
  double homogeneity = 0.0;  // of the reference
  std::optional<double> compressionRatio;
};

MetricsReport compute_metrics(const RasterImage& ref, const RasterImage& test);
/// JSON object; an infinite PSNR is written as the string "inf".
std::string to_json(const MetricsReport& report);

}  // namespace ajpg

#endif  // APPROXJPEG_METRICS_HPP_
