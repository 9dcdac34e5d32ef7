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

#include "approxjpeg/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <json.hpp>

#include "approxjpeg/colorspace.hpp"
#include "approxjpeg/error.hpp"

namespace ajpg {

namespace {

void require_same_shape(const RasterImage& a, const RasterImage& b) {
  validate(a);
  validate(b);
  if (a.width != b.width || a.height != b.height || a.channels != b.channels) {
    throw ConfigError("images differ in dimensions or channel count");
  }
}

RasterImage luma(const RasterImage& img) { return img.channels == 1 ? img : rgb_to_ycbcr(img).y; }

// Summed-area table with a zero first row and column.
class Integral {
 public:
  template <class F>
  Integral(int w, int h, F&& value) : w_(w + 1), sums_(static_cast<std::size_t>(w + 1) * (h + 1), 0) {
    for (int y = 0; y < h; ++y) {
      std::int64_t row = 0;
      for (int x = 0; x < w; ++x) {
        row += value(x, y);
        sums_[index(x + 1, y + 1)] = sums_[index(x + 1, y)] + row;
      }
    }
  }
  std::int64_t window(int x, int y, int size) const {
    return sums_[index(x + size, y + size)] - sums_[index(x, y + size)] - sums_[index(x + size, y)] +
           sums_[index(x, y)];
  }

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * w_ + x; }
  int w_;
  std::vector<std::int64_t> sums_;
};

constexpr int kSsimWindow = 8;
constexpr int kGrayBins = 64;

}  // namespace

double sad_pct(const RasterImage& ref, const RasterImage& test) {
  require_same_shape(ref, test);
  std::uint64_t diff = 0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < ref.samples.size(); ++i) {
    diff += static_cast<std::uint64_t>(std::abs(int{ref.samples[i]} - int{test.samples[i]}));
    total += ref.samples[i];
  }
  if (total == 0) throw MetricError("SAD degradation is undefined for an all-zero reference");
  return static_cast<double>(diff) / static_cast<double>(total);
}

double psnr(const RasterImage& ref, const RasterImage& test) {
  require_same_shape(ref, test);
  RasterImage a = luma(ref);
  RasterImage b = luma(test);
  std::uint64_t sq = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    std::int64_t d = int{a.samples[i]} - int{b.samples[i]};
    sq += static_cast<std::uint64_t>(d * d);
  }
  if (sq == 0) return std::numeric_limits<double>::infinity();
  double mse = static_cast<double>(sq) / static_cast<double>(a.samples.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const RasterImage& ref, const RasterImage& test) {
  require_same_shape(ref, test);
  RasterImage a = luma(ref);
  RasterImage b = luma(test);
  const int w = a.width;
  const int h = a.height;
  if (w < kSsimWindow || h < kSsimWindow) throw MetricError("image smaller than the 8x8 SSIM window");
  auto av = [&](int x, int y) -> std::int64_t { return a.samples[static_cast<std::size_t>(y) * w + x]; };
  auto bv = [&](int x, int y) -> std::int64_t { return b.samples[static_cast<std::size_t>(y) * w + x]; };
  Integral sa(w, h, av);
  Integral sb(w, h, bv);
  Integral saa(w, h, [&](int x, int y) { return av(x, y) * av(x, y); });
  Integral sbb(w, h, [&](int x, int y) { return bv(x, y) * bv(x, y); });
  Integral sab(w, h, [&](int x, int y) { return av(x, y) * bv(x, y); });

  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double c2 = (0.03 * 255) * (0.03 * 255);
  constexpr std::int64_t n = kSsimWindow * kSsimWindow;
  constexpr double n2 = static_cast<double>(n * n);
  double total = 0.0;
  for (int y = 0; y + kSsimWindow <= h; ++y) {
    for (int x = 0; x + kSsimWindow <= w; ++x) {
      std::int64_t sx = sa.window(x, y, kSsimWindow);
      std::int64_t sy = sb.window(x, y, kSsimWindow);
      // Scaled by n^2 so the integer parts stay exact.
      double muX = static_cast<double>(sx) / n;
      double muY = static_cast<double>(sy) / n;
      double varX = static_cast<double>(n * saa.window(x, y, kSsimWindow) - sx * sx) / n2;
      double varY = static_cast<double>(n * sbb.window(x, y, kSsimWindow) - sy * sy) / n2;
      double cov = static_cast<double>(n * sab.window(x, y, kSsimWindow) - sx * sy) / n2;
      total += ((2 * muX * muY + c1) * (2 * cov + c2)) / ((muX * muX + muY * muY + c1) * (varX + varY + c2));
    }
  }
  double windows = static_cast<double>(w - kSsimWindow + 1) * (h - kSsimWindow + 1);
  return total / windows;
}

double homogeneity(const RasterImage& img) {
  validate(img);
  if (img.channels != 1) throw ConfigError("homogeneity needs a single-channel image");
  const int w = img.width;
  const int h = img.height;
  auto bin = [&](int x, int y) { return img.samples[static_cast<std::size_t>(y) * w + x] >> 2; };

  double sum = 0.0;
  int offsets = 0;
  for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
    std::vector<std::uint64_t> glcm(kGrayBins * kGrayBins, 0);
    std::uint64_t pairs = 0;
    for (int y = 0; y + dy < h; ++y) {
      for (int x = 0; x + dx < w; ++x) {
        int i = bin(x, y);
        int j = bin(x + dx, y + dy);
        ++glcm[i * kGrayBins + j];
        ++glcm[j * kGrayBins + i];
        pairs += 2;
      }
    }
    if (pairs == 0) continue;
    double hom = 0.0;
    for (int i = 0; i < kGrayBins; ++i) {
      for (int j = 0; j < kGrayBins; ++j) {
        hom += static_cast<double>(glcm[i * kGrayBins + j]) / (1.0 + std::abs(i - j));
      }
    }
    sum += hom / static_cast<double>(pairs);
    ++offsets;
  }
  if (offsets == 0) throw MetricError("homogeneity is undefined for a 1x1 image");
  return sum / offsets;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw ConfigError("pearson needs two equal-length series of length >= 2");
  double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw MetricError("pearson correlation is undefined for a constant series");
  return sxy / std::sqrt(sxx * syy);
}

MetricsReport compute_metrics(const RasterImage& ref, const RasterImage& test) {
  MetricsReport r;
  r.sadPct = sad_pct(ref, test);
  r.psnr = psnr(ref, test);
  r.ssim = ssim(ref, test);
  r.homogeneity = homogeneity(luma(ref));
  return r;
}

std::string to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["sad_pct"] = report.sadPct;
  if (std::isinf(report.psnr)) {
    j["psnr"] = "inf";
  } else {
    j["psnr"] = report.psnr;
  }
  j["ssim"] = report.ssim;
  j["homogeneity"] = report.homogeneity;
  if (report.compressionRatio) j["compression_ratio"] = *report.compressionRatio;
  return j.dump(2) + "\n";
}

}  // namespace ajpg
