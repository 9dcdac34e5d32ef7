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

#include "approxjpeg/pipeline.hpp"

#include <cmath>
#include <string>

#include "approxjpeg/colorspace.hpp"
#include "approxjpeg/entropy.hpp"
#include "approxjpeg/error.hpp"
#include "approxjpeg/fdct.hpp"

namespace ajpg {

void EncodeConfig::validate() const {
  if (!customMatrix && (quality < 1 || quality > 99)) {
    throw ConfigError("quality " + std::to_string(quality) + " outside [1, 99]");
  }
  knobs.validate();
  if (dcExact && knobs.quantMode != QuantMode::kShift) throw ConfigError("DC-exact mode requires shift quantization");
}

QuantMatrix EncodeConfig::matrix() const { return customMatrix ? *customMatrix : build_qmatrix(quality); }

namespace {

// Quantizer and matched dequantizer of one stream.
class Quantizer {
 public:
  Quantizer(const ContainerHeader& h, bool roundedShift)
      : header_(h), roundedShift_(roundedShift), divider_(h.dcExact ? h.quant[0] : 1) {
    for (int k = 0; k < kBlockSize; ++k) {
      if (h.shiftQuant) {
        shifts_.s[k] = (h.dcExact && k == 0) ? 0 : h.quant[k];
      } else {
        divisors_.q[k] = h.quant[k];
      }
    }
  }

  QuantizedBlock quantize(const CoeffBlock& d, OpCensus* census) const {
    if (!header_.shiftQuant) return census ? quantize_div(d, divisors_, *census) : quantize_div(d, divisors_);
    QuantizedBlock c;
    if (roundedShift_) {
      c = census ? quantize_shift_round(d, shifts_, *census) : quantize_shift_round(d, shifts_);
    } else {
      c = census ? quantize_shift(d, shifts_, *census) : quantize_shift(d, shifts_);
    }
    if (header_.dcExact) c[0] = census ? divider_.divide(d[0], *census) : divider_.divide(d[0]);
    return c;
  }

  CoeffBlock dequantize(const QuantizedBlock& c) const {
    if (!header_.shiftQuant) return ajpg::dequantize(c, divisors_);
    CoeffBlock r = ajpg::dequantize(c, shifts_);
    if (header_.dcExact) r[0] = c[0] * header_.quant[0];
    return r;
  }

 private:
  ContainerHeader header_;
  bool roundedShift_;
  ConstantDivider divider_;
  ShiftMatrix shifts_;
  QuantMatrix divisors_;
};

ContainerHeader make_header(const RasterImage& img, const EncodeConfig& cfg) {
  if (img.width > 0xFFFF || img.height > 0xFFFF) throw ConfigError("image dimensions exceed 65535");
  ContainerHeader h;
  h.color = img.channels == 3;
  h.shiftQuant = cfg.knobs.quantMode == QuantMode::kShift;
  h.dcExact = cfg.dcExact;
  h.quality = cfg.customMatrix ? kCustomQuality : static_cast<std::uint8_t>(cfg.quality);
  h.truncLevel = static_cast<std::uint8_t>(cfg.knobs.truncLevel);
  if (cfg.knobs.skipLevel) h.skipLevel = static_cast<std::uint8_t>(*cfg.knobs.skipLevel);
  h.width = static_cast<std::uint16_t>(img.width);
  h.height = static_cast<std::uint16_t>(img.height);
  QuantMatrix q = cfg.matrix();
  if (h.shiftQuant) {
    h.quant = to_shift_matrix(q).s;
    if (h.dcExact) h.quant[0] = q.q[0];
  } else {
    h.quant = q.q;
  }
  return h;
}

std::vector<RasterImage> split_planes(const RasterImage& img) {
  validate(img);
  if (img.channels == 1) return {img};
  if (img.channels != 3) throw ConfigError("only 1- or 3-channel images can be encoded");
  YcbcrPlanes p = rgb_to_ycbcr(img);
  return {std::move(p.y), downsample_420(p.cb), downsample_420(p.cr)};
}

struct EncodedPlane {
  std::vector<QuantizedBlock> blocks;
  std::vector<bool> skipped;
  int blocksWide = 0;
  int blocksHigh = 0;
  int width = 0;
  int height = 0;
};

EncodedPlane encode_plane(const RasterImage& plane, const KnobConfig& knobs, const Quantizer& quantizer,
                          OpCensus* census) {
  BlockGrid grid = tile_blocks(plane, true);
  const int level = knobs.truncLevel;
  const bool truncateFirst = knobs.skipCompare == SkipCompare::kAfterTruncation;
  if (truncateFirst) {
    for (PixelBlock& b : grid.blocks) b = truncate_block(b, level);
  }
  auto compress = [&](const PixelBlock& block) {
    PixelBlock t = truncateFirst ? block : truncate_block(block, level);
    CoeffBlock d = census ? fdct_2d(t, *census) : fdct_2d(t);
    return quantizer.quantize(d, census);
  };

  EncodedPlane out{{}, {}, grid.blocksWide, grid.blocksHigh, grid.origWidth, grid.origHeight};
  if (knobs.skipLevel) {
    auto p = perforate(grid.blocks, knobs.tolerance(), compress);
    out.blocks = std::move(p.results);
    out.skipped = std::move(p.skipped);
  } else {
    out.blocks.reserve(grid.blocks.size());
    for (const PixelBlock& b : grid.blocks) out.blocks.push_back(compress(b));
    out.skipped.assign(grid.blocks.size(), false);
  }
  return out;
}

RasterImage decode_plane(const std::vector<QuantizedBlock>& blocks, const Quantizer& dequantizer, int truncLevel,
                         int width, int height) {
  BlockGrid grid;
  grid.blocksWide = (width + kBlockDim - 1) / kBlockDim;
  grid.blocksHigh = (height + kBlockDim - 1) / kBlockDim;
  grid.origWidth = width;
  grid.origHeight = height;
  grid.blocks.reserve(blocks.size());
  for (const QuantizedBlock& c : blocks) {
    RealBlock r = ref_idct_2d(dequantizer.dequantize(c));
    PixelBlock p;
    for (int k = 0; k < kBlockSize; ++k) p[k] = static_cast<std::int32_t>(std::lround(r[k])) * (1 << truncLevel);
    grid.blocks.push_back(p);
  }
  return untile_blocks(grid, true);
}

std::pair<int, int> plane_size(const ContainerHeader& h, std::size_t channel) {
  if (channel == 0) return {h.width, h.height};
  return {(h.width + 1) / 2, (h.height + 1) / 2};
}

RasterImage assemble(std::vector<RasterImage> planes, const ContainerHeader& h) {
  if (!h.color) return std::move(planes[0]);
  YcbcrPlanes p{std::move(planes[0]), upsample_420(planes[1], h.width, h.height),
                upsample_420(planes[2], h.width, h.height)};
  return ycbcr_to_rgb(p);
}

BlockStats plane_stats(const std::vector<bool>& skipped, const KnobConfig& knobs) {
  BlockStats s;
  for (bool k : skipped) (k ? s.skipped : s.processed) += 1;
  s.truncLevel = knobs.truncLevel;
  s.skippingEnabled = knobs.skipLevel.has_value();
  return s;
}

}  // namespace

EncodeResult encode(const RasterImage& img, const EncodeConfig& cfg, OpCensus* census) {
  cfg.validate();
  std::vector<RasterImage> planes = split_planes(img);
  EncodeResult r;
  r.container.header = make_header(img, cfg);
  Quantizer quantizer(r.container.header, cfg.roundedShift);
  r.stats.truncLevel = cfg.knobs.truncLevel;
  r.stats.skippingEnabled = cfg.knobs.skipLevel.has_value();
  for (std::size_t c = 0; c < planes.size(); ++c) {
    EncodedPlane p = encode_plane(planes[c], cfg.knobs, quantizer, census);
    r.container.channels.push_back(encode_channel(p.blocks, p.skipped, static_cast<std::uint8_t>(c)));
    r.channelStats.push_back(plane_stats(p.skipped, cfg.knobs));
    r.stats += r.channelStats.back();
  }
  r.bytes = write_container(r.container);
  return r;
}

RasterImage decode(const Container& c, DecodeMatrix matrix) {
  const ContainerHeader& h = c.header;
  ContainerHeader dequantHeader = h;
  if (matrix == DecodeMatrix::kStandard) {
    if (h.quality == kCustomQuality) throw ConfigError("stream uses a custom matrix; no standard table to decode with");
    dequantHeader.shiftQuant = false;
    dequantHeader.dcExact = false;
    dequantHeader.quant = build_qmatrix(h.quality).q;
  }
  Quantizer dequantizer(dequantHeader, true);
  auto counts = expected_block_counts(h);
  if (c.channels.size() != counts.size()) throw CorruptStreamError("channel count does not match layout");
  std::vector<RasterImage> planes;
  for (std::size_t ch = 0; ch < c.channels.size(); ++ch) {
    if (c.channels[ch].blockCount != counts[ch]) throw CorruptStreamError("block count does not match dimensions");
    std::vector<QuantizedBlock> blocks = decode_channel(c.channels[ch]);
    auto [w, hgt] = plane_size(h, ch);
    planes.push_back(decode_plane(blocks, dequantizer, h.truncLevel, w, hgt));
  }
  return assemble(std::move(planes), h);
}

RasterImage decode(std::span<const std::uint8_t> bytes, DecodeMatrix matrix) {
  return decode(read_container(bytes), matrix);
}

Reconstruction reconstruct(const RasterImage& img, const EncodeConfig& cfg) {
  cfg.validate();
  std::vector<RasterImage> planes = split_planes(img);
  ContainerHeader h = make_header(img, cfg);
  Quantizer quantizer(h, cfg.roundedShift);
  Reconstruction r;
  r.stats.truncLevel = cfg.knobs.truncLevel;
  r.stats.skippingEnabled = cfg.knobs.skipLevel.has_value();
  std::vector<RasterImage> decoded;
  for (std::size_t c = 0; c < planes.size(); ++c) {
    EncodedPlane p = encode_plane(planes[c], cfg.knobs, quantizer, nullptr);
    r.stats += plane_stats(p.skipped, cfg.knobs);
    decoded.push_back(decode_plane(p.blocks, quantizer, cfg.knobs.truncLevel, p.width, p.height));
  }
  r.image = assemble(std::move(decoded), h);
  return r;
}

}  // namespace ajpg
