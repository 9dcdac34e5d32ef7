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

#include "approxjpeg/container.hpp"

#include <string>

#include "approxjpeg/error.hpp"

namespace ajpg {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'A', 'J', 'P', 'G'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kFlagColor = 1u << 0;
constexpr std::uint8_t kFlagShift = 1u << 1;
constexpr std::uint8_t kFlagDcExact = 1u << 2;

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
  }
  std::vector<std::uint8_t> out;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}
  std::uint8_t u8(const char* what) {
    if (pos_ >= in_.size()) throw CorruptStreamError(std::string("container truncated in ") + what);
    return in_[pos_++];
  }
  std::uint16_t u16(const char* what) {
    std::uint16_t hi = u8(what);
    return static_cast<std::uint16_t>((hi << 8) | u8(what));
  }
  std::uint32_t u32(const char* what) {
    std::uint32_t hi = u16(what);
    return (hi << 16) | u16(what);
  }
  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (n > in_.size() - pos_) throw CorruptStreamError(std::string("container truncated in ") + what);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::uint32_t blocks_for(std::uint32_t w, std::uint32_t h) { return ((w + 7) / 8) * ((h + 7) / 8); }

}  // namespace

std::vector<std::uint32_t> expected_block_counts(const ContainerHeader& header) {
  std::uint32_t w = header.width;
  std::uint32_t h = header.height;
  if (!header.color) return {blocks_for(w, h)};
  std::uint32_t chroma = blocks_for((w + 1) / 2, (h + 1) / 2);
  return {blocks_for(w, h), chroma, chroma};
}

std::vector<std::uint8_t> write_container(const Container& c) {
  const ContainerHeader& h = c.header;
  if (c.channels.size() != expected_block_counts(h).size()) throw ConfigError("channel count does not match layout");
  ByteWriter w;
  for (std::uint8_t m : kMagic) w.u8(m);
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>((h.color ? kFlagColor : 0) | (h.shiftQuant ? kFlagShift : 0) |
                                 (h.dcExact ? kFlagDcExact : 0)));
  w.u8(h.quality);
  w.u8(h.truncLevel);
  w.u8(h.skipLevel ? *h.skipLevel : kSkipDisabled);
  w.u16(h.width);
  w.u16(h.height);
  for (std::uint8_t q : h.quant) w.u8(q);
  for (const ChannelStream& ch : c.channels) {
    w.u8(ch.id);
    w.u32(ch.blockCount);
    std::vector<std::uint8_t> bitmap((ch.skip.size() + 7) / 8, 0);
    for (std::size_t b = 0; b < ch.skip.size(); ++b) {
      if (ch.skip[b]) bitmap[b / 8] |= static_cast<std::uint8_t>(0x80u >> (b % 8));
    }
    w.out.insert(w.out.end(), bitmap.begin(), bitmap.end());
    const auto& entries = ch.table.entries();
    w.u16(static_cast<std::uint16_t>(entries.size()));
    for (const auto& e : entries) {
      w.u8(e.symbol);
      w.u8(e.length);
    }
    w.u32(ch.payloadBits);
    w.out.insert(w.out.end(), ch.payload.begin(), ch.payload.end());
  }
  return std::move(w.out);
}

Container read_container(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  for (std::uint8_t m : kMagic) {
    if (r.u8("magic") != m) throw CorruptStreamError("bad magic: not an AJPG container");
  }
  std::uint8_t version = r.u8("version");
  if (version != kVersion) throw CorruptStreamError("unsupported container version " + std::to_string(version));

  Container c;
  ContainerHeader& h = c.header;
  std::uint8_t flags = r.u8("flags");
  if (flags & ~(kFlagColor | kFlagShift | kFlagDcExact)) throw CorruptStreamError("unknown container flags");
  h.color = flags & kFlagColor;
  h.shiftQuant = flags & kFlagShift;
  h.dcExact = flags & kFlagDcExact;
  if (h.dcExact && !h.shiftQuant) throw CorruptStreamError("DC-exact flag requires shift quantization");
  h.quality = r.u8("quality");
  if (h.quality > 99) throw CorruptStreamError("quality " + std::to_string(h.quality) + " out of range");
  h.truncLevel = r.u8("truncation level");
  if (h.truncLevel > 4) throw CorruptStreamError("truncation level out of range");
  std::uint8_t skip = r.u8("skip level");
  if (skip != kSkipDisabled) {
    if (skip > 6) throw CorruptStreamError("skip level out of range");
    h.skipLevel = skip;
  }
  h.width = r.u16("width");
  h.height = r.u16("height");
  if (h.width == 0 || h.height == 0) throw CorruptStreamError("zero image dimension");
  for (std::size_t k = 0; k < kBlockSize; ++k) {
    std::uint8_t v = r.u8("quant payload");
    bool exponent = h.shiftQuant && !(h.dcExact && k == 0);
    if (exponent ? v > 7 : v == 0) throw CorruptStreamError("quant payload entry out of range");
    h.quant[k] = v;
  }

  for (std::uint32_t expected : expected_block_counts(h)) {
    ChannelStream ch;
    ch.id = r.u8("channel id");
    ch.blockCount = r.u32("block count");
    if (ch.blockCount != expected) throw CorruptStreamError("block count does not match image dimensions");
    auto bitmap = r.take((ch.blockCount + 7) / 8, "skip bitmap");
    ch.skip.resize(ch.blockCount);
    for (std::uint32_t b = 0; b < ch.blockCount; ++b) ch.skip[b] = (bitmap[b / 8] >> (7 - b % 8)) & 1u;
    std::uint16_t entryCount = r.u16("table entry count");
    if (entryCount > 256) throw CorruptStreamError("too many huffman entries");
    std::vector<HuffmanTable::Entry> entries(entryCount);
    for (auto& e : entries) {
      e.symbol = r.u8("huffman table");
      e.length = r.u8("huffman table");
    }
    ch.table = HuffmanTable(std::move(entries));
    ch.payloadBits = r.u32("payload length");
    auto payload = r.take((static_cast<std::size_t>(ch.payloadBits) + 7) / 8, "payload");
    ch.payload.assign(payload.begin(), payload.end());
    c.channels.push_back(std::move(ch));
  }
  if (r.remaining() != 0) throw CorruptStreamError("trailing bytes after last channel");
  return c;
}

double compression_ratio(const RasterImage& original, std::span<const std::uint8_t> container) {
  if (container.empty()) throw ConfigError("empty container");
  double rawBits = static_cast<double>(original.width) * original.height * 8.0 * original.channels;
  return rawBits / (8.0 * static_cast<double>(container.size()));
}

}  // namespace ajpg
