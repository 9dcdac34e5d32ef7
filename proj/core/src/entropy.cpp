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

#include "approxjpeg/entropy.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "approxjpeg/error.hpp"

namespace ajpg {

ZigzagVector zigzag(const QuantizedBlock& block) {
  ZigzagVector out;
  for (int k = 0; k < kBlockSize; ++k) out.coeffs[k] = block[kZigzag[k]];
  return out;
}

QuantizedBlock inv_zigzag(const ZigzagVector& v) {
  QuantizedBlock out;
  for (int k = 0; k < kBlockSize; ++k) out[kZigzag[k]] = v.coeffs[k];
  return out;
}

void BitWriter::put(std::uint32_t bits, int count) {
  for (int i = count - 1; i >= 0; --i) {
    if (bitLength_ % 8 == 0) bytes_.push_back(0);
    if ((bits >> i) & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bitLength_ % 8));
    ++bitLength_;
  }
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bitLength)
    : bytes_(bytes), bitLength_(bitLength) {
  if ((bitLength + 7) / 8 > bytes.size()) throw CorruptStreamError("payload shorter than its bit length");
}

std::uint32_t BitReader::get(int count) {
  if (static_cast<std::uint64_t>(count) > remaining()) throw CorruptStreamError("payload overrun");
  std::uint32_t v = 0;
  for (int i = 0; i < count; ++i, ++pos_) v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
  return v;
}

HuffmanTable::HuffmanTable(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::array<bool, 256> seen{};
  for (const Entry& e : entries_) {
    if (e.length < 1 || e.length > kMaxCodeLength) {
      throw CorruptStreamError("huffman code length " + std::to_string(e.length) + " outside [1, 16]");
    }
    if (seen[e.symbol]) throw CorruptStreamError("duplicate huffman symbol " + std::to_string(e.symbol));
    seen[e.symbol] = true;
  }
  if (kraft_sum() > 1.0) throw CorruptStreamError("huffman lengths violate the Kraft inequality");
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.length != b.length ? a.length < b.length : a.symbol < b.symbol;
  });
  for (const Entry& e : entries_) ++countAt_[e.length];
  std::int32_t code = 0;
  std::int32_t index = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    firstCode_[len] = code;
    firstIndex_[len] = index;
    for (std::int32_t k = 0; k < countAt_[len]; ++k) {
      const Entry& e = entries_[index + k];
      codes_[e.symbol] = Code{static_cast<std::uint16_t>(code + k), e.length};
    }
    code = (code + countAt_[len]) << 1;
    index += countAt_[len];
  }
}

double HuffmanTable::kraft_sum() const {
  double sum = 0.0;
  for (const Entry& e : entries_) sum += 1.0 / static_cast<double>(1u << e.length);
  return sum;
}

HuffmanTable HuffmanTable::from_frequencies(std::span<const std::uint64_t, 256> freq) {
  struct Node {
    std::uint64_t weight;
    int order;
    int left, right;  // -1 for leaves
    int symbol;
  };
  std::vector<Node> nodes;
  std::vector<int> live;
  for (int s = 0; s < 256; ++s) {
    if (freq[s] == 0) continue;
    live.push_back(static_cast<int>(nodes.size()));
    nodes.push_back({freq[s], s, -1, -1, s});
  }
  if (live.empty()) return HuffmanTable{};
  if (live.size() == 1) return HuffmanTable({{static_cast<std::uint8_t>(nodes[0].symbol), 1}});

  auto heavier = [&](int a, int b) {
    return nodes[a].weight != nodes[b].weight ? nodes[a].weight > nodes[b].weight : nodes[a].order > nodes[b].order;
  };
  std::make_heap(live.begin(), live.end(), heavier);
  int nextOrder = 256;
  while (live.size() > 1) {
    std::pop_heap(live.begin(), live.end(), heavier);
    int a = live.back();
    live.pop_back();
    std::pop_heap(live.begin(), live.end(), heavier);
    int b = live.back();
    live.pop_back();
    nodes.push_back({nodes[a].weight + nodes[b].weight, nextOrder++, a, b, -1});
    live.push_back(static_cast<int>(nodes.size()) - 1);
    std::push_heap(live.begin(), live.end(), heavier);
  }

  // Depth of every leaf.
  std::vector<int> depthCount(64, 0);
  std::vector<std::pair<int, int>> stack{{live[0], 0}};
  while (!stack.empty()) {
    auto [n, d] = stack.back();
    stack.pop_back();
    if (nodes[n].left < 0) {
      ++depthCount[d];
    } else {
      stack.push_back({nodes[n].left, d + 1});
      stack.push_back({nodes[n].right, d + 1});
    }
  }

  // Move overlong codes up, two at a time, keeping the tree full.
  for (int i = static_cast<int>(depthCount.size()) - 1; i > kMaxCodeLength; --i) {
    while (depthCount[i] > 0) {
      int j = i - 2;
      while (depthCount[j] == 0) --j;
      depthCount[i] -= 2;
      depthCount[i - 1] += 1;
      depthCount[j + 1] += 2;
      depthCount[j] -= 1;
    }
  }

  // Shortest codes go to the most frequent symbols.
  std::vector<int> symbols;
  for (int s = 0; s < 256; ++s) {
    if (freq[s] != 0) symbols.push_back(s);
  }
  std::stable_sort(symbols.begin(), symbols.end(), [&](int a, int b) { return freq[a] > freq[b]; });
  std::vector<Entry> entries;
  std::size_t next = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    for (int k = 0; k < depthCount[len]; ++k) {
      entries.push_back({static_cast<std::uint8_t>(symbols[next++]), static_cast<std::uint8_t>(len)});
    }
  }
  return HuffmanTable(std::move(entries));
}

void HuffmanTable::encode(BitWriter& out, std::uint8_t symbol) const {
  const Code& c = codes_[symbol];
  if (c.length == 0) throw RangeError("symbol " + std::to_string(symbol) + " has no huffman code");
  out.put(c.bits, c.length);
}

std::uint8_t HuffmanTable::decode(BitReader& in) const {
  std::int32_t code = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    code = (code << 1) | static_cast<std::int32_t>(in.get(1));
    std::int32_t offset = code - firstCode_[len];
    if (offset >= 0 && offset < countAt_[len]) return entries_[firstIndex_[len] + offset].symbol;
  }
  throw CorruptStreamError("invalid huffman code");
}

int magnitude_category(std::int32_t v) {
  std::uint32_t mag = static_cast<std::uint32_t>(v < 0 ? -static_cast<std::int64_t>(v) : v);
  int size = 0;
  while (mag != 0) {
    ++size;
    mag >>= 1;
  }
  return size;
}

namespace {

constexpr int kMaxAcCategory = 11;
constexpr int kMaxDcCategory = 12;
constexpr std::uint8_t kEob = 0x00;
constexpr std::uint8_t kZrl = 0xF0;

std::uint32_t amplitude_bits(std::int32_t v, int size) {
  std::int32_t raw = v < 0 ? v + (1 << size) - 1 : v;
  return static_cast<std::uint32_t>(raw);
}

std::int32_t amplitude_value(std::uint32_t bits, int size) {
  if (size == 0) return 0;
  auto v = static_cast<std::int32_t>(bits);
  return v < (1 << (size - 1)) ? v - (1 << size) + 1 : v;
}

void check_coefficients(const QuantizedBlock& block) {
  for (std::int32_t c : block.v) {
    if (magnitude_category(c) > kMaxAcCategory) {
      throw RangeError("quantized coefficient " + std::to_string(c) + " exceeds 11 magnitude bits");
    }
  }
}

// Emits or counts the symbols of one block; `sink(symbol, bits, size)`.
template <class Sink>
void walk_block(const QuantizedBlock& block, std::int32_t prediction, Sink&& sink) {
  ZigzagVector zz = zigzag(block);
  std::int32_t diff = zz.coeffs[0] - prediction;
  int dcSize = magnitude_category(diff);
  sink(static_cast<std::uint8_t>(dcSize), amplitude_bits(diff, dcSize), dcSize);
  int run = 0;
  for (int k = 1; k < kBlockSize; ++k) {
    std::int32_t c = zz.coeffs[k];
    if (c == 0) {
      ++run;
      continue;
    }
    while (run > 15) {
      sink(kZrl, 0u, 0);
      run -= 16;
    }
    int size = magnitude_category(c);
    sink(static_cast<std::uint8_t>((run << 4) | size), amplitude_bits(c, size), size);
    run = 0;
  }
  if (run > 0) sink(kEob, 0u, 0);
}

}  // namespace

BlockSymbols block_symbols(const QuantizedBlock& block, std::int32_t dcPrediction) {
  check_coefficients(block);
  BlockSymbols out;
  bool first = true;
  walk_block(block, dcPrediction, [&](std::uint8_t symbol, std::uint32_t, int) {
    if (first) {
      out.dcSymbol = symbol;
      first = false;
    } else {
      out.acSymbols.push_back(symbol);
    }
  });
  return out;
}

ChannelStream encode_channel(std::span<const QuantizedBlock> blocks, const std::vector<bool>& skipFlags,
                             std::uint8_t id) {
  if (skipFlags.size() != blocks.size()) throw ConfigError("skip flag count does not match block count");
  if (!skipFlags.empty() && skipFlags[0]) throw ConfigError("block 0 cannot be skipped");

  std::array<std::uint64_t, 256> freq{};
  std::int32_t prediction = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (skipFlags[b]) continue;
    check_coefficients(blocks[b]);
    walk_block(blocks[b], prediction, [&](std::uint8_t symbol, std::uint32_t, int) { ++freq[symbol]; });
    prediction = blocks[b][0];
  }

  ChannelStream out;
  out.id = id;
  out.blockCount = static_cast<std::uint32_t>(blocks.size());
  out.skip = skipFlags;
  out.table = HuffmanTable::from_frequencies(freq);

  BitWriter writer;
  prediction = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (skipFlags[b]) continue;
    walk_block(blocks[b], prediction, [&](std::uint8_t symbol, std::uint32_t bits, int size) {
      out.table.encode(writer, symbol);
      if (size > 0) writer.put(bits, size);
    });
    prediction = blocks[b][0];
  }
  if (writer.bit_length() > 0xFFFFFFFFull) throw RangeError("channel payload exceeds 2^32 bits");
  out.payloadBits = static_cast<std::uint32_t>(writer.bit_length());
  out.payload = writer.bytes();
  return out;
}

std::vector<QuantizedBlock> decode_channel(const ChannelStream& stream) {
  if (stream.skip.size() != stream.blockCount) throw CorruptStreamError("skip bitmap length mismatch");
  if (stream.blockCount > 0 && stream.skip[0]) throw CorruptStreamError("block 0 flagged as skipped");
  if (stream.payload.size() != (static_cast<std::uint64_t>(stream.payloadBits) + 7) / 8) {
    throw CorruptStreamError("payload byte length does not match its bit length");
  }
  BitReader reader(stream.payload, stream.payloadBits);
  std::vector<QuantizedBlock> out;
  out.reserve(stream.blockCount);
  std::int32_t prediction = 0;
  for (std::uint32_t b = 0; b < stream.blockCount; ++b) {
    if (stream.skip[b]) {
      out.push_back(out.back());
      continue;
    }
    ZigzagVector zz;
    std::uint8_t dcSymbol = stream.table.decode(reader);
    if (dcSymbol > kMaxDcCategory) throw CorruptStreamError("invalid DC size category");
    std::int32_t dc = prediction + amplitude_value(reader.get(dcSymbol), dcSymbol);
    if (magnitude_category(dc) > kMaxAcCategory) throw CorruptStreamError("DC coefficient out of range");
    zz.coeffs[0] = dc;
    int k = 1;
    while (k < kBlockSize) {
      std::uint8_t symbol = stream.table.decode(reader);
      if (symbol == kEob) break;
      int run = symbol >> 4;
      int size = symbol & 0x0F;
      if (symbol == kZrl) {
        k += 16;
        if (k >= kBlockSize) throw CorruptStreamError("zero run past end of block");
        continue;
      }
      if (size == 0 || size > kMaxAcCategory) throw CorruptStreamError("invalid AC symbol");
      k += run;
      if (k >= kBlockSize) throw CorruptStreamError("AC run past end of block");
      zz.coeffs[k++] = amplitude_value(reader.get(size), size);
    }
    out.push_back(inv_zigzag(zz));
    prediction = dc;
  }
  if (reader.remaining() != 0) throw CorruptStreamError("trailing bits after last block");
  return out;
}

}  // namespace ajpg
