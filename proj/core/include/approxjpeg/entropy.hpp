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

#ifndef APPROXJPEG_ENTROPY_HPP_
#define APPROXJPEG_ENTROPY_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "approxjpeg/block.hpp"

namespace ajpg {

/// kZigzag[k] is the row-major index of the k-th coefficient in zigzag order.
inline constexpr std::array<std::uint8_t, kBlockSize> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,   //
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,  //
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,  //
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
};

struct ZigzagVector {
  std::array<std::int32_t, kBlockSize> coeffs{};
  friend bool operator==(const ZigzagVector&, const ZigzagVector&) = default;
};

ZigzagVector zigzag(const QuantizedBlock& block);
QuantizedBlock inv_zigzag(const ZigzagVector& v);

class BitWriter {
 public:
  /// Appends the low `count` bits of `bits`, MSB first. count <= 24.
  void put(std::uint32_t bits, int count);
  std::uint64_t bit_length() const { return bitLength_; }
  /// Bytes with the final partial byte zero-padded.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bitLength_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bitLength);
  /// Throws CorruptStreamError on overrun.
  std::uint32_t get(int count);
  std::uint64_t remaining() const { return bitLength_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t bitLength_;
  std::uint64_t pos_ = 0;
};

/// Canonical prefix code. Entries are sorted by (length, symbol); codes are
/// assigned in that order starting from zero.
class HuffmanTable {
 public:
  static constexpr int kMaxCodeLength = 16;

  struct Entry {
    std::uint8_t symbol;
    std::uint8_t length;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  struct Code {
    std::uint16_t bits = 0;
    std::uint8_t length = 0;  // 0 = symbol absent
  };

  HuffmanTable() = default;
  /// Validates lengths in [1, 16], unique symbols and Kraft sum <= 1.
  explicit HuffmanTable(std::vector<Entry> entries);

  /// Optimal code for the given frequencies, limited to 16 bits. Symbols with
  /// zero frequency get no code; a single used symbol gets a 1-bit code.
  static HuffmanTable from_frequencies(std::span<const std::uint64_t, 256> freq);

  const std::vector<Entry>& entries() const { return entries_; }
  const Code& code(std::uint8_t symbol) const { return codes_[symbol]; }
  double kraft_sum() const;

  void encode(BitWriter& out, std::uint8_t symbol) const;
  std::uint8_t decode(BitReader& in) const;

  friend bool operator==(const HuffmanTable& a, const HuffmanTable& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Entry> entries_;
  std::array<Code, 256> codes_{};
  // Canonical decode tables indexed by length.
  std::array<std::int32_t, kMaxCodeLength + 2> firstCode_{};
  std::array<std::int32_t, kMaxCodeLength + 2> firstIndex_{};
  std::array<std::int32_t, kMaxCodeLength + 2> countAt_{};
};

/// Entropy-coded blocks of one channel plus its skip bitmap.
struct ChannelStream {
  std::uint8_t id = 0;
  std::uint32_t blockCount = 0;
  std::vector<bool> skip;
  /// One table shared by DC size categories and AC run/size symbols.
  HuffmanTable table;
  std::uint32_t payloadBits = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const ChannelStream&, const ChannelStream&) = default;
};

/// Magnitude category: number of bits in |v| (0 for v == 0).
int magnitude_category(std::int32_t v);

/// Symbols produced for one block, in emission order. DC symbols are size
/// categories; AC symbols are (run << 4) | size with ZRL = 0xF0, EOB = 0x00.
struct BlockSymbols {
  std::uint8_t dcSymbol = 0;
  std::vector<std::uint8_t> acSymbols;
};
BlockSymbols block_symbols(const QuantizedBlock& block, std::int32_t dcPrediction);

/// Two-pass encode: gather symbol statistics, build canonical tables, emit.
/// Skipped blocks emit nothing. Throws RangeError for |coefficient| >= 2^11.
ChannelStream encode_channel(std::span<const QuantizedBlock> blocks, const std::vector<bool>& skipFlags,
                             std::uint8_t id = 0);

/// Inverse of encode_channel. Skipped positions repeat the previous decoded
/// block. Throws CorruptStreamError on any inconsistency.
std::vector<QuantizedBlock> decode_channel(const ChannelStream& stream);

}  // namespace ajpg

#endif  // APPROXJPEG_ENTROPY_HPP_
