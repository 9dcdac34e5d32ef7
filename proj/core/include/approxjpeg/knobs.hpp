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

#ifndef APPROXJPEG_KNOBS_HPP_
#define APPROXJPEG_KNOBS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "approxjpeg/block.hpp"

namespace ajpg {

enum class QuantMode { kShift, kDiv };
enum class DecodeMatrix { kMatched, kStandard };
/// Which pixels the loop-skip check compares.
enum class SkipCompare { kBeforeTruncation, kAfterTruncation };

inline constexpr int kMaxTruncLevel = 4;
inline constexpr int kMaxSkipLevel = 6;

struct KnobConfig {
  int truncLevel = 0;
  std::optional<int> skipLevel;  // disabled when empty
  QuantMode quantMode = QuantMode::kShift;
  DecodeMatrix decodeMatrix = DecodeMatrix::kMatched;
  SkipCompare skipCompare = SkipCompare::kBeforeTruncation;

  /// Per-pixel tolerance 5 * skipLevel.
  int tolerance() const { return skipLevel ? 5 * *skipLevel : 0; }
  /// Throws ConfigError when a level is out of range.
  void validate() const;
};

/// round-half-away(m / 2^B) per pixel.
PixelBlock truncate_block(const PixelBlock& m, int truncLevel);

/// True when every pixel of `current` lies in
/// [max(ref - tolerance, -128), min(ref + tolerance, 127)].
bool skip_check(const PixelBlock& current, const PixelBlock& reference, int tolerance);

template <class Result>
struct Perforated {
  std::vector<Result> results;
  std::vector<bool> skipped;

  std::size_t skip_count() const {
    std::size_t n = 0;
    for (bool s : skipped) n += s;
    return n;
  }
};

/// Runs `compress` on each block unless it is within `tolerance` of the last
/// compressed block, in which case that block's result is reused and the
/// reference is left unchanged. Block 0 is always compressed.
template <class Compress>
auto perforate(std::span<const PixelBlock> blocks, int tolerance, Compress&& compress)
    -> Perforated<decltype(compress(blocks[0]))> {
  Perforated<decltype(compress(blocks[0]))> out;
  out.results.reserve(blocks.size());
  out.skipped.reserve(blocks.size());
  const PixelBlock* reference = nullptr;
  for (const PixelBlock& block : blocks) {
    if (reference != nullptr && skip_check(block, *reference, tolerance)) {
      out.results.push_back(out.results.back());
      out.skipped.push_back(true);
      continue;
    }
    out.results.push_back(compress(block));
    out.skipped.push_back(false);
    reference = &block;
  }
  return out;
}

}  // namespace ajpg

#endif  // APPROXJPEG_KNOBS_HPP_
