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

#ifndef APPROXJPEG_BLOCK_HPP_
#define APPROXJPEG_BLOCK_HPP_

#include <array>
#include <cstdint>

namespace ajpg {

inline constexpr int kBlockDim = 8;
inline constexpr int kBlockSize = kBlockDim * kBlockDim;

// Row-major 8x8 block of signed samples. The tag keeps pixel, coefficient
// and quantized blocks from being mixed up at call sites.
template <class Tag>
struct Block {
  std::array<std::int32_t, kBlockSize> v{};

  constexpr std::int32_t& at(int row, int col) { return v[row * kBlockDim + col]; }
  constexpr std::int32_t at(int row, int col) const { return v[row * kBlockDim + col]; }
  constexpr std::int32_t& operator[](int i) { return v[i]; }
  constexpr std::int32_t operator[](int i) const { return v[i]; }

  friend constexpr bool operator==(const Block&, const Block&) = default;
};

struct PixelTag {};
struct CoeffTag {};
struct QuantizedTag {};

/// Level-shifted 8x8 pixel samples, nominally in [-128, 127].
using PixelBlock = Block<PixelTag>;
/// Integer DCT coefficients, or dequantized coefficients on the decode side.
using CoeffBlock = Block<CoeffTag>;
/// Output of a quantizer.
using QuantizedBlock = Block<QuantizedTag>;

}  // namespace ajpg

#endif  // APPROXJPEG_BLOCK_HPP_
