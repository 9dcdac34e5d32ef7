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

#ifndef APPROXJPEG_QUANT_HPP_
#define APPROXJPEG_QUANT_HPP_

#include <array>
#include <cstdint>
#include <span>

#include "approxjpeg/block.hpp"
#include "approxjpeg/intops.hpp"

namespace ajpg {

/// 8x8 quantization divisors, each in [1, 255].
struct QuantMatrix {
  std::array<std::uint8_t, kBlockSize> q{};

  static QuantMatrix from_values(std::span<const int> values);
  friend bool operator==(const QuantMatrix&, const QuantMatrix&) = default;
};

/// Power-of-two exponents, each in [0, 7]; the divisor is 2^s.
struct ShiftMatrix {
  std::array<std::uint8_t, kBlockSize> s{};

  static ShiftMatrix from_values(std::span<const int> values);
  QuantMatrix divisors() const;
  friend bool operator==(const ShiftMatrix&, const ShiftMatrix&) = default;
};

/// Standard luminance table at quality 50.
extern const QuantMatrix kQ50;

/// Quality scaling of kQ50. Levels >= 50 scale by (100 - level) / 50, lower
/// levels by 50 / level; entries are rounded half-up and clipped to [1, 255].
QuantMatrix build_qmatrix(int qualityLevel);

/// Gate-level model of an 8-to-3 priority encoder: index of the highest set
/// bit of `value`. Requires value != 0.
std::uint8_t priority_encode(std::uint8_t value);

/// s_ij = floor(log2 q_ij), so 2^s <= q < 2^(s+1).
ShiftMatrix to_shift_matrix(const QuantMatrix& q);

/// c = d >> s (floor division, as a barrel shifter does).
QuantizedBlock quantize_shift(const CoeffBlock& d, const ShiftMatrix& s);
QuantizedBlock quantize_shift(const CoeffBlock& d, const ShiftMatrix& s, OpCensus& census);

/// c = (d + 2^(s-1)) >> s: the shifter preceded by a rounding adder, i.e.
/// round-half-up(d / 2^s). Entries with s = 0 pass through.
QuantizedBlock quantize_shift_round(const CoeffBlock& d, const ShiftMatrix& s);
QuantizedBlock quantize_shift_round(const CoeffBlock& d, const ShiftMatrix& s, OpCensus& census);

/// c = round-half-away(d / q); the divider baseline.
QuantizedBlock quantize_div(const CoeffBlock& d, const QuantMatrix& q);
QuantizedBlock quantize_div(const CoeffBlock& d, const QuantMatrix& q, OpCensus& census);

/// Multiplier-less exact division by a fixed divisor. The reciprocal is a
/// fixed-point constant expanded into signed power-of-two terms, so the
/// datapath is a handful of shifted adds. Result is round-half-away(d / q),
/// exact for |d| < 2^13.
class ConstantDivider {
 public:
  explicit ConstantDivider(std::uint8_t divisor);

  std::int32_t divide(std::int32_t d) const;
  std::int32_t divide(std::int32_t d, OpCensus& census) const;

  std::uint8_t divisor() const { return divisor_; }
  /// Number of signed power-of-two terms in the reciprocal.
  std::size_t term_count() const { return termCount_; }

 private:
  template <class V>
  V divide_magnitude(const V& twiceMagnitudePlusQ) const;

  std::uint8_t divisor_;
  int postShift_;
  std::array<std::int8_t, 32> digits_{};  // signed digits of the reciprocal, LSB first
  std::size_t termCount_ = 0;
};

/// Shift quantization for AC entries with the DC entry divided exactly by
/// `dcDivisor` through a ConstantDivider.
QuantizedBlock quantize_shift_dc_exact(const CoeffBlock& d, const ShiftMatrix& s, std::uint8_t dcDivisor);
QuantizedBlock quantize_shift_dc_exact(const CoeffBlock& d, const ShiftMatrix& s, std::uint8_t dcDivisor,
                                       OpCensus& census);

/// r = c * q element-wise.
CoeffBlock dequantize(const QuantizedBlock& c, const QuantMatrix& q);
/// r = c << s element-wise.
CoeffBlock dequantize(const QuantizedBlock& c, const ShiftMatrix& s);

/// Bits needed to configure the quantizer: 3 per entry for exponents, 8 for divisors.
inline constexpr int kShiftMatrixBits = 3 * kBlockSize;
inline constexpr int kQuantMatrixBits = 8 * kBlockSize;

}  // namespace ajpg

#endif  // APPROXJPEG_QUANT_HPP_
