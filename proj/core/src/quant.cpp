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

#include "approxjpeg/quant.hpp"

#include <algorithm>
#include <string>

#include "approxjpeg/error.hpp"

namespace ajpg {

const QuantMatrix kQ50{{
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
}};

QuantMatrix QuantMatrix::from_values(std::span<const int> values) {
  if (values.size() != kBlockSize) throw ConfigError("quantization matrix needs 64 entries");
  QuantMatrix m;
  for (int i = 0; i < kBlockSize; ++i) {
    if (values[i] < 1 || values[i] > 255) {
      throw RangeError("quantization entry " + std::to_string(i) + " outside [1, 255]");
    }
    m.q[i] = static_cast<std::uint8_t>(values[i]);
  }
  return m;
}

ShiftMatrix ShiftMatrix::from_values(std::span<const int> values) {
  if (values.size() != kBlockSize) throw ConfigError("shift matrix needs 64 entries");
  ShiftMatrix m;
  for (int i = 0; i < kBlockSize; ++i) {
    if (values[i] < 0 || values[i] > 7) {
      throw RangeError("shift exponent " + std::to_string(i) + " outside [0, 7]");
    }
    m.s[i] = static_cast<std::uint8_t>(values[i]);
  }
  return m;
}

QuantMatrix ShiftMatrix::divisors() const {
  QuantMatrix m;
  for (int i = 0; i < kBlockSize; ++i) m.q[i] = static_cast<std::uint8_t>(1u << s[i]);
  return m;
}

QuantMatrix build_qmatrix(int qualityLevel) {
  if (qualityLevel < 1 || qualityLevel > 99) throw ConfigError("quality level must be in [1, 99]");
  QuantMatrix m;
  for (int i = 0; i < kBlockSize; ++i) {
    const int base = kQ50.q[i];
    // round-half-up of base * num / den, in integers
    const int num = qualityLevel >= 50 ? 100 - qualityLevel : 50;
    const int den = qualityLevel >= 50 ? 50 : qualityLevel;
    const int scaled = (2 * base * num + den) / (2 * den);
    m.q[i] = static_cast<std::uint8_t>(std::clamp(scaled, 1, 255));
  }
  return m;
}

std::uint8_t priority_encode(std::uint8_t value) {
  if (value == 0) throw RangeError("priority encoder input must be nonzero");
  auto bit = [value](int i) { return (value >> i) & 1u; };
  // Standard 8-to-3 encoder equations; the highest set bit wins.
  const unsigned h7 = bit(7);
  const unsigned h6 = bit(6) & !h7;
  const unsigned h5 = bit(5) & !bit(7) & !bit(6);
  const unsigned h4 = bit(4) & !bit(7) & !bit(6) & !bit(5);
  const unsigned h3 = bit(3) & !bit(7) & !bit(6) & !bit(5) & !bit(4);
  const unsigned h2 = bit(2) & !bit(7) & !bit(6) & !bit(5) & !bit(4) & !bit(3);
  const unsigned h1 = bit(1) & !bit(7) & !bit(6) & !bit(5) & !bit(4) & !bit(3) & !bit(2);
  const unsigned s2 = h7 | h6 | h5 | h4;
  const unsigned s1 = h7 | h6 | h3 | h2;
  const unsigned s0 = h7 | h5 | h3 | h1;
  return static_cast<std::uint8_t>((s2 << 2) | (s1 << 1) | s0);
}

ShiftMatrix to_shift_matrix(const QuantMatrix& q) {
  ShiftMatrix s;
  for (int i = 0; i < kBlockSize; ++i) s.s[i] = priority_encode(q.q[i]);
  return s;
}

QuantizedBlock quantize_shift(const CoeffBlock& d, const ShiftMatrix& s) {
  QuantizedBlock c;
  for (int i = 0; i < kBlockSize; ++i) c[i] = d[i] >> s.s[i];
  return c;
}

QuantizedBlock quantize_shift(const CoeffBlock& d, const ShiftMatrix& s, OpCensus& census) {
  QuantizedBlock c;
  for (int i = 0; i < kBlockSize; ++i) c[i] = (CountedInt(d[i], census) >> s.s[i]).value();
  return c;
}

QuantizedBlock quantize_shift_round(const CoeffBlock& d, const ShiftMatrix& s) {
  QuantizedBlock c;
  for (int i = 0; i < kBlockSize; ++i) c[i] = s.s[i] == 0 ? d[i] : (d[i] + (1 << (s.s[i] - 1))) >> s.s[i];
  return c;
}

QuantizedBlock quantize_shift_round(const CoeffBlock& d, const ShiftMatrix& s, OpCensus& census) {
  QuantizedBlock c;
  for (int i = 0; i < kBlockSize; ++i) {
    CountedInt v(d[i], census);
    c[i] = s.s[i] == 0 ? d[i] : ((v + (1 << (s.s[i] - 1))) >> s.s[i]).value();
  }
  return c;
}

namespace {

std::int32_t div_round_away(std::int32_t d, std::int32_t q) {
  const std::int32_t mag = d < 0 ? -d : d;
  const std::int32_t r = (2 * mag + q) / (2 * q);
  return d < 0 ? -r : r;
}

}  // namespace

QuantizedBlock quantize_div(const CoeffBlock& d, const QuantMatrix& q) {
  QuantizedBlock c;
  for (int i = 0; i < kBlockSize; ++i) c[i] = div_round_away(d[i], q.q[i]);
  return c;
}

QuantizedBlock quantize_div(const CoeffBlock& d, const QuantMatrix& q, OpCensus& census) {
  census.divs += kBlockSize;
  return quantize_div(d, q);
}

// round-half-away(|d| / q) = floor((2|d| + q) / (2q)). With n = 2|d| + q < 2^15
// and k = 15 + ceil(log2(2q)), M = ceil(2^k / 2q) gives floor(n M / 2^k) =
// floor(n / 2q) exactly. M is written in non-adjacent form so n*M is a short
// chain of shifted adds.
ConstantDivider::ConstantDivider(std::uint8_t divisor) : divisor_(divisor) {
  if (divisor == 0) throw RangeError("constant divider needs a nonzero divisor");
  const std::uint64_t den = 2u * divisor;
  int log2ceil = 0;
  while ((std::uint64_t{1} << log2ceil) < den) ++log2ceil;
  postShift_ = 15 + log2ceil;
  std::uint64_t m = ((std::uint64_t{1} << postShift_) + den - 1) / den;

  std::size_t pos = 0;
  while (m != 0) {
    if (pos >= digits_.size()) throw RangeError("constant divider reciprocal too wide");
    if (m & 1u) {
      const int digit = (m & 3u) == 3u ? -1 : 1;
      digits_[pos] = static_cast<std::int8_t>(digit);
      m = digit > 0 ? m - 1 : m + 1;
      ++termCount_;
    }
    m >>= 1;
    ++pos;
  }
}

template <class V>
V ConstantDivider::divide_magnitude(const V& n) const {
  // Sum of +/- (n << i); the first term seeds the accumulator.
  bool seeded = false;
  V acc = n;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] == 0) continue;
    const V term = n << static_cast<int>(i);
    if (!seeded) {
      acc = digits_[i] > 0 ? term : -term;
      seeded = true;
    } else {
      acc = digits_[i] > 0 ? acc + term : acc - term;
    }
  }
  return acc >> postShift_;
}

namespace {

// 64-bit datapath value for the reciprocal product, optionally counted.
struct WideInt {
  std::int64_t v;
  OpCensus* census;

  WideInt operator+(const WideInt& o) const { return bump(&OpCensus::adds, v + o.v); }
  WideInt operator-(const WideInt& o) const { return bump(&OpCensus::subs, v - o.v); }
  WideInt operator-() const { return bump(&OpCensus::negs, -v); }
  WideInt operator<<(int k) const { return bump(&OpCensus::shifts, v * (std::int64_t{1} << k)); }
  WideInt operator>>(int k) const { return bump(&OpCensus::shifts, v >> k); }

 private:
  WideInt bump(std::uint64_t OpCensus::*field, std::int64_t value) const {
    if (census != nullptr) ++(census->*field);
    return {value, census};
  }
};

}  // namespace

std::int32_t ConstantDivider::divide(std::int32_t d) const {
  OpCensus scratch;
  return divide(d, scratch);
}

std::int32_t ConstantDivider::divide(std::int32_t d, OpCensus& census) const {
  const std::int64_t mag = d < 0 ? -static_cast<std::int64_t>(d) : d;
  if (mag >= (1 << 13)) throw RangeError("constant divider input out of range");
  const WideInt n = (WideInt{mag, &census} << 1) + WideInt{divisor_, &census};
  const auto r = static_cast<std::int32_t>(divide_magnitude(n).v);
  return d < 0 ? -r : r;
}

QuantizedBlock quantize_shift_dc_exact(const CoeffBlock& d, const ShiftMatrix& s, std::uint8_t dcDivisor) {
  QuantizedBlock c = quantize_shift(d, s);
  c[0] = ConstantDivider(dcDivisor).divide(d[0]);
  return c;
}

QuantizedBlock quantize_shift_dc_exact(const CoeffBlock& d, const ShiftMatrix& s, std::uint8_t dcDivisor,
                                       OpCensus& census) {
  QuantizedBlock c = quantize_shift(d, s, census);
  c[0] = ConstantDivider(dcDivisor).divide(d[0], census);
  return c;
}

CoeffBlock dequantize(const QuantizedBlock& c, const QuantMatrix& q) {
  CoeffBlock r;
  for (int i = 0; i < kBlockSize; ++i) r[i] = c[i] * q.q[i];
  return r;
}

CoeffBlock dequantize(const QuantizedBlock& c, const ShiftMatrix& s) {
  CoeffBlock r;
  for (int i = 0; i < kBlockSize; ++i) r[i] = c[i] * (std::int32_t{1} << s.s[i]);
  return r;
}

}  // namespace ajpg
