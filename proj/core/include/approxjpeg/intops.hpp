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

#ifndef APPROXJPEG_INTOPS_HPP_
#define APPROXJPEG_INTOPS_HPP_

// Instrumented integer arithmetic for the hardware datapath model.
//
// The shift-add kernels are written once as templates over a value type.
// Instantiated with std::int32_t they are the production path. With
// CountedInt every operator bumps a counter in an OpCensus, which is how the
// multiplier-free property and the per-transform operation count are
// checked. With RangedInt the operands are worst-case intervals and every
// adder records the signed bit width of its result; the energy model sums
// those widths.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>

namespace ajpg {

enum class Kernel : int { kScaler = 0, kButterflyI = 1, kButterflyII = 2, kButterflyIII = 3 };

struct OpCensus {
  std::uint64_t adds = 0;
  std::uint64_t subs = 0;
  std::uint64_t negs = 0;
  std::uint64_t shifts = 0;
  std::uint64_t muls = 0;
  std::uint64_t divs = 0;
  // Sum of result widths over add/sub/neg; only RangedInt fills this.
  std::uint64_t bitOps = 0;
  std::array<std::uint64_t, 4> kernelCalls{};

  std::uint64_t add_sub_ops() const { return adds + subs + negs; }
  std::uint64_t kernel_calls(Kernel k) const { return kernelCalls[static_cast<int>(k)]; }

  OpCensus& operator+=(const OpCensus& o) {
    adds += o.adds;
    subs += o.subs;
    negs += o.negs;
    shifts += o.shifts;
    muls += o.muls;
    divs += o.divs;
    bitOps += o.bitOps;
    for (std::size_t i = 0; i < kernelCalls.size(); ++i) kernelCalls[i] += o.kernelCalls[i];
    return *this;
  }
  friend bool operator==(const OpCensus&, const OpCensus&) = default;
};

/// Number of bits of a two's-complement register holding every value in [lo, hi].
constexpr int signed_width(std::int64_t lo, std::int64_t hi) {
  auto bits_for = [](std::int64_t v) {
    const auto mag = static_cast<std::uint64_t>(v < 0 ? ~v : v);
    return static_cast<int>(std::bit_width(mag)) + 1;
  };
  return std::max(bits_for(lo), bits_for(hi));
}

class CountedInt {
 public:
  CountedInt(std::int32_t value, OpCensus& census) : value_(value), census_(&census) {}

  std::int32_t value() const { return value_; }
  OpCensus& census() const { return *census_; }

  friend CountedInt operator+(const CountedInt& a, const CountedInt& b) {
    ++a.census_->adds;
    return {a.value_ + b.value_, *a.census_};
  }
  friend CountedInt operator+(const CountedInt& a, std::int32_t b) {
    ++a.census_->adds;
    return {a.value_ + b, *a.census_};
  }
  friend CountedInt operator-(const CountedInt& a, const CountedInt& b) {
    ++a.census_->subs;
    return {a.value_ - b.value_, *a.census_};
  }
  CountedInt operator-() const {
    ++census_->negs;
    return {-value_, *census_};
  }
  friend CountedInt operator<<(const CountedInt& a, int k) {
    ++a.census_->shifts;
    return {a.value_ << k, *a.census_};
  }
  friend CountedInt operator>>(const CountedInt& a, int k) {
    ++a.census_->shifts;
    return {a.value_ >> k, *a.census_};
  }
  // Present so that a general multiply or divide sneaking into the datapath
  // shows up in the census instead of silently compiling.
  friend CountedInt operator*(const CountedInt& a, const CountedInt& b) {
    ++a.census_->muls;
    return {a.value_ * b.value_, *a.census_};
  }
  friend CountedInt operator*(const CountedInt& a, std::int32_t b) {
    ++a.census_->muls;
    return {a.value_ * b, *a.census_};
  }
  friend CountedInt operator/(const CountedInt& a, std::int32_t b) {
    ++a.census_->divs;
    return {a.value_ / b, *a.census_};
  }

 private:
  std::int32_t value_;
  OpCensus* census_;
};

class RangedInt {
 public:
  RangedInt(std::int64_t lo, std::int64_t hi, OpCensus& census) : lo_(lo), hi_(hi), census_(&census) {}

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  int width() const { return signed_width(lo_, hi_); }
  OpCensus& census() const { return *census_; }

  friend RangedInt operator+(const RangedInt& a, const RangedInt& b) {
    ++a.census_->adds;
    return a.record({a.lo_ + b.lo_, a.hi_ + b.hi_, *a.census_});
  }
  friend RangedInt operator+(const RangedInt& a, std::int32_t b) {
    ++a.census_->adds;
    return a.record({a.lo_ + b, a.hi_ + b, *a.census_});
  }
  friend RangedInt operator-(const RangedInt& a, const RangedInt& b) {
    ++a.census_->subs;
    return a.record({a.lo_ - b.hi_, a.hi_ - b.lo_, *a.census_});
  }
  RangedInt operator-() const {
    ++census_->negs;
    return record({-hi_, -lo_, *census_});
  }
  friend RangedInt operator<<(const RangedInt& a, int k) {
    ++a.census_->shifts;
    return {a.lo_ * (std::int64_t{1} << k), a.hi_ * (std::int64_t{1} << k), *a.census_};
  }
  friend RangedInt operator>>(const RangedInt& a, int k) {
    ++a.census_->shifts;
    return {a.lo_ >> k, a.hi_ >> k, *a.census_};
  }

 private:
  RangedInt record(RangedInt r) const {
    census_->bitOps += static_cast<std::uint64_t>(r.width());
    return r;
  }

  std::int64_t lo_;
  std::int64_t hi_;
  OpCensus* census_;
};

inline void note_kernel(std::int32_t, Kernel) {}
inline void note_kernel(const CountedInt& v, Kernel k) { ++v.census().kernelCalls[static_cast<int>(k)]; }
inline void note_kernel(const RangedInt& v, Kernel k) { ++v.census().kernelCalls[static_cast<int>(k)]; }

}  // namespace ajpg

#endif  // APPROXJPEG_INTOPS_HPP_
