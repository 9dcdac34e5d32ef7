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

#ifndef APPROXJPEG_FDCT_HPP_
#define APPROXJPEG_FDCT_HPP_

// Multiplier-less 8-point forward DCT.
//
// Every constant multiplication is a shift-add network and every right shift
// is arithmetic (floor division by a power of two); no rounding constants are
// added. The 1-D transform follows Chen's factorization:
//
//   a0..a3 = x[i] + x[7-i]        a4..a7 = x[3-i] - x[4+i]
//   even:  X0 = s(b0+b1)>>1  X4 = s(b0-b1)>>1  (X2,X6) = bf1(b3,b2)>>1
//   odd:   c5 = s(a6-a5)  c6 = s(a6+a5)
//          d4 = a4+c5  d5 = a4-c5  d6 = a7-c6  d7 = a7+c6
//          (X1,X7) = bf3(d7,d4)>>1  (u,v) = bf2(d5,d6)  X5 = u>>1  X3 = (-v)>>1
//
// where s is the 181/256 scaler, bf1 the 473/196 (over 512) rotation, bf2 the
// 213/142 and bf3 the 251/50 (over 256) rotations. The 2-D transform runs the
// 1-D transform over rows, transposes, runs it again and transposes back.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "approxjpeg/block.hpp"
#include "approxjpeg/intops.hpp"

namespace ajpg {

using RealBlock = std::array<double, kBlockSize>;

namespace kernels {

/// X = floor(181 x / 256): a = x + 4x; b = a - 16a + 256x; X = b >> 8.
template <class V>
V scaler(const V& x) {
  note_kernel(x, Kernel::kScaler);
  const V a = x + (x << 2);
  const V b = (a - (a << 4)) + (x << 8);
  return b >> 8;
}

/// (X, Y) = floor((473x + 196y) / 512), floor((196x - 473y) / 512).
template <class V>
std::pair<V, V> butterfly_i(const V& x, const V& y) {
  note_kernel(x, Kernel::kButterflyI);
  const V a = x - (y << 1);
  const V bx = (x - (x << 3)) + (y << 2);
  const V by = (a << 2) + y;
  const V c = bx + (a << 5);
  const V dx = (c - (bx << 6)) + (y << 9);
  const V dy = (c << 3) - by;
  return {dx >> 9, dy >> 9};
}

/// -71 a as -(64a + 4a + 2a + a).
template <class V>
V times_minus_71(const V& a) {
  return -((((a << 6) + (a << 2)) + (a << 1)) + a);
}

/// (X, Y) = floor((213x + 142y) / 256), floor((142x - 213y) / 256).
template <class V>
std::pair<V, V> butterfly_ii(const V& x, const V& y) {
  note_kernel(x, Kernel::kButterflyII);
  const V ax = (x - (x << 2)) - (y << 1);  // -3x - 2y
  const V ay = (y + (y << 1)) - (x << 1);  // -2x + 3y
  return {times_minus_71(ax) >> 8, times_minus_71(ay) >> 8};
}

/// (X, Y) = floor((251x + 50y) / 256), floor((50x - 251y) / 256).
template <class V>
std::pair<V, V> butterfly_iii(const V& x, const V& y) {
  note_kernel(x, Kernel::kButterflyIII);
  const V ax = ((y + (y << 2)) << 1) - x;  // 10y - x
  const V ay = ((x + (x << 2)) << 1) + y;  // 10x + y
  const V bx = ax + (ax << 2);
  const V by = ay + (ay << 2);
  const V cx = (x << 8) + bx;
  const V cy = by - (y << 8);
  return {cx >> 8, cy >> 8};
}

// Plain-integer entry points.
std::int32_t scaler(std::int32_t x);
std::pair<std::int32_t, std::int32_t> butterfly_i(std::int32_t x, std::int32_t y);
std::pair<std::int32_t, std::int32_t> butterfly_ii(std::int32_t x, std::int32_t y);
std::pair<std::int32_t, std::int32_t> butterfly_iii(std::int32_t x, std::int32_t y);

}  // namespace kernels

/// One 8-point transform; `x` holds exactly eight values.
template <class V>
std::vector<V> fdct_1d_generic(const std::vector<V>& x) {
  const V a0 = x[0] + x[7];
  const V a1 = x[1] + x[6];
  const V a2 = x[2] + x[5];
  const V a3 = x[3] + x[4];
  const V a4 = x[3] - x[4];
  const V a5 = x[2] - x[5];
  const V a6 = x[1] - x[6];
  const V a7 = x[0] - x[7];

  const V b0 = a0 + a3;
  const V b1 = a1 + a2;
  const V b2 = a1 - a2;
  const V b3 = a0 - a3;
  const V out0 = kernels::scaler(b0 + b1) >> 1;
  const V out4 = kernels::scaler(b0 - b1) >> 1;
  const auto [r2, r6] = kernels::butterfly_i(b3, b2);

  const V c5 = kernels::scaler(a6 - a5);
  const V c6 = kernels::scaler(a6 + a5);
  const V d4 = a4 + c5;
  const V d5 = a4 - c5;
  const V d6 = a7 - c6;
  const V d7 = a7 + c6;
  const auto [r1, r7] = kernels::butterfly_iii(d7, d4);
  const auto [u, v] = kernels::butterfly_ii(d5, d6);

  return {out0, r1 >> 1, r2 >> 1, (-v) >> 1, out4, u >> 1, r6 >> 1, r7 >> 1};
}

/// Row pass, transpose, row pass, transpose. `block` holds 64 row-major values.
template <class V>
std::vector<V> fdct_2d_generic(const std::vector<V>& block) {
  std::vector<V> work = block;
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<V> transposed = work;
    for (int r = 0; r < kBlockDim; ++r) {
      const std::vector<V> row(work.begin() + r * kBlockDim, work.begin() + (r + 1) * kBlockDim);
      const std::vector<V> out = fdct_1d_generic(row);
      for (int c = 0; c < kBlockDim; ++c) transposed[c * kBlockDim + r] = out[c];
    }
    work = std::move(transposed);
  }
  return work;
}

std::array<std::int32_t, 8> fdct_1d(const std::array<std::int32_t, 8>& x);

/// Fixed-point 2-D DCT. Output approximates T M T' (orthonormal scaling).
CoeffBlock fdct_2d(const PixelBlock& block);
/// Same result, with every operation counted into `census`.
CoeffBlock fdct_2d(const PixelBlock& block, OpCensus& census);

/// Operation census of a single 1-D transform.
OpCensus fdct_1d_census();

/// Worst-case census of one 2-D transform whose inputs lie in [lo, hi]:
/// operation counts plus the summed adder widths (bitOps).
OpCensus fdct_2d_width_census(std::int32_t lo, std::int32_t hi);

/// Orthonormal DCT-II matrix: t[0][j] = 1/sqrt(8), t[i][j] = 1/2 cos((2j+1) i pi / 16).
const std::array<double, kBlockSize>& dct_matrix();

/// T M T' in double precision.
RealBlock ref_dct_2d(const PixelBlock& block);
RealBlock ref_dct_2d(const RealBlock& block);
/// T' R T in double precision; callers round.
RealBlock ref_idct_2d(const RealBlock& coeffs);
RealBlock ref_idct_2d(const CoeffBlock& coeffs);

}  // namespace ajpg

#endif  // APPROXJPEG_FDCT_HPP_
