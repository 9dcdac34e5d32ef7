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

#include "approxjpeg/fdct.hpp"

#include <cmath>
#include <numbers>

namespace ajpg {

namespace kernels {

std::int32_t scaler(std::int32_t x) { return scaler<std::int32_t>(x); }
std::pair<std::int32_t, std::int32_t> butterfly_i(std::int32_t x, std::int32_t y) {
  return butterfly_i<std::int32_t>(x, y);
}
std::pair<std::int32_t, std::int32_t> butterfly_ii(std::int32_t x, std::int32_t y) {
  return butterfly_ii<std::int32_t>(x, y);
}
std::pair<std::int32_t, std::int32_t> butterfly_iii(std::int32_t x, std::int32_t y) {
  return butterfly_iii<std::int32_t>(x, y);
}

}  // namespace kernels

std::array<std::int32_t, 8> fdct_1d(const std::array<std::int32_t, 8>& x) {
  const std::vector<std::int32_t> out = fdct_1d_generic(std::vector<std::int32_t>(x.begin(), x.end()));
  std::array<std::int32_t, 8> result{};
  std::copy(out.begin(), out.end(), result.begin());
  return result;
}

CoeffBlock fdct_2d(const PixelBlock& block) {
  const auto out = fdct_2d_generic(std::vector<std::int32_t>(block.v.begin(), block.v.end()));
  CoeffBlock coeffs;
  std::copy(out.begin(), out.end(), coeffs.v.begin());
  return coeffs;
}

CoeffBlock fdct_2d(const PixelBlock& block, OpCensus& census) {
  std::vector<CountedInt> in;
  in.reserve(kBlockSize);
  for (const auto v : block.v) in.emplace_back(v, census);
  const auto out = fdct_2d_generic(in);
  CoeffBlock coeffs;
  for (int i = 0; i < kBlockSize; ++i) coeffs[i] = out[i].value();
  return coeffs;
}

OpCensus fdct_1d_census() {
  OpCensus census;
  std::vector<CountedInt> in;
  for (int i = 0; i < 8; ++i) in.emplace_back(i, census);
  fdct_1d_generic(in);
  return census;
}

OpCensus fdct_2d_width_census(std::int32_t lo, std::int32_t hi) {
  OpCensus census;
  std::vector<RangedInt> in;
  in.reserve(kBlockSize);
  for (int i = 0; i < kBlockSize; ++i) in.emplace_back(lo, hi, census);
  fdct_2d_generic(in);
  return census;
}

const std::array<double, kBlockSize>& dct_matrix() {
  static const auto matrix = [] {
    std::array<double, kBlockSize> t{};
    for (int i = 0; i < kBlockDim; ++i) {
      for (int j = 0; j < kBlockDim; ++j) {
        t[i * kBlockDim + j] =
            i == 0 ? 1.0 / std::sqrt(8.0)
                   : std::sqrt(2.0 / 8.0) * std::cos((2 * j + 1) * i * std::numbers::pi / 16.0);
      }
    }
    return t;
  }();
  return matrix;
}

namespace {

// out = A * B, or with transpose flags A' / B'.
RealBlock matmul(const RealBlock& a, bool transposeA, const RealBlock& b, bool transposeB) {
  RealBlock out{};
  for (int i = 0; i < kBlockDim; ++i) {
    for (int j = 0; j < kBlockDim; ++j) {
      double sum = 0.0;
      for (int k = 0; k < kBlockDim; ++k) {
        const double lhs = transposeA ? a[k * kBlockDim + i] : a[i * kBlockDim + k];
        const double rhs = transposeB ? b[j * kBlockDim + k] : b[k * kBlockDim + j];
        sum += lhs * rhs;
      }
      out[i * kBlockDim + j] = sum;
    }
  }
  return out;
}

}  // namespace

RealBlock ref_dct_2d(const RealBlock& block) {
  const auto& t = dct_matrix();
  return matmul(matmul(t, false, block, false), false, t, true);
}

RealBlock ref_dct_2d(const PixelBlock& block) {
  RealBlock m{};
  for (int i = 0; i < kBlockSize; ++i) m[i] = block[i];
  return ref_dct_2d(m);
}

RealBlock ref_idct_2d(const RealBlock& coeffs) {
  const auto& t = dct_matrix();
  return matmul(matmul(t, true, coeffs, false), false, t, false);
}

RealBlock ref_idct_2d(const CoeffBlock& coeffs) {
  RealBlock r{};
  for (int i = 0; i < kBlockSize; ++i) r[i] = coeffs[i];
  return ref_idct_2d(r);
}

}  // namespace ajpg
