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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "approxjpeg/container.hpp"
#include "approxjpeg/energy.hpp"
#include "approxjpeg/entropy.hpp"
#include "approxjpeg/error.hpp"
#include "approxjpeg/fdct.hpp"
#include "approxjpeg/imageio.hpp"
#include "approxjpeg/knobs.hpp"
#include "approxjpeg/metrics.hpp"
#include "approxjpeg/pipeline.hpp"
#include "approxjpeg/qecurve.hpp"
#include "approxjpeg/quant.hpp"
#include "approxjpeg/tuner.hpp"
#include "oracles.hpp"

namespace {

using ajpg::EncodeConfig;
using ajpg::PixelBlock;
using ajpg::QuantMode;
using ajpg::RasterImage;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

std::vector<RasterImage> load(const std::vector<std::string>& subdirs) {
  std::vector<RasterImage> out;
  for (const auto& s : subdirs) {
    for (const auto& f : oracle::corpus(s)) out.push_back(ajpg::read_pnm_file(f));
  }
  return out;
}

EncodeConfig config(int quality, QuantMode mode) {
  EncodeConfig cfg;
  cfg.quality = quality;
  cfg.knobs.quantMode = mode;
  return cfg;
}

// Per-image quality and size of one configuration.
struct Measured {
  std::vector<double> ssim, psnr, ratio;
};

Measured measure(const std::vector<RasterImage>& images, const EncodeConfig& cfg,
                 ajpg::DecodeMatrix matrix = ajpg::DecodeMatrix::kMatched) {
  Measured m;
  for (const auto& img : images) {
    ajpg::EncodeResult enc = ajpg::encode(img, cfg);
    RasterImage rec = ajpg::decode(enc.container, matrix);
    m.ssim.push_back(ajpg::ssim(img, rec));
    m.psnr.push_back(ajpg::psnr(img, rec));
    m.ratio.push_back(ajpg::compression_ratio(img, enc.bytes));
  }
  return m;
}

// Shared state for criteria that reuse the same corpus runs.
struct Corpus {
  std::vector<RasterImage> classic;
  std::vector<RasterImage> natural;  // classic plus extra
};

Outcome kernels_exact() {
  namespace k = ajpg::kernels;
  Outcome o;
  auto start = Clock::now();
  std::uint64_t mismatches = 0;
  using oracle::floor_div;
  for (std::int64_t x = -2048; x <= 2047; ++x) {
    if (k::scaler(static_cast<std::int32_t>(x)) != floor_div(181 * x, 256)) ++mismatches;
    for (std::int64_t y = -2048; y <= 2047; ++y) {
      auto xi = static_cast<std::int32_t>(x), yi = static_cast<std::int32_t>(y);
      auto [a1, b1] = k::butterfly_i(xi, yi);
      auto [a2, b2] = k::butterfly_ii(xi, yi);
      auto [a3, b3] = k::butterfly_iii(xi, yi);
      mismatches += a1 != floor_div(473 * x + 196 * y, 512);
      mismatches += b1 != floor_div(196 * x - 473 * y, 512);
      mismatches += a2 != floor_div(213 * x + 142 * y, 256);
      mismatches += b2 != floor_div(142 * x - 213 * y, 256);
      mismatches += a3 != floor_div(251 * x + 50 * y, 256);
      mismatches += b3 != floor_div(50 * x - 251 * y, 256);
    }
  }
  double elapsed = seconds_since(start);
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.require(k::butterfly_iii(256, 0) == std::pair<std::int32_t, std::int32_t>{251, 50}, "(256,0) -> (251,50)");
  o.require(elapsed < 60.0, "runtime under 60 s");
  o.note(std::to_string(mismatches) + " mismatching outputs over 2^24 pairs in " + fmt("%.1f s", elapsed));
  return o;
}

Outcome multiplier_free(const Corpus& c) {
  Outcome o;
  ajpg::OpCensus census;
  ajpg::EncodeResult enc = ajpg::encode(c.classic.front(), config(50, QuantMode::kShift), &census);
  o.require(census.muls == 0, "muls = " + std::to_string(census.muls));
  o.require(census.divs == 0, "divs = " + std::to_string(census.divs));
  o.require(census.adds > 0 && enc.stats.processed > 0, "census populated");

  ajpg::OpCensus row = ajpg::fdct_1d_census();
  using ajpg::Kernel;
  bool pinned = row.adds == 35 && row.subs == 23 && row.negs == 3 && row.shifts == 56 && row.muls == 0 &&
                row.divs == 0 && row.kernel_calls(Kernel::kScaler) == 4 && row.kernel_calls(Kernel::kButterflyI) == 1 &&
                row.kernel_calls(Kernel::kButterflyII) == 1 && row.kernel_calls(Kernel::kButterflyIII) == 1;
  o.require(pinned, "1-D transform census matches the pinned constant");
  o.note("image encode: " + std::to_string(census.adds + census.subs + census.negs) + " add/sub, " +
         std::to_string(census.shifts) + " shifts, 0 muls");
  return o;
}

Outcome fdct_accuracy() {
  Outcome o;
  std::mt19937 rng(2024);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    PixelBlock b = oracle::random_pixel_block(rng);
    ajpg::CoeffBlock got = ajpg::fdct_2d(b);
    ajpg::RealBlock want = ajpg::ref_dct_2d(b);
    for (int i = 0; i < ajpg::kBlockSize; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  }
  o.require(worst <= 4.5, "pinned bound 4.5");
  o.require(worst <= 6.0, "bound 6.0");
  o.note("max error " + fmt("%.3f", worst));
  return o;
}

Outcome shift_beats_div(const Corpus& c, Measured& shift50, Measured& div50) {
  Outcome o;
  auto start = Clock::now();
  o.require(c.classic.size() >= 6, "at least 6 classic images");
  shift50 = measure(c.classic, config(50, QuantMode::kShift));
  div50 = measure(c.classic, config(50, QuantMode::kDiv));
  Measured shift90 = measure(c.classic, config(90, QuantMode::kShift));
  Measured div90 = measure(c.classic, config(90, QuantMode::kDiv));
  o.require(mean(shift50.ssim) > mean(div50.ssim), "Q50 SSIM");
  o.require(mean(shift50.psnr) > mean(div50.psnr), "Q50 PSNR");
  o.require(mean(shift90.ssim) > mean(div90.ssim), "Q90 SSIM");
  o.require(mean(shift90.psnr) > mean(div90.psnr), "Q90 PSNR");
  double uplift = mean(shift50.ssim) / mean(div50.ssim) - 1.0;
  o.require(uplift >= 0.005 && uplift <= 0.08, "Q50 SSIM uplift in [0.5%, 8%]");
  double elapsed = seconds_since(start);
  o.require(elapsed < 120.0, "runtime under 2 min");
  o.note("Q50 SSIM " + fmt("%.4f", mean(shift50.ssim)) + " vs " + fmt("%.4f", mean(div50.ssim)) + " (+" +
         fmt("%.2f%%", 100 * uplift) + "), Q90 SSIM " + fmt("%.4f", mean(shift90.ssim)) + " vs " +
         fmt("%.4f", mean(div90.ssim)) + ", " + fmt("%.1f s", elapsed));
  return o;
}

Outcome compression_decline(const Measured& shift50, const Measured& div50) {
  Outcome o;
  double decline = 1.0 - mean(shift50.ratio) / mean(div50.ratio);
  o.require(decline > 0.0, "ratio declines");
  o.require(decline >= 0.05 && decline <= 0.35, "Q50 decline in [5%, 35%]");
  auto [lo, hi] = std::minmax_element(div50.ratio.begin(), div50.ratio.end());
  o.require(*lo >= 3.0 && *hi <= 16.0, "div ratios in [3, 16]");
  o.note("mean ratio " + fmt("%.2f", mean(div50.ratio)) + " -> " + fmt("%.2f", mean(shift50.ratio)) + " (-" +
         fmt("%.1f%%", 100 * decline) + "), div range [" + fmt("%.2f", *lo) + ", " + fmt("%.2f", *hi) + "]");
  return o;
}

Outcome truncation_monotone(const Corpus& c, const Measured& shift50) {
  Outcome o;
  std::vector<double> ssim{mean(shift50.ssim)}, psnr{mean(shift50.psnr)};
  for (int b = 1; b <= ajpg::kMaxTruncLevel; ++b) {
    EncodeConfig cfg = config(50, QuantMode::kShift);
    cfg.knobs.truncLevel = b;
    Measured m = measure(c.classic, cfg);
    ssim.push_back(mean(m.ssim));
    psnr.push_back(mean(m.psnr));
  }
  std::string trace = "SSIM";
  for (std::size_t b = 0; b < ssim.size(); ++b) {
    trace += " " + fmt("%.4f", ssim[b]);
    if (b > 0) {
      o.require(ssim[b] < ssim[b - 1], "SSIM decreases at B" + std::to_string(b));
      o.require(psnr[b] < psnr[b - 1], "PSNR decreases at B" + std::to_string(b));
    }
  }
  double drop = 1.0 - ssim[1] / ssim[0];
  o.require(drop <= 0.10, "B1 SSIM drop <= 10%");
  o.note(trace + ", B1 drop " + fmt("%.2f%%", 100 * drop));
  return o;
}

Outcome loop_energy(const ajpg::QEExtraction& loop) {
  Outcome o;
  std::vector<double> saved;
  for (int level = 0; level <= ajpg::kMaxSkipLevel; ++level) {
    std::vector<double> perImage;
    for (const auto& img : loop.perImage) perImage.push_back(img[level].energySaved);
    saved.push_back(mean(perImage));
  }
  std::string trace = "saved";
  for (std::size_t l = 0; l < saved.size(); ++l) {
    trace += " " + fmt("%.4f", saved[l]);
    if (l > 0) o.require(saved[l] >= saved[l - 1], "non-decreasing at L" + std::to_string(l));
  }
  o.require(saved.front() < 0.05, "L0 below 5%");
  o.require(saved.back() > 0.25, "L6 above 25%");
  o.note(trace + " over " + std::to_string(loop.perImage.size()) + " images");
  return o;
}

Outcome homogeneity_correlation(const Corpus& c, const ajpg::QEExtraction& loop) {
  Outcome o;
  o.require(c.natural.size() >= 10, "at least 10 images");
  std::vector<double> homog;
  for (const auto& img : c.natural) homog.push_back(ajpg::homogeneity(img));
  std::string trace = "r";
  for (int level = 2; level <= ajpg::kMaxSkipLevel; ++level) {
    std::vector<double> saved;
    for (const auto& img : loop.perImage) saved.push_back(img[level].energySaved);
    double r = ajpg::pearson(saved, homog);
    o.require(r > 0.5, "L" + std::to_string(level) + " correlation above 0.5");
    trace += " " + fmt("%.3f", r);
  }
  o.note(trace + " for L2..L6");
  return o;
}

Outcome standard_matrix_gap(const Corpus& c) {
  Outcome o;
  double gap[2] = {0.0, 0.0};
  const int qualities[2] = {50, 90};
  for (int k = 0; k < 2; ++k) {
    EncodeConfig cfg = config(qualities[k], QuantMode::kShift);
    Measured matched = measure(c.classic, cfg);
    Measured standard = measure(c.classic, cfg, ajpg::DecodeMatrix::kStandard);
    for (std::size_t i = 0; i < c.classic.size(); ++i) {
      if (qualities[k] == 90) o.require(standard.ssim[i] < matched.ssim[i], "image " + std::to_string(i) + " at Q90");
    }
    gap[k] = 1.0 - mean(standard.ssim) / mean(matched.ssim);
  }
  o.require(gap[1] > gap[0], "Q90 gap exceeds Q50 gap");
  o.note("mean SSIM gap Q50 " + fmt("%.2f%%", 100 * gap[0]) + ", Q90 " + fmt("%.2f%%", 100 * gap[1]));
  return o;
}

Outcome tuner(const Corpus& c) {
  Outcome o;
  std::mt19937 rng(99);
  int convex = 0;
  int infeasible = 0, mismatched = 0;
  for (int t = 0; t < 1000; ++t) {
    ajpg::TunerInput in = oracle::random_curve_pair(rng);
    ajpg::TunerResult r = ajpg::tune(in);
    if (!(ajpg::composed_degradation(in, r.i, r.j) <= in.bound)) ++infeasible;
    if (ajpg::composed_surface_convex(in)) {
      ++convex;
      if (!(r == ajpg::exhaustive_oracle(in))) ++mismatched;
    }
  }
  o.require(infeasible == 0, std::to_string(infeasible) + " infeasible results");
  o.require(mismatched == 0, std::to_string(mismatched) + " convex cases differ from the exhaustive search");
  o.require(convex > 0, "convex subset is not empty");

  ajpg::TunerResult ref = ajpg::tune(oracle::reference_curve_pair(0.02));
  o.require(ref.predictedEnergy <= 0.80, "reference curves reach E <= 0.80");

  ajpg::TunerInput measured;
  EncodeConfig base = config(50, QuantMode::kShift);
  ajpg::EnergyModel model = ajpg::default_activity_model();
  measured.loopCurve = ajpg::extract_qe_curve(ajpg::KnobKind::kLoop, c.classic, base, model, {}).curve;
  measured.truncCurve = ajpg::extract_qe_curve(ajpg::KnobKind::kTrunc, c.classic, base, model, {}).curve;
  measured.bound = 0.02;
  ajpg::TunerResult corpus = ajpg::tune(measured);
  o.require(corpus.predictedEnergy <= 0.80, "corpus curves reach E <= 0.80");
  o.require(corpus.predictedQuality <= 0.02, "corpus config within bound");
  o.note(std::to_string(convex) + " convex of 1000; reference (" + std::to_string(ref.i) + "," +
         std::to_string(ref.j) + ") E " + fmt("%.3f", ref.predictedEnergy) + "; corpus (" +
         std::to_string(corpus.i) + "," + std::to_string(corpus.j) + ") E " + fmt("%.3f", corpus.predictedEnergy));
  return o;
}

PixelBlock constant_block(int v) {
  PixelBlock b;
  b.v.fill(v);
  return b;
}

Outcome loop_skip_semantics() {
  Outcome o;
  std::mt19937 rng(11);
  for (int t = 0; t < 1000; ++t) {
    PixelBlock a = oracle::random_pixel_block(rng);
    PixelBlock b = a;
    o.require(ajpg::skip_check(b, a, 0), "identical block skips at tolerance 0");
    b[t % 64] += b[t % 64] < 127 ? 1 : -1;
    if (ajpg::skip_check(b, a, 0)) {
      o.require(false, "near-duplicate skipped at tolerance 0");
      break;
    }
  }
  o.require(ajpg::skip_check(constant_block(127), constant_block(125), 5), "ceiling clamps at 127");
  o.require(ajpg::skip_check(constant_block(-128), constant_block(-126), 5), "floor clamps at -128");
  o.require(!ajpg::skip_check(constant_block(127), constant_block(121), 5), "127 vs 121 outside tolerance");
  o.require(!ajpg::skip_check(constant_block(-128), constant_block(-122), 5), "-128 vs -122 outside tolerance");

  PixelBlock a = constant_block(20);
  std::vector<PixelBlock> chain{a, constant_block(23), constant_block(26)};
  int compressed = 0;
  auto out = ajpg::perforate(std::span<const PixelBlock>(chain), 5, [&](const PixelBlock& blk) {
    ++compressed;
    return blk[0];
  });
  o.require(out.skipped == std::vector<bool>{false, true, false}, "chain A, A+3, A+6 skips only block 1");
  o.require(compressed == 2, "chain compresses twice");
  o.require(out.results[1] == 20, "skipped block reuses block 0");

  // tolerance grows with the level
  ajpg::KnobConfig knobs;
  for (int level = 0; level <= ajpg::kMaxSkipLevel; ++level) {
    knobs.skipLevel = level;
    o.require(knobs.tolerance() == 5 * level, "tolerance at L" + std::to_string(level));
  }
  o.note("tolerance, clamp and reference-chain cases hold");
  return o;
}

Outcome entropy_container() {
  Outcome o;
  std::mt19937 rng(12);
  ajpg::ShiftMatrix shifts = ajpg::to_shift_matrix(ajpg::build_qmatrix(50));
  int coeffMismatch = 0, streamMismatch = 0, byteMismatch = 0, decodeMismatch = 0;
  std::vector<std::vector<std::uint8_t>> seeds;
  for (int t = 0; t < 100; ++t) {
    int w = 8 + static_cast<int>(rng() % 90), h = 8 + static_cast<int>(rng() % 70);
    int ch = t % 4 == 3 ? 3 : 1;
    RasterImage img = t % 2 ? oracle::smooth_image(rng, w, h, ch) : oracle::random_image(rng, w, h, ch);
    EncodeConfig cfg;
    cfg.knobs.skipLevel = t % 3 == 0 ? std::optional<int>(t % 7) : std::nullopt;
    cfg.knobs.truncLevel = t % 5;
    ajpg::EncodeResult enc = ajpg::encode(img, cfg);

    ajpg::Container back = ajpg::read_container(enc.bytes);
    if (!(back == enc.container)) ++streamMismatch;
    if (ajpg::write_container(back) != enc.bytes) ++byteMismatch;
    if (ajpg::decode(enc.bytes) != ajpg::reconstruct(img, cfg).image) ++decodeMismatch;

    // independent coefficient path for the plain gray configuration
    if (ch == 1) {
      ajpg::EncodeResult plain = ajpg::encode(img, EncodeConfig{});
      ajpg::BlockGrid grid = ajpg::tile_blocks(img, true);
      std::vector<ajpg::QuantizedBlock> want;
      for (const auto& b : grid.blocks) want.push_back(ajpg::quantize_shift_round(ajpg::fdct_2d(b), shifts));
      auto got = ajpg::decode_channel(ajpg::read_container(plain.bytes).channels[0]);
      if (got != want) ++coeffMismatch;
    }
    if (t < 8) seeds.push_back(enc.bytes);
  }
  o.require(coeffMismatch == 0, std::to_string(coeffMismatch) + " coefficient mismatches");
  o.require(streamMismatch == 0, std::to_string(streamMismatch) + " parsed containers differ");
  o.require(byteMismatch == 0, std::to_string(byteMismatch) + " rewrites differ");
  o.require(decodeMismatch == 0, std::to_string(decodeMismatch) + " decodes differ from the encoder's view");

  int structured = 0, accepted = 0, unstructured = 0;
  for (int t = 0; t < 10000; ++t) {
    std::vector<std::uint8_t> bytes = seeds[t % seeds.size()];
    switch (rng() % 4) {
      case 0:
        bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        break;
      case 1:
        bytes[rng() % bytes.size()] = static_cast<std::uint8_t>(rng());
        break;
      case 2:
        bytes.resize(rng() % bytes.size());
        break;
      default:
        bytes.insert(bytes.begin() + static_cast<std::ptrdiff_t>(rng() % bytes.size()), static_cast<std::uint8_t>(rng()));
        break;
    }
    try {
      (void)ajpg::decode(bytes);
      ++accepted;
    } catch (const ajpg::Error&) {
      ++structured;
    } catch (...) {
      ++unstructured;
    }
  }
  o.require(unstructured == 0, std::to_string(unstructured) + " mutations raised an unstructured exception");
  o.note("100 images round trip; 10^4 mutations: " + std::to_string(structured) + " structured errors, " +
         std::to_string(accepted) + " decoded");
  return o;
}

}  // namespace

int main() {
  Corpus corpus;
  corpus.classic = load({"classic"});
  corpus.natural = load({"classic", "extra"});
  Measured shift50, div50;
  std::optional<ajpg::QEExtraction> loop;
  auto loop_extraction = [&]() -> const ajpg::QEExtraction& {
    if (!loop) {
      loop = ajpg::extract_qe_curve(ajpg::KnobKind::kLoop, corpus.natural, config(50, QuantMode::kShift),
                                    ajpg::default_activity_model(), {});
    }
    return *loop;
  };

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"kernel bit-exactness", kernels_exact},
      {"multiplier-free encode", [&] { return multiplier_free(corpus); }},
      {"fdct accuracy", fdct_accuracy},
      {"shift vs div quality", [&] { return shift_beats_div(corpus, shift50, div50); }},
      {"shift vs div compression", [&] { return compression_decline(shift50, div50); }},
      {"truncation monotonicity", [&] { return truncation_monotone(corpus, shift50); }},
      {"loop-skip energy trend", [&] { return loop_energy(loop_extraction()); }},
      {"energy vs homogeneity", [&] { return homogeneity_correlation(corpus, loop_extraction()); }},
      {"standard matrix decode", [&] { return standard_matrix_gap(corpus); }},
      {"tuner correctness", [&] { return tuner(corpus); }},
      {"loop-skip semantics", loop_skip_semantics},
      {"entropy and container", entropy_container},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
