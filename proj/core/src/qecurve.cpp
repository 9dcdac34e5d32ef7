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

#include "approxjpeg/qecurve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "approxjpeg/error.hpp"
#include "approxjpeg/metrics.hpp"

namespace ajpg {

const char* knob_name(KnobKind kind) { return kind == KnobKind::kLoop ? "loop" : "trunc"; }

KnobKind parse_knob_kind(const std::string& name) {
  if (name == "loop") return KnobKind::kLoop;
  if (name == "trunc") return KnobKind::kTrunc;
  throw ConfigError("unknown knob '" + name + "' (expected loop or trunc)");
}

void QECurve::validate() const {
  if (points.empty()) throw ConfigError("QE curve has no points");
  const QEPoint& first = points.front();
  if (first.level != 0 || first.degradation != 0.0 || first.relativeEnergy != 1.0) {
    throw ConfigError("QE curve must start at (0, 0, 1)");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].level <= points[i - 1].level) throw ConfigError("QE curve levels must strictly increase");
    if (points[i].relativeEnergy > points[i - 1].relativeEnergy) {
      throw ConfigError("QE curve relative energy increases at level " + std::to_string(points[i].level));
    }
  }
  for (const QEPoint& p : points) {
    if (!(p.degradation >= 0.0) || !(p.relativeEnergy >= 0.0) || !std::isfinite(p.degradation) ||
        !std::isfinite(p.relativeEnergy)) {
      throw ConfigError("QE curve values must be finite and non-negative");
    }
  }
}

namespace {

constexpr const char* kCsvHeader = "kind,level,quality_degradation,relative_energy";

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& field, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used == field.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("QE curve line " + std::to_string(line) + ": '" + field + "' is not a number");
}

std::vector<std::string> split_fields(const std::string& row) {
  std::vector<std::string> fields;
  std::stringstream ss(row);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!row.empty() && row.back() == ',') fields.emplace_back();
  return fields;
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
  std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failureMutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failureMutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < workers; ++t) threads.emplace_back(run);
  run();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string to_csv(const QECurve& curve) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const QEPoint& p : curve.points) {
    out += std::string(knob_name(curve.kind)) + "," + std::to_string(p.level) + "," + format_real(p.degradation) +
           "," + format_real(p.relativeEnergy) + "\n";
  }
  return out;
}

QECurve parse_qe_csv(const std::string& text) {
  std::stringstream in(text);
  std::string row;
  int line = 0;
  QECurve curve;
  bool sawKind = false;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (line == 1) {
      if (row != kCsvHeader) throw ParseError(std::string("QE curve: header must be '") + kCsvHeader + "'");
      continue;
    }
    if (row.empty()) continue;
    auto fields = split_fields(row);
    if (fields.size() != 4) throw ParseError("QE curve line " + std::to_string(line) + ": expected 4 fields");
    KnobKind kind;
    try {
      kind = parse_knob_kind(fields[0]);
    } catch (const ConfigError&) {
      throw ParseError("QE curve line " + std::to_string(line) + ": unknown kind '" + fields[0] + "'");
    }
    if (sawKind && kind != curve.kind) throw ParseError("QE curve mixes knob kinds");
    curve.kind = kind;
    sawKind = true;
    double level = parse_real(fields[1], line);
    if (level != std::floor(level) || level < 0 || level > 255) {
      throw ParseError("QE curve line " + std::to_string(line) + ": level must be a small integer");
    }
    curve.points.push_back({static_cast<int>(level), parse_real(fields[2], line), parse_real(fields[3], line)});
  }
  if (line == 0) throw ParseError("QE curve: empty file");
  curve.validate();
  return curve;
}

std::vector<LevelSelection> select_levels(const QECurve& curve, std::span<const double> bounds) {
  std::vector<LevelSelection> out;
  for (double bound : bounds) {
    const auto& pts = curve.points;
    std::size_t m = 0;
    while (m + 1 < pts.size() && pts[m + 1].degradation <= bound) ++m;
    out.push_back({pts[m].level, pts[m].degradation, pts[m].relativeEnergy, pts[0].degradation <= bound});
  }
  return out;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  for (double v : values) s.stddev += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(s.stddev / static_cast<double>(values.size()));
  return s;
}

QEExtraction extract_qe_curve(KnobKind kind, std::span<const RasterImage> corpus, const EncodeConfig& base,
                              const EnergyModel& model, std::span<const double> bounds) {
  if (corpus.empty()) throw ConfigError("QE extraction needs at least one image");
  for (std::size_t i = 1; i < bounds.size(); ++i) {
    if (bounds[i] < bounds[i - 1]) throw ConfigError("quality bounds must be sorted ascending");
  }
  const int levels = (kind == KnobKind::kLoop ? kMaxSkipLevel : kMaxTruncLevel) + 1;
  auto config_at = [&](int level) {
    EncodeConfig cfg = base;
    if (kind == KnobKind::kLoop) {
      cfg.knobs.skipLevel = level;
    } else {
      cfg.knobs.truncLevel = level;
    }
    return cfg;
  };
  for (int level = 0; level < levels; ++level) config_at(level).validate();

  QEExtraction out;
  out.perImage.assign(corpus.size(), std::vector<ImageLevelResult>(levels));
  parallel_for(corpus.size(), [&](std::size_t i) {
    Reconstruction ref = reconstruct(corpus[i], config_at(0));
    double refEnergy = estimate_image_energy(model, ref.stats);
    for (int level = 0; level < levels; ++level) {
      Reconstruction r = level == 0 ? ref : reconstruct(corpus[i], config_at(level));
      ImageLevelResult& res = out.perImage[i][level];
      res.stats = r.stats;
      res.degradation = level == 0 ? 0.0 : sad_pct(ref.image, r.image);
      res.relativeEnergy = level == 0 ? 1.0 : estimate_image_energy(model, r.stats) / refEnergy;
      res.energySaved = energy_saved(model, r.stats);
    }
  });

  out.curve.kind = kind;
  for (int level = 0; level < levels; ++level) {
    std::vector<double> deg;
    std::vector<double> energy;
    for (const auto& img : out.perImage) {
      deg.push_back(img[level].degradation);
      energy.push_back(img[level].relativeEnergy);
    }
    out.curve.points.push_back({level, summarize(deg).mean, summarize(energy).mean});
  }
  out.selections = select_levels(out.curve, bounds);
  return out;
}

}  // namespace ajpg
