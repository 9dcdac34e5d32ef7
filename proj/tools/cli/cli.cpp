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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "approxjpeg/container.hpp"
#include "approxjpeg/energy.hpp"
#include "approxjpeg/error.hpp"
#include "approxjpeg/imageio.hpp"
#include "approxjpeg/metrics.hpp"
#include "approxjpeg/pipeline.hpp"
#include "approxjpeg/qecurve.hpp"
#include "approxjpeg/tuner.hpp"

namespace ajpg::cli {

namespace {

namespace fs = std::filesystem;

// Raised while turning flags into configuration, before any file is touched.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string real(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

nlohmann::json real_json(double v) { return std::isinf(v) ? nlohmann::json("inf") : nlohmann::json(v); }

std::optional<int> parse_skip(const std::string& text) {
  if (text == "off") return std::nullopt;
  if (text.size() == 1 && text[0] >= '0' && text[0] <= '0' + kMaxSkipLevel) return text[0] - '0';
  throw UsageError("--skip must be off or 0..6, got '" + text + "'");
}

QuantMode parse_quant(const std::string& text) {
  if (text == "shift") return QuantMode::kShift;
  if (text == "div") return QuantMode::kDiv;
  throw UsageError("--quant must be shift or div, got '" + text + "'");
}

std::vector<double> parse_bounds(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(field, &used);
      if (used != field.size() || !(v >= 0.0)) throw std::invalid_argument(field);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--bounds must be comma-separated non-negative numbers, got '" + text + "'");
    }
  }
  if (!std::is_sorted(out.begin(), out.end())) throw UsageError("--bounds must be ascending");
  return out;
}

QuantMatrix read_qmatrix(const fs::path& path) {
  std::stringstream in(read_text(path));
  std::vector<int> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("qmatrix: '" + token + "' is not an integer");
    }
  }
  if (values.size() != kBlockSize) throw ParseError("qmatrix: expected 64 values");
  try {
    return QuantMatrix::from_values(values);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("qmatrix: ") + e.what());
  }
}

std::vector<fs::path> corpus_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("corpus directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("corpus directory has no PNM images: " + dir.string());
  return files;
}

EnergyModel energy_model(QuantMode mode, const std::string& calibration) {
  EnergyModel model = default_activity_model(mode);
  if (!calibration.empty()) model = parse_calibration(read_text(calibration), model);
  return model;
}

// Common encoder flags.
struct CodecFlags {
  int quality = 50;
  std::string quant = "shift";
  int truncate = 0;
  std::string skip = "off";
  bool dcExact = false;
  bool floorShift = false;
  std::string skipCompare = "before";
  std::string qmatrix;

  void add_to(CLI::App* cmd, bool knobs) {
    cmd->add_option("--quality", quality, "Quality level 1..99")->check(CLI::Range(1, 99));
    cmd->add_option("--quant", quant, "Quantizer: shift or div")->check(CLI::IsMember({"shift", "div"}));
    cmd->add_option("--qmatrix", qmatrix, "File with 64 custom quantization divisors");
    cmd->add_flag("--dc-exact", dcExact, "Shift mode: divide DC exactly by its table entry");
    cmd->add_flag("--floor-shift", floorShift, "Shift mode: floor instead of rounding before the shift");
    if (knobs) {
      cmd->add_option("--truncate", truncate, "Truncation level 0..4")->check(CLI::Range(0, kMaxTruncLevel));
      cmd->add_option("--skip", skip, "Loop-skip level off or 0..6");
      cmd->add_option("--skip-compare", skipCompare, "Compare pixels before or after truncation")
          ->check(CLI::IsMember({"before", "after"}));
    }
  }

  EncodeConfig config() const {
    EncodeConfig cfg;
    cfg.quality = quality;
    cfg.knobs.quantMode = parse_quant(quant);
    cfg.knobs.truncLevel = truncate;
    cfg.knobs.skipLevel = parse_skip(skip);
    cfg.knobs.skipCompare = skipCompare == "after" ? SkipCompare::kAfterTruncation : SkipCompare::kBeforeTruncation;
    cfg.dcExact = dcExact;
    cfg.roundedShift = !floorShift;
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

int cmd_encode(const fs::path& input, const fs::path& output, const EncodeConfig& base, const std::string& qmatrix,
               std::ostream& out) {
  EncodeConfig cfg = base;
  if (!qmatrix.empty()) cfg.customMatrix = read_qmatrix(qmatrix);
  RasterImage img = read_pnm_file(input);
  EncodeResult r = encode(img, cfg);
  write_file(output, r.bytes);
  out << "encoded " << img.width << "x" << img.height << " into " << r.bytes.size() << " bytes (ratio "
      << real(compression_ratio(img, r.bytes)) << "), blocks processed " << r.stats.processed << ", skipped "
      << r.stats.skipped << "\n";
  return kExitOk;
}

int cmd_decode(const fs::path& input, const fs::path& output, DecodeMatrix matrix) {
  auto bytes = read_file(input);
  write_pnm_file(output, decode(bytes, matrix));
  return kExitOk;
}

int cmd_metrics(const fs::path& ref, const fs::path& test, const std::string& container, const fs::path& output,
                std::ostream& out) {
  RasterImage a = read_pnm_file(ref);
  RasterImage b = read_pnm_file(test);
  MetricsReport report = compute_metrics(a, b);
  if (!container.empty()) report.compressionRatio = compression_ratio(a, read_file(container));
  std::string json = to_json(report);
  if (output.empty()) {
    out << json;
  } else {
    write_text(output, json);
  }
  return kExitOk;
}

int cmd_sweep(const fs::path& corpus, KnobKind kind, const EncodeConfig& cfg, const std::string& calibration,
              const std::vector<double>& bounds, const fs::path& output, const std::string& details,
              const std::string& selections) {
  std::vector<fs::path> files = corpus_files(corpus);
  std::vector<RasterImage> images;
  for (const auto& f : files) images.push_back(read_pnm_file(f));
  EnergyModel model = energy_model(cfg.knobs.quantMode, calibration);
  QEExtraction ex = extract_qe_curve(kind, images, cfg, model, bounds);
  write_text(output, to_csv(ex.curve));

  if (!details.empty()) {
    std::string csv = "image,kind,level,quality_degradation,relative_energy,energy_saved,blocks_processed,blocks_skipped\n";
    for (std::size_t i = 0; i < files.size(); ++i) {
      for (std::size_t level = 0; level < ex.perImage[i].size(); ++level) {
        const ImageLevelResult& r = ex.perImage[i][level];
        csv += files[i].filename().string() + "," + knob_name(kind) + "," + std::to_string(level) + "," +
               real(r.degradation) + "," + real(r.relativeEnergy) + "," + real(r.energySaved) + "," +
               std::to_string(r.stats.processed) + "," + std::to_string(r.stats.skipped) + "\n";
      }
    }
    write_text(details, csv);
  }
  if (!selections.empty()) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      const LevelSelection& s = ex.selections[k];
      arr.push_back({{"bound", bounds[k]},
                     {"level", s.level},
                     {"quality_degradation", s.degradation},
                     {"relative_energy", s.relativeEnergy},
                     {"satisfied", s.satisfied}});
    }
    write_text(selections, arr.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_tune(const fs::path& loop, const fs::path& trunc, double bound, const fs::path& output, bool oracle,
             std::ostream& out) {
  TunerInput in;
  in.loopCurve = parse_qe_csv(read_text(loop));
  in.truncCurve = parse_qe_csv(read_text(trunc));
  if (in.loopCurve.kind != KnobKind::kLoop) throw ParseError("--loop-curve does not hold a loop curve");
  if (in.truncCurve.kind != KnobKind::kTrunc) throw ParseError("--trunc-curve does not hold a trunc curve");
  in.bound = bound;
  TunerResult r = oracle ? exhaustive_oracle(in) : tune(in);
  std::string json = to_json(r);
  if (output.empty()) {
    out << json;
  } else {
    write_text(output, json);
  }
  return kExitOk;
}

int cmd_report(const fs::path& corpus, const fs::path& config, const EncodeConfig& base,
               const std::string& calibration, const fs::path& output) {
  TunerResult selected = parse_tuner_json(read_text(config));
  EncodeConfig cfg = base;
  cfg.knobs.skipLevel = selected.i;
  cfg.knobs.truncLevel = selected.j;
  EnergyModel model = energy_model(cfg.knobs.quantMode, calibration);
  const bool json = output.extension() == ".json";

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string csv =
      "image,quality,quant,trunc_level,skip_level,sad_pct,psnr,ssim,homogeneity,compression_ratio,"
      "blocks_processed,blocks_skipped,relative_energy,energy_saved\n";
  for (const auto& file : corpus_files(corpus)) {
    RasterImage img = read_pnm_file(file);
    EncodeResult enc = encode(img, cfg);
    RasterImage rec = decode(enc.bytes);
    MetricsReport m = compute_metrics(img, rec);
    double ratio = compression_ratio(img, enc.bytes);
    BlockStats baseline{enc.stats.total(), 0, 0, false};
    double relEnergy = estimate_image_energy(model, enc.stats) / estimate_image_energy(model, baseline);
    double saved = energy_saved(model, enc.stats);
    std::string name = file.filename().string();
    const char* quant = cfg.knobs.quantMode == QuantMode::kShift ? "shift" : "div";
    if (json) {
      rows.push_back({{"image", name},
                      {"quality", cfg.quality},
                      {"quant", quant},
                      {"trunc_level", cfg.knobs.truncLevel},
                      {"skip_level", *cfg.knobs.skipLevel},
                      {"sad_pct", m.sadPct},
                      {"psnr", real_json(m.psnr)},
                      {"ssim", m.ssim},
                      {"homogeneity", m.homogeneity},
                      {"compression_ratio", ratio},
                      {"blocks_processed", enc.stats.processed},
                      {"blocks_skipped", enc.stats.skipped},
                      {"relative_energy", relEnergy},
                      {"energy_saved", saved}});
    } else {
      csv += name + "," + std::to_string(cfg.quality) + "," + quant + "," + std::to_string(cfg.knobs.truncLevel) +
             "," + std::to_string(*cfg.knobs.skipLevel) + "," + real(m.sadPct) + "," + real(m.psnr) + "," +
             real(m.ssim) + "," + real(m.homogeneity) + "," + real(ratio) + "," +
             std::to_string(enc.stats.processed) + "," + std::to_string(enc.stats.skipped) + "," +
             real(relEnergy) + "," + real(saved) + "\n";
    }
  }
  write_text(output, json ? rows.dump(2) + "\n" : csv);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate JPEG encoder with quality/energy knobs", "ajpg"};
  app.require_subcommand(1);

  // encode
  auto* encodeCmd = app.add_subcommand("encode", "Compress a PNM image into an AJPG container");
  std::string encIn, encOut;
  CodecFlags encFlags;
  encodeCmd->add_option("--input", encIn, "Input PGM/PPM")->required();
  encodeCmd->add_option("--output", encOut, "Output container")->required();
  encFlags.add_to(encodeCmd, true);

  // decode
  auto* decodeCmd = app.add_subcommand("decode", "Reconstruct a PNM image from an AJPG container");
  std::string decIn, decOut, decMatrix = "matched";
  decodeCmd->add_option("--input", decIn, "Input container")->required();
  decodeCmd->add_option("--output", decOut, "Output PGM/PPM")->required();
  decodeCmd->add_option("--decode-quant", decMatrix, "Dequantize with the matched or the standard matrix")
      ->check(CLI::IsMember({"matched", "standard"}));

  // metrics
  auto* metricsCmd = app.add_subcommand("metrics", "Compare a test image against a reference");
  std::string metRef, metTest, metOut, metContainer;
  metricsCmd->add_option("--ref", metRef, "Reference PNM")->required();
  metricsCmd->add_option("--test", metTest, "Test PNM")->required();
  metricsCmd->add_option("--out", metOut, "Output JSON (stdout when omitted)");
  metricsCmd->add_option("--container", metContainer, "Container of the test image, adds the compression ratio");

  // sweep
  auto* sweepCmd = app.add_subcommand("sweep", "Measure the quality/energy curve of one knob over a corpus");
  std::string swCorpus, swKnob, swOut, swCalibration, swBounds = "0.005,0.01,0.02,0.05", swDetails, swSelections;
  CodecFlags swFlags;
  sweepCmd->add_option("--corpus", swCorpus, "Directory of PNM images")->required();
  sweepCmd->add_option("--knob", swKnob, "loop or trunc")->required()->check(CLI::IsMember({"loop", "trunc"}));
  sweepCmd->add_option("--out", swOut, "Output curve CSV")->required();
  sweepCmd->add_option("--calibration", swCalibration, "Energy calibration JSON");
  sweepCmd->add_option("--bounds", swBounds, "Ascending degradation bounds for level selection");
  sweepCmd->add_option("--details", swDetails, "Per-image CSV");
  sweepCmd->add_option("--selections", swSelections, "Per-bound level selections JSON");
  swFlags.add_to(sweepCmd, true);

  // tune
  auto* tuneCmd = app.add_subcommand("tune", "Pick loop-skip and truncation levels under a degradation bound");
  std::string tuLoop, tuTrunc, tuOut;
  double tuBound = 0.0;
  bool tuOracle = false;
  tuneCmd->add_option("--loop-curve", tuLoop, "Loop curve CSV")->required();
  tuneCmd->add_option("--trunc-curve", tuTrunc, "Truncation curve CSV")->required();
  tuneCmd->add_option("--bound", tuBound, "Largest SAD degradation")->required()->check(CLI::NonNegativeNumber);
  tuneCmd->add_option("--out", tuOut, "Output JSON (stdout when omitted)");
  tuneCmd->add_flag("--exhaustive", tuOracle, "Search every combination instead of descending");

  // report
  auto* reportCmd = app.add_subcommand("report", "Per-image metrics and energy for a tuned configuration");
  std::string reCorpus, reConfig, reOut, reCalibration;
  CodecFlags reFlags;
  reportCmd->add_option("--corpus", reCorpus, "Directory of PNM images")->required();
  reportCmd->add_option("--config", reConfig, "Tuner JSON with i (skip level) and j (truncation level)")->required();
  reportCmd->add_option("--out", reOut, "Output CSV, or JSON when the name ends in .json")->required();
  reportCmd->add_option("--calibration", reCalibration, "Energy calibration JSON");
  reFlags.add_to(reportCmd, false);

  std::function<int()> action;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (*encodeCmd) {
      EncodeConfig cfg = encFlags.config();
      if (!encFlags.qmatrix.empty() && cfg.dcExact) throw UsageError("--dc-exact needs a standard matrix");
      action = [&, cfg] { return cmd_encode(encIn, encOut, cfg, encFlags.qmatrix, out); };
    } else if (*decodeCmd) {
      DecodeMatrix m = decMatrix == "standard" ? DecodeMatrix::kStandard : DecodeMatrix::kMatched;
      action = [&, m] { return cmd_decode(decIn, decOut, m); };
    } else if (*metricsCmd) {
      action = [&] { return cmd_metrics(metRef, metTest, metContainer, metOut, out); };
    } else if (*sweepCmd) {
      EncodeConfig cfg = swFlags.config();
      if (!swFlags.qmatrix.empty()) throw UsageError("sweep does not take --qmatrix");
      KnobKind kind = parse_knob_kind(swKnob);
      std::vector<double> bounds = parse_bounds(swBounds);
      action = [&, cfg, kind, bounds] {
        return cmd_sweep(swCorpus, kind, cfg, swCalibration, bounds, swOut, swDetails, swSelections);
      };
    } else if (*tuneCmd) {
      action = [&] { return cmd_tune(tuLoop, tuTrunc, tuBound, tuOut, tuOracle, out); };
    } else if (*reportCmd) {
      EncodeConfig cfg = reFlags.config();
      if (!reFlags.qmatrix.empty()) throw UsageError("report does not take --qmatrix");
      action = [&, cfg] { return cmd_report(reCorpus, reConfig, cfg, reCalibration, reOut); };
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace ajpg::cli
