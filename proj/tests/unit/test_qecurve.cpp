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

#include <gtest/gtest.h>

#include <random>

#include "approxjpeg/error.hpp"
#include "approxjpeg/qecurve.hpp"
#include "oracles.hpp"

namespace {

using ajpg::KnobKind;
using ajpg::QECurve;

QECurve curve_of(KnobKind kind, std::vector<double> deg, std::vector<double> energy) {
  QECurve c;
  c.kind = kind;
  for (std::size_t i = 0; i < deg.size(); ++i) c.points.push_back({static_cast<int>(i), deg[i], energy[i]});
  return c;
}

TEST(KnobKind, Names) {
  EXPECT_STREQ(ajpg::knob_name(KnobKind::kLoop), "loop");
  EXPECT_STREQ(ajpg::knob_name(KnobKind::kTrunc), "trunc");
  EXPECT_EQ(ajpg::parse_knob_kind("trunc"), KnobKind::kTrunc);
  EXPECT_THROW(ajpg::parse_knob_kind("Loop"), ajpg::ConfigError);
}

TEST(QECurveValidate, Invariants) {
  EXPECT_NO_THROW(curve_of(KnobKind::kLoop, {0, .01, .02}, {1, .9, .9}).validate());
  EXPECT_THROW(curve_of(KnobKind::kLoop, {.01, .01}, {1, .9}).validate(), ajpg::ConfigError);
  EXPECT_THROW(curve_of(KnobKind::kLoop, {0, .01}, {.9, .8}).validate(), ajpg::ConfigError);
  EXPECT_THROW(curve_of(KnobKind::kLoop, {0, .01, .02}, {1, .8, .85}).validate(), ajpg::ConfigError);
  EXPECT_THROW(curve_of(KnobKind::kLoop, {0, -.01}, {1, .8}).validate(), ajpg::ConfigError);
  QECurve repeated = curve_of(KnobKind::kTrunc, {0, .01}, {1, .9});
  repeated.points[1].level = 0;
  EXPECT_THROW(repeated.validate(), ajpg::ConfigError);
  EXPECT_THROW(QECurve{}.validate(), ajpg::ConfigError);
}

TEST(QECurveCsv, ExactFormat) {
  QECurve c = curve_of(KnobKind::kTrunc, {0, 0.25}, {1, 0.5});
  EXPECT_EQ(ajpg::to_csv(c), "kind,level,quality_degradation,relative_energy\ntrunc,0,0,1\ntrunc,1,0.25,0.5\n");
}

TEST(QECurveCsv, RoundTripIsExact) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 0.1);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> deg{0}, energy{1};
    for (int i = 1; i < 7; ++i) {
      deg.push_back(deg.back() + u(rng));
      energy.push_back(energy.back() - u(rng));
    }
    QECurve c = curve_of(t % 2 ? KnobKind::kLoop : KnobKind::kTrunc, deg, energy);
    EXPECT_EQ(ajpg::parse_qe_csv(ajpg::to_csv(c)), c);
  }
}

TEST(QECurveCsv, AcceptsCrlf) {
  QECurve c = ajpg::parse_qe_csv("kind,level,quality_degradation,relative_energy\r\nloop,0,0,1\r\nloop,1,0.1,0.7\r\n");
  EXPECT_EQ(c.points.size(), 2u);
}

TEST(QECurveCsv, Errors) {
  const std::string h = "kind,level,quality_degradation,relative_energy\n";
  for (const std::string& text : {std::string(""), std::string("kind,level\nloop,0,0,1\n"), h + "loop,0,0\n",
                                  h + "loop,0,0,1,9\n", h + "loop,0,0,1\ntrunc,1,0.1,0.9\n", h + "dct,0,0,1\n",
                                  h + "loop,0,zero,1\n", h + "loop,0.5,0,1\n", h + "loop,0,0,1x\n"}) {
    EXPECT_THROW(ajpg::parse_qe_csv(text), ajpg::ParseError) << text;
  }
  EXPECT_THROW(ajpg::parse_qe_csv(h + "loop,0,0,1\nloop,1,0.1,1.2\n"), ajpg::ConfigError);
  EXPECT_THROW(ajpg::parse_qe_csv(h), ajpg::ConfigError);
}

TEST(SelectLevels, WalkExamples) {
  QECurve c = curve_of(KnobKind::kLoop, {0, .01, .03, .07}, {1, .9, .8, .7});
  std::vector<double> bounds{0.0, 0.005, 0.01, 0.05, 0.07, 1.0};
  auto sel = ajpg::select_levels(c, bounds);
  ASSERT_EQ(sel.size(), bounds.size());
  EXPECT_EQ(sel[0].level, 0);
  EXPECT_EQ(sel[1].level, 0);
  EXPECT_EQ(sel[2].level, 1);
  EXPECT_EQ(sel[3].level, 2);
  EXPECT_DOUBLE_EQ(sel[3].relativeEnergy, .8);
  EXPECT_DOUBLE_EQ(sel[3].degradation, .03);
  EXPECT_EQ(sel[4].level, 3);
  EXPECT_EQ(sel[5].level, 3);
  for (const auto& s : sel) EXPECT_TRUE(s.satisfied);
}

TEST(SelectLevels, StopsAtFirstViolation) {
  // a later level dipping back under the bound is not reached by the walk
  QECurve c = curve_of(KnobKind::kLoop, {0, .01, .08, .02}, {1, .9, .8, .7});
  std::vector<double> bounds{0.05};
  EXPECT_EQ(ajpg::select_levels(c, bounds)[0].level, 1);
}

TEST(SelectLevels, UnsatisfiableBoundFlagged) {
  QECurve c = curve_of(KnobKind::kTrunc, {0, .01}, {1, .9});
  std::vector<double> bounds{-1.0};
  auto sel = ajpg::select_levels(c, bounds);
  EXPECT_EQ(sel[0].level, 0);
  EXPECT_FALSE(sel[0].satisfied);
}

TEST(Summarize, PopulationStatistics) {
  std::vector<double> v{1, 2, 3, 4};
  auto s = ajpg::summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(1.25));
  EXPECT_DOUBLE_EQ(s.min, 1);
  EXPECT_DOUBLE_EQ(s.max, 4);
}

class Extraction : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937 rng(2);
    for (int i = 0; i < 4; ++i) corpus.push_back(oracle::smooth_image(rng, 64, 48, 1));
    corpus.push_back(ajpg::RasterImage::filled(64, 48, 1, 90));
  }
  std::vector<ajpg::RasterImage> corpus;
  ajpg::EnergyModel model = ajpg::default_activity_model();
  std::vector<double> bounds{0.005, 0.01, 0.02, 0.05};
};

TEST_F(Extraction, TruncationCurveEnergyIsProcessCost) {
  auto ex = ajpg::extract_qe_curve(KnobKind::kTrunc, corpus, ajpg::EncodeConfig{}, model, bounds);
  ASSERT_EQ(ex.curve.points.size(), 5u);
  EXPECT_NO_THROW(ex.curve.validate());
  for (int b = 0; b <= 4; ++b) {
    EXPECT_EQ(ex.curve.points[b].level, b);
    EXPECT_NEAR(ex.curve.points[b].relativeEnergy, model.process_cost(b), 1e-12);
  }
  for (int b = 1; b <= 4; ++b) EXPECT_GT(ex.curve.points[b].degradation, ex.curve.points[b - 1].degradation);
  ASSERT_EQ(ex.perImage.size(), corpus.size());
  EXPECT_EQ(ex.selections.size(), bounds.size());
}

TEST_F(Extraction, LoopCurveRelativeToLevelZero) {
  auto ex = ajpg::extract_qe_curve(KnobKind::kLoop, corpus, ajpg::EncodeConfig{}, model, bounds);
  ASSERT_EQ(ex.curve.points.size(), 7u);
  EXPECT_EQ(ex.curve.points[0], (ajpg::QEPoint{0, 0.0, 1.0}));
  for (int l = 1; l <= 6; ++l) EXPECT_LE(ex.curve.points[l].relativeEnergy, 1.0 + 1e-12);
  // the flat image compresses one block at every level
  const auto& flat = ex.perImage.back();
  for (const auto& r : flat) {
    EXPECT_EQ(r.stats.processed, 1u);
    EXPECT_EQ(r.stats.total(), 48u);
  }
  for (int l = 1; l <= 6; ++l) EXPECT_DOUBLE_EQ(flat[l].energySaved, flat[0].energySaved);
  EXPECT_GT(flat[0].energySaved, 0.5);
}

TEST_F(Extraction, DeterministicAcrossRuns) {
  auto a = ajpg::extract_qe_curve(KnobKind::kLoop, corpus, ajpg::EncodeConfig{}, model, bounds);
  auto b = ajpg::extract_qe_curve(KnobKind::kLoop, corpus, ajpg::EncodeConfig{}, model, bounds);
  EXPECT_EQ(a.curve, b.curve);
}

TEST_F(Extraction, Errors) {
  std::vector<ajpg::RasterImage> none;
  EXPECT_THROW(ajpg::extract_qe_curve(KnobKind::kLoop, none, {}, model, bounds), ajpg::ConfigError);
  std::vector<double> unsorted{0.02, 0.01};
  EXPECT_THROW(ajpg::extract_qe_curve(KnobKind::kLoop, corpus, {}, model, unsorted), ajpg::ConfigError);
}

}  // namespace
