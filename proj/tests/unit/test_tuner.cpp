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
#include "approxjpeg/tuner.hpp"
#include "oracles.hpp"

namespace {

using ajpg::QECurve;
using ajpg::TunerInput;
using ajpg::TunerResult;

QECurve curve_of(ajpg::KnobKind kind, std::vector<double> deg, std::vector<double> energy) {
  QECurve c;
  c.kind = kind;
  for (std::size_t i = 0; i < deg.size(); ++i) c.points.push_back({static_cast<int>(i), deg[i], energy[i]});
  return c;
}

TEST(Tune, ZeroBoundStaysAtBaseline) {
  TunerInput in = oracle::reference_curve_pair(0.0);
  TunerResult r = ajpg::tune(in);
  EXPECT_EQ(r, (TunerResult{0, 0, 0.0, 1.0}));
  EXPECT_EQ(ajpg::exhaustive_oracle(in), r);
}

TEST(Tune, LooseBoundTakesDeepestLevels) {
  TunerInput in = oracle::reference_curve_pair(1.0);
  TunerResult r = ajpg::tune(in);
  EXPECT_EQ(r.i, 6);
  EXPECT_EQ(r.j, 4);
  EXPECT_DOUBLE_EQ(r.predictedEnergy, 0.67 + 0.64 - 1.0);
}

TEST(Tune, ReferenceCurvesAtTwoPercent) {
  TunerInput in = oracle::reference_curve_pair(0.02);
  std::vector<TunerResult> trace;
  TunerResult r = ajpg::tune(in, &trace);
  EXPECT_EQ(r.i, 3);
  EXPECT_EQ(r.j, 1);
  EXPECT_NEAR(r.predictedQuality, 0.019, 1e-12);
  EXPECT_NEAR(r.predictedEnergy, 0.64, 1e-12);
  EXPECT_LE(r.predictedEnergy, 0.80);
  EXPECT_EQ(r, ajpg::exhaustive_oracle(in));
  // (0,0) (1,0) (2,0) (2,1) (3,1)
  ASSERT_EQ(trace.size(), 5u);
  EXPECT_EQ(trace[3].i, 2);
  EXPECT_EQ(trace[3].j, 1);
}

TEST(Tune, DominantKnobOnly) {
  TunerInput in;
  in.loopCurve = curve_of(ajpg::KnobKind::kLoop, {0, .01, .02, .03, .04, .05, .06}, {1, .95, .9, .85, .8, .75, .7});
  in.truncCurve = curve_of(ajpg::KnobKind::kTrunc, {0, .001, .002, .003, .004}, {1, .9, .8, .7, .6});
  in.bound = 0.0035;
  TunerResult r = ajpg::tune(in);
  EXPECT_EQ(r.i, 0);
  EXPECT_EQ(r.j, 3);
  EXPECT_EQ(r, ajpg::exhaustive_oracle(in));
}

TEST(Tune, TieGoesToTruncation) {
  TunerInput in;
  in.loopCurve = curve_of(ajpg::KnobKind::kLoop, {0, .01}, {1, .9});
  in.truncCurve = curve_of(ajpg::KnobKind::kTrunc, {0, .01}, {1, .9});
  in.bound = 0.01;
  TunerResult r = ajpg::tune(in);
  EXPECT_EQ(r.i, 0);
  EXPECT_EQ(r.j, 1);
}

TEST(Tune, InfeasiblePreferredKnobAdvancesTheOther) {
  TunerInput in;
  in.loopCurve = curve_of(ajpg::KnobKind::kLoop, {0, .004, .008}, {1, .97, .94});
  in.truncCurve = curve_of(ajpg::KnobKind::kTrunc, {0, .02}, {1, .5});
  in.bound = 0.01;
  TunerResult r = ajpg::tune(in);
  EXPECT_EQ(r.i, 2);
  EXPECT_EQ(r.j, 0);
}

TEST(Tune, OnePointCurves) {
  TunerInput in;
  in.loopCurve = curve_of(ajpg::KnobKind::kLoop, {0}, {1});
  in.truncCurve = curve_of(ajpg::KnobKind::kTrunc, {0}, {1});
  in.bound = 0.5;
  EXPECT_EQ(ajpg::tune(in), (TunerResult{0, 0, 0.0, 1.0}));
  EXPECT_EQ(ajpg::exhaustive_oracle(in), (TunerResult{0, 0, 0.0, 1.0}));
}

TEST(Tune, RejectsInvalidInput) {
  TunerInput in = oracle::reference_curve_pair(-0.1);
  EXPECT_THROW(ajpg::tune(in), ajpg::ConfigError);
  in.bound = 0.1;
  in.loopCurve.points[2].relativeEnergy = 2.0;
  EXPECT_THROW(ajpg::tune(in), ajpg::ConfigError);
  EXPECT_THROW(ajpg::exhaustive_oracle(in), ajpg::ConfigError);
}

TEST(Oracle, MatchesIndependentBruteForce) {
  std::mt19937 rng(1);
  for (int t = 0; t < 2000; ++t) {
    TunerInput in = oracle::random_curve_pair(rng);
    TunerResult got = ajpg::exhaustive_oracle(in);
    TunerResult want = oracle::brute_force_tune(in);
    ASSERT_EQ(got.i, want.i);
    ASSERT_EQ(got.j, want.j);
  }
}

TEST(Tune, RandomizedProperties) {
  std::mt19937 rng(2);
  int convexCount = 0;
  for (int t = 0; t < 1000; ++t) {
    TunerInput in = oracle::random_curve_pair(rng);
    std::vector<TunerResult> trace;
    TunerResult r = ajpg::tune(in, &trace);
    TunerResult best = ajpg::exhaustive_oracle(in);
    ASSERT_LE(r.predictedQuality, in.bound) << t;
    ASSERT_LE(best.predictedEnergy, r.predictedEnergy) << t;
    for (std::size_t k = 1; k < trace.size(); ++k) {
      ASSERT_LE(trace[k].predictedEnergy, trace[k - 1].predictedEnergy) << t;
      ASSERT_LE(trace[k].predictedQuality, in.bound) << t;
    }
    if (ajpg::composed_surface_convex(in)) {
      ++convexCount;
      ASSERT_EQ(r, best) << t;
    }
  }
  EXPECT_GT(convexCount, 50);
}

TEST(Convexity, DetectsNonConvexCurve) {
  TunerInput in;
  // second step saves more per unit degradation than the first
  in.loopCurve = curve_of(ajpg::KnobKind::kLoop, {0, .01, .02}, {1, .99, .5});
  in.truncCurve = curve_of(ajpg::KnobKind::kTrunc, {0, .01}, {1, .9});
  EXPECT_FALSE(ajpg::composed_surface_convex(in));
  in.loopCurve = curve_of(ajpg::KnobKind::kLoop, {0, .01, .02}, {1, .5, .49});
  EXPECT_TRUE(ajpg::composed_surface_convex(in));
}

TEST(Composition, Additive) {
  TunerInput in = oracle::reference_curve_pair(0.02);
  EXPECT_DOUBLE_EQ(ajpg::composed_degradation(in, 2, 3), 0.005 + 0.047);
  EXPECT_DOUBLE_EQ(ajpg::composed_energy(in, 2, 3), 0.82 + 0.70 - 1.0);
}

TEST(TunerJson, RoundTripAndErrors) {
  TunerResult r{3, 1, 0.019, 0.64};
  std::string text = ajpg::to_json(r);
  EXPECT_NE(text.find("\"predicted_quality\""), std::string::npos);
  EXPECT_EQ(ajpg::parse_tuner_json(text), r);
  EXPECT_EQ(ajpg::parse_tuner_json(R"({"i": 2, "j": 0})").i, 2);
  for (const char* bad : {"", "[]", R"({"i": 1})", R"({"i": 7, "j": 0})", R"({"i": 1, "j": 5})",
                          R"({"i": 1.5, "j": 0})", R"({"i": "1", "j": 0})", R"({"i": -1, "j": 0})"}) {
    EXPECT_THROW(ajpg::parse_tuner_json(bad), ajpg::ParseError) << bad;
  }
}

}  // namespace
