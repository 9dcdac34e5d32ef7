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

#include "approxjpeg/tuner.hpp"

#include <algorithm>
#include <utility>

#include <json.hpp>

#include "approxjpeg/error.hpp"

namespace ajpg {

void TunerInput::validate() const {
  loopCurve.validate();
  truncCurve.validate();
  if (!(bound >= 0.0)) throw ConfigError("quality bound must be non-negative");
}

double composed_degradation(const TunerInput& in, int i, int j) {
  return in.loopCurve.points[i].degradation + in.truncCurve.points[j].degradation;
}

double composed_energy(const TunerInput& in, int i, int j) {
  return in.loopCurve.points[i].relativeEnergy + in.truncCurve.points[j].relativeEnergy - 1.0;
}

namespace {

TunerResult at(const TunerInput& in, int i, int j) {
  return {in.loopCurve.points[i].level, in.truncCurve.points[j].level, composed_degradation(in, i, j),
          composed_energy(in, i, j)};
}

struct Step {
  double dq;
  double de;  // energy saved, >= 0
};

Step step(const QECurve& c, int k) {
  return {c.points[k + 1].degradation - c.points[k].degradation,
          c.points[k].relativeEnergy - c.points[k + 1].relativeEnergy};
}

// a.dq / a.de <= b.dq / b.de without dividing.
bool ratio_le(const Step& a, const Step& b) { return a.dq * b.de <= b.dq * a.de; }

}  // namespace

TunerResult tune(const TunerInput& in, std::vector<TunerResult>* trace) {
  in.validate();
  const int loopLevels = static_cast<int>(in.loopCurve.points.size());
  const int truncLevels = static_cast<int>(in.truncCurve.points.size());
  int i = 0;
  int j = 0;
  if (trace) trace->push_back(at(in, i, j));
  while (true) {
    bool loopOk = i + 1 < loopLevels && composed_degradation(in, i + 1, j) <= in.bound;
    bool truncOk = j + 1 < truncLevels && composed_degradation(in, i, j + 1) <= in.bound;
    if (!loopOk && !truncOk) break;
    bool preferTrunc;
    if (i + 1 < loopLevels && j + 1 < truncLevels) {
      preferTrunc = ratio_le(step(in.truncCurve, j), step(in.loopCurve, i));
    } else {
      preferTrunc = j + 1 < truncLevels;
    }
    if (preferTrunc ? truncOk : !loopOk) {
      ++j;
    } else {
      ++i;
    }
    if (trace) trace->push_back(at(in, i, j));
  }
  return at(in, i, j);
}

TunerResult exhaustive_oracle(const TunerInput& in) {
  in.validate();
  TunerResult best = at(in, 0, 0);
  bool found = false;
  for (int i = 0; i < static_cast<int>(in.loopCurve.points.size()); ++i) {
    for (int j = 0; j < static_cast<int>(in.truncCurve.points.size()); ++j) {
      if (composed_degradation(in, i, j) > in.bound) continue;
      double e = composed_energy(in, i, j);
      if (!found || e < best.predictedEnergy) {
        best = at(in, i, j);
        found = true;
      }
    }
  }
  return best;
}

bool composed_surface_convex(const TunerInput& in) {
  for (const QECurve* c : {&in.loopCurve, &in.truncCurve}) {
    for (std::size_t k = 0; k + 2 < c->points.size(); ++k) {
      if (!ratio_le(step(*c, static_cast<int>(k)), step(*c, static_cast<int>(k) + 1))) return false;
    }
  }
  struct Pt {
    double q, e;
  };
  std::vector<Pt> pts;
  for (int i = 0; i < static_cast<int>(in.loopCurve.points.size()); ++i) {
    for (int j = 0; j < static_cast<int>(in.truncCurve.points.size()); ++j) {
      pts.push_back({composed_degradation(in, i, j), composed_energy(in, i, j)});
    }
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.q != b.q ? a.q < b.q : a.e < b.e; });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.q == b.q && a.e == b.e; }),
            pts.end());
  // Lower hull, strict vertices only.
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      double cross = (b.q - a.q) * (p.e - a.e) - (b.e - a.e) * (p.q - a.q);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  // Pareto points: scanning by increasing q, each strictly lowers the best e.
  double bestE = 0.0;
  bool first = true;
  for (const Pt& p : pts) {
    if (!first && p.e >= bestE) continue;
    first = false;
    bestE = p.e;
    bool onHull = std::any_of(hull.begin(), hull.end(), [&](const Pt& h) { return h.q == p.q && h.e == p.e; });
    if (!onHull) return false;
  }
  return true;
}

std::string to_json(const TunerResult& r) {
  nlohmann::ordered_json j;
  j["i"] = r.i;
  j["j"] = r.j;
  j["predicted_quality"] = r.predictedQuality;
  j["predicted_energy"] = r.predictedEnergy;
  return j.dump(2) + "\n";
}

TunerResult parse_tuner_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tuner config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("tuner config: top level must be an object");
  auto level = [&](const char* key, int max) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      throw ParseError(std::string("tuner config: '") + key + "' must be an integer");
    }
    int v = j[key].get<int>();
    if (v < 0 || v > max) throw ParseError(std::string("tuner config: '") + key + "' out of range");
    return v;
  };
  TunerResult r;
  r.i = level("i", kMaxSkipLevel);
  r.j = level("j", kMaxTruncLevel);
  if (j.contains("predicted_quality") && j["predicted_quality"].is_number()) {
    r.predictedQuality = j["predicted_quality"].get<double>();
  }
  if (j.contains("predicted_energy") && j["predicted_energy"].is_number()) {
    r.predictedEnergy = j["predicted_energy"].get<double>();
  }
  return r;
}

}  // namespace ajpg
