/**
 * Copyright 2026 The PerceptForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <fstream>

#include "perceptforge/config.hpp"
#include "perceptforge/error.hpp"
#include "perceptforge/png_io.hpp"
#include "perceptforge/stats.hpp"
#include "support/scenes.hpp"

using namespace perceptforge;
namespace fs = std::filesystem;

namespace {

Json ReadJson(const fs::path &p) {
  std::ifstream in(p);
  return Json::parse(in);
}

// Three captures of a fixed scene: "a" covers 5x5 pixels, "b" 10x20, and an
// unlabeled 3x3 quad that must not reach the masks.
fs::path FixedDataset() {
  const fs::path root = testing_scenes::TempDir("stats_fixed");
  Scene base;
  base.camera = testing_scenes::SquareCamera(100);
  base.objects.push_back(testing_scenes::ScreenQuad(base.camera, 40.25, 40.25, 45.25, 45.25, 2.0, 0, "a"));
  base.objects.push_back(testing_scenes::ScreenQuad(base.camera, 60.5, 10.5, 70.5, 30.5, 3.0, 0, "b"));
  base.objects.push_back(testing_scenes::ScreenQuad(base.camera, 5.25, 80.25, 8.25, 83.25, 3.0, 0));
  auto labels = std::make_shared<const LabelConfig>(testing_scenes::AbcLabels());
  std::vector<std::shared_ptr<const Labeler>> labelers{MakeLabeler(LabelerKind::kBBox2D, labels),
                                                       MakeLabeler(LabelerKind::kInstanceSegmentation, labels)};
  DatasetWriter w(root);
  RunScenario({1, 3, 1}, {}, SceneBuilder(base), labelers, w);
  return root;
}

}  // namespace

TEST_CASE("relative size") {
  CHECK(std::fabs(RelativeSize(25, 10000) - 0.05) <= 1e-12);
  CHECK(RelativeSize(0, 10) == 0.0);
  CHECK(RelativeSize(10, 10) == 1.0);
  CHECK_THROWS_AS(RelativeSize(1, 0), Error);
}

TEST_CASE("empty dataset") {
  const fs::path root = testing_scenes::TempDir("stats_empty");
  DatasetWriter(root).Finalize();
  const DatasetStats s = ComputeStats(root);
  CHECK(s.captures == 0);
  CHECK(s.objects == 0);
  CHECK(s.perLabelTotals.empty());
  CHECK(s.sizes.empty());
  const Json j = s.ToJson();
  CHECK(j["relative_size"]["count"] == 0);
  CHECK(j["relative_size"]["mean"].is_null());
  CHECK(j["relative_size"]["histogram"]["counts"].empty());
  CHECK(j["relative_size"]["histogram"]["bin_edges"].size() == kRelativeSizeBins + 1);
}

TEST_CASE("fixed scene: counts and sizes") {
  const fs::path root = FixedDataset();
  const DatasetStats s = ComputeStats(root);
  CHECK(s.captures == 3);
  CHECK(s.objects == 6);
  CHECK(s.perLabelTotals == std::map<std::string, std::uint64_t>{{"a", 3}, {"b", 3}});
  CHECK(s.objectsPerCapture == std::map<std::uint64_t, std::uint64_t>{{2, 3}});
  REQUIRE(s.sizes.size() == 6);
  for (const auto &o : s.sizes) {
    CHECK(o.imagePixels == 10000);
    if (o.label == "a") {
      CHECK(o.instanceId == 1);
      CHECK(o.pixels == 25);
      CHECK(std::fabs(o.relativeSize - 0.05) <= 1e-6);
    } else {
      CHECK(o.label == "b");
      CHECK(o.pixels == 200);
      CHECK(std::fabs(o.relativeSize - std::sqrt(0.02)) <= 1e-12);
    }
  }

  const Json j = s.ToJson(true);
  CHECK(j["objects_detail"].size() == 6);
  CHECK(j["relative_size"]["min"].get<double>() == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(j["relative_size"]["max"].get<double>() == doctest::Approx(std::sqrt(0.02)).epsilon(1e-9));
  std::uint64_t binned = 0;
  for (const auto &c : j["relative_size"]["histogram"]["counts"]) binned += c.get<std::uint64_t>();
  CHECK(binned == 6);
  CHECK_FALSE(s.ToJson(false).contains("objects_detail"));
}

TEST_CASE("totals match a recount of the raw capture files") {
  Json config = ReadJson(fs::path(PERCEPTFORGE_SOURCE_DIR) / "configs/synthdet.json");
  const Scenario scenario = BuildScenario(config, {5, 6, std::make_pair(48, 48)});
  const fs::path root = testing_scenes::TempDir("stats_recount");
  {
    DatasetWriter w(root);
    RunScenario(scenario.constants, scenario.randomizers, scenario.env, scenario.labelers, w);
  }
  const DatasetStats s = ComputeStats(root);

  std::string boxDef, maskDef;
  const Json defs = ReadJson(root / "annotation_definitions.json");
  for (const auto &d : defs["annotation_definitions"]) {
    if (d["name"] == "bounding box") boxDef = d["id"];
    if (d["name"] == "instance segmentation") maskDef = d["id"];
  }
  std::map<std::string, std::uint64_t> totals;
  std::uint64_t captures = 0, objects = 0, maskPixels = 0;
  for (const auto &entry : fs::directory_iterator(root)) {
    const std::string name = entry.path().filename().string();
    if (!name.starts_with("captures_")) continue;
    const Json shard = ReadJson(entry.path());
    for (const auto &c : shard["captures"]) {
      ++captures;
      for (const auto &a : c["annotations"]) {
        if (a["annotation_definition"] == boxDef) {
          for (const auto &v : a["values"]) {
            ++totals[v["label_name"].get<std::string>()];
            ++objects;
          }
        } else if (a["annotation_definition"] == maskDef) {
          const Image8 img = ReadPng(root / a["filename"].get<std::string>());
          for (std::size_t p = 0; p < img.rgb.size(); p += 3) {
            maskPixels += (img.rgb[p] | img.rgb[p + 1] | img.rgb[p + 2]) != 0;
          }
        }
      }
    }
  }
  CHECK(captures == 6);
  CHECK(objects > 0);
  CHECK(s.captures == captures);
  CHECK(s.objects == objects);
  CHECK(s.perLabelTotals == totals);
  std::uint64_t summed = 0;
  for (const auto &o : s.sizes) summed += o.pixels;
  CHECK(summed == maskPixels);
}

TEST_CASE("stats of a missing directory") {
  CHECK_THROWS_AS(ComputeStats(testing_scenes::TempDir("stats_missing") / "nope"), Error);
}
