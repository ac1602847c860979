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

#include "perceptforge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "perceptforge/error.hpp"
#include "perceptforge/labelers.hpp"
#include "perceptforge/png_io.hpp"

namespace perceptforge {

namespace {

Json ReadJsonFile(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kIoFailure, path.filename().string() + ": " + e.what());
  }
}

std::map<std::string, std::string> DefinitionNames(const std::filesystem::path &root) {
  std::map<std::string, std::string> names;
  const Json j = ReadJsonFile(root / "annotation_definitions.json");
  for (const auto &d : j.at("annotation_definitions")) names[d.at("id").get<std::string>()] = d.at("name");
  return names;
}

}  // namespace

double RelativeSize(std::uint64_t pixels, std::uint64_t imagePixels) {
  if (imagePixels == 0) throw Error(ErrorCode::kInvalidArgument, "image has no pixels");
  return std::sqrt(static_cast<double>(pixels) / static_cast<double>(imagePixels));
}

DatasetStats ComputeStats(const std::filesystem::path &root) {
  if (!std::filesystem::is_directory(root)) throw Error(ErrorCode::kIoFailure, root.string() + " is not a directory");
  const auto names = DefinitionNames(root);
  DatasetStats stats;
  for (const auto &shard : ListShards(root, "captures")) {
    const Json j = ReadJsonFile(root / shard);
    for (const auto &cj : j.at("captures")) {
      const CaptureRecord capture = CaptureFromJson(cj);
      stats.captures += 1;
      std::unordered_map<std::uint32_t, std::string> labelOf;
      std::uint64_t count = 0;
      const AnnotationRecord *mask = nullptr;
      bool haveBoxes = false;
      for (const auto &a : capture.annotations) {
        auto it = names.find(a.annotationDefinition);
        if (it == names.end()) continue;
        if (it->second == kBBox2DName && a.values && !haveBoxes) {
          haveBoxes = true;
          for (const auto &box : *a.values) {
            const std::string label = box.at("label_name").get<std::string>();
            labelOf[box.at("instance_id").get<std::uint32_t>()] = label;
            stats.perLabelTotals[label] += 1;
            ++count;
          }
        } else if (it->second == kInstanceSegName && a.filename && !mask) {
          mask = &a;
        }
      }
      stats.objects += count;
      stats.objectsPerCapture[count] += 1;
      if (!mask) continue;

      const Image8 image = ReadPng(root / *mask->filename);
      std::map<std::uint32_t, std::uint64_t> pixels;
      for (std::size_t p = 0; p + 2 < image.rgb.size(); p += 3) {
        const Rgb8 c{image.rgb[p], image.rgb[p + 1], image.rgb[p + 2]};
        if (c == Rgb8{}) continue;
        ++pixels[InstanceIdFromColor(c)];
      }
      const std::uint64_t total = static_cast<std::uint64_t>(image.width) * image.height;
      for (const auto &[id, n] : pixels) {
        auto label = labelOf.find(id);
        stats.sizes.push_back({capture.id, id, label == labelOf.end() ? std::string() : label->second, n, total,
                               RelativeSize(n, total)});
      }
    }
  }
  return stats;
}

Json DatasetStats::ToJson(bool perObject) const {
  Json perLabel = Json::object();
  for (const auto &[label, n] : perLabelTotals) perLabel[label] = n;
  Json perCapture = Json::object();
  for (const auto &[objects, n] : objectsPerCapture) perCapture[std::to_string(objects)] = n;

  std::vector<std::uint64_t> bins(kRelativeSizeBins, 0);
  double lo = 0, hi = 0, sum = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double r = sizes[i].relativeSize;
    lo = i == 0 ? r : std::min(lo, r);
    hi = i == 0 ? r : std::max(hi, r);
    sum += r;
    bins[std::min(kRelativeSizeBins - 1, static_cast<int>(r * kRelativeSizeBins))] += 1;
  }
  Json edges = Json::array();
  for (int b = 0; b <= kRelativeSizeBins; ++b) edges.push_back(static_cast<double>(b) / kRelativeSizeBins);

  Json size = {{"count", sizes.size()}};
  if (sizes.empty()) {
    size["min"] = nullptr;
    size["max"] = nullptr;
    size["mean"] = nullptr;
    size["histogram"] = {{"bin_edges", edges}, {"counts", Json::array()}};
  } else {
    size["min"] = lo;
    size["max"] = hi;
    size["mean"] = sum / static_cast<double>(sizes.size());
    size["histogram"] = {{"bin_edges", edges}, {"counts", bins}};
  }

  Json out = {{"captures", captures},
              {"objects", objects},
              {"per_label_totals", perLabel},
              {"objects_per_capture", perCapture},
              {"relative_size", size}};
  if (perObject) {
    Json list = Json::array();
    for (const auto &s : sizes) {
      list.push_back({{"capture_id", s.captureId},
                      {"instance_id", s.instanceId},
                      {"label_name", s.label},
                      {"pixels", s.pixels},
                      {"image_pixels", s.imagePixels},
                      {"relative_size", s.relativeSize}});
    }
    out["objects_detail"] = list;
  }
  return out;
}

}  // namespace perceptforge
