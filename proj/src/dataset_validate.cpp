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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "perceptforge/dataset.hpp"
#include "perceptforge/error.hpp"
#include "perceptforge/labelers.hpp"
#include "perceptforge/png_io.hpp"

namespace perceptforge {

namespace fs = std::filesystem;

namespace {

struct Checker {
  fs::path root;
  ValidationReport report;

  void Add(ViolationKind kind, const std::string &file, const std::string &detail) {
    report.violations.push_back({kind, file, detail});
  }

  std::optional<Json> ParseFile(const fs::path &rel) {
    const fs::path path = root / rel;
    if (!fs::exists(path)) {
      Add(ViolationKind::kMissingFile, rel.generic_string(), "file not found");
      return std::nullopt;
    }
    std::ifstream in(path, std::ios::binary);
    try {
      return Json::parse(in);
    } catch (const Json::parse_error &e) {
      Add(ViolationKind::kParseError, rel.generic_string(), e.what());
      return std::nullopt;
    }
  }
};

std::uint32_t PackColor(Rgb8 c) { return (static_cast<std::uint32_t>(c.r) << 16) | (c.g << 8) | c.b; }

}  // namespace

std::string_view ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kParseError: return "parse_error";
    case ViolationKind::kSchemaError: return "schema_error";
    case ViolationKind::kDuplicateId: return "duplicate_id";
    case ViolationKind::kDanglingReference: return "dangling_reference";
    case ViolationKind::kMissingFile: return "missing_file";
    case ViolationKind::kSegmentationMismatch: return "segmentation_mismatch";
  }
  return "unknown";
}

std::size_t ValidationReport::Count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation &v) { return v.kind == kind; }));
}

Json ValidationReport::ToJson() const {
  Json list = Json::array();
  for (const auto &v : violations) list.push_back({{"kind", ToString(v.kind)}, {"file", v.file}, {"detail", v.detail}});
  return {{"valid", ok()},
          {"captures", captures},
          {"annotations", annotations},
          {"metrics", metrics},
          {"violation_count", violations.size()},
          {"violations", list}};
}

std::vector<fs::path> ListShards(const fs::path &root, std::string_view prefix) {
  const std::regex pattern(std::string(prefix) + "_([0-9]+)\\.json");
  std::vector<std::pair<long, fs::path>> found;
  std::error_code ec;
  for (const auto &entry : fs::directory_iterator(root, ec)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && std::regex_match(name, m, pattern)) found.emplace_back(std::stol(m[1]), name);
  }
  std::sort(found.begin(), found.end());
  std::vector<fs::path> out;
  for (auto &[idx, name] : found) out.push_back(name);
  return out;
}

ValidationReport ValidateDataset(const fs::path &root, bool decodeImages) {
  Checker ck{root, {}};

  std::map<std::string, AnnotationDefinition> annDefs;
  if (auto j = ck.ParseFile("annotation_definitions.json")) {
    try {
      for (const auto &d : j->at("annotation_definitions")) {
        AnnotationDefinition def = AnnotationDefinitionFromJson(d);
        if (!annDefs.emplace(def.id, def).second) {
          ck.Add(ViolationKind::kDuplicateId, "annotation_definitions.json", "annotation definition " + def.id);
        }
      }
    } catch (const std::exception &e) {
      ck.Add(ViolationKind::kSchemaError, "annotation_definitions.json", e.what());
    }
  }
  std::set<std::string> metricDefs;
  if (auto j = ck.ParseFile("metric_definitions.json")) {
    try {
      for (const auto &d : j->at("metric_definitions")) {
        MetricDefinition def = MetricDefinitionFromJson(d);
        if (!metricDefs.insert(def.id).second) {
          ck.Add(ViolationKind::kDuplicateId, "metric_definitions.json", "metric definition " + def.id);
        }
      }
    } catch (const std::exception &e) {
      ck.Add(ViolationKind::kSchemaError, "metric_definitions.json", e.what());
    }
  }

  std::unordered_set<std::string> captureIds;
  std::unordered_set<std::string> annotationIds;
  struct PendingImage {
    std::string shard;
    std::string filename;
    std::string definitionName;
    const AnnotationDefinition *definition;
    std::optional<std::set<std::uint32_t>> expectedInstances;
  };
  std::vector<PendingImage> images;

  const auto captureShards = ListShards(root, "captures");
  if (captureShards.empty()) ck.Add(ViolationKind::kMissingFile, "captures_000.json", "no capture shards found");
  for (const auto &shard : captureShards) {
    const std::string shardName = shard.generic_string();
    auto j = ck.ParseFile(shard);
    if (!j) continue;
    if (!j->contains("captures") || !j->at("captures").is_array()) {
      ck.Add(ViolationKind::kSchemaError, shardName, "missing captures array");
      continue;
    }
    for (const auto &cj : j->at("captures")) {
      CaptureRecord capture;
      try {
        capture = CaptureFromJson(cj);
      } catch (const std::exception &e) {
        ck.Add(ViolationKind::kSchemaError, shardName, e.what());
        continue;
      }
      ck.report.captures += 1;
      if (!captureIds.insert(capture.id).second) {
        ck.Add(ViolationKind::kDuplicateId, shardName, "capture id " + capture.id);
      }
      if (!fs::exists(root / capture.filename)) {
        ck.Add(ViolationKind::kMissingFile, capture.filename, "capture " + capture.id + " image missing");
      }

      std::optional<std::set<std::uint32_t>> boxInstances;
      for (const auto &a : capture.annotations) {
        auto it = annDefs.find(a.annotationDefinition);
        if (it != annDefs.end() && it->second.name == kBBox2DName && a.values && !boxInstances) {
          boxInstances.emplace();
          for (const auto &box : *a.values) boxInstances->insert(box.value("instance_id", 0u));
        }
      }

      for (const auto &a : capture.annotations) {
        ck.report.annotations += 1;
        if (!annotationIds.insert(a.id).second) {
          ck.Add(ViolationKind::kDuplicateId, shardName, "annotation id " + a.id);
        }
        auto it = annDefs.find(a.annotationDefinition);
        if (it == annDefs.end()) {
          ck.Add(ViolationKind::kDanglingReference, shardName,
                 "annotation " + a.id + " references unknown definition " + a.annotationDefinition);
        }
        if (!a.filename) continue;
        if (!fs::exists(root / *a.filename)) {
          ck.Add(ViolationKind::kMissingFile, *a.filename, "annotation " + a.id + " image missing");
          continue;
        }
        if (it != annDefs.end()) {
          images.push_back({shardName, *a.filename, it->second.name, &it->second,
                            it->second.name == kInstanceSegName ? boxInstances : std::nullopt});
        }
      }
    }
  }

  for (const auto &shard : ListShards(root, "metrics")) {
    const std::string shardName = shard.generic_string();
    auto j = ck.ParseFile(shard);
    if (!j) continue;
    if (!j->contains("metrics") || !j->at("metrics").is_array()) {
      ck.Add(ViolationKind::kSchemaError, shardName, "missing metrics array");
      continue;
    }
    for (const auto &mj : j->at("metrics")) {
      MetricRecord metric;
      try {
        metric = MetricFromJson(mj);
      } catch (const std::exception &e) {
        ck.Add(ViolationKind::kSchemaError, shardName, e.what());
        continue;
      }
      ck.report.metrics += 1;
      if (!metricDefs.count(metric.metricDefinition)) {
        ck.Add(ViolationKind::kDanglingReference, shardName, "unknown metric definition " + metric.metricDefinition);
      }
      if (metric.captureId && !captureIds.count(*metric.captureId)) {
        ck.Add(ViolationKind::kDanglingReference, shardName, "metric references unknown capture " + *metric.captureId);
      }
      if (metric.annotationId && !annotationIds.count(*metric.annotationId)) {
        ck.Add(ViolationKind::kDanglingReference, shardName,
               "metric references unknown annotation " + *metric.annotationId);
      }
    }
  }

  if (!decodeImages) return ck.report;

  for (const auto &img : images) {
    Image8 decoded;
    try {
      decoded = ReadPng(root / img.filename);
    } catch (const Error &e) {
      ck.Add(ViolationKind::kParseError, img.filename, e.what());
      continue;
    }
    std::unordered_set<std::uint32_t> colors;
    for (std::size_t p = 0; p + 2 < decoded.rgb.size(); p += 3) {
      colors.insert(PackColor({decoded.rgb[p], decoded.rgb[p + 1], decoded.rgb[p + 2]}));
    }
    colors.erase(0);
    if (img.definitionName == kSemanticSegName) {
      std::unordered_set<std::uint32_t> allowed;
      for (const auto &entry : img.definition->spec) {
        const auto &px = entry.at("pixel_value");
        allowed.insert(PackColor({px[0].get<std::uint8_t>(), px[1].get<std::uint8_t>(), px[2].get<std::uint8_t>()}));
      }
      for (auto c : colors) {
        if (!allowed.count(c)) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "#%06x", c);
          ck.Add(ViolationKind::kSegmentationMismatch, img.filename, std::string("colour ") + buf + " not in spec");
          break;
        }
      }
    } else if (img.definitionName == kInstanceSegName && img.expectedInstances) {
      std::set<std::uint32_t> ids;
      for (auto c : colors) {
        ids.insert(InstanceIdFromColor({static_cast<std::uint8_t>(c >> 16), static_cast<std::uint8_t>(c >> 8),
                                        static_cast<std::uint8_t>(c)}));
      }
      if (ids != *img.expectedInstances) {
        ck.Add(ViolationKind::kSegmentationMismatch, img.filename,
               "instance colours do not match the capture's 2D boxes");
      }
    }
  }
  return ck.report;
}

std::string HashDirectory(const fs::path &root) {
  std::vector<std::string> files;
  for (const auto &entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), root).generic_string());
  }
  std::sort(files.begin(), files.end());
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](const std::uint8_t *data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= data[i];
      h *= 0x100000001b3ull;
    }
  };
  for (const auto &rel : files) {
    feed(reinterpret_cast<const std::uint8_t *>(rel.data()), rel.size() + 1);  // include the terminator
    const auto bytes = ReadFileBytes(root / rel);
    const std::uint64_t size = bytes.size();
    feed(reinterpret_cast<const std::uint8_t *>(&size), sizeof(size));
    feed(bytes.data(), bytes.size());
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace perceptforge
