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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "perceptforge/math.hpp"

namespace perceptforge {

// Dataset layout under the root directory:
//   captures_NNN.json, metrics_NNN.json      (150 captures per shard)
//   annotation_definitions.json, metric_definitions.json
//   RGB/*.png, Segmentation/*.png
inline constexpr std::size_t kCapturesPerShard = 150;
inline constexpr double kFramePeriodSeconds = 1.0 / 60.0;
inline constexpr std::string_view kSchemaVersion = "0.1.0";
inline constexpr std::string_view kRgbDir = "RGB";
inline constexpr std::string_view kSegmentationDir = "Segmentation";

/// Keys are sorted (std::map), numbers printed as shortest round-trip decimals.
using Json = nlohmann::json;

/// Deterministic UUID-formatted identifier (version nibble 5) derived from a
/// 128-bit hash of the fields.
std::string MakeId(std::uint64_t seed, std::uint64_t iteration, std::uint64_t step, std::string_view kind,
                   std::uint64_t ordinal);

struct SensorRecord {
  std::string id = "camera";
  std::string modality = "camera";
  Vec3 translation;
  Quat rotation;
  Mat3 intrinsics;

  bool operator==(const SensorRecord &) const = default;
};

struct AnnotationRecord {
  std::string id;
  std::string annotationDefinition;
  std::optional<Json> values;        // inline boxes / keypoints
  std::optional<std::string> filename;  // segmentation PNG, relative to the root

  bool operator==(const AnnotationRecord &) const = default;
};

struct CaptureRecord {
  std::string id;
  std::string sequenceId;
  std::uint64_t iteration = 0;
  std::uint32_t step = 0;
  double timestamp = 0.0;
  SensorRecord sensor;
  std::string filename;  // RGB PNG, relative to the root
  std::vector<AnnotationRecord> annotations;

  bool operator==(const CaptureRecord &) const = default;
};

struct AnnotationDefinition {
  std::string id;
  std::string name;
  std::string description;
  std::string format;  // "json" or "PNG"
  Json spec = Json::array();

  bool operator==(const AnnotationDefinition &) const = default;
};

struct MetricDefinition {
  std::string id;
  std::string name;
  std::string description;

  bool operator==(const MetricDefinition &) const = default;
};

struct MetricRecord {
  std::optional<std::string> captureId;
  std::optional<std::string> annotationId;
  std::string metricDefinition;
  Json values;

  bool operator==(const MetricRecord &) const = default;
};

Json ToJson(const CaptureRecord &record);
Json ToJson(const AnnotationRecord &record);
Json ToJson(const AnnotationDefinition &def);
Json ToJson(const MetricDefinition &def);
Json ToJson(const MetricRecord &record);

/// Inverse of ToJson; throws kValidationFailure on missing or mistyped fields.
CaptureRecord CaptureFromJson(const Json &j);
AnnotationRecord AnnotationFromJson(const Json &j);
AnnotationDefinition AnnotationDefinitionFromJson(const Json &j);
MetricDefinition MetricDefinitionFromJson(const Json &j);
MetricRecord MetricFromJson(const Json &j);

/// Canonical bytes: sorted keys, compact separators, shortest float form.
std::string CanonicalDump(const Json &j);

struct ImageFile {
  std::string relativePath;
  std::vector<std::uint8_t> pngBytes;
};

struct DatasetSummary {
  std::uint64_t captures = 0;
  std::uint64_t annotations = 0;
  std::uint64_t metrics = 0;

  bool operator==(const DatasetSummary &) const = default;
};

/// Appends captures, metrics and images under `root`. Every public method
/// takes an internal lock, so producers on several threads may call in;
/// record order on disk is the call order, which the scenario runner keeps
/// at (iteration, step).
class DatasetWriter {
 public:
  explicit DatasetWriter(std::filesystem::path root, std::size_t capturesPerShard = kCapturesPerShard);
  DatasetWriter(const DatasetWriter &) = delete;
  DatasetWriter &operator=(const DatasetWriter &) = delete;

  void RegisterAnnotationDefinition(const AnnotationDefinition &def);
  void RegisterMetricDefinition(const MetricDefinition &def);

  /// Writes the images, then appends the record to the open captures shard.
  /// Throws kDuplicateId, kUnknownDefinition or kIoFailure.
  void WriteCapture(const CaptureRecord &record, std::span<const ImageFile> images);

  /// Throws kDanglingReference when the referenced capture, annotation or
  /// metric definition has not been written.
  void WriteMetric(const MetricRecord &record);

  /// Writes definition files, flushes shards and re-checks every reference.
  /// Throws kValidationFailure listing all dangling references.
  DatasetSummary Finalize();

  const std::filesystem::path &root() const { return root_; }

 private:
  void FlushShardLocked();

  std::filesystem::path root_;
  std::size_t capturesPerShard_;
  std::mutex mu_;
  bool finalized_ = false;
  std::vector<AnnotationDefinition> annotationDefs_;
  std::vector<MetricDefinition> metricDefs_;
  std::set<std::string> annotationDefIds_;
  std::set<std::string> metricDefIds_;
  std::set<std::string> captureIds_;
  std::set<std::string> annotationIds_;
  std::vector<CaptureRecord> pendingCaptures_;
  std::vector<MetricRecord> pendingMetrics_;
  std::size_t shardIndex_ = 0;
  DatasetSummary summary_;
};

enum class ViolationKind {
  kParseError,
  kSchemaError,
  kDuplicateId,
  kDanglingReference,
  kMissingFile,
  kSegmentationMismatch,
};

std::string_view ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string file;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::uint64_t captures = 0;
  std::uint64_t annotations = 0;
  std::uint64_t metrics = 0;

  bool ok() const { return violations.empty(); }
  std::size_t Count(ViolationKind kind) const;
  Json ToJson() const;
};

/// Re-parses every shard and checks id uniqueness, references, files on
/// disk and, when `decodeImages` is set, segmentation colours against their
/// definitions.
ValidationReport ValidateDataset(const std::filesystem::path &root, bool decodeImages = true);

/// Shard file names in index order, e.g. captures_000.json, captures_001.json.
std::vector<std::filesystem::path> ListShards(const std::filesystem::path &root, std::string_view prefix);

/// FNV-1a 64 over sorted relative paths and file bytes, as 16 hex digits.
std::string HashDirectory(const std::filesystem::path &root);

/// Names of the built-in annotation definitions.
inline constexpr std::string_view kBBox2DName = "bounding box";
inline constexpr std::string_view kBBox3DName = "bounding box 3D";
inline constexpr std::string_view kInstanceSegName = "instance segmentation";
inline constexpr std::string_view kSemanticSegName = "semantic segmentation";
inline constexpr std::string_view kKeypointsName = "keypoints";

}  // namespace perceptforge
