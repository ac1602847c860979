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

#include <cstdio>
#include <fstream>

#include "perceptforge/dataset.hpp"
#include "perceptforge/error.hpp"
#include "perceptforge/png_io.hpp"

namespace perceptforge {

namespace {

constexpr std::uint64_t Mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Json Vec3Json(const Vec3 &v) { return Json::array({v.x, v.y, v.z}); }
Json QuatJson(const Quat &q) { return Json::array({q.x, q.y, q.z, q.w}); }
Json Mat3Json(const Mat3 &m) {
  return Json::array({Json::array({m(0, 0), m(0, 1), m(0, 2)}), Json::array({m(1, 0), m(1, 1), m(1, 2)}),
                      Json::array({m(2, 0), m(2, 1), m(2, 2)})});
}

[[noreturn]] void SchemaFail(const std::string &what) { throw Error(ErrorCode::kValidationFailure, what); }

const Json &Field(const Json &j, const char *name) {
  if (!j.is_object() || !j.contains(name)) SchemaFail(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string StringField(const Json &j, const char *name) {
  const Json &v = Field(j, name);
  if (!v.is_string()) SchemaFail(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

template <class T>
T NumberField(const Json &j, const char *name) {
  const Json &v = Field(j, name);
  if (!v.is_number()) SchemaFail(std::string("field '") + name + "' must be a number");
  return v.get<T>();
}

Vec3 Vec3From(const Json &j) {
  if (!j.is_array() || j.size() != 3) SchemaFail("expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Quat QuatFrom(const Json &j) {
  if (!j.is_array() || j.size() != 4) SchemaFail("expected a quaternion [x, y, z, w]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Mat3 Mat3From(const Json &j) {
  if (!j.is_array() || j.size() != 3) SchemaFail("expected a 3x3 matrix");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    if (!j[r].is_array() || j[r].size() != 3) SchemaFail("expected a 3x3 matrix");
    for (int c = 0; c < 3; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

std::string ShardName(std::string_view prefix, std::size_t index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%03zu.json", std::string(prefix).c_str(), index);
  return buf;
}

void WriteJsonFile(const std::filesystem::path &path, const Json &j) {
  const std::string text = CanonicalDump(j);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << text << '\n';
  if (!out) throw Error(ErrorCode::kIoFailure, "short write to " + path.string());
}

}  // namespace

std::string MakeId(std::uint64_t seed, std::uint64_t iteration, std::uint64_t step, std::string_view kind,
                   std::uint64_t ordinal) {
  std::uint64_t hi = Mix(seed);
  hi = Mix(hi ^ iteration);
  hi = Mix(hi ^ step);
  hi = Mix(hi ^ Fnv1a(kind));
  hi = Mix(hi ^ ordinal);
  std::uint64_t lo = Mix(hi ^ 0x5851F42D4C957F2Dull);
  hi = (hi & 0xFFFFFFFFFFFF0FFFull) | 0x0000000000005000ull;  // version 5
  lo = (lo & 0x3FFFFFFFFFFFFFFFull) | 0x8000000000000000ull;  // RFC 4122 variant
  char buf[37];
  std::snprintf(buf, sizeof(buf), "%08x-%04x-%04x-%04x-%012llx", static_cast<unsigned>(hi >> 32),
                static_cast<unsigned>((hi >> 16) & 0xFFFF), static_cast<unsigned>(hi & 0xFFFF),
                static_cast<unsigned>(lo >> 48), static_cast<unsigned long long>(lo & 0xFFFFFFFFFFFFull));
  return buf;
}

std::string CanonicalDump(const Json &j) { return j.dump(); }

Json ToJson(const AnnotationRecord &a) {
  Json j = {{"id", a.id}, {"annotation_definition", a.annotationDefinition}};
  if (a.values) j["values"] = *a.values;
  if (a.filename) j["filename"] = *a.filename;
  return j;
}

Json ToJson(const CaptureRecord &c) {
  Json annotations = Json::array();
  for (const auto &a : c.annotations) annotations.push_back(ToJson(a));
  return {{"id", c.id},
          {"sequence_id", c.sequenceId},
          {"iteration", c.iteration},
          {"step", c.step},
          {"timestamp", c.timestamp},
          {"sensor",
           {{"sensor_id", c.sensor.id},
            {"modality", c.sensor.modality},
            {"translation", Vec3Json(c.sensor.translation)},
            {"rotation", QuatJson(c.sensor.rotation)},
            {"camera_intrinsic", Mat3Json(c.sensor.intrinsics)}}},
          {"filename", c.filename},
          {"format", "PNG"},
          {"annotations", std::move(annotations)}};
}

Json ToJson(const AnnotationDefinition &d) {
  return {{"id", d.id}, {"name", d.name}, {"description", d.description}, {"format", d.format}, {"spec", d.spec}};
}

Json ToJson(const MetricDefinition &d) { return {{"id", d.id}, {"name", d.name}, {"description", d.description}}; }

Json ToJson(const MetricRecord &m) {
  Json j = {{"metric_definition", m.metricDefinition}, {"values", m.values}};
  if (m.captureId) j["capture_id"] = *m.captureId;
  if (m.annotationId) j["annotation_id"] = *m.annotationId;
  return j;
}

AnnotationRecord AnnotationFromJson(const Json &j) {
  AnnotationRecord a;
  a.id = StringField(j, "id");
  a.annotationDefinition = StringField(j, "annotation_definition");
  if (j.contains("values")) a.values = j.at("values");
  if (j.contains("filename")) a.filename = StringField(j, "filename");
  if (a.values.has_value() == a.filename.has_value()) {
    SchemaFail("annotation " + a.id + " must carry exactly one of values/filename");
  }
  return a;
}

CaptureRecord CaptureFromJson(const Json &j) {
  CaptureRecord c;
  c.id = StringField(j, "id");
  c.sequenceId = StringField(j, "sequence_id");
  c.iteration = NumberField<std::uint64_t>(j, "iteration");
  c.step = NumberField<std::uint32_t>(j, "step");
  c.timestamp = NumberField<double>(j, "timestamp");
  const Json &s = Field(j, "sensor");
  c.sensor.id = StringField(s, "sensor_id");
  c.sensor.modality = StringField(s, "modality");
  c.sensor.translation = Vec3From(Field(s, "translation"));
  c.sensor.rotation = QuatFrom(Field(s, "rotation"));
  c.sensor.intrinsics = Mat3From(Field(s, "camera_intrinsic"));
  c.filename = StringField(j, "filename");
  const Json &anns = Field(j, "annotations");
  if (!anns.is_array()) SchemaFail("annotations must be an array");
  for (const auto &a : anns) c.annotations.push_back(AnnotationFromJson(a));
  return c;
}

AnnotationDefinition AnnotationDefinitionFromJson(const Json &j) {
  AnnotationDefinition d;
  d.id = StringField(j, "id");
  d.name = StringField(j, "name");
  d.description = StringField(j, "description");
  d.format = StringField(j, "format");
  d.spec = Field(j, "spec");
  return d;
}

MetricDefinition MetricDefinitionFromJson(const Json &j) {
  return {StringField(j, "id"), StringField(j, "name"), StringField(j, "description")};
}

MetricRecord MetricFromJson(const Json &j) {
  MetricRecord m;
  m.metricDefinition = StringField(j, "metric_definition");
  m.values = Field(j, "values");
  if (j.contains("capture_id")) m.captureId = StringField(j, "capture_id");
  if (j.contains("annotation_id")) m.annotationId = StringField(j, "annotation_id");
  if (m.captureId.has_value() == m.annotationId.has_value()) {
    SchemaFail("metric must reference exactly one of capture_id/annotation_id");
  }
  return m;
}

DatasetWriter::DatasetWriter(std::filesystem::path root, std::size_t capturesPerShard)
    : root_(std::move(root)), capturesPerShard_(capturesPerShard) {
  if (capturesPerShard_ == 0) throw Error(ErrorCode::kInvalidArgument, "shard size must be positive");
  std::error_code ec;
  std::filesystem::create_directories(root_ / kRgbDir, ec);
  if (!ec) std::filesystem::create_directories(root_ / kSegmentationDir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + root_.string() + ": " + ec.message());
}

void DatasetWriter::RegisterAnnotationDefinition(const AnnotationDefinition &def) {
  std::lock_guard lock(mu_);
  if (!annotationDefIds_.insert(def.id).second) {
    throw Error(ErrorCode::kDuplicateId, "annotation definition " + def.id);
  }
  annotationDefs_.push_back(def);
}

void DatasetWriter::RegisterMetricDefinition(const MetricDefinition &def) {
  std::lock_guard lock(mu_);
  if (!metricDefIds_.insert(def.id).second) throw Error(ErrorCode::kDuplicateId, "metric definition " + def.id);
  metricDefs_.push_back(def);
}

void DatasetWriter::WriteCapture(const CaptureRecord &record, std::span<const ImageFile> images) {
  std::lock_guard lock(mu_);
  if (finalized_) throw Error(ErrorCode::kInvalidArgument, "writer already finalized");
  if (captureIds_.count(record.id)) throw Error(ErrorCode::kDuplicateId, "capture " + record.id);
  std::set<std::string> local;
  for (const auto &a : record.annotations) {
    if (annotationIds_.count(a.id) || !local.insert(a.id).second) {
      throw Error(ErrorCode::kDuplicateId, "annotation " + a.id);
    }
    if (!annotationDefIds_.count(a.annotationDefinition)) {
      throw Error(ErrorCode::kUnknownDefinition,
                  "annotation " + a.id + " references unknown definition " + a.annotationDefinition);
    }
    if (a.values.has_value() == a.filename.has_value()) {
      throw Error(ErrorCode::kInvalidArgument, "annotation " + a.id + " needs exactly one of values/filename");
    }
  }

  for (const auto &image : images) WriteFileBytes(root_ / image.relativePath, image.pngBytes);

  if (pendingCaptures_.size() == capturesPerShard_) FlushShardLocked();
  captureIds_.insert(record.id);
  annotationIds_.insert(local.begin(), local.end());
  pendingCaptures_.push_back(record);
  summary_.captures += 1;
  summary_.annotations += record.annotations.size();
}

void DatasetWriter::WriteMetric(const MetricRecord &record) {
  std::lock_guard lock(mu_);
  if (finalized_) throw Error(ErrorCode::kInvalidArgument, "writer already finalized");
  if (!metricDefIds_.count(record.metricDefinition)) {
    throw Error(ErrorCode::kDanglingReference, "unknown metric definition " + record.metricDefinition);
  }
  if (record.captureId.has_value() == record.annotationId.has_value()) {
    throw Error(ErrorCode::kInvalidArgument, "metric must reference exactly one capture or annotation");
  }
  if (record.captureId && !captureIds_.count(*record.captureId)) {
    throw Error(ErrorCode::kDanglingReference, "metric references unknown capture " + *record.captureId);
  }
  if (record.annotationId && !annotationIds_.count(*record.annotationId)) {
    throw Error(ErrorCode::kDanglingReference, "metric references unknown annotation " + *record.annotationId);
  }
  pendingMetrics_.push_back(record);
  summary_.metrics += 1;
}

void DatasetWriter::FlushShardLocked() {
  Json captures = Json::array();
  for (const auto &c : pendingCaptures_) captures.push_back(ToJson(c));
  Json metrics = Json::array();
  for (const auto &m : pendingMetrics_) metrics.push_back(ToJson(m));
  WriteJsonFile(root_ / ShardName("captures", shardIndex_), {{"version", kSchemaVersion}, {"captures", captures}});
  WriteJsonFile(root_ / ShardName("metrics", shardIndex_), {{"version", kSchemaVersion}, {"metrics", metrics}});
  pendingCaptures_.clear();
  pendingMetrics_.clear();
  ++shardIndex_;
}

DatasetSummary DatasetWriter::Finalize() {
  std::lock_guard lock(mu_);
  if (finalized_) return summary_;
  if (!pendingCaptures_.empty() || shardIndex_ == 0) FlushShardLocked();

  Json annDefs = Json::array();
  for (const auto &d : annotationDefs_) annDefs.push_back(ToJson(d));
  Json metDefs = Json::array();
  for (const auto &d : metricDefs_) metDefs.push_back(ToJson(d));
  WriteJsonFile(root_ / "annotation_definitions.json",
                {{"version", kSchemaVersion}, {"annotation_definitions", annDefs}});
  WriteJsonFile(root_ / "metric_definitions.json", {{"version", kSchemaVersion}, {"metric_definitions", metDefs}});
  finalized_ = true;

  const ValidationReport report = ValidateDataset(root_, /*decodeImages=*/false);
  std::string dangling;
  for (const auto &v : report.violations) {
    if (v.kind == ViolationKind::kDanglingReference || v.kind == ViolationKind::kMissingFile) {
      dangling += "\n  " + v.file + ": " + v.detail;
    }
  }
  if (!dangling.empty()) throw Error(ErrorCode::kValidationFailure, "unresolved references:" + dangling);
  return summary_;
}

}  // namespace perceptforge
