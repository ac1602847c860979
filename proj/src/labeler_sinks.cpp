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
#include <map>

#include "perceptforge/error.hpp"
#include "perceptforge/png_io.hpp"
#include "perceptforge/scenario.hpp"

namespace perceptforge {

namespace {

Json Vec3Json(const Vec3 &v) { return Json::array({v.x, v.y, v.z}); }

Json LabelSpec(const LabelConfig &config, bool withColors) {
  Json spec = Json::array();
  for (const auto &e : config.entries()) {
    Json entry = {{"label_id", e.classId}, {"label_name", e.label}};
    if (withColors) entry["pixel_value"] = Json::array({e.color.r, e.color.g, e.color.b});
    spec.push_back(std::move(entry));
  }
  return spec;
}

class LabelerBase : public Labeler {
 public:
  LabelerBase(std::shared_ptr<const LabelConfig> config, UnknownLabelPolicy policy)
      : config_(std::move(config)), policy_(policy) {
    if (!config_) throw Error(ErrorCode::kInvalidArgument, "labeler requires a label config");
  }

 protected:
  AnnotationDefinition MakeDefinition(std::string_view name, std::string description, std::string format,
                                      bool withColors) const {
    return {DefinitionId(name), std::string(name), std::move(description), std::move(format),
            LabelSpec(*config_, withColors)};
  }

  std::shared_ptr<const LabelConfig> config_;
  UnknownLabelPolicy policy_;
};

class BBox2DLabeler final : public LabelerBase {
 public:
  using LabelerBase::LabelerBase;

  AnnotationDefinition Definition() const override {
    return MakeDefinition(kBBox2DName, "Tight boxes over visible pixels of labeled objects", "json", false);
  }

  std::vector<MetricDefinition> MetricDefinitions() const override {
    return {{DefinitionId(kObjectCountMetric), std::string(kObjectCountMetric),
             "Visible labeled objects per label in a capture"},
            {DefinitionId(kVisiblePixelsMetric), std::string(kVisiblePixelsMetric),
             "Visible pixel count of each boxed object"}};
  }

  void Annotate(const LabelerInput &in, LabelerOutput &out) const override {
    const auto boxes = LabelBBox2D(in.frames, in.scene.objects, *config_, policy_);
    std::map<std::uint32_t, std::uint64_t> pixels;
    for (auto id : in.frames.instanceId) {
      if (id != 0) ++pixels[id];
    }
    Json values = Json::array();
    Json visible = Json::array();
    std::map<std::uint32_t, std::pair<std::string, std::uint64_t>> perLabel;
    for (const auto &b : boxes) {
      values.push_back({{"instance_id", b.instanceId},
                        {"label_id", b.labelId},
                        {"label_name", b.labelName},
                        {"x", b.x},
                        {"y", b.y},
                        {"width", b.width},
                        {"height", b.height}});
      visible.push_back({{"instance_id", b.instanceId}, {"label_id", b.labelId}, {"visible_pixels", pixels[b.instanceId]}});
      auto &slot = perLabel[b.labelId];
      slot.first = b.labelName;
      slot.second += 1;
    }
    out.annotation.values = std::move(values);

    Json counts = Json::array();
    for (const auto &[labelId, entry] : perLabel) {
      counts.push_back({{"label_id", labelId}, {"label_name", entry.first}, {"count", entry.second}});
    }
    MetricRecord countMetric;
    countMetric.captureId = in.captureId;
    countMetric.metricDefinition = DefinitionId(kObjectCountMetric);
    countMetric.values = std::move(counts);
    out.metrics.push_back(std::move(countMetric));

    MetricRecord pixelMetric;
    pixelMetric.annotationId = out.annotation.id;
    pixelMetric.metricDefinition = DefinitionId(kVisiblePixelsMetric);
    pixelMetric.values = std::move(visible);
    out.metrics.push_back(std::move(pixelMetric));
  }
};

class BBox3DLabeler final : public LabelerBase {
 public:
  using LabelerBase::LabelerBase;

  AnnotationDefinition Definition() const override {
    return MakeDefinition(kBBox3DName, "Oriented boxes in the camera frame (x right, y down, z forward)", "json",
                          false);
  }

  void Annotate(const LabelerInput &in, LabelerOutput &out) const override {
    Json values = Json::array();
    for (const auto &b : LabelBBox3D(in.scene.objects, in.scene.camera, *config_, policy_)) {
      values.push_back({{"instance_id", b.instanceId},
                        {"label_id", b.labelId},
                        {"label_name", b.labelName},
                        {"translation", Vec3Json(b.center)},
                        {"size", Vec3Json(b.size)},
                        {"rotation", Json::array({b.rotation.x, b.rotation.y, b.rotation.z, b.rotation.w})}});
    }
    out.annotation.values = std::move(values);
  }
};

class SegmentationLabeler final : public LabelerBase {
 public:
  SegmentationLabeler(std::shared_ptr<const LabelConfig> config, UnknownLabelPolicy policy, bool semantic)
      : LabelerBase(std::move(config), policy), semantic_(semantic) {}

  AnnotationDefinition Definition() const override {
    if (semantic_) {
      return MakeDefinition(kSemanticSegName, "Pixels coloured by label; black is unlabeled", "PNG", true);
    }
    return MakeDefinition(kInstanceSegName, "Pixels coloured by instance id permutation; black is unlabeled", "PNG",
                          false);
  }

  void Annotate(const LabelerInput &in, LabelerOutput &out) const override {
    const Image8 image = semantic_ ? LabelSemanticSeg(in.frames, in.scene.objects, *config_, policy_)
                                   : LabelInstanceSeg(in.frames, in.scene.objects, *config_, policy_);
    const std::string path = SegmentationFileName(semantic_ ? "semantic" : "instance", in.iteration, in.step);
    out.annotation.filename = path;
    out.images.push_back({path, EncodePng(image)});
  }

 private:
  bool semantic_;
};

class KeypointLabeler final : public LabelerBase {
 public:
  using LabelerBase::LabelerBase;

  AnnotationDefinition Definition() const override {
    return MakeDefinition(kKeypointsName, "Template keypoints; state 0 absent, 1 occluded, 2 visible", "json", false);
  }

  void Annotate(const LabelerInput &in, LabelerOutput &out) const override {
    Json values = Json::array();
    for (const auto &a : LabelKeypoints(in.scene.objects, in.scene.camera, in.frames, *config_, policy_)) {
      Json points = Json::array();
      for (std::size_t i = 0; i < a.points.size(); ++i) {
        const auto &p = a.points[i];
        points.push_back(
            {{"index", i}, {"name", p.name}, {"x", p.x}, {"y", p.y}, {"state", static_cast<int>(p.state)}});
      }
      values.push_back(
          {{"instance_id", a.instanceId}, {"label_id", a.labelId}, {"label_name", a.labelName}, {"keypoints", points}});
    }
    out.annotation.values = std::move(values);
  }
};

}  // namespace

std::optional<LabelerKind> ParseLabelerKind(std::string_view name) {
  for (auto k : {LabelerKind::kBBox2D, LabelerKind::kBBox3D, LabelerKind::kInstanceSegmentation,
                 LabelerKind::kSemanticSegmentation, LabelerKind::kKeypoints}) {
    if (ToString(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view ToString(LabelerKind kind) {
  switch (kind) {
    case LabelerKind::kBBox2D: return "bounding_box";
    case LabelerKind::kBBox3D: return "bounding_box_3d";
    case LabelerKind::kInstanceSegmentation: return "instance_segmentation";
    case LabelerKind::kSemanticSegmentation: return "semantic_segmentation";
    case LabelerKind::kKeypoints: return "keypoints";
  }
  return "unknown";
}

std::shared_ptr<const Labeler> MakeLabeler(LabelerKind kind, std::shared_ptr<const LabelConfig> config,
                                           UnknownLabelPolicy policy) {
  switch (kind) {
    case LabelerKind::kBBox2D: return std::make_shared<BBox2DLabeler>(std::move(config), policy);
    case LabelerKind::kBBox3D: return std::make_shared<BBox3DLabeler>(std::move(config), policy);
    case LabelerKind::kInstanceSegmentation:
      return std::make_shared<SegmentationLabeler>(std::move(config), policy, false);
    case LabelerKind::kSemanticSegmentation:
      return std::make_shared<SegmentationLabeler>(std::move(config), policy, true);
    case LabelerKind::kKeypoints: return std::make_shared<KeypointLabeler>(std::move(config), policy);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown labeler kind");
}

std::string DefinitionId(std::string_view name) {
  return MakeId(0, 0, 0, "definition:" + std::string(name), 0);
}

std::string RgbFileName(std::uint64_t iteration, std::uint32_t step) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "rgb_%06llu_%03u.png", static_cast<unsigned long long>(iteration), step);
  return std::string(kRgbDir) + "/" + buf;
}

std::string SegmentationFileName(std::string_view kind, std::uint64_t iteration, std::uint32_t step) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "_%06llu_%03u.png", static_cast<unsigned long long>(iteration), step);
  return std::string(kSegmentationDir) + "/" + std::string(kind) + buf;
}

}  // namespace perceptforge
