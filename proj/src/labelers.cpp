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

#include "perceptforge/labelers.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "perceptforge/error.hpp"

namespace perceptforge {

namespace {

constexpr std::uint32_t kColorMask = (1u << 24) - 1;

constexpr std::uint32_t ModularInverse(std::uint32_t a) {
  // Newton iteration doubles the number of correct low bits each step.
  std::uint32_t inv = a;
  for (int i = 0; i < 5; ++i) inv *= 2u - a * inv;
  return inv & kColorMask;
}

constexpr std::uint32_t kInverseMultiplier = ModularInverse(kInstanceColorMultiplier);
static_assert(((kInstanceColorMultiplier * kInverseMultiplier) & kColorMask) == 1u);

struct LabeledLookup {
  std::unordered_map<std::uint32_t, std::size_t> objectIndex;
  std::vector<const LabelEntry *> labels;
};

LabeledLookup BuildLookup(std::span<const SceneObject> objects, const LabelConfig &config,
                          UnknownLabelPolicy policy) {
  LabeledLookup lookup;
  lookup.labels = ResolveLabels(objects, config, policy);
  for (std::size_t i = 0; i < objects.size(); ++i) lookup.objectIndex.emplace(objects[i].instanceId, i);
  return lookup;
}

const LabelEntry *LabelOf(const LabeledLookup &lookup, std::uint32_t id) {
  if (id == 0) return nullptr;
  auto it = lookup.objectIndex.find(id);
  return it == lookup.objectIndex.end() ? nullptr : lookup.labels[it->second];
}

}  // namespace

LabelConfig::LabelConfig(std::vector<LabelEntry> entries) : entries_(std::move(entries)) {
  std::set<std::uint32_t> ids;
  std::set<std::uint32_t> colors;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto &e = entries_[i];
    if (e.label.empty()) throw Error(ErrorCode::kInvalidArgument, "empty label in label config");
    if (e.classId == 0) throw Error(ErrorCode::kInvalidArgument, "class ids must be positive");
    const std::uint32_t packed = (e.color.r << 16) | (e.color.g << 8) | e.color.b;
    if (packed == 0) throw Error(ErrorCode::kInvalidArgument, "label '" + e.label + "' uses reserved black");
    if (!index_.emplace(e.label, i).second) throw Error(ErrorCode::kInvalidArgument, "duplicate label " + e.label);
    if (!ids.insert(e.classId).second) throw Error(ErrorCode::kInvalidArgument, "duplicate class id");
    if (!colors.insert(packed).second) throw Error(ErrorCode::kInvalidArgument, "duplicate label colour");
  }
}

const LabelEntry *LabelConfig::Find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

Rgb8 InstanceColor(std::uint32_t instanceId) {
  if (instanceId == 0) return {};
  if (instanceId > kMaxInstanceId) {
    throw Error(ErrorCode::kColorSpaceExhausted, "instance id " + std::to_string(instanceId) + " exceeds 2^24 - 1");
  }
  const std::uint32_t c = (instanceId * kInstanceColorMultiplier) & kColorMask;
  return {static_cast<std::uint8_t>(c >> 16), static_cast<std::uint8_t>(c >> 8), static_cast<std::uint8_t>(c)};
}

std::uint32_t InstanceIdFromColor(Rgb8 color) {
  const std::uint32_t c = (static_cast<std::uint32_t>(color.r) << 16) | (color.g << 8) | color.b;
  return (c * kInverseMultiplier) & kColorMask;
}

std::vector<const LabelEntry *> ResolveLabels(std::span<const SceneObject> objects, const LabelConfig &config,
                                              UnknownLabelPolicy policy) {
  std::vector<const LabelEntry *> out(objects.size(), nullptr);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!objects[i].label) continue;
    out[i] = config.Find(*objects[i].label);
    if (!out[i] && policy == UnknownLabelPolicy::kFail) {
      throw Error(ErrorCode::kUnknownLabel, "label '" + *objects[i].label + "' is not in the label config");
    }
  }
  return out;
}

std::vector<BBox2D> LabelBBox2D(const FrameBuffers &frames, std::span<const SceneObject> objects,
                                const LabelConfig &config, UnknownLabelPolicy policy) {
  const LabeledLookup lookup = BuildLookup(objects, config, policy);
  struct Bounds {
    int x0 = INT32_MAX, y0 = INT32_MAX, x1 = -1, y1 = -1;
  };
  std::unordered_map<std::uint32_t, Bounds> bounds;
  for (int y = 0; y < frames.height; ++y) {
    for (int x = 0; x < frames.width; ++x) {
      const std::uint32_t id = frames.instanceId[frames.Index(x, y)];
      if (id == 0) continue;
      Bounds &b = bounds[id];
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x);
      b.y1 = std::max(b.y1, y);
    }
  }
  std::vector<BBox2D> out;
  for (const auto &[id, b] : bounds) {
    const LabelEntry *label = LabelOf(lookup, id);
    if (!label) continue;
    out.push_back({id, label->classId, label->label, b.x0, b.y0, b.x1 - b.x0 + 1, b.y1 - b.y0 + 1});
  }
  std::sort(out.begin(), out.end(), [](const BBox2D &a, const BBox2D &b) { return a.instanceId < b.instanceId; });
  return out;
}

std::vector<BBox3D> LabelBBox3D(std::span<const SceneObject> objects, const Camera &camera,
                                const LabelConfig &config, UnknownLabelPolicy policy) {
  const auto labels = ResolveLabels(objects, config, policy);
  const Quat toCamera = camera.pose.rotation.Conjugate();
  std::vector<BBox3D> out;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!labels[i]) continue;
    const SceneObject &obj = objects[i];
    const Aabb &local = obj.mesh->localAabb;
    const Vec3 centerCam = camera.WorldToCamera(obj.transform.Apply(local.Center()));
    const double depth = -centerCam.z;
    if (!(depth > camera.nearClip && depth < camera.farClip)) continue;
    BBox3D box;
    box.instanceId = obj.instanceId;
    box.labelId = labels[i]->classId;
    box.labelName = labels[i]->label;
    box.center = RenderToAnnotationFrame(centerCam);
    box.size = Hadamard(local.Extents(), obj.transform.scale);
    box.rotation = RenderToAnnotationFrame((toCamera * obj.transform.rotation).Normalized());
    out.push_back(box);
  }
  std::sort(out.begin(), out.end(), [](const BBox3D &a, const BBox3D &b) { return a.instanceId < b.instanceId; });
  return out;
}

Image8 LabelInstanceSeg(const FrameBuffers &frames, std::span<const SceneObject> objects,
                        const LabelConfig &config, UnknownLabelPolicy policy) {
  const LabeledLookup lookup = BuildLookup(objects, config, policy);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (lookup.labels[i]) InstanceColor(objects[i].instanceId);  // capacity check
  }
  Image8 img{frames.width, frames.height, std::vector<std::uint8_t>(frames.instanceId.size() * 3, 0)};
  const auto pixels = static_cast<std::int64_t>(frames.instanceId.size());
#pragma omp parallel for schedule(static) num_threads(ThreadCount())
  for (std::int64_t p = 0; p < pixels; ++p) {
    const std::uint32_t id = frames.instanceId[p];
    if (!LabelOf(lookup, id)) continue;
    const Rgb8 c = InstanceColor(id);
    img.rgb[3 * p] = c.r;
    img.rgb[3 * p + 1] = c.g;
    img.rgb[3 * p + 2] = c.b;
  }
  return img;
}

Image8 LabelSemanticSeg(const FrameBuffers &frames, std::span<const SceneObject> objects,
                        const LabelConfig &config, UnknownLabelPolicy policy) {
  const LabeledLookup lookup = BuildLookup(objects, config, policy);
  Image8 img{frames.width, frames.height, std::vector<std::uint8_t>(frames.instanceId.size() * 3, 0)};
  const auto pixels = static_cast<std::int64_t>(frames.instanceId.size());
#pragma omp parallel for schedule(static) num_threads(ThreadCount())
  for (std::int64_t p = 0; p < pixels; ++p) {
    const LabelEntry *label = LabelOf(lookup, frames.instanceId[p]);
    if (!label) continue;
    img.rgb[3 * p] = label->color.r;
    img.rgb[3 * p + 1] = label->color.g;
    img.rgb[3 * p + 2] = label->color.b;
  }
  return img;
}

std::vector<KeypointAnnotation> LabelKeypoints(std::span<const SceneObject> objects, const Camera &camera,
                                               const FrameBuffers &frames, const LabelConfig &config,
                                               UnknownLabelPolicy policy) {
  const auto labels = ResolveLabels(objects, config, policy);
  std::vector<KeypointAnnotation> out;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const SceneObject &obj = objects[i];
    if (!labels[i] || !obj.keypoints) continue;
    KeypointAnnotation ann{obj.instanceId, labels[i]->classId, labels[i]->label, {}};
    for (const auto &[name, local] : obj.keypoints->nodes) {
      Keypoint kp{name, 0.0, 0.0, KeypointState::kAbsent};
      const auto proj = ProjectPoint(camera, obj.transform.Apply(local));
      if (proj && proj->depth > camera.nearClip && proj->depth < camera.farClip && proj->x >= 0 &&
          proj->y >= 0 && proj->x < camera.width && proj->y < camera.height) {
        const int px = static_cast<int>(std::floor(proj->x));
        const int py = static_cast<int>(std::floor(proj->y));
        const double buffered = frames.depth[frames.Index(px, py)];
        kp.x = proj->x;
        kp.y = proj->y;
        kp.state = proj->depth <= buffered + kKeypointDepthTolerance * proj->depth ? KeypointState::kVisible
                                                                                 : KeypointState::kOccluded;
      }
      ann.points.push_back(std::move(kp));
    }
    out.push_back(std::move(ann));
  }
  std::sort(out.begin(), out.end(),
            [](const KeypointAnnotation &a, const KeypointAnnotation &b) { return a.instanceId < b.instanceId; });
  return out;
}

}  // namespace perceptforge
