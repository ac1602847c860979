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
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "perceptforge/render.hpp"
#include "perceptforge/scene.hpp"

namespace perceptforge {

struct LabelEntry {
  std::string label;
  std::uint32_t classId = 0;
  Rgb8 color;
};

/// Ordered mapping from string labels to class ids and segmentation colours.
/// Labels, ids and colours are unique; black is reserved for unlabeled pixels.
class LabelConfig {
 public:
  LabelConfig() = default;
  explicit LabelConfig(std::vector<LabelEntry> entries);

  const LabelEntry *Find(std::string_view label) const;
  const std::vector<LabelEntry> &entries() const { return entries_; }

 private:
  std::vector<LabelEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class UnknownLabelPolicy { kFail, kSkip };

struct BBox2D {
  std::uint32_t instanceId = 0;
  std::uint32_t labelId = 0;
  std::string labelName;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  bool operator==(const BBox2D &) const = default;
};

/// Oriented box in the annotation camera frame (x right, y down, z forward).
struct BBox3D {
  std::uint32_t instanceId = 0;
  std::uint32_t labelId = 0;
  std::string labelName;
  Vec3 center;
  Vec3 size;  // full extents
  Quat rotation;
};

enum class KeypointState : int { kAbsent = 0, kOccluded = 1, kVisible = 2 };

struct Keypoint {
  std::string name;
  double x = 0.0;
  double y = 0.0;
  KeypointState state = KeypointState::kAbsent;

  bool operator==(const Keypoint &) const = default;
};

struct KeypointAnnotation {
  std::uint32_t instanceId = 0;
  std::uint32_t labelId = 0;
  std::string labelName;
  std::vector<Keypoint> points;
};

struct Image8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // interleaved, width * height * 3

  Rgb8 At(int x, int y) const {
    const std::size_t p = 3 * (static_cast<std::size_t>(y) * width + x);
    return {rgb[p], rgb[p + 1], rgb[p + 2]};
  }
};

/// Instance colours come from a full-period multiplicative permutation of
/// [1, 2^24): colour = (id * kInstanceColorMultiplier) mod 2^24, packed as
/// 0xRRGGBB. The multiplier is odd, so the map is a bijection that never
/// yields black for a non-zero id.
inline constexpr std::uint32_t kInstanceColorMultiplier = 0x9E3779u;
inline constexpr std::uint32_t kMaxInstanceId = (1u << 24) - 1;

Rgb8 InstanceColor(std::uint32_t instanceId);
std::uint32_t InstanceIdFromColor(Rgb8 color);

/// Resolved label for each scene object, in scene order; nullptr = unlabeled.
std::vector<const LabelEntry *> ResolveLabels(std::span<const SceneObject> objects, const LabelConfig &config,
                                              UnknownLabelPolicy policy);

/// Tight boxes over visible pixels, sorted by instance id.
std::vector<BBox2D> LabelBBox2D(const FrameBuffers &frames, std::span<const SceneObject> objects,
                                const LabelConfig &config, UnknownLabelPolicy policy = UnknownLabelPolicy::kFail);

/// One box per labeled object whose centre depth lies in (near, far),
/// including objects hidden in the image. Sorted by instance id.
std::vector<BBox3D> LabelBBox3D(std::span<const SceneObject> objects, const Camera &camera,
                                const LabelConfig &config, UnknownLabelPolicy policy = UnknownLabelPolicy::kFail);

Image8 LabelInstanceSeg(const FrameBuffers &frames, std::span<const SceneObject> objects,
                        const LabelConfig &config, UnknownLabelPolicy policy = UnknownLabelPolicy::kFail);

Image8 LabelSemanticSeg(const FrameBuffers &frames, std::span<const SceneObject> objects,
                        const LabelConfig &config, UnknownLabelPolicy policy = UnknownLabelPolicy::kFail);

/// Keypoints of labeled objects carrying a template, sorted by instance id.
/// Self-occlusion tolerance is 1e-3 of the keypoint's depth.
std::vector<KeypointAnnotation> LabelKeypoints(std::span<const SceneObject> objects, const Camera &camera,
                                               const FrameBuffers &frames, const LabelConfig &config,
                                               UnknownLabelPolicy policy = UnknownLabelPolicy::kFail);

inline constexpr double kKeypointDepthTolerance = 1e-3;

}  // namespace perceptforge
