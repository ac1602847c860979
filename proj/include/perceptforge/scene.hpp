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
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perceptforge/math.hpp"

namespace perceptforge {

// Conventions: right-handed world, +Y up. A camera looks down -Z of its own
// frame with +Y up. Pixel origin is the top-left corner, +x right, +y down.

struct Transform {
  Vec3 translation;
  Quat rotation;
  Vec3 scale{1.0, 1.0, 1.0};

  static Transform Identity() { return {}; }
  static Transform Translate(const Vec3 &t) { return {t, Quat::Identity(), {1, 1, 1}}; }

  /// translation + rotation * (scale ⊙ p)
  Vec3 Apply(const Vec3 &p) const { return translation + rotation.Rotate(Hadamard(scale, p)); }
  Vec3 ApplyDirection(const Vec3 &d) const { return rotation.Rotate(Hadamard(scale, d)); }

  /// Exact for uniform scale; with non-uniform scale the shear term of the
  /// true inverse is not representable and is dropped.
  Transform Inverse() const;

  bool IsValid() const;
};

/// Result applies `child` first, then `parent`. Exact when the parent's scale
/// is uniform or the child carries no rotation.
Transform ComposeTransform(const Transform &parent, const Transform &child);

struct Aabb {
  Vec3 min;
  Vec3 max;

  Vec3 Center() const { return (min + max) * 0.5; }
  Vec3 Extents() const { return max - min; }
  bool Contains(const Vec3 &p, double tol = 0.0) const {
    return p.x >= min.x - tol && p.y >= min.y - tol && p.z >= min.z - tol && p.x <= max.x + tol &&
           p.y <= max.y + tol && p.z <= max.z + tol;
  }
};

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<Vec2> uvs;  // one per vertex
  Aabb localAabb;

  /// Recomputes localAabb from the vertices.
  void UpdateBounds();
  /// Throws kInvalidArgument when indices, uv count or bounds are inconsistent.
  void Validate() const;
};

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  constexpr bool operator==(const Rgb8 &) const = default;
};

struct ColorF {
  float r = 0.f;
  float g = 0.f;
  float b = 0.f;
};

struct Texture {
  int width = 0;
  int height = 0;
  std::vector<Rgb8> texels;  // row-major, width * height

  /// Nearest-neighbour lookup; u, v are clamped into [0, 1].
  Rgb8 Sample(float u, float v) const;
};

struct KeypointTemplate {
  std::vector<std::pair<std::string, Vec3>> nodes;  // name, local position
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  void Validate() const;
};

struct SceneObject {
  std::uint32_t instanceId = 0;  // 0 is reserved for background
  std::shared_ptr<const Mesh> mesh;
  Transform transform;
  std::optional<std::string> label;
  std::shared_ptr<const Texture> texture;  // absent -> baseColor
  ColorF baseColor{0.8f, 0.8f, 0.8f};
  double hueShiftDeg = 0.0;
  std::shared_ptr<const KeypointTemplate> keypoints;
  bool isBackground = false;  // lit by background-only lights

  void Validate() const;
};

/// World-space AABB enclosing the eight transformed corners of the mesh's local box.
Aabb WorldAabb(const SceneObject &obj);

struct DirectionalLight {
  Vec3 direction{0, 0, -1};  // direction the light travels, unit length
  ColorF color{1.f, 1.f, 1.f};
  double intensity = 1.0;
  bool backgroundOnly = false;

  void Validate() const;
};

struct PixelProjection {
  double x = 0.0;
  double y = 0.0;
  double depth = 0.0;  // distance along the view axis
};

struct Camera {
  Transform pose;  // scale ignored
  double verticalFovDeg = 60.0;
  int width = 128;
  int height = 128;
  double nearClip = 0.1;
  double farClip = 100.0;

  void Validate() const;

  double Aspect() const { return static_cast<double>(width) / height; }
  /// Focal length in pixels (square pixels).
  double FocalPixels() const;
  /// 3x3 pinhole matrix [f 0 cx; 0 f cy; 0 0 1].
  Mat3 Intrinsics() const;

  /// World point into this camera's frame (x right, y up, looking down -z).
  Vec3 WorldToCamera(const Vec3 &world) const;
  Vec3 CameraToWorld(const Vec3 &cam) const;
};

/// Continuous pixel coordinates and view depth; nullopt when the point is at
/// or behind the camera plane.
std::optional<PixelProjection> ProjectPoint(const Camera &camera, const Vec3 &world);
std::optional<PixelProjection> ProjectCameraPoint(const Camera &camera, const Vec3 &cam);

/// Camera frame used in annotations: x right, y down, z forward (matches the
/// pinhole intrinsics). It is the render frame rotated 180 degrees about x.
Vec3 RenderToAnnotationFrame(const Vec3 &cam);
Quat RenderToAnnotationFrame(const Quat &cam);

struct Scene {
  Camera camera;
  std::vector<SceneObject> objects;
  std::vector<DirectionalLight> lights;
};

}  // namespace perceptforge
