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

#include "perceptforge/scene.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "perceptforge/error.hpp"

namespace perceptforge {

namespace {

constexpr double kUnitTolerance = 1e-9;

}  // namespace

Transform Transform::Inverse() const {
  Transform inv;
  inv.rotation = rotation.Conjugate();
  inv.scale = {1.0 / scale.x, 1.0 / scale.y, 1.0 / scale.z};
  inv.translation = -Hadamard(inv.scale, inv.rotation.Rotate(translation));
  return inv;
}

bool Transform::IsValid() const {
  return std::abs(rotation.Norm() - 1.0) <= kUnitTolerance && scale.x > 0 && scale.y > 0 &&
         scale.z > 0;
}

Transform ComposeTransform(const Transform &parent, const Transform &child) {
  Transform out;
  out.translation = parent.Apply(child.translation);
  out.rotation = (parent.rotation * child.rotation).Normalized();
  out.scale = Hadamard(parent.scale, child.scale);
  return out;
}

void Mesh::UpdateBounds() {
  if (vertices.empty()) {
    localAabb = {};
    return;
  }
  Vec3 lo = vertices.front();
  Vec3 hi = vertices.front();
  for (const auto &v : vertices) {
    lo = Min(lo, v);
    hi = Max(hi, v);
  }
  localAabb = {lo, hi};
}

void Mesh::Validate() const {
  for (const auto &tri : triangles) {
    for (auto idx : tri) {
      if (idx >= vertices.size()) {
        throw Error(ErrorCode::kInvalidArgument, "triangle index out of range");
      }
    }
  }
  if (!uvs.empty() && uvs.size() != vertices.size()) {
    throw Error(ErrorCode::kInvalidArgument, "uv count must match vertex count");
  }
  for (const auto &v : vertices) {
    if (!localAabb.Contains(v)) {
      throw Error(ErrorCode::kInvalidArgument, "local bounds do not contain every vertex");
    }
  }
}

Rgb8 Texture::Sample(float u, float v) const {
  u = std::clamp(u, 0.f, 1.f);
  v = std::clamp(v, 0.f, 1.f);
  const int x = std::min(static_cast<int>(u * static_cast<float>(width)), width - 1);
  const int y = std::min(static_cast<int>(v * static_cast<float>(height)), height - 1);
  return texels[static_cast<std::size_t>(y) * width + x];
}

void KeypointTemplate::Validate() const {
  std::set<std::string> names;
  for (const auto &[name, pos] : nodes) {
    if (!names.insert(name).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate keypoint name '" + name + "'");
    }
  }
  for (const auto &[a, b] : edges) {
    if (a >= nodes.size() || b >= nodes.size()) {
      throw Error(ErrorCode::kInvalidArgument, "keypoint edge index out of range");
    }
  }
}

void SceneObject::Validate() const {
  if (instanceId == 0) throw Error(ErrorCode::kInvalidArgument, "instance id 0 is reserved");
  if (!mesh) throw Error(ErrorCode::kInvalidArgument, "scene object without mesh");
  if (!transform.IsValid()) throw Error(ErrorCode::kInvalidArgument, "invalid object transform");
  if (label && label->empty()) throw Error(ErrorCode::kInvalidArgument, "empty label");
  if (hueShiftDeg < -180.0 || hueShiftDeg > 180.0) {
    throw Error(ErrorCode::kInvalidArgument, "hue shift outside [-180, 180]");
  }
}

Aabb WorldAabb(const SceneObject &obj) {
  const Aabb &box = obj.mesh->localAabb;
  Vec3 lo{INFINITY, INFINITY, INFINITY};
  Vec3 hi{-INFINITY, -INFINITY, -INFINITY};
  for (int corner = 0; corner < 8; ++corner) {
    const Vec3 local{(corner & 1) ? box.max.x : box.min.x, (corner & 2) ? box.max.y : box.min.y,
                     (corner & 4) ? box.max.z : box.min.z};
    const Vec3 world = obj.transform.Apply(local);
    lo = Min(lo, world);
    hi = Max(hi, world);
  }
  return {lo, hi};
}

void DirectionalLight::Validate() const {
  if (std::abs(Norm(direction) - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "light direction must be unit length");
  }
  if (intensity < 0) throw Error(ErrorCode::kInvalidArgument, "negative light intensity");
}

void Camera::Validate() const {
  if (width == 0 || height == 0) throw Error(ErrorCode::kResolutionZero, "camera resolution is zero");
  if (width < 0 || height < 0) throw Error(ErrorCode::kInvalidArgument, "negative resolution");
  if (!(verticalFovDeg > 0 && verticalFovDeg < 180)) {
    throw Error(ErrorCode::kInvalidArgument, "vertical fov must lie in (0, 180)");
  }
  if (!(nearClip > 0 && nearClip < farClip)) {
    throw Error(ErrorCode::kInvalidArgument, "clip planes must satisfy 0 < near < far");
  }
  if (std::abs(pose.rotation.Norm() - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "camera rotation must be a unit quaternion");
  }
}

double Camera::FocalPixels() const {
  return 0.5 * height / std::tan(DegToRad(verticalFovDeg) * 0.5);
}

Mat3 Camera::Intrinsics() const {
  const double f = FocalPixels();
  Mat3 k;
  k.m = {f, 0, 0.5 * width, 0, f, 0.5 * height, 0, 0, 1};
  return k;
}

Vec3 Camera::WorldToCamera(const Vec3 &world) const {
  return pose.rotation.Conjugate().Rotate(world - pose.translation);
}

Vec3 Camera::CameraToWorld(const Vec3 &cam) const {
  return pose.translation + pose.rotation.Rotate(cam);
}

std::optional<PixelProjection> ProjectCameraPoint(const Camera &camera, const Vec3 &cam) {
  const double depth = -cam.z;
  if (depth <= 0) return std::nullopt;
  const double f = camera.FocalPixels();
  return PixelProjection{0.5 * camera.width + f * cam.x / depth,
                         0.5 * camera.height - f * cam.y / depth, depth};
}

std::optional<PixelProjection> ProjectPoint(const Camera &camera, const Vec3 &world) {
  return ProjectCameraPoint(camera, camera.WorldToCamera(world));
}

Vec3 RenderToAnnotationFrame(const Vec3 &cam) { return {cam.x, -cam.y, -cam.z}; }

Quat RenderToAnnotationFrame(const Quat &cam) {
  // Conjugation by a half-turn about x.
  return {cam.x, -cam.y, -cam.z, cam.w};
}

}  // namespace perceptforge
