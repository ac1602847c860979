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

#include <memory>
#include <optional>
#include <string_view>

#include "perceptforge/scene.hpp"

namespace perceptforge {

// Every primitive is centred on the origin and spans [-0.5, 0.5] along each
// axis it occupies. A quad is flat in the XY plane, facing +Z.
enum class PrimitiveKind { kQuad, kCube, kSphere, kCylinder, kCone, kPyramid, kOctahedron };

inline constexpr PrimitiveKind kSolidPrimitives[] = {
    PrimitiveKind::kCube, PrimitiveKind::kSphere, PrimitiveKind::kCylinder,
    PrimitiveKind::kCone, PrimitiveKind::kPyramid, PrimitiveKind::kOctahedron};

std::string_view ToString(PrimitiveKind kind);
std::optional<PrimitiveKind> ParsePrimitiveKind(std::string_view name);

Mesh MakePrimitive(PrimitiveKind kind);

/// Shared, immutable instance per kind.
std::shared_ptr<const Mesh> SharedPrimitive(PrimitiveKind kind);

/// Mesh scaled per axis (baked into vertices), bounds refreshed.
Mesh Scaled(const Mesh &mesh, const Vec3 &scale);

/// Radius of the largest origin-centred sphere inside a closed convex mesh.
double InscribedRadius(const Mesh &mesh);

}  // namespace perceptforge
