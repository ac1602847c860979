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

#include "perceptforge/primitives.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace perceptforge {

namespace {

constexpr int kRingSegments = 12;

Vec2 WrapUv(const Vec3 &p) {
  return {std::atan2(p.z, p.x) / (2 * std::numbers::pi) + 0.5, 0.5 - p.y};
}

void AddTri(Mesh &m, std::uint32_t a, std::uint32_t b, std::uint32_t c) { m.triangles.push_back({a, b, c}); }

std::uint32_t AddVertex(Mesh &m, const Vec3 &p, const Vec2 &uv) {
  m.vertices.push_back(p);
  m.uvs.push_back(uv);
  return static_cast<std::uint32_t>(m.vertices.size() - 1);
}

Mesh MakeQuad() {
  Mesh m;
  AddVertex(m, {-0.5, -0.5, 0}, {0, 1});
  AddVertex(m, {0.5, -0.5, 0}, {1, 1});
  AddVertex(m, {0.5, 0.5, 0}, {1, 0});
  AddVertex(m, {-0.5, 0.5, 0}, {0, 0});
  AddTri(m, 0, 1, 2);
  AddTri(m, 0, 2, 3);
  return m;
}

Mesh MakeCube() {
  Mesh m;
  // Each face: outward normal axis plus two in-plane axes.
  const std::array<std::array<Vec3, 3>, 6> faces = {{
      {{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}},
      {{{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}},
      {{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}},
      {{{0, -1, 0}, {1, 0, 0}, {0, 0, 1}}},
      {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}},
      {{{0, 0, -1}, {-1, 0, 0}, {0, 1, 0}}},
  }};
  for (const auto &[n, u, v] : faces) {
    const Vec3 c = n * 0.5;
    const auto base = AddVertex(m, c - u * 0.5 - v * 0.5, {0, 1});
    AddVertex(m, c + u * 0.5 - v * 0.5, {1, 1});
    AddVertex(m, c + u * 0.5 + v * 0.5, {1, 0});
    AddVertex(m, c - u * 0.5 + v * 0.5, {0, 0});
    AddTri(m, base, base + 1, base + 2);
    AddTri(m, base, base + 2, base + 3);
  }
  return m;
}

Mesh MakeIcosphere() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                             {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  std::vector<std::array<std::uint32_t, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (auto &v : verts) v = Normalized(v);
  // One subdivision: 80 faces.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
  auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
    const auto key = std::minmax(a, b);
    auto it = midpoints.find(key);
    if (it != midpoints.end()) return it->second;
    verts.push_back(Normalized((verts[a] + verts[b]) * 0.5));
    const auto idx = static_cast<std::uint32_t>(verts.size() - 1);
    midpoints.emplace(key, idx);
    return idx;
  };
  std::vector<std::array<std::uint32_t, 3>> refined;
  for (const auto &f : faces) {
    const auto a = midpoint(f[0], f[1]);
    const auto b = midpoint(f[1], f[2]);
    const auto c = midpoint(f[2], f[0]);
    refined.push_back({f[0], a, c});
    refined.push_back({f[1], b, a});
    refined.push_back({f[2], c, b});
    refined.push_back({a, b, c});
  }
  Mesh m;
  for (const auto &v : verts) AddVertex(m, v * 0.5, WrapUv(v));
  m.triangles = std::move(refined);
  return m;
}

Mesh MakeCylinder() {
  Mesh m;
  const auto top = AddVertex(m, {0, 0.5, 0}, {0.5, 0});
  const auto bottom = AddVertex(m, {0, -0.5, 0}, {0.5, 1});
  std::vector<std::uint32_t> ringTop;
  std::vector<std::uint32_t> ringBottom;
  for (int i = 0; i < kRingSegments; ++i) {
    const double a = 2 * std::numbers::pi * i / kRingSegments;
    const double x = 0.5 * std::cos(a);
    const double z = 0.5 * std::sin(a);
    const double u = static_cast<double>(i) / kRingSegments;
    ringTop.push_back(AddVertex(m, {x, 0.5, z}, {u, 0}));
    ringBottom.push_back(AddVertex(m, {x, -0.5, z}, {u, 1}));
  }
  for (int i = 0; i < kRingSegments; ++i) {
    const int j = (i + 1) % kRingSegments;
    AddTri(m, top, ringTop[j], ringTop[i]);
    AddTri(m, bottom, ringBottom[i], ringBottom[j]);
    AddTri(m, ringTop[i], ringTop[j], ringBottom[j]);
    AddTri(m, ringTop[i], ringBottom[j], ringBottom[i]);
  }
  return m;
}

Mesh MakeCone() {
  Mesh m;
  const auto apex = AddVertex(m, {0, 0.5, 0}, {0.5, 0});
  const auto bottom = AddVertex(m, {0, -0.5, 0}, {0.5, 1});
  std::vector<std::uint32_t> ring;
  for (int i = 0; i < kRingSegments; ++i) {
    const double a = 2 * std::numbers::pi * i / kRingSegments;
    ring.push_back(AddVertex(m, {0.5 * std::cos(a), -0.5, 0.5 * std::sin(a)},
                             {static_cast<double>(i) / kRingSegments, 1}));
  }
  for (int i = 0; i < kRingSegments; ++i) {
    const int j = (i + 1) % kRingSegments;
    AddTri(m, apex, ring[j], ring[i]);
    AddTri(m, bottom, ring[i], ring[j]);
  }
  return m;
}

Mesh MakePyramid() {
  Mesh m;
  const auto apex = AddVertex(m, {0, 0.5, 0}, {0.5, 0});
  const auto a = AddVertex(m, {-0.5, -0.5, -0.5}, {0, 1});
  const auto b = AddVertex(m, {0.5, -0.5, -0.5}, {1, 1});
  const auto c = AddVertex(m, {0.5, -0.5, 0.5}, {0, 1});
  const auto d = AddVertex(m, {-0.5, -0.5, 0.5}, {1, 1});
  AddTri(m, apex, b, a);
  AddTri(m, apex, c, b);
  AddTri(m, apex, d, c);
  AddTri(m, apex, a, d);
  AddTri(m, a, b, c);
  AddTri(m, a, c, d);
  return m;
}

Mesh MakeOctahedron() {
  Mesh m;
  const std::array<Vec3, 6> v = {{{0.5, 0, 0}, {-0.5, 0, 0}, {0, 0.5, 0}, {0, -0.5, 0}, {0, 0, 0.5}, {0, 0, -0.5}}};
  for (const auto &p : v) AddVertex(m, p, WrapUv(p * 2.0));
  AddTri(m, 2, 4, 0);
  AddTri(m, 2, 1, 4);
  AddTri(m, 2, 5, 1);
  AddTri(m, 2, 0, 5);
  AddTri(m, 3, 0, 4);
  AddTri(m, 3, 4, 1);
  AddTri(m, 3, 1, 5);
  AddTri(m, 3, 5, 0);
  return m;
}

}  // namespace

std::string_view ToString(PrimitiveKind kind) {
  switch (kind) {
    case PrimitiveKind::kQuad: return "quad";
    case PrimitiveKind::kCube: return "cube";
    case PrimitiveKind::kSphere: return "sphere";
    case PrimitiveKind::kCylinder: return "cylinder";
    case PrimitiveKind::kCone: return "cone";
    case PrimitiveKind::kPyramid: return "pyramid";
    case PrimitiveKind::kOctahedron: return "octahedron";
  }
  return "unknown";
}

std::optional<PrimitiveKind> ParsePrimitiveKind(std::string_view name) {
  for (auto kind : {PrimitiveKind::kQuad, PrimitiveKind::kCube, PrimitiveKind::kSphere,
                    PrimitiveKind::kCylinder, PrimitiveKind::kCone, PrimitiveKind::kPyramid,
                    PrimitiveKind::kOctahedron}) {
    if (ToString(kind) == name) return kind;
  }
  return std::nullopt;
}

Mesh MakePrimitive(PrimitiveKind kind) {
  Mesh m;
  switch (kind) {
    case PrimitiveKind::kQuad: m = MakeQuad(); break;
    case PrimitiveKind::kCube: m = MakeCube(); break;
    case PrimitiveKind::kSphere: m = MakeIcosphere(); break;
    case PrimitiveKind::kCylinder: m = MakeCylinder(); break;
    case PrimitiveKind::kCone: m = MakeCone(); break;
    case PrimitiveKind::kPyramid: m = MakePyramid(); break;
    case PrimitiveKind::kOctahedron: m = MakeOctahedron(); break;
  }
  m.UpdateBounds();
  return m;
}

std::shared_ptr<const Mesh> SharedPrimitive(PrimitiveKind kind) {
  static std::mutex mu;
  static std::map<PrimitiveKind, std::shared_ptr<const Mesh>> cache;
  std::lock_guard lock(mu);
  auto &slot = cache[kind];
  if (!slot) slot = std::make_shared<const Mesh>(MakePrimitive(kind));
  return slot;
}

Mesh Scaled(const Mesh &mesh, const Vec3 &scale) {
  Mesh out = mesh;
  for (auto &v : out.vertices) v = Hadamard(v, scale);
  out.UpdateBounds();
  return out;
}

double InscribedRadius(const Mesh &mesh) {
  double r = INFINITY;
  for (const auto &tri : mesh.triangles) {
    const Vec3 &a = mesh.vertices[tri[0]];
    const Vec3 n = Cross(mesh.vertices[tri[1]] - a, mesh.vertices[tri[2]] - a);
    const double len = Norm(n);
    if (len == 0) continue;
    r = std::min(r, std::abs(Dot(n, a)) / len);
  }
  return r;
}

}  // namespace perceptforge
