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

// Independent reference implementations used as test oracles. Nothing here
// calls into the library's projection, rasterization or sampling code.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "perceptforge/labelers.hpp"
#include "perceptforge/primitives.hpp"
#include "perceptforge/render.hpp"
#include "perceptforge/scene.hpp"

namespace oracle {

using perceptforge::Camera;
using perceptforge::SceneObject;
using perceptforge::Vec3;

// ---------------------------------------------------------------------------
// Projection via a 4x4 OpenGL-style perspective matrix and viewport mapping.

struct Mat4 {
  std::array<double, 16> m{};
  double &operator()(int r, int c) { return m[r * 4 + c]; }
  double operator()(int r, int c) const { return m[r * 4 + c]; }
};

inline Mat4 Perspective(double fovYDeg, double aspect, double n, double f) {
  Mat4 p;
  const double t = 1.0 / std::tan(fovYDeg * M_PI / 360.0);
  p(0, 0) = t / aspect;
  p(1, 1) = t;
  p(2, 2) = (f + n) / (n - f);
  p(2, 3) = 2 * f * n / (n - f);
  p(3, 2) = -1;
  return p;
}

struct Projected {
  double x, y, depth;
};

/// Camera-space point (x right, y up, looking down -z) to pixel coordinates.
inline std::optional<Projected> ProjectWithMatrix(const Camera &cam, const Vec3 &p) {
  const Mat4 m = Perspective(cam.verticalFovDeg, double(cam.width) / cam.height, cam.nearClip, cam.farClip);
  const double v[4] = {p.x, p.y, p.z, 1.0};
  double clip[4] = {0, 0, 0, 0};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) clip[r] += m(r, c) * v[c];
  }
  if (clip[3] <= 0) return std::nullopt;
  const double ndcX = clip[0] / clip[3];
  const double ndcY = clip[1] / clip[3];
  return Projected{(ndcX + 1) * 0.5 * cam.width, (1 - ndcY) * 0.5 * cam.height, clip[3]};
}

/// Camera-space direction of the ray through pixel centre (px + 0.5, py + 0.5).
inline Vec3 PixelRay(const Camera &cam, int px, int py) {
  const double t = std::tan(cam.verticalFovDeg * M_PI / 360.0);
  const double aspect = double(cam.width) / cam.height;
  const double ndcX = (px + 0.5) / cam.width * 2 - 1;
  const double ndcY = 1 - (py + 0.5) / cam.height * 2;
  return {ndcX * t * aspect, ndcY * t, -1.0};
}

// ---------------------------------------------------------------------------
// Ray casting (Moller-Trumbore) over the world-space triangles of each object.

inline std::optional<double> RayTriangle(const Vec3 &o, const Vec3 &d, const Vec3 &a, const Vec3 &b, const Vec3 &c) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = perceptforge::Cross(d, e2);
  const double det = perceptforge::Dot(e1, p);
  if (std::fabs(det) < 1e-14) return std::nullopt;
  const double inv = 1.0 / det;
  const Vec3 s = o - a;
  const double u = perceptforge::Dot(s, p) * inv;
  if (u < 0 || u > 1) return std::nullopt;
  const Vec3 q = perceptforge::Cross(s, e1);
  const double v = perceptforge::Dot(d, q) * inv;
  if (v < 0 || u + v > 1) return std::nullopt;
  const double t = perceptforge::Dot(e2, q) * inv;
  if (t <= 0) return std::nullopt;
  return t;
}

/// Instance id seen through each pixel centre, honouring the clip range.
inline std::vector<std::uint32_t> RayCastIds(const std::vector<SceneObject> &objects, const Camera &cam) {
  std::vector<std::uint32_t> ids(static_cast<std::size_t>(cam.width) * cam.height, 0);
  // Objects are transformed into camera space so the ray origin is 0 and the
  // parameter t along (x, y, -1) equals view depth.
  std::vector<std::vector<std::array<Vec3, 3>>> tris(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto &mesh = *objects[i].mesh;
    for (const auto &t : mesh.triangles) {
      std::array<Vec3, 3> w;
      for (int k = 0; k < 3; ++k) {
        w[k] = cam.WorldToCamera(objects[i].transform.Apply(mesh.vertices[t[k]]));
      }
      tris[i].push_back(w);
    }
  }
  for (int y = 0; y < cam.height; ++y) {
    for (int x = 0; x < cam.width; ++x) {
      const Vec3 d = PixelRay(cam, x, y);
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t id = 0;
      for (std::size_t i = 0; i < objects.size(); ++i) {
        for (const auto &t : tris[i]) {
          auto hit = RayTriangle({0, 0, 0}, d, t[0], t[1], t[2]);
          if (hit && *hit >= cam.nearClip && *hit <= cam.farClip && *hit < best) {
            best = *hit;
            id = objects[i].instanceId;
          }
        }
      }
      ids[static_cast<std::size_t>(y) * cam.width + x] = id;
    }
  }
  return ids;
}

/// True when any 8-neighbour of (x, y) holds a different id in either map.
inline bool NearSilhouette(const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b, int w, int h,
                           int x, int y) {
  const std::size_t c = static_cast<std::size_t>(y) * w + x;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      const int nx = x + dx, ny = y + dy;
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const std::size_t n = static_cast<std::size_t>(ny) * w + nx;
      if (a[n] != a[c] || b[n] != b[c]) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Brute-force box scan of an instance-id plane.

struct Box {
  int x0 = std::numeric_limits<int>::max(), y0 = std::numeric_limits<int>::max(), x1 = -1, y1 = -1;
};

inline std::map<std::uint32_t, Box> ScanBoxes(const std::vector<std::uint32_t> &ids, int w, int h) {
  std::map<std::uint32_t, Box> boxes;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::uint32_t id = ids[static_cast<std::size_t>(y) * w + x];
      if (id == 0) continue;
      Box &b = boxes[id];
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x);
      b.y1 = std::max(b.y1, y);
    }
  }
  return boxes;
}

// ---------------------------------------------------------------------------
// Statistics.

/// Two-sided one-sample Kolmogorov-Smirnov statistic.
template <typename Cdf>
double KsStatistic(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

/// Asymptotic KS critical value at alpha = 0.01: sqrt(-ln(alpha/2)/2)/sqrt(n).
inline double KsCritical01(std::size_t n) { return std::sqrt(-std::log(0.005) / 2.0) / std::sqrt(double(n)); }

/// Chi-square upper critical value at alpha = 0.01 (Wilson-Hilferty).
inline double ChiSquareCritical01(int dof) {
  const double z = 2.326347874;
  const double k = dof;
  const double t = 1 - 2 / (9 * k) + z * std::sqrt(2 / (9 * k));
  return k * t * t * t;
}

inline double StdNormalCdf(double x) { return 0.5 * (1 + std::erf(x / std::sqrt(2.0))); }

/// Binomial proportion band: p +- z * sqrt(p (1 - p) / n) with z = 4 (far
/// tails only, keeps fixed-seed tests from being flaky while catching bias).
inline bool WithinBinomial(std::uint64_t hits, std::uint64_t n, double p, double z = 4.0) {
  const double sd = std::sqrt(p * (1 - p) / n);
  return std::fabs(double(hits) / n - p) <= z * sd;
}

// ---------------------------------------------------------------------------
// Discrete Gaussian evaluated directly.

inline std::vector<double> GaussianTaps(double sigma) {
  const int r = static_cast<int>(std::ceil(3 * sigma));
  std::vector<double> w;
  double sum = 0;
  for (int i = -r; i <= r; ++i) {
    w.push_back(std::exp(-(i * i) / (2 * sigma * sigma)));
    sum += w.back();
  }
  for (auto &v : w) v /= sum;
  return w;
}

}  // namespace oracle
