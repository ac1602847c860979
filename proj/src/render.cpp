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

#include "perceptforge/render.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "perceptforge/error.hpp"

namespace perceptforge {

namespace {

constexpr int kBandRows = 8;

struct ClipVertex {
  Vec3 cam;
  Vec2 uv;
};

struct ScreenTriangle {
  std::array<double, 3> sx;
  std::array<double, 3> sy;
  std::array<double, 3> invDepth;
  std::array<double, 3> uOverDepth;
  std::array<double, 3> vOverDepth;
  std::array<bool, 3> topLeft;  // per edge, opposite the vertex with the same index
  double area = 0.0;
  int xMin = 0, xMax = -1, yMin = 0, yMax = -1;
  std::uint32_t objectIndex = 0;
  std::uint32_t instanceId = 0;
  ColorF light;
};

// (b - a) x (p - a) with y pointing down; positive for clockwise-on-screen winding.
inline double EdgeFunction(double ax, double ay, double bx, double by, double px, double py) {
  return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

// Evaluates the edge with endpoints in a fixed order so a shared edge yields
// exactly negated values for the two triangles that use it.
inline double CanonicalEdge(double ax, double ay, double bx, double by, double px, double py) {
  if (ax < bx || (ax == bx && ay < by)) return EdgeFunction(ax, ay, bx, by, px, py);
  return -EdgeFunction(bx, by, ax, ay, px, py);
}

inline bool IsTopLeft(double ax, double ay, double bx, double by) {
  const double dx = bx - ax;
  const double dy = by - ay;
  return (dy == 0 && dx > 0) || dy < 0;
}

ColorF FaceLight(const Vec3 &normal, std::span<const DirectionalLight> lights, bool background) {
  ColorF acc;
  for (const auto &light : lights) {
    if (light.backgroundOnly && !background) continue;
    const float lambert = std::max(0.f, static_cast<float>(-Dot(normal, light.direction)));
    const float k = static_cast<float>(light.intensity) * lambert;
    acc.r += light.color.r * k;
    acc.g += light.color.g * k;
    acc.b += light.color.b * k;
  }
  return acc;
}

// Sutherland-Hodgman against the near plane (depth = -z >= near).
int ClipNear(const std::array<ClipVertex, 3> &in, double nearClip, std::array<ClipVertex, 4> &out) {
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const ClipVertex &a = in[i];
    const ClipVertex &b = in[(i + 1) % 3];
    const double da = -a.cam.z - nearClip;
    const double db = -b.cam.z - nearClip;
    if (da >= 0) out[n++] = a;
    if ((da >= 0) != (db >= 0)) {
      const double t = da / (da - db);
      ClipVertex v;
      v.cam = a.cam + (b.cam - a.cam) * t;
      v.cam.z = -nearClip;
      v.uv = {a.uv.x + (b.uv.x - a.uv.x) * t, a.uv.y + (b.uv.y - a.uv.y) * t};
      out[n++] = v;
    }
  }
  return n;
}

void SetupTriangle(const Camera &camera, const std::array<ClipVertex, 3> &v, std::uint32_t objectIndex,
                   std::uint32_t instanceId, const ColorF &light, std::vector<ScreenTriangle> &out) {
  ScreenTriangle t;
  const double f = camera.FocalPixels();
  for (int i = 0; i < 3; ++i) {
    const double depth = -v[i].cam.z;
    t.sx[i] = 0.5 * camera.width + f * v[i].cam.x / depth;
    t.sy[i] = 0.5 * camera.height - f * v[i].cam.y / depth;
    t.invDepth[i] = 1.0 / depth;
    t.uOverDepth[i] = v[i].uv.x / depth;
    t.vOverDepth[i] = v[i].uv.y / depth;
  }
  t.area = EdgeFunction(t.sx[0], t.sy[0], t.sx[1], t.sy[1], t.sx[2], t.sy[2]);
  if (t.area == 0 || !std::isfinite(t.area)) return;
  if (t.area < 0) {
    std::swap(t.sx[1], t.sx[2]);
    std::swap(t.sy[1], t.sy[2]);
    std::swap(t.invDepth[1], t.invDepth[2]);
    std::swap(t.uOverDepth[1], t.uOverDepth[2]);
    std::swap(t.vOverDepth[1], t.vOverDepth[2]);
    t.area = -t.area;
  }
  for (int i = 0; i < 3; ++i) {
    const int a = (i + 1) % 3;
    const int b = (i + 2) % 3;
    t.topLeft[i] = IsTopLeft(t.sx[a], t.sy[a], t.sx[b], t.sy[b]);
  }
  const double minX = std::min({t.sx[0], t.sx[1], t.sx[2]});
  const double maxX = std::max({t.sx[0], t.sx[1], t.sx[2]});
  const double minY = std::min({t.sy[0], t.sy[1], t.sy[2]});
  const double maxY = std::max({t.sy[0], t.sy[1], t.sy[2]});
  // Pixel centres sit at integer + 0.5.
  const double xLo = std::max(0.0, std::ceil(minX - 0.5));
  const double xHi = std::min(camera.width - 1.0, std::floor(maxX - 0.5));
  const double yLo = std::max(0.0, std::ceil(minY - 0.5));
  const double yHi = std::min(camera.height - 1.0, std::floor(maxY - 0.5));
  if (xLo > xHi || yLo > yHi) return;
  t.xMin = static_cast<int>(xLo);
  t.xMax = static_cast<int>(xHi);
  t.yMin = static_cast<int>(yLo);
  t.yMax = static_cast<int>(yHi);
  t.objectIndex = objectIndex;
  t.instanceId = instanceId;
  t.light = light;
  out.push_back(t);
}

std::vector<ScreenTriangle> SetupScene(std::span<const SceneObject> objects,
                                       std::span<const DirectionalLight> lights, const Camera &camera) {
  std::vector<ScreenTriangle> tris;
  const Vec3 eye = camera.pose.translation;
  std::vector<Vec3> world;
  for (std::uint32_t oi = 0; oi < objects.size(); ++oi) {
    const SceneObject &obj = objects[oi];
    const Mesh &mesh = *obj.mesh;
    world.resize(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) world[i] = obj.transform.Apply(mesh.vertices[i]);
    for (const auto &idx : mesh.triangles) {
      const Vec3 &w0 = world[idx[0]];
      const Vec3 &w1 = world[idx[1]];
      const Vec3 &w2 = world[idx[2]];
      Vec3 n = Cross(w1 - w0, w2 - w0);
      const double len = Norm(n);
      if (len == 0) continue;
      n = n / len;
      if (Dot(n, eye - w0) < 0) n = -n;  // two-sided lighting
      const ColorF light = FaceLight(n, lights, obj.isBackground);

      std::array<ClipVertex, 3> cv;
      bool allBeyondFar = true;
      for (int k = 0; k < 3; ++k) {
        cv[k].cam = camera.WorldToCamera(world[idx[k]]);
        cv[k].uv = mesh.uvs.empty() ? Vec2{} : mesh.uvs[idx[k]];
        if (-cv[k].cam.z < camera.farClip) allBeyondFar = false;
      }
      if (allBeyondFar) continue;
      std::array<ClipVertex, 4> clipped;
      const int count = ClipNear(cv, camera.nearClip, clipped);
      for (int k = 1; k + 1 < count; ++k) {
        SetupTriangle(camera, {clipped[0], clipped[k], clipped[k + 1]}, oi, obj.instanceId, light, tris);
      }
    }
  }
  return tris;
}

struct RasterTarget {
  int width;
  int height;
  float farDepth;
  std::uint32_t *ids;
  float *depth;
  std::int32_t *triangle;
  float *u;
  float *v;
};

void RasterBand(const std::vector<ScreenTriangle> &tris, const std::vector<std::uint32_t> &binned, int band,
                const RasterTarget &rt) {
  const int rowBegin = band * kBandRows;
  const int rowEnd = std::min(rt.height, rowBegin + kBandRows);
  for (std::uint32_t ti : binned) {
    const ScreenTriangle &t = tris[ti];
    const int y0 = std::max(t.yMin, rowBegin);
    const int y1 = std::min(t.yMax, rowEnd - 1);
    for (int y = y0; y <= y1; ++y) {
      const double py = y + 0.5;
      for (int x = t.xMin; x <= t.xMax; ++x) {
        const double px = x + 0.5;
        const double w0 = CanonicalEdge(t.sx[1], t.sy[1], t.sx[2], t.sy[2], px, py);
        const double w1 = CanonicalEdge(t.sx[2], t.sy[2], t.sx[0], t.sy[0], px, py);
        const double w2 = CanonicalEdge(t.sx[0], t.sy[0], t.sx[1], t.sy[1], px, py);
        if (w0 < 0 || w1 < 0 || w2 < 0) continue;
        if ((w0 == 0 && !t.topLeft[0]) || (w1 == 0 && !t.topLeft[1]) || (w2 == 0 && !t.topLeft[2])) continue;
        const double sum = w0 + w1 + w2;
        const double b0 = w0 / sum;
        const double b1 = w1 / sum;
        const double b2 = w2 / sum;
        const double invDepth = b0 * t.invDepth[0] + b1 * t.invDepth[1] + b2 * t.invDepth[2];
        const float depth = static_cast<float>(1.0 / invDepth);
        if (!(depth < rt.farDepth)) continue;
        const std::size_t p = static_cast<std::size_t>(y) * rt.width + x;
        if (!(depth < rt.depth[p])) continue;
        rt.depth[p] = depth;
        rt.ids[p] = t.instanceId;
        rt.triangle[p] = static_cast<std::int32_t>(ti);
        rt.u[p] = static_cast<float>((b0 * t.uOverDepth[0] + b1 * t.uOverDepth[1] + b2 * t.uOverDepth[2]) / invDepth);
        rt.v[p] = static_cast<float>((b0 * t.vOverDepth[0] + b1 * t.vOverDepth[1] + b2 * t.vOverDepth[2]) / invDepth);
      }
    }
  }
}

inline std::uint8_t ToByte(float c) {
  return static_cast<std::uint8_t>(std::clamp(c, 0.f, 1.f) * 255.f + 0.5f);
}

void ShadeRows(const std::vector<ScreenTriangle> &tris, std::span<const SceneObject> objects,
               const std::vector<std::int32_t> &triangle, const std::vector<float> &u, const std::vector<float> &v,
               int width, int rowBegin, int rowEnd, std::vector<std::uint8_t> &rgb) {
  for (int y = rowBegin; y < rowEnd; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t p = static_cast<std::size_t>(y) * width + x;
      if (triangle[p] < 0) continue;
      const ScreenTriangle &t = tris[triangle[p]];
      const SceneObject &obj = objects[t.objectIndex];
      ColorF albedo = obj.baseColor;
      if (obj.texture) {
        const Rgb8 texel = obj.texture->Sample(u[p], v[p]);
        albedo = {texel.r / 255.f, texel.g / 255.f, texel.b / 255.f};
      }
      if (obj.hueShiftDeg != 0.0) albedo = ShiftHue(albedo, static_cast<float>(obj.hueShiftDeg));
      rgb[3 * p + 0] = ToByte(albedo.r * t.light.r);
      rgb[3 * p + 1] = ToByte(albedo.g * t.light.g);
      rgb[3 * p + 2] = ToByte(albedo.b * t.light.b);
    }
  }
}

}  // namespace

int ThreadCount() {
  if (const char *env = std::getenv("PERCEPTFORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

void PostProcessSettings::Validate() const {
  if (!(contrast > 0) || !(saturation >= 0) || !(blurSigma >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "post-process factors out of range");
  }
}

ColorF ShiftHue(ColorF c, float degrees) {
  const float mx = std::max({c.r, c.g, c.b});
  const float mn = std::min({c.r, c.g, c.b});
  const float delta = mx - mn;
  if (delta <= 0.f) return c;
  float h;
  if (mx == c.r) {
    h = 60.f * std::fmod((c.g - c.b) / delta, 6.f);
  } else if (mx == c.g) {
    h = 60.f * ((c.b - c.r) / delta + 2.f);
  } else {
    h = 60.f * ((c.r - c.g) / delta + 4.f);
  }
  h = std::fmod(h + degrees, 360.f);
  if (h < 0.f) h += 360.f;
  const float s = delta / mx;
  const float v = mx;
  const float chroma = v * s;
  const float hp = h / 60.f;
  const float xc = chroma * (1.f - std::abs(std::fmod(hp, 2.f) - 1.f));
  const float m = v - chroma;
  ColorF out;
  switch (static_cast<int>(hp) % 6) {
    case 0: out = {chroma, xc, 0.f}; break;
    case 1: out = {xc, chroma, 0.f}; break;
    case 2: out = {0.f, chroma, xc}; break;
    case 3: out = {0.f, xc, chroma}; break;
    case 4: out = {xc, 0.f, chroma}; break;
    default: out = {chroma, 0.f, xc}; break;
  }
  return {out.r + m, out.g + m, out.b + m};
}

FrameBuffers Render(std::span<const SceneObject> objects, std::span<const DirectionalLight> lights,
                    const Camera &camera, const PostProcessSettings &post, ExecutionPolicy policy) {
  camera.Validate();
  post.Validate();

  FrameBuffers fb;
  fb.width = camera.width;
  fb.height = camera.height;
  fb.farDepth = static_cast<float>(camera.farClip);
  const std::size_t pixels = static_cast<std::size_t>(fb.width) * fb.height;
  fb.rgb.assign(pixels * 3, 0);
  fb.instanceId.assign(pixels, 0);
  fb.depth.assign(pixels, fb.farDepth);

  const std::vector<ScreenTriangle> tris = SetupScene(objects, lights, camera);

  const int bands = (fb.height + kBandRows - 1) / kBandRows;
  std::vector<std::vector<std::uint32_t>> binned(bands);
  for (std::uint32_t i = 0; i < tris.size(); ++i) {
    for (int b = tris[i].yMin / kBandRows; b <= tris[i].yMax / kBandRows; ++b) binned[b].push_back(i);
  }

  std::vector<std::int32_t> triangle(pixels, -1);
  std::vector<float> u(pixels, 0.f);
  std::vector<float> v(pixels, 0.f);
  const RasterTarget rt{fb.width, fb.height, fb.farDepth, fb.instanceId.data(), fb.depth.data(),
                        triangle.data(), u.data(), v.data()};

  if (policy == ExecutionPolicy::kParallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(ThreadCount())
    for (int b = 0; b < bands; ++b) {
      RasterBand(tris, binned[b], b, rt);
      ShadeRows(tris, objects, triangle, u, v, fb.width, b * kBandRows, std::min(fb.height, (b + 1) * kBandRows),
                fb.rgb);
    }
  } else {
    for (int b = 0; b < bands; ++b) {
      RasterBand(tris, binned[b], b, rt);
      ShadeRows(tris, objects, triangle, u, v, fb.width, b * kBandRows, std::min(fb.height, (b + 1) * kBandRows),
                fb.rgb);
    }
  }

  if (!post.IsIdentity()) ApplyPostProcess(fb.rgb, fb.width, fb.height, post, policy);
  return fb;
}

std::vector<float> GaussianKernel(double sigma) {
  if (sigma <= 0) return {1.f};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> w(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    w[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += w[i + radius];
  }
  std::vector<float> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = static_cast<float>(w[i] / sum);
  return out;
}

void BlurPlane(std::vector<float> &plane, int width, int height, int channels, double sigma,
               ExecutionPolicy policy) {
  if (sigma <= 0) return;
  const std::vector<float> k = GaussianKernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  std::vector<float> tmp(plane.size());
  const bool parallel = policy == ExecutionPolicy::kParallel;

  auto horizontal = [&](int y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        float acc = 0.f;
        for (int i = -radius; i <= radius; ++i) {
          const int sx = std::clamp(x + i, 0, width - 1);
          acc += k[i + radius] * plane[(static_cast<std::size_t>(y) * width + sx) * channels + c];
        }
        tmp[(static_cast<std::size_t>(y) * width + x) * channels + c] = acc;
      }
    }
  };
  auto vertical = [&](int y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < channels; ++c) {
        float acc = 0.f;
        for (int i = -radius; i <= radius; ++i) {
          const int sy = std::clamp(y + i, 0, height - 1);
          acc += k[i + radius] * tmp[(static_cast<std::size_t>(sy) * width + x) * channels + c];
        }
        plane[(static_cast<std::size_t>(y) * width + x) * channels + c] = acc;
      }
    }
  };

#pragma omp parallel for schedule(static) num_threads(ThreadCount()) if (parallel)
  for (int y = 0; y < height; ++y) horizontal(y);
#pragma omp parallel for schedule(static) num_threads(ThreadCount()) if (parallel)
  for (int y = 0; y < height; ++y) vertical(y);
}

void ApplyPostProcess(std::vector<std::uint8_t> &rgb, int width, int height, const PostProcessSettings &post,
                      ExecutionPolicy policy) {
  post.Validate();
  if (post.IsIdentity()) return;
  const std::size_t pixels = static_cast<std::size_t>(width) * height;
  std::vector<float> plane(pixels * 3);
  const float contrast = static_cast<float>(post.contrast);
  const float saturation = static_cast<float>(post.saturation);
  const bool parallel = policy == ExecutionPolicy::kParallel;

#pragma omp parallel for schedule(static) num_threads(ThreadCount()) if (parallel)
  for (std::int64_t p = 0; p < static_cast<std::int64_t>(pixels); ++p) {
    float c[3];
    for (int i = 0; i < 3; ++i) {
      c[i] = std::clamp(128.f + (static_cast<float>(rgb[3 * p + i]) - 128.f) * contrast, 0.f, 255.f);
    }
    const float luma = kLumaR * c[0] + kLumaG * c[1] + kLumaB * c[2];
    for (int i = 0; i < 3; ++i) plane[3 * p + i] = std::clamp(luma + (c[i] - luma) * saturation, 0.f, 255.f);
  }

  BlurPlane(plane, width, height, 3, post.blurSigma, policy);

#pragma omp parallel for schedule(static) num_threads(ThreadCount()) if (parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(plane.size()); ++i) {
    rgb[i] = static_cast<std::uint8_t>(std::clamp(plane[i], 0.f, 255.f) + 0.5f);
  }
}

}  // namespace perceptforge
