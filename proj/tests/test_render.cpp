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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "perceptforge/error.hpp"
#include "perceptforge/primitives.hpp"
#include "perceptforge/render.hpp"
#include "perceptforge/textures.hpp"
#include "support/oracles.hpp"
#include "support/scenes.hpp"

using namespace perceptforge;
using testing_scenes::ScreenQuad;
using testing_scenes::SquareCamera;

namespace {

const std::vector<DirectionalLight> kFrontLight{DirectionalLight{{0, 0, -1}, {1, 1, 1}, 1.0, false}};

double MeanIntensity(const std::vector<std::uint8_t> &rgb) {
  return std::accumulate(rgb.begin(), rgb.end(), 0.0) / rgb.size();
}

}  // namespace

TEST_CASE("empty scene") {
  const Camera cam = SquareCamera(32);
  const FrameBuffers fb = Render(std::span<const SceneObject>{}, {}, cam, {});
  CHECK(fb.width == 32);
  CHECK(fb.height == 32);
  for (auto id : fb.instanceId) CHECK(id == 0);
  for (float d : fb.depth) CHECK(d == fb.farDepth);
  for (auto c : fb.rgb) CHECK(c == 0);
}

TEST_CASE("zero resolution") {
  Camera cam = SquareCamera(32);
  cam.height = 0;
  try {
    Render(std::span<const SceneObject>{}, {}, cam, {});
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kResolutionZero);
  }
}

TEST_CASE("full-frustum quad has uniform id and depth") {
  for (double d : {0.5, 1.0, 3.0, 17.0}) {
    const Camera cam = SquareCamera(48, 60);
    // Overshoot the frustum so every pixel centre is covered.
    const std::vector<SceneObject> objs{ScreenQuad(cam, -4, -4, 52, 52, d, 7)};
    const FrameBuffers fb = Render(objs, kFrontLight, cam, {});
    for (std::size_t p = 0; p < fb.instanceId.size(); ++p) {
      REQUIRE(fb.instanceId[p] == 7);
      REQUIRE(std::fabs(fb.depth[p] - d) <= 1e-5 * std::max(1.0, d));
    }
  }
}

TEST_CASE("nearer quad wins the overlap") {
  const Camera cam = SquareCamera(40);
  const std::vector<SceneObject> objs{ScreenQuad(cam, 10, 10, 30, 30, 2.0, 2),
                                      ScreenQuad(cam, 0, 0, 20, 20, 1.0, 1)};
  const FrameBuffers fb = Render(objs, kFrontLight, cam, {});
  CHECK(fb.instanceId[fb.Index(15, 15)] == 1);
  CHECK(fb.instanceId[fb.Index(25, 25)] == 2);
  CHECK(fb.instanceId[fb.Index(5, 5)] == 1);
  CHECK(fb.instanceId[fb.Index(35, 5)] == 0);

  // Scene order must not matter.
  const std::vector<SceneObject> swapped{objs[1], objs[0]};
  const FrameBuffers fb2 = Render(swapped, kFrontLight, cam, {});
  CHECK(fb.instanceId == fb2.instanceId);
  CHECK(fb.depth == fb2.depth);
}

TEST_CASE("quad covers exactly the pixel centres inside it") {
  const Camera cam = SquareCamera(64);
  const std::vector<SceneObject> objs{ScreenQuad(cam, 9.75, 4.75, 19.75, 14.75, 2.0, 3)};
  const FrameBuffers fb = Render(objs, kFrontLight, cam, {});
  auto boxes = oracle::ScanBoxes(fb.instanceId, fb.width, fb.height);
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[3].x0 == 10);
  CHECK(boxes[3].y0 == 5);
  CHECK(boxes[3].x1 == 19);
  CHECK(boxes[3].y1 == 14);
  CHECK(std::count(fb.instanceId.begin(), fb.instanceId.end(), 3u) == 100);
}

TEST_CASE("shared edges are neither doubled nor dropped") {
  // Adjacent quads whose edges land exactly on pixel centres: the top-left
  // rule must give every centre to exactly one of them.
  const Camera cam = SquareCamera(32);
  const std::vector<SceneObject> objs{ScreenQuad(cam, 4.5, 4.5, 16.5, 20.5, 3.0, 1),
                                      ScreenQuad(cam, 16.5, 4.5, 28.5, 20.5, 3.0, 2)};
  const FrameBuffers fb = Render(objs, kFrontLight, cam, {});
  for (int y = 5; y < 20; ++y) {
    for (int x = 5; x < 28; ++x) CHECK(fb.instanceId[fb.Index(x, y)] != 0);
  }
  const auto n1 = std::count(fb.instanceId.begin(), fb.instanceId.end(), 1u);
  const auto n2 = std::count(fb.instanceId.begin(), fb.instanceId.end(), 2u);
  CHECK(n1 + n2 == 16 * 24);
}

TEST_CASE("triangles crossing the near plane are clipped, not dropped") {
  Camera cam = SquareCamera(32);
  cam.nearClip = 1.0;
  SceneObject floor;
  floor.instanceId = 1;
  floor.mesh = SharedPrimitive(PrimitiveKind::kQuad);
  // Horizontal strip below the camera, from behind the camera to depth 20.
  floor.transform.translation = {0, -1, -9};
  floor.transform.rotation = Quat::FromAxisAngle({1, 0, 0}, -M_PI / 2);
  floor.transform.scale = {4, 22, 1};
  const std::vector<SceneObject> objs{floor};
  const FrameBuffers fb = Render(objs, kFrontLight, cam, {});
  const auto covered = std::count(fb.instanceId.begin(), fb.instanceId.end(), 1u);
  CHECK(covered > 0);
  for (std::size_t p = 0; p < fb.depth.size(); ++p) {
    if (fb.instanceId[p]) CHECK(fb.depth[p] >= 1.0f - 1e-5f);
  }
}

TEST_CASE("lambert shading, background-only lights and hue shift") {
  const Camera cam = SquareCamera(16);
  SceneObject q = ScreenQuad(cam, -2, -2, 18, 18, 2.0, 1);
  q.baseColor = {1.f, 0.f, 0.f};
  std::vector<SceneObject> objs{q};

  FrameBuffers fb = Render(objs, kFrontLight, cam, {});
  CHECK(fb.rgb[0] == 255);
  CHECK(fb.rgb[1] == 0);

  // Light at 60 degrees from the normal: cos = 0.5.
  const std::vector<DirectionalLight> tilted{
      DirectionalLight{Normalized(Vec3{std::sin(M_PI / 3), 0, -std::cos(M_PI / 3)}), {1, 1, 1}, 1.0, false}};
  fb = Render(objs, tilted, cam, {});
  CHECK(fb.rgb[0] == 128);

  const std::vector<DirectionalLight> bgOnly{DirectionalLight{{0, 0, -1}, {1, 1, 1}, 1.0, true}};
  fb = Render(objs, bgOnly, cam, {});
  CHECK(fb.rgb[0] == 0);
  objs[0].isBackground = true;
  fb = Render(objs, bgOnly, cam, {});
  CHECK(fb.rgb[0] == 255);

  objs[0].isBackground = false;
  objs[0].hueShiftDeg = 120;
  fb = Render(objs, kFrontLight, cam, {});
  CHECK(fb.rgb[0] == 0);
  CHECK(fb.rgb[1] == 255);
  CHECK(fb.rgb[2] == 0);
}

TEST_CASE("textures are sampled nearest-neighbour") {
  const Camera cam = SquareCamera(16);
  auto tex = std::make_shared<Texture>();
  tex->width = 2;
  tex->height = 1;
  tex->texels = {{255, 0, 0}, {0, 0, 255}};
  SceneObject q = ScreenQuad(cam, 0, 0, 16, 16, 2.0, 1);
  q.texture = tex;
  const std::vector<SceneObject> objs{q};
  const FrameBuffers fb = Render(objs, kFrontLight, cam, {});
  std::set<std::array<int, 3>> colors;
  for (std::size_t p = 0; p < fb.instanceId.size(); ++p) {
    colors.insert({fb.rgb[3 * p], fb.rgb[3 * p + 1], fb.rgb[3 * p + 2]});
  }
  CHECK(colors == std::set<std::array<int, 3>>{{255, 0, 0}, {0, 0, 255}});
}

TEST_CASE("render is deterministic and policy-independent") {
  std::mt19937_64 rng(21);
  const Camera cam = SquareCamera(96, 60);
  auto textures = MakeTextureSet(3, 4, 16);
  for (int i = 0; i < 10; ++i) {
    auto objs = testing_scenes::RandomScene(rng, cam, 3, 5);
    for (std::size_t k = 0; k < objs.size(); ++k) {
      if (k % 2) objs[k].texture = textures[k % textures.size()];
      objs[k].hueShiftDeg = 30.0 * k;
    }
    const PostProcessSettings post{1.05, 0.9, 0.8};
    const FrameBuffers a = Render(objs, kFrontLight, cam, post, ExecutionPolicy::kSerial);
    const FrameBuffers b = Render(objs, kFrontLight, cam, post, ExecutionPolicy::kParallel);
    const FrameBuffers c = Render(objs, kFrontLight, cam, post, ExecutionPolicy::kParallel);
    CHECK(a.rgb == b.rgb);
    CHECK(a.instanceId == b.instanceId);
    CHECK(a.depth == b.depth);
    CHECK(b.rgb == c.rgb);
  }
}

TEST_CASE("post-process never touches id or depth") {
  std::mt19937_64 rng(22);
  const Camera cam = SquareCamera(64);
  const auto objs = testing_scenes::RandomScene(rng, cam, 4, 5);
  const FrameBuffers plain = Render(objs, kFrontLight, cam, {});
  const FrameBuffers post = Render(objs, kFrontLight, cam, PostProcessSettings{1.3, 0.2, 1.5});
  CHECK(plain.instanceId == post.instanceId);
  CHECK(plain.depth == post.depth);
  CHECK(plain.rgb != post.rgb);
}

TEST_CASE("post-process: identity, contrast, saturation 0") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::uint8_t> img(20 * 10 * 3);
  for (auto &c : img) c = static_cast<std::uint8_t>(byte(rng));

  auto same = img;
  ApplyPostProcess(same, 20, 10, {1.0, 1.0, 0.0});
  CHECK(same == img);

  auto contrast = img;
  ApplyPostProcess(contrast, 20, 10, {2.0, 1.0, 0.0});
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double expect = std::clamp(128.0 + (img[i] - 128.0) * 2.0, 0.0, 255.0);
    CHECK(std::fabs(contrast[i] - expect) <= 0.5 + 1e-9);
  }

  auto gray = img;
  ApplyPostProcess(gray, 20, 10, {1.0, 0.0, 0.0});
  for (std::size_t p = 0; p < 200; ++p) {
    CHECK(gray[3 * p] == gray[3 * p + 1]);
    CHECK(gray[3 * p] == gray[3 * p + 2]);
    const double luma = 0.299 * img[3 * p] + 0.587 * img[3 * p + 1] + 0.114 * img[3 * p + 2];
    CHECK(std::fabs(gray[3 * p] - luma) <= 0.5 + 1e-4);
  }
}

TEST_CASE("blur of an impulse reproduces the discrete Gaussian") {
  for (double sigma : {0.5, 1.0, 2.0}) {
    const auto ref = oracle::GaussianTaps(sigma);
    const auto k = GaussianKernel(sigma);
    REQUIRE(k.size() == ref.size());
    double sum = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      CHECK(std::fabs(k[i] - ref[i]) <= 1e-7);
      sum += k[i];
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-6);

    // 2-D response of a unit impulse in the middle of a float plane.
    const int n = 31, c = 15;
    std::vector<float> plane(n * n, 0.f);
    plane[c * n + c] = 1.f;
    BlurPlane(plane, n, n, 1, sigma, ExecutionPolicy::kSerial);
    const int r = static_cast<int>(ref.size() / 2);
    double total = 0;
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const int dx = x - c, dy = y - c;
        const double expect =
            (std::abs(dx) <= r && std::abs(dy) <= r) ? ref[dx + r] * ref[dy + r] : 0.0;
        CHECK(std::fabs(plane[y * n + x] - expect) <= 1e-6);
        total += plane[y * n + x];
      }
    }
    CHECK(std::fabs(total - 1.0) <= 1e-6);
  }
}

TEST_CASE("blur preserves mean intensity") {
  const Camera cam = SquareCamera(128);
  const auto textures = MakeTextureSet(9, 3, 32);
  SceneObject q = ScreenQuad(cam, -4, -4, 132, 132, 3.0, 1);
  q.texture = textures[0];
  const std::vector<SceneObject> objs{q};
  const FrameBuffers fb = Render(objs, kFrontLight, cam, {});
  for (double sigma : {0.5, 1.0, 2.0}) {
    auto blurred = fb.rgb;
    ApplyPostProcess(blurred, fb.width, fb.height, {1.0, 1.0, sigma});
    const double before = MeanIntensity(fb.rgb);
    const double after = MeanIntensity(blurred);
    CHECK(std::fabs(after - before) / before < 0.005);
  }
}

TEST_CASE("post-process serial and parallel agree") {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::uint8_t> img(77 * 53 * 3);
  for (auto &c : img) c = static_cast<std::uint8_t>(byte(rng));
  auto a = img, b = img;
  ApplyPostProcess(a, 77, 53, {1.1, 0.8, 1.7}, ExecutionPolicy::kSerial);
  ApplyPostProcess(b, 77, 53, {1.1, 0.8, 1.7}, ExecutionPolicy::kParallel);
  CHECK(a == b);
}

TEST_CASE("invalid post settings") {
  std::vector<std::uint8_t> img(3, 0);
  CHECK_THROWS_AS(ApplyPostProcess(img, 1, 1, {0.0, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(ApplyPostProcess(img, 1, 1, {1.0, 1.0, -1.0}), Error);
}
