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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "perceptforge/error.hpp"
#include "perceptforge/labelers.hpp"
#include "perceptforge/primitives.hpp"
#include "perceptforge/render.hpp"
#include "support/oracles.hpp"
#include "support/scenes.hpp"

using namespace perceptforge;
using testing_scenes::AbcLabels;
using testing_scenes::ScreenQuad;
using testing_scenes::SquareCamera;

namespace {

const std::vector<DirectionalLight> kLight{DirectionalLight{}};

FrameBuffers Draw(const std::vector<SceneObject> &objs, const Camera &cam) { return Render(objs, kLight, cam, {}); }

SceneObject Cube(std::uint32_t id, const Vec3 &at, const std::string &label) {
  SceneObject o;
  o.instanceId = id;
  o.mesh = SharedPrimitive(PrimitiveKind::kCube);
  o.transform.translation = at;
  o.label = label;
  return o;
}

// Reference colour map, written out independently of the library helper.
Rgb8 RefInstanceColor(std::uint32_t id) {
  const std::uint32_t v = static_cast<std::uint32_t>((std::uint64_t(id) * 0x9E3779u) & 0xFFFFFFu);
  return {std::uint8_t(v >> 16), std::uint8_t(v >> 8), std::uint8_t(v)};
}

}  // namespace

TEST_CASE("label config invariants") {
  CHECK_NOTHROW(AbcLabels());
  CHECK_THROWS_AS(LabelConfig({{"a", 1, {1, 0, 0}}, {"a", 2, {2, 0, 0}}}), Error);
  CHECK_THROWS_AS(LabelConfig({{"a", 1, {1, 0, 0}}, {"b", 1, {2, 0, 0}}}), Error);
  CHECK_THROWS_AS(LabelConfig({{"a", 1, {1, 0, 0}}, {"b", 2, {1, 0, 0}}}), Error);
  CHECK_THROWS_AS(LabelConfig({{"a", 1, {0, 0, 0}}}), Error);
  CHECK_THROWS_AS(LabelConfig({{"a", 0, {1, 0, 0}}}), Error);
  const LabelConfig c = AbcLabels();
  REQUIRE(c.Find("b"));
  CHECK(c.Find("b")->classId == 2);
  CHECK(c.Find("z") == nullptr);
}

TEST_CASE("bbox2d: empty, exact quad, hidden object") {
  const Camera cam = SquareCamera(64);
  const LabelConfig cfg = AbcLabels();

  std::vector<SceneObject> objs{ScreenQuad(cam, 9.75, 4.75, 19.75, 14.75, 2.0, 1)};
  CHECK(LabelBBox2D(Draw(objs, cam), objs, cfg).empty());

  objs[0].label = "a";
  const auto boxes = LabelBBox2D(Draw(objs, cam), objs, cfg);
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0] == BBox2D{1, 1, "a", 10, 5, 10, 10});

  objs.push_back(ScreenQuad(cam, 0, 0, 64, 64, 1.0, 2));  // unlabeled occluder
  CHECK(LabelBBox2D(Draw(objs, cam), objs, cfg).empty());
}

TEST_CASE("bbox2d: unknown label policy") {
  const Camera cam = SquareCamera(32);
  std::vector<SceneObject> objs{ScreenQuad(cam, 4, 4, 20, 20, 2.0, 1, "zzz"),
                                ScreenQuad(cam, 20, 20, 30, 30, 2.0, 2, "a")};
  const FrameBuffers fb = Draw(objs, cam);
  try {
    LabelBBox2D(fb, objs, AbcLabels());
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kUnknownLabel);
  }
  const auto boxes = LabelBBox2D(fb, objs, AbcLabels(), UnknownLabelPolicy::kSkip);
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].instanceId == 2);
}

TEST_CASE("bbox2d clips at image borders") {
  const Camera cam = SquareCamera(32);
  const std::vector<SceneObject> objs{ScreenQuad(cam, -10.25, 20.25, 8.25, 50.25, 2.0, 1, "a")};
  const auto boxes = LabelBBox2D(Draw(objs, cam), objs, AbcLabels());
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0] == BBox2D{1, 1, "a", 0, 20, 8, 12});
}

TEST_CASE("bbox2d matches a brute-force scan on random scenes") {
  std::mt19937_64 rng(31);
  const Camera cam = SquareCamera(64, 60);
  const LabelConfig cfg = AbcLabels();
  for (int s = 0; s < 100; ++s) {
    const auto objs = testing_scenes::RandomScene(rng, cam, 1, 5);
    const FrameBuffers fb = Draw(objs, cam);
    const auto boxes = LabelBBox2D(fb, objs, cfg);
    auto ref = oracle::ScanBoxes(fb.instanceId, fb.width, fb.height);
    std::erase_if(ref, [&](const auto &kv) { return !objs[kv.first - 1].label; });
    REQUIRE(boxes.size() == ref.size());
    for (const auto &b : boxes) {
      const auto &r = ref.at(b.instanceId);
      CHECK(b.x == r.x0);
      CHECK(b.y == r.y0);
      CHECK(b.width == r.x1 - r.x0 + 1);
      CHECK(b.height == r.y1 - r.y0 + 1);
      CHECK(b.labelName == *objs[b.instanceId - 1].label);
    }
  }
}

TEST_CASE("bbox3d: cube ahead, scaled, rotated about camera y") {
  const Camera cam = SquareCamera(64);
  const LabelConfig cfg = AbcLabels();
  std::vector<SceneObject> objs{Cube(1, {0, 0, -3}, "a")};

  auto boxes = LabelBBox3D(objs, cam, cfg);
  REQUIRE(boxes.size() == 1);
  CHECK(Norm(boxes[0].center - Vec3{0, 0, 3}) <= 1e-12);
  CHECK(Norm(boxes[0].size - Vec3{1, 1, 1}) <= 1e-12);
  CHECK(std::fabs(std::fabs(boxes[0].rotation.w) - 1.0) <= 1e-12);

  objs[0].transform.scale = {2, 2, 2};
  boxes = LabelBBox3D(objs, cam, cfg);
  CHECK(Norm(boxes[0].size - Vec3{2, 2, 2}) <= 1e-12);

  // Oracle: the object's rotation matrix expressed in the annotation frame
  // is F R F with F = diag(1, -1, -1).
  objs[0].transform.scale = {1, 1, 1};
  const double a = 30.0 * M_PI / 180.0;
  const Mat3 r{{std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a)}};
  objs[0].transform.rotation = Quat::FromMatrix(r);
  boxes = LabelBBox3D(objs, cam, cfg);
  const Mat3 f{{1, 0, 0, 0, -1, 0, 0, 0, -1}};
  const Mat3 expect = f * r * f;
  const Mat3 got = boxes[0].rotation.ToMatrix();
  for (int i = 0; i < 9; ++i) CHECK(std::fabs(got.m[i] - expect.m[i]) <= 1e-6);
  // Same rotation as a quaternion, up to sign.
  const Quat q = Quat::FromAxisAngle({0, -1, 0}, a);
  const double dot = q.x * boxes[0].rotation.x + q.y * boxes[0].rotation.y + q.z * boxes[0].rotation.z +
                     q.w * boxes[0].rotation.w;
  CHECK(std::fabs(std::fabs(dot) - 1.0) <= 1e-6);
}

TEST_CASE("bbox3d: hidden objects still emitted, behind-camera ones not") {
  const Camera cam = SquareCamera(64);
  std::vector<SceneObject> objs{Cube(1, {0, 0, -5}, "a"), ScreenQuad(cam, -5, -5, 70, 70, 1.0, 2),
                                Cube(3, {0, 0, 4}, "b")};
  CHECK(LabelBBox2D(Draw(objs, cam), objs, AbcLabels()).empty());
  const auto boxes = LabelBBox3D(objs, cam, AbcLabels());
  REQUIRE(boxes.size() == 1);
  CHECK(boxes[0].instanceId == 1);
}

TEST_CASE("bbox3d respects a moved camera") {
  Camera cam = SquareCamera(64);
  cam.pose.translation = {10, 0, 0};
  cam.pose.rotation = Quat::FromAxisAngle({0, 1, 0}, M_PI / 2);  // looks down world -x
  const std::vector<SceneObject> objs{Cube(1, {6, 0, 0}, "a")};
  const auto boxes = LabelBBox3D(objs, cam, AbcLabels());
  REQUIRE(boxes.size() == 1);
  CHECK(Norm(boxes[0].center - Vec3{0, 0, 4}) <= 1e-9);
}

TEST_CASE("instance colours") {
  CHECK(InstanceColor(1) == RefInstanceColor(1));
  CHECK(InstanceColor(2) == RefInstanceColor(2));
  CHECK_FALSE(InstanceColor(1) == InstanceColor(2));
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<std::uint32_t> id(1, kMaxInstanceId);
  for (int i = 0; i < 10000; ++i) {
    const std::uint32_t k = id(rng);
    const Rgb8 c = InstanceColor(k);
    CHECK(c == RefInstanceColor(k));
    CHECK_FALSE(c == Rgb8{0, 0, 0});
    CHECK(InstanceIdFromColor(c) == k);
  }
  CHECK(InstanceIdFromColor({0, 0, 0}) == 0);
  try {
    InstanceColor(kMaxInstanceId + 1);
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kColorSpaceExhausted);
  }
}

TEST_CASE("instance segmentation: empty, two instances, partition") {
  const Camera cam = SquareCamera(32);
  const LabelConfig cfg = AbcLabels();
  std::vector<SceneObject> none;
  const Image8 empty = LabelInstanceSeg(Draw(none, cam), none, cfg);
  CHECK(std::all_of(empty.rgb.begin(), empty.rgb.end(), [](auto c) { return c == 0; }));

  std::vector<SceneObject> objs{ScreenQuad(cam, 2, 2, 12, 12, 2.0, 1, "a"),
                                ScreenQuad(cam, 16, 16, 30, 30, 2.0, 2, "b"),
                                ScreenQuad(cam, 16, 2, 30, 12, 2.0, 3)};
  const FrameBuffers fb = Draw(objs, cam);
  const Image8 img = LabelInstanceSeg(fb, objs, cfg);
  std::set<std::uint32_t> colors;
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      const Rgb8 c = img.At(x, y);
      colors.insert((c.r << 16) | (c.g << 8) | c.b);
      const std::uint32_t id = fb.instanceId[fb.Index(x, y)];
      CHECK(InstanceIdFromColor(c) == (id == 3 ? 0u : id));
    }
  }
  CHECK(colors.size() == 3);
}

TEST_CASE("semantic segmentation: single object, shared label, nothing labeled") {
  const Camera cam = SquareCamera(32);
  const LabelConfig red({{"box", 1, {255, 0, 0}}});
  std::vector<SceneObject> one{ScreenQuad(cam, 3, 3, 20, 17, 2.0, 1, "box")};
  FrameBuffers fb = Draw(one, cam);
  Image8 sem = LabelSemanticSeg(fb, one, red);
  Image8 inst = LabelInstanceSeg(fb, one, red);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      const bool inInstance = !(inst.At(x, y) == Rgb8{0, 0, 0});
      CHECK(sem.At(x, y) == (inInstance ? Rgb8{255, 0, 0} : Rgb8{0, 0, 0}));
    }
  }

  std::vector<SceneObject> two{ScreenQuad(cam, 1, 1, 10, 10, 2.0, 1, "box"),
                               ScreenQuad(cam, 20, 20, 31, 31, 2.0, 2, "box")};
  fb = Draw(two, cam);
  sem = LabelSemanticSeg(fb, two, red);
  for (std::size_t p = 0; p < fb.instanceId.size(); ++p) {
    const bool any = fb.instanceId[p] != 0;
    CHECK((sem.rgb[3 * p] == 255) == any);
  }

  std::vector<SceneObject> unlabeled{ScreenQuad(cam, 1, 1, 30, 30, 2.0, 1)};
  fb = Draw(unlabeled, cam);
  sem = LabelSemanticSeg(fb, unlabeled, red);
  CHECK(std::all_of(sem.rgb.begin(), sem.rgb.end(), [](auto c) { return c == 0; }));
}

TEST_CASE("count consistency on random scenes") {
  std::mt19937_64 rng(33);
  const Camera cam = SquareCamera(64, 60);
  for (int s = 0; s < 50; ++s) {
    const auto objs = testing_scenes::RandomScene(rng, cam, 1, 5);
    const FrameBuffers fb = Draw(objs, cam);
    std::set<std::uint32_t> ids;
    for (auto id : fb.instanceId) {
      if (id && objs[id - 1].label) ids.insert(id);
    }
    CHECK(LabelBBox2D(fb, objs, AbcLabels()).size() == ids.size());
  }
}

TEST_CASE("keypoints: visible, occluded, off-screen") {
  const Camera cam = SquareCamera(64);
  auto tmpl = std::make_shared<KeypointTemplate>();
  tmpl->nodes = {{"front", {0, 0, 0.5}}, {"center", {0, 0, 0}}, {"far_right", {40, 0, 0}}};
  tmpl->edges = {{0, 1}};
  SceneObject cube = Cube(1, {0, 0, -4}, "a");
  cube.keypoints = tmpl;
  std::vector<SceneObject> objs{cube};

  auto kps = LabelKeypoints(objs, cam, Draw(objs, cam), AbcLabels());
  REQUIRE(kps.size() == 1);
  REQUIRE(kps[0].points.size() == 3);
  CHECK(kps[0].points[0].state == KeypointState::kVisible);
  CHECK(kps[0].points[0].x == doctest::Approx(32.0));
  CHECK(kps[0].points[0].y == doctest::Approx(32.0));
  // The centre lies inside the cube, behind its own front face.
  CHECK(kps[0].points[1].state == KeypointState::kOccluded);
  CHECK(kps[0].points[2].state == KeypointState::kAbsent);
  CHECK(kps[0].points[2].x == 0.0);
  CHECK(kps[0].points[2].y == 0.0);

  objs.push_back(ScreenQuad(cam, -5, -5, 70, 70, 1.0, 2));
  kps = LabelKeypoints(objs, cam, Draw(objs, cam), AbcLabels());
  CHECK(kps[0].points[0].state == KeypointState::kOccluded);

  // Behind the camera.
  objs = {cube};
  objs[0].transform.translation = {0, 0, 4};
  kps = LabelKeypoints(objs, cam, Draw(objs, cam), AbcLabels());
  REQUIRE(kps.size() == 1);
  for (const auto &p : kps[0].points) CHECK(p.state == KeypointState::kAbsent);
}

TEST_CASE("keypoint states are invariant under scene order") {
  std::mt19937_64 rng(34);
  const Camera cam = SquareCamera(64, 60);
  auto tmpl = std::make_shared<KeypointTemplate>();
  for (int i = 0; i < 8; ++i) {
    tmpl->nodes.push_back({"n" + std::to_string(i), {(i & 1) - 0.5, ((i >> 1) & 1) - 0.5, ((i >> 2) & 1) - 0.5}});
  }
  for (int s = 0; s < 30; ++s) {
    auto objs = testing_scenes::RandomScene(rng, cam, 2, 5);
    for (auto &o : objs) {
      o.label = "a";
      o.keypoints = tmpl;
    }
    auto a = LabelKeypoints(objs, cam, Draw(objs, cam), AbcLabels());
    std::reverse(objs.begin(), objs.end());
    auto b = LabelKeypoints(objs, cam, Draw(objs, cam), AbcLabels());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].instanceId == b[i].instanceId);
      CHECK(a[i].points == b[i].points);
    }
  }
}
