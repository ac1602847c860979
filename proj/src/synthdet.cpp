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

#include "perceptforge/synthdet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>

#include "perceptforge/error.hpp"
#include "perceptforge/textures.hpp"

namespace perceptforge {

namespace {

// Asset textures use their own seeds so the catalog and the wall set differ.
constexpr std::uint64_t kCatalogTextureSalt = 0xCA7A1061ull;
constexpr std::uint64_t kWallTextureSalt = 0xBAC6B0ADull;

const Vec3 kProportions[] = {{1, 1, 1},      {0.6, 1, 0.6},  {1, 0.6, 1},     {0.7, 1, 0.45},
                             {1, 0.75, 0.5}, {0.5, 1, 1},    {0.8, 0.8, 1},   {1, 0.5, 0.7},
                             {0.6, 0.8, 0.6}, {0.9, 1, 0.7}, {0.75, 0.6, 0.9}};

Sampler Symmetric(double halfRange) { return RangeSampler(-halfRange, halfRange); }

void CheckRange(const Range &r, const char *name) {
  if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw Error(ErrorCode::kConfig, std::string(name) + " range must satisfy lo <= hi");
  }
}

void CheckProbability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::kConfig, std::string(name) + " must lie in [0, 1]");
}

double SinBound(double deg) { return deg >= 90.0 ? 1.0 : std::sin(DegToRad(deg)); }

Rgb8 HsvToRgb8(double h, double s, double v) {
  const double c = v * s;
  const double hp = std::fmod(h, 360.0) / 60.0;
  const double x = c * (1 - std::fabs(std::fmod(hp, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  if (hp < 1) {
    r = c, g = x;
  } else if (hp < 2) {
    r = x, g = c;
  } else if (hp < 3) {
    g = c, b = x;
  } else if (hp < 4) {
    g = x, b = c;
  } else if (hp < 5) {
    r = x, b = c;
  } else {
    r = c, b = x;
  }
  const double m = v - c;
  auto q = [m](double t) { return static_cast<std::uint8_t>(std::lround(std::clamp(t + m, 0.0, 1.0) * 255.0)); };
  return {q(r), q(g), q(b)};
}

std::uint32_t Pack(Rgb8 c) { return (static_cast<std::uint32_t>(c.r) << 16) | (c.g << 8) | c.b; }

std::shared_ptr<const KeypointTemplate> BoxKeypoints(const Aabb &box) {
  auto kp = std::make_shared<KeypointTemplate>();
  const Vec3 c = box.Center();
  kp->nodes = {{"center", c},
               {"left", {box.min.x, c.y, c.z}},
               {"right", {box.max.x, c.y, c.z}},
               {"bottom", {c.x, box.min.y, c.z}},
               {"top", {c.x, box.max.y, c.z}},
               {"back", {c.x, c.y, box.min.z}},
               {"front", {c.x, c.y, box.max.z}}};
  for (std::uint32_t i = 1; i < kp->nodes.size(); ++i) kp->edges.emplace_back(0, i);
  return kp;
}

struct DistractorDraw {
  PrimitiveKind kind;
  Quat rotation;
  std::uint32_t texture;
  double hue;
};

}  // namespace

std::uint32_t IndexFromUnit(double u, std::uint32_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty index range");
  const double scaled = std::floor(u * n);
  if (!(scaled >= 0)) return 0;
  return std::min(static_cast<std::uint32_t>(scaled), n - 1);
}

double ScaleForInscribedRadius(PrimitiveKind kind, double radius) {
  return radius / InscribedRadius(*SharedPrimitive(kind));
}

Range SynthDetConfig::OccluderDepthBounds() const {
  const double r = kUnitHalfDiagonal * occluderScale.hi;
  return {occluderDepth.lo - r, occluderDepth.hi + r};
}

Range SynthDetConfig::ForegroundDepthBounds() const {
  // Rz leaves depth alone; Ry Rx moves an in-plane offset p by at most
  // |p| * sqrt(sin^2 ax + sin^2 ay) along the view axis.
  const double tilt = std::min(1.0, std::hypot(SinBound(groupRotationDeg.x), SinBound(groupRotationDeg.y)));
  const double reach = std::hypot(placementWidth / 2, placementHeight / 2) * tilt;
  const double r = kUnitHalfDiagonal * foregroundScale.hi;
  return {placementDepth - reach - r, placementDepth + reach + r};
}

Range SynthDetConfig::WallDepthBounds() const {
  const double radius = wallCoverage * wallSpacing / std::sqrt(2.0);
  double reach = 0.0;
  for (auto kind : kSolidPrimitives) reach = std::max(reach, ScaleForInscribedRadius(kind, radius) * kUnitHalfDiagonal);
  return {wallDepth - reach, wallDepth + reach};
}

void SynthDetConfig::Validate() const {
  if (catalogSize == 0) throw Error(ErrorCode::kConfig, "catalog must not be empty");
  if (backgroundTextureCount == 0) throw Error(ErrorCode::kConfig, "at least one background texture is required");
  CheckRange(foregroundCount, "foreground count");
  CheckRange(foregroundScale, "foreground scale");
  CheckRange(occluderDepth, "occluder depth");
  CheckRange(occluderScale, "occluder scale");
  CheckRange(light1Yaw, "light 1 yaw");
  CheckRange(light1Pitch, "light 1 pitch");
  CheckRange(contrast, "contrast");
  CheckRange(saturation, "saturation");
  CheckRange(blurSigma, "blur sigma");
  for (const auto &l : lights) {
    CheckRange(l.intensity, "light intensity");
    CheckRange(l.color, "light colour");
    if (l.intensity.lo < 0) throw Error(ErrorCode::kConfig, "light intensity must be non-negative");
    if (Norm(l.direction) == 0) throw Error(ErrorCode::kConfig, "light direction must be non-zero");
  }
  CheckProbability(backgroundFlashProbability, "background flash probability");
  CheckProbability(occluderDensity, "occluder density");
  CheckProbability(blurProbability, "blur probability");
  if (foregroundCount.lo < 0 || foregroundCount.hi > 4096) {
    throw Error(ErrorCode::kConfig, "foreground count must lie in [0, 4096]");
  }
  if (foregroundScale.lo <= 0 || occluderScale.lo <= 0) throw Error(ErrorCode::kConfig, "scales must be positive");
  if (contrast.lo <= 0 || saturation.lo < 0 || blurSigma.lo < 0) {
    throw Error(ErrorCode::kConfig, "post-processing ranges out of domain");
  }
  if (placementWidth <= 0 || placementHeight <= 0) throw Error(ErrorCode::kConfig, "placement region is empty");
  if (jitterFraction < 0 || jitterFraction > 0.5) throw Error(ErrorCode::kConfig, "jitter fraction must lie in [0, 0.5]");
  if (groupRotationDeg.x < 0 || groupRotationDeg.y < 0 || groupRotationDeg.z < 0) {
    throw Error(ErrorCode::kConfig, "group rotation ranges must be non-negative");
  }
  if (wallSpacing <= 0 || wallCoverage < 1.0) throw Error(ErrorCode::kConfig, "wall spacing or coverage invalid");
  if (occluderGrid == 0) throw Error(ErrorCode::kConfig, "occluder grid must be at least 1");
  if (occluderDepth.lo <= 0) throw Error(ErrorCode::kConfig, "occluders must sit in front of the camera");

  const Range occ = OccluderDepthBounds();
  const Range fg = ForegroundDepthBounds();
  const Range wall = WallDepthBounds();
  if (!(occ.hi < fg.lo && fg.hi < wall.lo)) {
    char buf[200];
    std::snprintf(buf, sizeof(buf), "layers overlap: occluders up to %.3f, foreground %.3f..%.3f, wall from %.3f",
                  occ.hi, fg.lo, fg.hi, wall.lo);
    throw Error(ErrorCode::kConfig, buf);
  }
}

std::vector<CatalogItem> MakeCatalog(std::uint32_t size, std::uint64_t assetSeed) {
  std::vector<CatalogItem> catalog;
  catalog.reserve(size);
  constexpr std::size_t kinds = std::size(kSolidPrimitives);
  for (std::uint32_t i = 0; i < size; ++i) {
    CatalogItem item;
    char name[32];
    std::snprintf(name, sizeof(name), "object_%02u", i);
    item.label = name;
    item.kind = kSolidPrimitives[i % kinds];
    const Vec3 p = kProportions[(i / kinds) % std::size(kProportions)];
    const double longest = std::max({p.x, p.y, p.z});
    auto mesh = std::make_shared<Mesh>(Scaled(*SharedPrimitive(item.kind), p / longest));
    item.keypoints = BoxKeypoints(mesh->localAabb);
    item.mesh = std::move(mesh);
    item.texture = std::make_shared<const Texture>(MakeProceduralTexture(assetSeed ^ kCatalogTextureSalt, i, 16));
    catalog.push_back(std::move(item));
  }
  return catalog;
}

LabelConfig CatalogLabelConfig(const std::vector<CatalogItem> &catalog) {
  std::vector<LabelEntry> entries;
  std::set<std::uint32_t> used{0};
  const double n = static_cast<double>(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const double s = (i % 2 == 0) ? 0.95 : 0.6;
    const double v = (i % 3 == 0) ? 1.0 : ((i % 3 == 1) ? 0.8 : 0.6);
    Rgb8 color = HsvToRgb8(360.0 * static_cast<double>(i) / n, s, v);
    // Large catalogs can collide after quantization; walk the instance
    // permutation until a free colour turns up.
    for (std::uint32_t k = 1; used.count(Pack(color)); ++k) color = InstanceColor(k);
    used.insert(Pack(color));
    entries.push_back({catalog[i].label, static_cast<std::uint32_t>(i + 1), color});
  }
  return LabelConfig(std::move(entries));
}

Camera SynthDetCamera(int width, int height) {
  Camera camera;
  camera.width = width;
  camera.height = height;
  camera.verticalFovDeg = 60.0;
  camera.nearClip = 0.1;
  camera.farClip = 100.0;
  return camera;
}

// ---- foreground ----

ForegroundRandomizer::ForegroundRandomizer(const SynthDetConfig &config,
                                           std::shared_ptr<const std::vector<CatalogItem>> catalog)
    : config_(config), catalog_(std::move(catalog)) {
  if (!catalog_ || catalog_->empty()) throw Error(ErrorCode::kConfig, "foreground catalog is empty");
  const auto maxCount = static_cast<std::uint32_t>(std::floor(config_.foregroundCount.hi));
  grid_ = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(maxCount)))));
  count_ = AddParameter("count", {UniformSampler{std::floor(config_.foregroundCount.lo),
                                                 std::floor(config_.foregroundCount.hi) + 1.0}});
  catalogIndex_ = AddParameter("catalog_index", {UniformSampler{0.0, 1.0}});
  scale_ = AddParameter("scale", {RangeSampler(config_.foregroundScale.lo, config_.foregroundScale.hi)});
  jitter_ = AddParameter("jitter", {UniformSampler{-1.0, 1.0}, UniformSampler{-1.0, 1.0}});
  cellKey_ = AddParameter("cell_key", {UniformSampler{0.0, 1.0}});
  rotation_ = AddParameter("group_rotation", {Symmetric(config_.groupRotationDeg.x), Symmetric(config_.groupRotationDeg.y),
                                              Symmetric(config_.groupRotationDeg.z)});
}

ForegroundLayout ForegroundRandomizer::SampleLayout(IterationContext &ctx) const {
  const std::uint32_t cells = grid_ * grid_;
  const double drawn = std::floor(Draw(ctx, count_));
  const auto n = static_cast<std::uint32_t>(std::clamp(drawn, 0.0, static_cast<double>(cells)));

  // Every slot draws the same number of values whether or not it is used.
  std::vector<std::pair<double, std::uint32_t>> keys(cells);
  for (std::uint32_t c = 0; c < cells; ++c) keys[c] = {Draw(ctx, cellKey_), c};
  std::sort(keys.begin(), keys.end());

  ForegroundLayout layout;
  layout.center = {0, 0, -config_.placementDepth};
  const double cw = config_.placementWidth / grid_;
  const double ch = config_.placementHeight / grid_;
  for (std::uint32_t s = 0; s < cells; ++s) {
    const std::uint32_t item = IndexFromUnit(Draw(ctx, catalogIndex_), static_cast<std::uint32_t>(catalog_->size()));
    const double scale = Draw(ctx, scale_);
    const double jx = Draw(ctx, jitter_, 0);
    const double jy = Draw(ctx, jitter_, 1);
    if (s >= n) continue;
    const std::uint32_t cell = keys[s].second;
    const double col = cell % grid_;
    const double row = cell / grid_;
    layout.localPositions.push_back({-config_.placementWidth / 2 + (col + 0.5 + jx * config_.jitterFraction) * cw,
                                     -config_.placementHeight / 2 + (row + 0.5 + jy * config_.jitterFraction) * ch, 0.0});
    layout.catalogIndices.push_back(item);
    layout.scales.push_back(scale);
  }
  const Vec3 euler{Draw(ctx, rotation_, 0), Draw(ctx, rotation_, 1), Draw(ctx, rotation_, 2)};
  layout.groupRotation = Quat::FromEulerDeg(euler);
  return layout;
}

void ForegroundRandomizer::OnIterationStart(IterationContext &ctx) const {
  const ForegroundLayout layout = SampleLayout(ctx);
  FrameState &state = ctx.state();
  const Transform &cam = state.scene.camera.pose;
  const Quat rotation = (cam.rotation * layout.groupRotation).Normalized();
  for (std::size_t i = 0; i < layout.localPositions.size(); ++i) {
    const CatalogItem &item = (*catalog_)[layout.catalogIndices[i]];
    const Vec3 camPos = layout.center + layout.groupRotation.Rotate(layout.localPositions[i]);
    SceneObject obj;
    obj.mesh = item.mesh;
    obj.texture = item.texture;
    obj.keypoints = item.keypoints;
    obj.label = item.label;
    const double s = layout.scales[i];
    obj.transform = {state.scene.camera.CameraToWorld(camPos), rotation, {s, s, s}};
    state.Add(std::move(obj));
  }
}

// ---- background wall ----

BackgroundWallRandomizer::BackgroundWallRandomizer(const SynthDetConfig &config,
                                                   std::vector<std::shared_ptr<const Texture>> textures)
    : config_(config), textures_(std::move(textures)) {
  if (textures_.empty()) throw Error(ErrorCode::kConfig, "background texture set is empty");
  primitive_ = AddParameter("primitive", {UniformSampler{0.0, 1.0}});
  rotation_ = AddParameter("rotation", {Symmetric(180), Symmetric(180), Symmetric(180)});
  texture_ = AddParameter("texture_index", {UniformSampler{0.0, 1.0}});
  hue_ = AddParameter("hue", {Symmetric(180)});
}

std::uint32_t BackgroundWallRandomizer::GridSize(const Camera &camera) const {
  const double halfH = config_.wallDepth * std::tan(DegToRad(camera.verticalFovDeg) / 2);
  const double half = std::max(halfH, halfH * camera.Aspect());
  return 2 * static_cast<std::uint32_t>(std::ceil(half / config_.wallSpacing)) + 2;
}

namespace {

DistractorDraw DrawDistractor(const std::function<double(std::uint32_t, std::uint32_t)> &draw, std::uint32_t primitive,
                              std::uint32_t rotation, std::uint32_t texture, std::uint32_t hue,
                              std::uint32_t textureCount) {
  DistractorDraw d;
  d.kind = kSolidPrimitives[IndexFromUnit(draw(primitive, 0), std::size(kSolidPrimitives))];
  const Vec3 euler{draw(rotation, 0), draw(rotation, 1), draw(rotation, 2)};
  d.rotation = Quat::FromEulerDeg(euler);
  d.texture = IndexFromUnit(draw(texture, 0), textureCount);
  d.hue = std::clamp(draw(hue, 0), -180.0, 180.0);
  return d;
}

}  // namespace

void BackgroundWallRandomizer::OnIterationStart(IterationContext &ctx) const {
  FrameState &state = ctx.state();
  const Camera &camera = state.scene.camera;
  const std::uint32_t n = GridSize(camera);
  const double radius = config_.wallCoverage * config_.wallSpacing / std::sqrt(2.0);
  const auto draw = [&](std::uint32_t p, std::uint32_t c) { return Draw(ctx, p, c); };
  for (std::uint32_t row = 0; row < n; ++row) {
    for (std::uint32_t col = 0; col < n; ++col) {
      const DistractorDraw d = DrawDistractor(draw, primitive_, rotation_, texture_, hue_,
                                              static_cast<std::uint32_t>(textures_.size()));
      const double s = ScaleForInscribedRadius(d.kind, radius);
      const Vec3 camPos{(col - (n - 1) / 2.0) * config_.wallSpacing, (row - (n - 1) / 2.0) * config_.wallSpacing,
                        -config_.wallDepth};
      SceneObject obj;
      obj.mesh = SharedPrimitive(d.kind);
      obj.texture = textures_[d.texture];
      obj.hueShiftDeg = d.hue;
      obj.isBackground = true;
      obj.transform = {camera.CameraToWorld(camPos), (camera.pose.rotation * d.rotation).Normalized(), {s, s, s}};
      state.Add(std::move(obj));
    }
  }
}

// ---- occluders ----

OccluderRandomizer::OccluderRandomizer(const SynthDetConfig &config,
                                       std::vector<std::shared_ptr<const Texture>> textures)
    : config_(config), textures_(std::move(textures)) {
  if (textures_.empty()) throw Error(ErrorCode::kConfig, "occluder texture set is empty");
  present_ = AddParameter("present", {UniformSampler{0.0, 1.0}});
  depth_ = AddParameter("depth", {RangeSampler(config_.occluderDepth.lo, config_.occluderDepth.hi)});
  jitter_ = AddParameter("jitter", {UniformSampler{-0.5, 0.5}, UniformSampler{-0.5, 0.5}});
  scale_ = AddParameter("scale", {RangeSampler(config_.occluderScale.lo, config_.occluderScale.hi)});
  primitive_ = AddParameter("primitive", {UniformSampler{0.0, 1.0}});
  rotation_ = AddParameter("rotation", {Symmetric(180), Symmetric(180), Symmetric(180)});
  texture_ = AddParameter("texture_index", {UniformSampler{0.0, 1.0}});
  hue_ = AddParameter("hue", {Symmetric(180)});
}

void OccluderRandomizer::OnIterationStart(IterationContext &ctx) const {
  FrameState &state = ctx.state();
  const Camera &camera = state.scene.camera;
  const double tanHalf = std::tan(DegToRad(camera.verticalFovDeg) / 2);
  const std::uint32_t g = config_.occluderGrid;
  const auto draw = [&](std::uint32_t p, std::uint32_t c) { return Draw(ctx, p, c); };
  for (std::uint32_t row = 0; row < g; ++row) {
    for (std::uint32_t col = 0; col < g; ++col) {
      const bool present = Draw(ctx, present_) < config_.occluderDensity;
      const double depth = Draw(ctx, depth_);
      const double ndcX = -1.0 + (col + 0.5 + Draw(ctx, jitter_, 0)) * (2.0 / g);
      const double ndcY = -1.0 + (row + 0.5 + Draw(ctx, jitter_, 1)) * (2.0 / g);
      const double s = Draw(ctx, scale_);
      const DistractorDraw d = DrawDistractor(draw, primitive_, rotation_, texture_, hue_,
                                              static_cast<std::uint32_t>(textures_.size()));
      if (!present) continue;
      const Vec3 camPos{ndcX * depth * tanHalf * camera.Aspect(), ndcY * depth * tanHalf, -depth};
      SceneObject obj;
      obj.mesh = SharedPrimitive(d.kind);
      obj.texture = textures_[d.texture];
      obj.hueShiftDeg = d.hue;
      obj.transform = {camera.CameraToWorld(camPos), (camera.pose.rotation * d.rotation).Normalized(), {s, s, s}};
      state.Add(std::move(obj));
    }
  }
}

// ---- lights ----

LightRandomizer::LightRandomizer(const SynthDetConfig &config) : config_(config) {
  for (std::size_t i = 0; i < 4; ++i) {
    const LightRange &l = config_.lights[i];
    intensity_[i] = AddParameter("light" + std::to_string(i) + "_intensity", {RangeSampler(l.intensity.lo, l.intensity.hi)});
    const Sampler c = RangeSampler(l.color.lo, l.color.hi);
    color_[i] = AddParameter("light" + std::to_string(i) + "_color", {c, c, c});
  }
  direction_ = AddParameter("light1_direction", {RangeSampler(config_.light1Yaw.lo, config_.light1Yaw.hi),
                                                 RangeSampler(config_.light1Pitch.lo, config_.light1Pitch.hi)});
  flash_ = AddParameter("flash", {UniformSampler{0.0, 1.0}});
}

void LightRandomizer::OnIterationStart(IterationContext &ctx) const {
  FrameState &state = ctx.state();
  const Quat camRot = state.scene.camera.pose.rotation;
  std::vector<DirectionalLight> lights(4);
  for (std::uint32_t i = 0; i < 4; ++i) {
    DirectionalLight &light = lights[i];
    light.intensity = Draw(ctx, intensity_[i]);
    light.color = {static_cast<float>(Draw(ctx, color_[i], 0)), static_cast<float>(Draw(ctx, color_[i], 1)),
                   static_cast<float>(Draw(ctx, color_[i], 2))};
    light.direction = Normalized(camRot.Rotate(Normalized(config_.lights[i].direction)));
  }
  const double yaw = Draw(ctx, direction_, 0);
  const double pitch = Draw(ctx, direction_, 1);
  const Quat aim = Quat::FromAxisAngle({0, 1, 0}, DegToRad(yaw)) * Quat::FromAxisAngle({1, 0, 0}, DegToRad(pitch));
  lights[1].direction = Normalized(camRot.Rotate(aim.Rotate({0, 0, -1})));

  lights[3].backgroundOnly = true;
  if (!(Draw(ctx, flash_) < config_.backgroundFlashProbability)) lights[3].intensity = 0.0;
  state.scene.lights = std::move(lights);
}

// ---- post-processing ----

PostProcessRandomizer::PostProcessRandomizer(const SynthDetConfig &config) : config_(config) {
  contrast_ = AddParameter("contrast", {RangeSampler(config_.contrast.lo, config_.contrast.hi)});
  saturation_ = AddParameter("saturation", {RangeSampler(config_.saturation.lo, config_.saturation.hi)});
  blurOn_ = AddParameter("blur", {UniformSampler{0.0, 1.0}});
  blurSigma_ = AddParameter("blur_sigma", {RangeSampler(config_.blurSigma.lo, config_.blurSigma.hi)});
}

void PostProcessRandomizer::OnIterationStart(IterationContext &ctx) const {
  PostProcessSettings post;
  post.contrast = Draw(ctx, contrast_);
  post.saturation = Draw(ctx, saturation_);
  const bool blur = Draw(ctx, blurOn_) < config_.blurProbability;
  const double sigma = Draw(ctx, blurSigma_);
  post.blurSigma = blur ? sigma : 0.0;
  post.Validate();
  ctx.state().post = post;
}

SynthDetScenario MakeSynthDetScenario(const SynthDetConfig &config) {
  config.Validate();
  SynthDetScenario s;
  s.config = config;
  s.catalog = std::make_shared<const std::vector<CatalogItem>>(MakeCatalog(config.catalogSize, config.assetSeed));
  s.labels = std::make_shared<const LabelConfig>(CatalogLabelConfig(*s.catalog));
  const auto textures = MakeTextureSet(config.assetSeed ^ kWallTextureSalt, config.backgroundTextureCount);
  s.randomizers.push_back(std::make_shared<BackgroundWallRandomizer>(config, textures));
  s.randomizers.push_back(std::make_shared<ForegroundRandomizer>(config, s.catalog));
  s.randomizers.push_back(std::make_shared<OccluderRandomizer>(config, textures));
  s.randomizers.push_back(std::make_shared<LightRandomizer>(config));
  s.randomizers.push_back(std::make_shared<PostProcessRandomizer>(config));
  return s;
}

}  // namespace perceptforge
