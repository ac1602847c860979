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

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "perceptforge/labelers.hpp"
#include "perceptforge/primitives.hpp"
#include "perceptforge/scenario.hpp"

namespace perceptforge {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Light slot ranges. Colour channels are sampled independently.
struct LightRange {
  Vec3 direction{0, 0, -1};  // ignored when the direction is randomized
  Range intensity{0.5, 1.0};
  Range color{0.8, 1.0};
};

// Scene layout, camera looking down -Z from the origin:
//   occluders   depth in occluderDepth, spread over the view frustum
//   foreground  a placementWidth x placementHeight grid at placementDepth,
//               rotated as one rigid group
//   wall        primitives on a grid at wallDepth, covering the frustum
struct SynthDetConfig {
  std::uint32_t catalogSize = 63;
  std::uint64_t assetSeed = 7;  // catalog textures and the background texture set

  Range foregroundCount{10, 40};
  Range foregroundScale{0.6, 1.0};
  double placementWidth = 8.0;
  double placementHeight = 8.0;
  double placementDepth = 12.0;
  double jitterFraction = 0.3;  // of a grid cell, each side
  Vec3 groupRotationDeg{30, 30, 180};  // symmetric Euler ranges about x, y, z

  std::uint32_t backgroundTextureCount = 16;
  double wallDepth = 30.0;
  double wallSpacing = 2.0;
  double wallCoverage = 1.25;  // inscribed radius over the half cell diagonal

  double occluderDensity = 0.15;  // probability that an occluder cell is filled
  std::uint32_t occluderGrid = 4;
  Range occluderDepth{2.0, 4.0};
  Range occluderScale{0.2, 0.4};

  std::array<LightRange, 4> lights{LightRange{{0.3, -0.5, -1.0}, {0.6, 1.0}, {0.85, 1.0}},
                                   LightRange{{0.0, 0.0, -1.0}, {0.3, 0.7}, {0.8, 1.0}},
                                   LightRange{{-0.4, -0.2, -1.0}, {0.2, 0.5}, {0.85, 1.0}},
                                   LightRange{{0.0, 0.0, -1.0}, {3.0, 5.0}, {0.9, 1.0}}};
  Range light1Yaw{-60, 60};    // degrees about +Y
  Range light1Pitch{-60, 60};  // degrees about +X
  double backgroundFlashProbability = 0.05;

  Range contrast{0.9, 1.1};
  Range saturation{0.9, 1.1};
  double blurProbability = 0.3;
  Range blurSigma{0.5, 1.0};

  /// Throws kConfig for degenerate ranges, probabilities outside [0, 1] or a
  /// layout in which the occluder, foreground and wall layers could overlap.
  void Validate() const;

  /// Worst-case depth extents of each layer, over every sample the ranges allow.
  Range OccluderDepthBounds() const;
  Range ForegroundDepthBounds() const;
  Range WallDepthBounds() const;
};

struct CatalogItem {
  std::string label;
  PrimitiveKind kind;
  std::shared_ptr<const Mesh> mesh;  // largest extent is 1
  std::shared_ptr<const Texture> texture;
  std::shared_ptr<const KeypointTemplate> keypoints;
};

/// Labels "object_00", "object_01", ... with distinct shape, proportions and texture.
std::vector<CatalogItem> MakeCatalog(std::uint32_t size, std::uint64_t assetSeed);

/// Class ids 1..n and distinct non-black colours for the catalog labels.
LabelConfig CatalogLabelConfig(const std::vector<CatalogItem> &catalog);

/// Uniform scale that gives `kind` an inscribed radius of `radius`.
double ScaleForInscribedRadius(PrimitiveKind kind, double radius);

/// Half-diagonal of a primitive's unit box.
inline constexpr double kUnitHalfDiagonal = 0.8660254037844386;

struct ForegroundLayout {
  Vec3 center;
  Quat groupRotation;
  std::vector<Vec3> localPositions;  // before the group rotation
  std::vector<std::uint32_t> catalogIndices;
  std::vector<double> scales;
};

class ForegroundRandomizer final : public Randomizer {
 public:
  ForegroundRandomizer(const SynthDetConfig &config, std::shared_ptr<const std::vector<CatalogItem>> catalog);
  std::string_view kind() const override { return "foreground_objects"; }
  void OnIterationStart(IterationContext &ctx) const override;

  /// Draws this iteration's layout without touching the scene.
  ForegroundLayout SampleLayout(IterationContext &ctx) const;
  std::uint32_t GridSize() const { return grid_; }

 private:
  SynthDetConfig config_;
  std::shared_ptr<const std::vector<CatalogItem>> catalog_;
  std::uint32_t grid_;
  std::uint32_t count_, catalogIndex_, scale_, jitter_, cellKey_, rotation_;
};

class BackgroundWallRandomizer final : public Randomizer {
 public:
  BackgroundWallRandomizer(const SynthDetConfig &config, std::vector<std::shared_ptr<const Texture>> textures);
  std::string_view kind() const override { return "background_wall"; }
  void OnIterationStart(IterationContext &ctx) const override;

  /// Cells per side needed to cover the camera frustum at the wall.
  std::uint32_t GridSize(const Camera &camera) const;

 private:
  SynthDetConfig config_;
  std::vector<std::shared_ptr<const Texture>> textures_;
  std::uint32_t primitive_, rotation_, texture_, hue_;
};

class OccluderRandomizer final : public Randomizer {
 public:
  OccluderRandomizer(const SynthDetConfig &config, std::vector<std::shared_ptr<const Texture>> textures);
  std::string_view kind() const override { return "occluders"; }
  void OnIterationStart(IterationContext &ctx) const override;

 private:
  SynthDetConfig config_;
  std::vector<std::shared_ptr<const Texture>> textures_;
  std::uint32_t present_, depth_, jitter_, scale_, primitive_, rotation_, texture_, hue_;
};

/// Replaces the scene lights with four: 0 fixed direction, 1 random
/// direction, 2 fixed direction, 3 background-only flash.
class LightRandomizer final : public Randomizer {
 public:
  explicit LightRandomizer(const SynthDetConfig &config);
  std::string_view kind() const override { return "lights"; }
  void OnIterationStart(IterationContext &ctx) const override;

 private:
  SynthDetConfig config_;
  std::array<std::uint32_t, 4> intensity_{}, color_{};
  std::uint32_t direction_, flash_;
};

class PostProcessRandomizer final : public Randomizer {
 public:
  explicit PostProcessRandomizer(const SynthDetConfig &config);
  std::string_view kind() const override { return "post_process"; }
  void OnIterationStart(IterationContext &ctx) const override;

 private:
  SynthDetConfig config_;
  std::uint32_t contrast_, saturation_, blurOn_, blurSigma_;
};

/// Index in [0, n) from a unit draw, guarding the u -> 1 edge.
std::uint32_t IndexFromUnit(double u, std::uint32_t n);

struct SynthDetScenario {
  SynthDetConfig config;
  std::shared_ptr<const std::vector<CatalogItem>> catalog;
  std::shared_ptr<const LabelConfig> labels;
  std::vector<std::shared_ptr<Randomizer>> randomizers;  // wall, foreground, occluders, lights, post
};

SynthDetScenario MakeSynthDetScenario(const SynthDetConfig &config);

/// Default SynthDet camera: origin, looking down -Z, 60 degree vertical FOV.
Camera SynthDetCamera(int width = 128, int height = 128);

}  // namespace perceptforge
