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
#include <span>
#include <vector>

#include "perceptforge/scene.hpp"

namespace perceptforge {

/// Serial runs the reference loop on the calling thread; Parallel splits the
/// same per-band kernel across OpenMP threads. Both produce identical bytes.
enum class ExecutionPolicy { kSerial, kParallel };

/// Worker threads for parallel kernels: PERCEPTFORGE_THREADS when set to a
/// positive integer, otherwise the OpenMP default.
int ThreadCount();

struct FrameBuffers {
  int width = 0;
  int height = 0;
  float farDepth = 0.f;                  // sentinel stored where nothing was drawn
  std::vector<std::uint8_t> rgb;         // width * height * 3
  std::vector<std::uint32_t> instanceId; // 0 = background
  std::vector<float> depth;

  std::size_t Index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

struct PostProcessSettings {
  double contrast = 1.0;
  double saturation = 1.0;
  double blurSigma = 0.0;  // pixels, 0 disables

  void Validate() const;
  bool IsIdentity() const { return contrast == 1.0 && saturation == 1.0 && blurSigma == 0.0; }
};

inline constexpr float kLumaR = 0.299f;
inline constexpr float kLumaG = 0.587f;
inline constexpr float kLumaB = 0.114f;

/// Z-buffered rasterization at pixel centres with a top-left fill rule.
/// Throws kResolutionZero for an empty viewport.
FrameBuffers Render(std::span<const SceneObject> objects, std::span<const DirectionalLight> lights,
                    const Camera &camera, const PostProcessSettings &post,
                    ExecutionPolicy policy = ExecutionPolicy::kParallel);

inline FrameBuffers Render(const Scene &scene, const PostProcessSettings &post,
                           ExecutionPolicy policy = ExecutionPolicy::kParallel) {
  return Render(scene.objects, scene.lights, scene.camera, post, policy);
}

/// Contrast, then saturation, then separable Gaussian blur; rgb is 8-bit interleaved.
void ApplyPostProcess(std::vector<std::uint8_t> &rgb, int width, int height,
                      const PostProcessSettings &post,
                      ExecutionPolicy policy = ExecutionPolicy::kParallel);

/// Normalized 1-D Gaussian taps for radius ceil(3 sigma); index 0 is -radius.
std::vector<float> GaussianKernel(double sigma);

/// Edge-clamped separable blur over an interleaved float plane.
void BlurPlane(std::vector<float> &plane, int width, int height, int channels, double sigma,
               ExecutionPolicy policy = ExecutionPolicy::kParallel);

/// Rotates the hue of an RGB colour by `degrees` in HSV space.
ColorF ShiftHue(ColorF color, float degrees);

}  // namespace perceptforge
