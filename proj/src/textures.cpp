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

#include "perceptforge/textures.hpp"

#include <algorithm>
#include <cmath>

#include "perceptforge/error.hpp"
#include "perceptforge/render.hpp"
#include "perceptforge/sampling.hpp"

namespace perceptforge {

namespace {

// Texture draws live in their own key space: iteration 0, randomizer slot
// 0xFFFFFFFF, so they never alias scenario draws for any seed.
double TexDraw(std::uint64_t seed, std::uint32_t index, std::uint32_t channel, std::uint64_t n) {
  return UnitUniform({seed, 0, 0xFFFFFFFFu, index, channel, n});
}

Rgb8 ToRgb8(ColorF c) {
  auto q = [](float v) { return static_cast<std::uint8_t>(std::clamp(v, 0.f, 1.f) * 255.f + 0.5f); };
  return {q(c.r), q(c.g), q(c.b)};
}

ColorF RandomColor(std::uint64_t seed, std::uint32_t index, std::uint32_t which) {
  // Pick a hue at random, then keep saturation and value in a band so the
  // two colours of a pattern stay distinguishable after lighting.
  const float hue = static_cast<float>(TexDraw(seed, index, 10 + which, 0) * 360.0);
  const float sat = static_cast<float>(0.35 + 0.6 * TexDraw(seed, index, 10 + which, 1));
  const float val = static_cast<float>(0.45 + 0.55 * TexDraw(seed, index, 10 + which, 2));
  ColorF base{val, val * (1.f - sat), val * (1.f - sat)};
  return ShiftHue(base, hue);
}

}  // namespace

TexturePattern PatternForIndex(std::uint32_t index) { return static_cast<TexturePattern>(index % 3); }

Texture MakeProceduralTexture(std::uint64_t setSeed, std::uint32_t index, int size) {
  if (size <= 0) throw Error(ErrorCode::kInvalidArgument, "texture size must be positive");
  const Rgb8 a = ToRgb8(RandomColor(setSeed, index, 0));
  const Rgb8 b = ToRgb8(RandomColor(setSeed, index, 1));
  const int period = 2 + static_cast<int>(TexDraw(setSeed, index, 20, 0) * 6.0);
  const bool diagonal = TexDraw(setSeed, index, 21, 0) < 0.5;

  Texture tex;
  tex.width = size;
  tex.height = size;
  tex.texels.resize(static_cast<std::size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      bool useA = true;
      switch (PatternForIndex(index)) {
        case TexturePattern::kNoise:
          useA = TexDraw(setSeed, index, 30, static_cast<std::uint64_t>(y) * size + x) < 0.5;
          break;
        case TexturePattern::kStripes:
          useA = (((diagonal ? x + y : x) / period) % 2) == 0;
          break;
        case TexturePattern::kChecker:
          useA = ((x / period + y / period) % 2) == 0;
          break;
      }
      tex.texels[static_cast<std::size_t>(y) * size + x] = useA ? a : b;
    }
  }
  return tex;
}

std::vector<std::shared_ptr<const Texture>> MakeTextureSet(std::uint64_t setSeed, std::uint32_t count, int size) {
  std::vector<std::shared_ptr<const Texture>> set;
  set.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    set.push_back(std::make_shared<const Texture>(MakeProceduralTexture(setSeed, i, size)));
  }
  return set;
}

}  // namespace perceptforge
