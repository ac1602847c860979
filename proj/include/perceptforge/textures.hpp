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
#include <memory>
#include <vector>

#include "perceptforge/scene.hpp"

namespace perceptforge {

enum class TexturePattern { kNoise, kStripes, kChecker };

/// Deterministic procedural texture. Pattern, colour pair and frequency all
/// derive from (setSeed, index).
Texture MakeProceduralTexture(std::uint64_t setSeed, std::uint32_t index, int size = 32);

/// Pattern used by MakeProceduralTexture for a given index (cycles through
/// noise, stripes, checker).
TexturePattern PatternForIndex(std::uint32_t index);

std::vector<std::shared_ptr<const Texture>> MakeTextureSet(std::uint64_t setSeed, std::uint32_t count, int size = 32);

}  // namespace perceptforge
