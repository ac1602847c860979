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
#include <filesystem>
#include <span>
#include <vector>

#include "perceptforge/labelers.hpp"

namespace perceptforge {

/// 8-bit RGB, non-interlaced, fixed compression settings: identical pixels
/// always encode to identical bytes.
std::vector<std::uint8_t> EncodePng(const Image8 &image);
std::vector<std::uint8_t> EncodePng(std::span<const std::uint8_t> rgb, int width, int height);

/// Decodes any 8-bit PNG into RGB. Throws kIoFailure on unreadable input.
Image8 DecodePng(std::span<const std::uint8_t> bytes);
Image8 ReadPng(const std::filesystem::path &path);

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path &path);
void WriteFileBytes(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);

}  // namespace perceptforge
