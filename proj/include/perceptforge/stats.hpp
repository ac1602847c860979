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
#include <map>
#include <string>
#include <vector>

#include "perceptforge/dataset.hpp"

namespace perceptforge {

struct ObjectSize {
  std::string captureId;
  std::uint32_t instanceId = 0;
  std::string label;
  std::uint64_t pixels = 0;
  std::uint64_t imagePixels = 0;
  double relativeSize = 0.0;
};

struct DatasetStats {
  std::uint64_t captures = 0;
  std::uint64_t objects = 0;
  std::map<std::string, std::uint64_t> perLabelTotals;
  std::map<std::uint64_t, std::uint64_t> objectsPerCapture;  // object count -> captures
  std::vector<ObjectSize> sizes;                              // capture order, then instance id

  /// `perObject` adds the full size list.
  Json ToJson(bool perObject = false) const;
};

/// sqrt(occupied pixels / image pixels).
double RelativeSize(std::uint64_t pixels, std::uint64_t imagePixels);

inline constexpr int kRelativeSizeBins = 20;  // equal-width bins over [0, 1]

/// Counts come from the 2D box annotations; occupied pixels from the decoded
/// instance-segmentation masks. Throws kIoFailure when files are unreadable.
DatasetStats ComputeStats(const std::filesystem::path &root);

}  // namespace perceptforge
