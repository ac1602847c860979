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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "perceptforge/dataset.hpp"
#include "perceptforge/scenario.hpp"
#include "perceptforge/synthdet.hpp"

namespace perceptforge {

/// Everything needed to call RunScenario, built from a config document.
struct Scenario {
  ScenarioConstants constants;
  SceneBuilder env;
  std::shared_ptr<const LabelConfig> labels;
  std::vector<std::shared_ptr<Randomizer>> randomizers;
  std::vector<std::shared_ptr<const Labeler>> labelers;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> iterations;
  std::optional<std::pair<int, int>> resolution;
};

/// Parses a sampler spec: {"kind": "constant", "value"} | {"kind": "uniform",
/// "lo", "hi"} | {"kind": "normal", "mean", "std_dev", "lo", "hi"} |
/// {"kind": "curve", "points": [[x, density], ...]}. Throws kConfig.
Sampler ParseSampler(const Json &j);

SynthDetConfig ParseSynthDetConfig(const Json &j);

/// Throws kConfig on any malformed or unknown field.
Scenario BuildScenario(const Json &config, const ConfigOverrides &overrides = {});
Scenario LoadScenario(const std::filesystem::path &path, const ConfigOverrides &overrides = {});

}  // namespace perceptforge
