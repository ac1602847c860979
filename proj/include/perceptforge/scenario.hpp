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
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perceptforge/dataset.hpp"
#include "perceptforge/labelers.hpp"
#include "perceptforge/render.hpp"
#include "perceptforge/sampling.hpp"
#include "perceptforge/scene.hpp"

namespace perceptforge {

struct ScenarioConstants {
  std::uint64_t seed = 0;
  std::uint64_t iterationCount = 1;
  std::uint32_t framesPerIteration = 1;

  void Validate() const;
};

struct ParameterSpec {
  std::string name;
  std::vector<Sampler> components;  // one per scalar component
};

/// Half-open range of global iteration indices.
struct IterationRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const { return end - begin; }
  bool operator==(const IterationRange &) const = default;
};

/// Contiguous split of [0, iterationCount); the first (count % workers)
/// workers take one extra iteration each.
IterationRange ShardScenario(const ScenarioConstants &constants, std::uint32_t workerIndex, std::uint32_t workerCount);

/// Mutable scene of one iteration. Objects persist across the frames of the
/// iteration; randomizers add or edit them.
struct FrameState {
  Scene scene;
  PostProcessSettings post;
  std::uint32_t nextInstanceId = 1;

  /// Assigns the next instance id and appends the object.
  SceneObject &Add(SceneObject object);
};

/// Base scene shared by every iteration: camera, static objects, lights and
/// default post-processing. Static objects get ids 1..n in list order.
class SceneBuilder {
 public:
  SceneBuilder() = default;
  explicit SceneBuilder(Scene base, PostProcessSettings post = {});

  FrameState Begin() const;
  const Scene &base() const { return base_; }
  const PostProcessSettings &post() const { return post_; }

 private:
  Scene base_;
  PostProcessSettings post_;
};

class Randomizer;

namespace detail {
struct ContextAccess;
}

/// Per-iteration state handed to randomizer callbacks. Draw counters are
/// keyed by (randomizer, parameter, component) and start at zero for every
/// iteration, so each draw's SampleKey is independent of scheduling.
class IterationContext {
 public:
  IterationContext(const ScenarioConstants &constants, std::uint64_t iteration, FrameState state);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t iteration() const { return iteration_; }
  std::uint32_t step() const { return step_; }
  std::uint32_t activeRandomizer() const { return active_; }
  FrameState &state() { return state_; }
  const FrameState &state() const { return state_; }

  /// Next draw for (active randomizer, parameter, component).
  double Draw(const Sampler &sampler, std::uint32_t parameterIndex, std::uint32_t componentIndex);

  /// Key the next Draw on this slot would use.
  SampleKey PeekKey(std::uint32_t parameterIndex, std::uint32_t componentIndex) const;

 private:
  friend struct detail::ContextAccess;

  std::uint64_t seed_;
  std::uint64_t iteration_;
  std::uint32_t step_ = 0;
  std::uint32_t active_ = 0;
  FrameState state_;
  std::map<std::array<std::uint32_t, 3>, std::uint64_t> counters_;
};

/// Scenario lifecycle participant. Iteration-level callbacks are const: a
/// randomizer is shared by iterations that may run concurrently, so all
/// per-iteration state lives in the context.
class Randomizer {
 public:
  virtual ~Randomizer() = default;

  virtual std::string_view kind() const = 0;

  virtual void OnScenarioStart() {}
  virtual void OnIterationStart(IterationContext &) const {}
  virtual void OnUpdate(IterationContext &) const {}
  virtual void OnIterationEnd(IterationContext &) const {}
  virtual void OnScenarioEnd() {}

  const std::vector<ParameterSpec> &parameters() const { return parameters_; }
  const ParameterSpec &parameter(std::string_view name) const;

  /// Replaces the samplers of a declared parameter; arity must match.
  void OverrideParameter(std::string_view name, std::vector<Sampler> components);

 protected:
  std::uint32_t AddParameter(std::string name, std::vector<Sampler> components);
  double Draw(IterationContext &ctx, std::uint32_t parameterIndex, std::uint32_t componentIndex = 0) const;

 private:
  std::vector<ParameterSpec> parameters_;
};

struct LabelerInput {
  const ScenarioConstants &constants;
  std::uint64_t iteration;
  std::uint32_t step;
  const Scene &scene;
  const FrameBuffers &frames;
  const std::string &captureId;
};

struct LabelerOutput {
  AnnotationRecord annotation;  // id and definition are pre-filled
  std::vector<ImageFile> images;
  std::vector<MetricRecord> metrics;
};

/// Produces one annotation per capture.
class Labeler {
 public:
  virtual ~Labeler() = default;
  virtual AnnotationDefinition Definition() const = 0;
  virtual std::vector<MetricDefinition> MetricDefinitions() const { return {}; }
  virtual void Annotate(const LabelerInput &input, LabelerOutput &output) const = 0;
};

enum class LabelerKind { kBBox2D, kBBox3D, kInstanceSegmentation, kSemanticSegmentation, kKeypoints };

std::optional<LabelerKind> ParseLabelerKind(std::string_view name);
std::string_view ToString(LabelerKind kind);

std::shared_ptr<const Labeler> MakeLabeler(LabelerKind kind, std::shared_ptr<const LabelConfig> config,
                                           UnknownLabelPolicy policy = UnknownLabelPolicy::kFail);

/// Definition and metric ids are fixed per name so datasets from different
/// seeds share them.
std::string DefinitionId(std::string_view name);

inline constexpr std::string_view kObjectCountMetric = "object count";
inline constexpr std::string_view kVisiblePixelsMetric = "visible pixels";

/// Relative paths of the images for one capture.
std::string RgbFileName(std::uint64_t iteration, std::uint32_t step);
std::string SegmentationFileName(std::string_view kind, std::uint64_t iteration, std::uint32_t step);

/// Scene state of one iteration's first frame: every OnIterationStart, then
/// every OnUpdate for step 0, with the same draw addressing as RunScenario.
FrameState PreviewIteration(const ScenarioConstants &constants,
                            std::span<const std::shared_ptr<Randomizer>> randomizers, const SceneBuilder &env,
                            std::uint64_t iteration);

struct RunOptions {
  /// Defaults to every iteration.
  std::optional<IterationRange> range;
  /// kParallel runs independent iterations on OpenMP threads; records are
  /// still written in (iteration, step) order.
  ExecutionPolicy policy = ExecutionPolicy::kParallel;
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

/// Drives the lifecycle: OnScenarioStart, then per iteration OnIterationStart,
/// framesPerIteration x (OnUpdate, render, labelers, capture), OnIterationEnd;
/// finally OnScenarioEnd and writer finalization.
DatasetSummary RunScenario(const ScenarioConstants &constants, std::span<const std::shared_ptr<Randomizer>> randomizers,
                           const SceneBuilder &env, std::span<const std::shared_ptr<const Labeler>> labelers,
                           DatasetWriter &writer, const RunOptions &options = {});

}  // namespace perceptforge
