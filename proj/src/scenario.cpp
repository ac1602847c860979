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

#include "perceptforge/scenario.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

#include "perceptforge/error.hpp"
#include "perceptforge/png_io.hpp"

namespace perceptforge {

namespace detail {

struct ContextAccess {
  static void SetActive(IterationContext &ctx, std::uint32_t index) { ctx.active_ = index; }
  static void SetStep(IterationContext &ctx, std::uint32_t step) { ctx.step_ = step; }
};

}  // namespace detail

namespace {

using detail::ContextAccess;

struct FrameOutput {
  CaptureRecord capture;
  std::vector<ImageFile> images;
  std::vector<MetricRecord> metrics;
};

struct IterationOutput {
  std::vector<FrameOutput> frames;
  std::exception_ptr error;
};

[[noreturn]] void RethrowWithContext(std::exception_ptr error, std::uint64_t iteration, std::uint32_t frame) {
  const std::string where = "iteration " + std::to_string(iteration) + " frame " + std::to_string(frame) + ": ";
  try {
    std::rethrow_exception(error);
  } catch (const Error &e) {
    throw Error(e.code(), where + e.detail());
  } catch (const std::exception &e) {
    throw Error(ErrorCode::kScenario, where + e.what());
  }
}

struct IterationJob {
  const ScenarioConstants &constants;
  std::span<const std::shared_ptr<Randomizer>> randomizers;
  const SceneBuilder &env;
  std::span<const std::shared_ptr<const Labeler>> labelers;
  const std::vector<std::string> &definitionIds;

  // Runs one iteration start to end. Any exception carries the frame index
  // it escaped from.
  IterationOutput Run(std::uint64_t iteration, std::uint32_t *failedFrame) const {
    IterationOutput out;
    IterationContext ctx(constants, iteration, env.Begin());
    *failedFrame = 0;
    for (std::uint32_t r = 0; r < randomizers.size(); ++r) {
      ContextAccess::SetActive(ctx, r);
      randomizers[r]->OnIterationStart(ctx);
    }
    for (std::uint32_t step = 0; step < constants.framesPerIteration; ++step) {
      *failedFrame = step;
      ContextAccess::SetStep(ctx, step);
      for (std::uint32_t r = 0; r < randomizers.size(); ++r) {
        ContextAccess::SetActive(ctx, r);
        randomizers[r]->OnUpdate(ctx);
      }
      out.frames.push_back(Capture(ctx, iteration, step));
    }
    for (std::uint32_t r = 0; r < randomizers.size(); ++r) {
      ContextAccess::SetActive(ctx, r);
      randomizers[r]->OnIterationEnd(ctx);
    }
    return out;
  }

  FrameOutput Capture(IterationContext &ctx, std::uint64_t iteration, std::uint32_t step) const {
    const FrameState &state = ctx.state();
    const Scene &scene = state.scene;
    // Iterations are already spread over threads; keep each render serial.
    const FrameBuffers frames = Render(scene, state.post, ExecutionPolicy::kSerial);

    FrameOutput out;
    CaptureRecord &capture = out.capture;
    capture.id = MakeId(constants.seed, iteration, step, "capture", 0);
    capture.sequenceId = MakeId(constants.seed, iteration, 0, "sequence", 0);
    capture.iteration = iteration;
    capture.step = step;
    capture.timestamp = step * kFramePeriodSeconds;
    capture.sensor.translation = scene.camera.pose.translation;
    capture.sensor.rotation = scene.camera.pose.rotation;
    capture.sensor.intrinsics = scene.camera.Intrinsics();
    capture.filename = RgbFileName(iteration, step);
    out.images.push_back({capture.filename, EncodePng(frames.rgb, frames.width, frames.height)});

    const LabelerInput input{constants, iteration, step, scene, frames, capture.id};
    for (std::size_t l = 0; l < labelers.size(); ++l) {
      LabelerOutput result;
      result.annotation.id = MakeId(constants.seed, iteration, step, "annotation", l);
      result.annotation.annotationDefinition = definitionIds[l];
      labelers[l]->Annotate(input, result);
      capture.annotations.push_back(std::move(result.annotation));
      for (auto &img : result.images) out.images.push_back(std::move(img));
      for (auto &m : result.metrics) out.metrics.push_back(std::move(m));
    }
    return out;
  }
};

}  // namespace

void ScenarioConstants::Validate() const {
  if (iterationCount < 1) throw Error(ErrorCode::kConfig, "iteration count must be at least 1");
  if (framesPerIteration < 1) throw Error(ErrorCode::kConfig, "frames per iteration must be at least 1");
}

IterationRange ShardScenario(const ScenarioConstants &constants, std::uint32_t workerIndex,
                             std::uint32_t workerCount) {
  if (workerCount == 0) throw Error(ErrorCode::kInvalidArgument, "worker count must be positive");
  if (workerIndex >= workerCount) throw Error(ErrorCode::kInvalidArgument, "worker index out of range");
  const std::uint64_t base = constants.iterationCount / workerCount;
  const std::uint64_t extra = constants.iterationCount % workerCount;
  const std::uint64_t begin = workerIndex * base + std::min<std::uint64_t>(workerIndex, extra);
  const std::uint64_t size = base + (workerIndex < extra ? 1 : 0);
  return {begin, begin + size};
}

SceneObject &FrameState::Add(SceneObject object) {
  object.instanceId = nextInstanceId++;
  scene.objects.push_back(std::move(object));
  return scene.objects.back();
}

SceneBuilder::SceneBuilder(Scene base, PostProcessSettings post) : base_(std::move(base)), post_(post) {
  base_.camera.Validate();
  post_.Validate();
  for (const auto &light : base_.lights) light.Validate();
}

FrameState SceneBuilder::Begin() const {
  FrameState state;
  state.scene.camera = base_.camera;
  state.scene.lights = base_.lights;
  state.post = post_;
  for (const auto &obj : base_.objects) state.Add(obj);
  return state;
}

IterationContext::IterationContext(const ScenarioConstants &constants, std::uint64_t iteration, FrameState state)
    : seed_(constants.seed), iteration_(iteration), state_(std::move(state)) {}

SampleKey IterationContext::PeekKey(std::uint32_t parameterIndex, std::uint32_t componentIndex) const {
  auto it = counters_.find({active_, parameterIndex, componentIndex});
  const std::uint64_t draw = it == counters_.end() ? 0 : it->second;
  return {seed_, iteration_, active_, parameterIndex, componentIndex, draw};
}

double IterationContext::Draw(const Sampler &sampler, std::uint32_t parameterIndex, std::uint32_t componentIndex) {
  const SampleKey key = PeekKey(parameterIndex, componentIndex);
  counters_[{active_, parameterIndex, componentIndex}] = key.drawIndex + 1;
  return Sample(sampler, key);
}

const ParameterSpec &Randomizer::parameter(std::string_view name) const {
  for (const auto &p : parameters_) {
    if (p.name == name) return p;
  }
  throw Error(ErrorCode::kConfig, std::string(kind()) + " has no parameter '" + std::string(name) + "'");
}

void Randomizer::OverrideParameter(std::string_view name, std::vector<Sampler> components) {
  for (auto &p : parameters_) {
    if (p.name != name) continue;
    if (components.size() != p.components.size()) {
      throw Error(ErrorCode::kConfig, std::string(kind()) + "." + p.name + " expects " +
                                          std::to_string(p.components.size()) + " component(s)");
    }
    for (const auto &s : components) ValidateSampler(s);
    p.components = std::move(components);
    return;
  }
  throw Error(ErrorCode::kConfig, std::string(kind()) + " has no parameter '" + std::string(name) + "'");
}

std::uint32_t Randomizer::AddParameter(std::string name, std::vector<Sampler> components) {
  for (const auto &s : components) ValidateSampler(s);
  parameters_.push_back({std::move(name), std::move(components)});
  return static_cast<std::uint32_t>(parameters_.size() - 1);
}

double Randomizer::Draw(IterationContext &ctx, std::uint32_t parameterIndex, std::uint32_t componentIndex) const {
  return ctx.Draw(parameters_.at(parameterIndex).components.at(componentIndex), parameterIndex, componentIndex);
}

FrameState PreviewIteration(const ScenarioConstants &constants,
                            std::span<const std::shared_ptr<Randomizer>> randomizers, const SceneBuilder &env,
                            std::uint64_t iteration) {
  IterationContext ctx(constants, iteration, env.Begin());
  for (std::uint32_t r = 0; r < randomizers.size(); ++r) {
    ContextAccess::SetActive(ctx, r);
    randomizers[r]->OnIterationStart(ctx);
  }
  for (std::uint32_t r = 0; r < randomizers.size(); ++r) {
    ContextAccess::SetActive(ctx, r);
    randomizers[r]->OnUpdate(ctx);
  }
  return std::move(ctx.state());
}

DatasetSummary RunScenario(const ScenarioConstants &constants, std::span<const std::shared_ptr<Randomizer>> randomizers,
                           const SceneBuilder &env, std::span<const std::shared_ptr<const Labeler>> labelers,
                           DatasetWriter &writer, const RunOptions &options) {
  constants.Validate();
  const IterationRange range = options.range.value_or(IterationRange{0, constants.iterationCount});
  if (range.begin > range.end || range.end > constants.iterationCount) {
    throw Error(ErrorCode::kInvalidArgument, "iteration range outside the scenario");
  }

  std::vector<std::string> definitionIds;
  for (const auto &labeler : labelers) {
    const AnnotationDefinition def = labeler->Definition();
    definitionIds.push_back(def.id);
    writer.RegisterAnnotationDefinition(def);
    for (const auto &m : labeler->MetricDefinitions()) writer.RegisterMetricDefinition(m);
  }

  for (const auto &r : randomizers) r->OnScenarioStart();

  const IterationJob job{constants, randomizers, env, labelers, definitionIds};
  const bool parallel = options.policy == ExecutionPolicy::kParallel;
  const int threads = parallel ? ThreadCount() : 1;
  // Bounded batches keep memory flat while every thread has work.
  const std::uint64_t batch = static_cast<std::uint64_t>(std::max(1, threads)) * 4;

  for (std::uint64_t start = range.begin; start < range.end; start += batch) {
    const std::uint64_t stop = std::min(range.end, start + batch);
    const auto count = static_cast<std::int64_t>(stop - start);
    std::vector<IterationOutput> outputs(count);
    std::vector<std::uint32_t> failedFrames(count, 0);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (parallel)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        outputs[i] = job.Run(start + i, &failedFrames[i]);
      } catch (...) {
        outputs[i].error = std::current_exception();
      }
    }

    for (std::int64_t i = 0; i < count; ++i) {
      if (outputs[i].error) RethrowWithContext(outputs[i].error, start + i, failedFrames[i]);
      for (std::uint32_t f = 0; f < outputs[i].frames.size(); ++f) {
        auto &frame = outputs[i].frames[f];
        try {
          writer.WriteCapture(frame.capture, frame.images);
          for (const auto &m : frame.metrics) writer.WriteMetric(m);
        } catch (...) {
          RethrowWithContext(std::current_exception(), start + i, f);
        }
      }
    }
    if (options.progress) options.progress(stop - range.begin, range.size());
  }

  for (const auto &r : randomizers) r->OnScenarioEnd();
  return writer.Finalize();
}

}  // namespace perceptforge
