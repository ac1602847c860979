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
#include <utility>
#include <variant>
#include <vector>

namespace perceptforge {

/// Address of one scalar draw. Every field takes part in the hash, so a draw
/// can be reproduced without replaying any sequential generator state.
struct SampleKey {
  std::uint64_t scenarioSeed = 0;
  std::uint64_t iterationIndex = 0;
  std::uint32_t randomizerOrderIndex = 0;
  std::uint32_t parameterIndex = 0;
  std::uint32_t componentIndex = 0;
  std::uint64_t drawIndex = 0;  // resets at every iteration boundary

  bool operator==(const SampleKey &) const = default;
};

/// 64-bit counter hash of the key (splitmix64 finalizer chained over the fields).
std::uint64_t HashKey(const SampleKey &key);

/// Uniform double in [0, 1) with 53 random bits.
double UnitUniform(const SampleKey &key);

struct ConstantSampler {
  double value = 0.0;
};

struct UniformSampler {
  double lo = 0.0;
  double hi = 1.0;
};

/// Normal(mean, stdDev) truncated to [lo, hi].
struct NormalSampler {
  double mean = 0.0;
  double stdDev = 1.0;
  double lo = -1e300;
  double hi = 1e300;
};

/// Piecewise-linear density through (x, density) points with strictly
/// increasing x; normalized to unit area before sampling.
struct CurveSampler {
  std::vector<std::pair<double, double>> points;
};

using Sampler = std::variant<ConstantSampler, UniformSampler, NormalSampler, CurveSampler>;

/// Throws kInvalidArgument for malformed parameters and kDegenerateCurve for
/// an all-zero curve.
void ValidateSampler(const Sampler &sampler);

/// Pure function of (sampler, key).
double Sample(const Sampler &sampler, const SampleKey &key);

/// x with CDF(x) = u for the normalized curve density; u is clamped into [0, 1].
double CurveInverseCdf(const CurveSampler &curve, double u);

/// Standard normal CDF.
double NormalCdf(double x);

/// Inverse standard normal CDF (Acklam's rational approximation, relative
/// error below 1.15e-9 on (0, 1)).
double Probit(double p);

/// Convenience: Constant when lo == hi, otherwise Uniform(lo, hi).
Sampler RangeSampler(double lo, double hi);

}  // namespace perceptforge
