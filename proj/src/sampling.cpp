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

#include "perceptforge/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "perceptforge/error.hpp"

namespace perceptforge {

namespace {

constexpr std::uint64_t Mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double SampleNormal(const NormalSampler &n, double u) {
  const double a = NormalCdf((n.lo - n.mean) / n.stdDev);
  const double b = NormalCdf((n.hi - n.mean) / n.stdDev);
  constexpr double kTiny = 1e-300;
  const double p = std::clamp(a + u * (b - a), kTiny, 1.0 - std::numeric_limits<double>::epsilon() / 2);
  return std::clamp(n.mean + n.stdDev * Probit(p), n.lo, n.hi);
}

}  // namespace

std::uint64_t HashKey(const SampleKey &key) {
  std::uint64_t h = Mix(key.scenarioSeed);
  h = Mix(h ^ key.iterationIndex);
  h = Mix(h ^ key.randomizerOrderIndex);
  h = Mix(h ^ key.parameterIndex);
  h = Mix(h ^ key.componentIndex);
  h = Mix(h ^ key.drawIndex);
  return h;
}

double UnitUniform(const SampleKey &key) {
  return static_cast<double>(HashKey(key) >> 11) * 0x1.0p-53;
}

void ValidateSampler(const Sampler &sampler) {
  std::visit(Overloaded{
                 [](const ConstantSampler &) {},
                 [](const UniformSampler &s) {
                   if (!(s.lo < s.hi)) throw Error(ErrorCode::kInvalidArgument, "uniform sampler needs lo < hi");
                 },
                 [](const NormalSampler &s) {
                   if (!(s.stdDev > 0)) throw Error(ErrorCode::kInvalidArgument, "normal sampler needs stdDev > 0");
                   if (!(s.lo < s.hi)) throw Error(ErrorCode::kInvalidArgument, "normal sampler needs lo < hi");
                 },
                 [](const CurveSampler &s) {
                   if (s.points.size() < 2) throw Error(ErrorCode::kInvalidArgument, "curve needs >= 2 points");
                   bool anyPositive = false;
                   for (std::size_t i = 0; i < s.points.size(); ++i) {
                     if (s.points[i].second < 0) throw Error(ErrorCode::kInvalidArgument, "negative curve density");
                     if (i > 0 && !(s.points[i].first > s.points[i - 1].first)) {
                       throw Error(ErrorCode::kInvalidArgument, "curve x must be strictly increasing");
                     }
                     anyPositive = anyPositive || s.points[i].second > 0;
                   }
                   if (!anyPositive) throw Error(ErrorCode::kDegenerateCurve, "all curve densities are zero");
                 },
             },
             sampler);
}

double Sample(const Sampler &sampler, const SampleKey &key) {
  return std::visit(Overloaded{
                        [](const ConstantSampler &s) { return s.value; },
                        [&](const UniformSampler &s) {
                          const double x = s.lo + (s.hi - s.lo) * UnitUniform(key);
                          return x < s.hi ? x : std::nextafter(s.hi, s.lo);
                        },
                        [&](const NormalSampler &s) { return SampleNormal(s, UnitUniform(key)); },
                        [&](const CurveSampler &s) { return CurveInverseCdf(s, UnitUniform(key)); },
                    },
                    sampler);
}

double CurveInverseCdf(const CurveSampler &curve, double u) {
  ValidateSampler(curve);
  const auto &pts = curve.points;
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    total += 0.5 * (pts[i - 1].second + pts[i].second) * (pts[i].first - pts[i - 1].first);
  }
  if (u <= 0.0) return pts.front().first;
  if (u >= 1.0) return pts.back().first;

  double remaining = u * total;  // in unnormalized area units
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double x0 = pts[i - 1].first;
    const double width = pts[i].first - x0;
    const double d0 = pts[i - 1].second;
    const double d1 = pts[i].second;
    const double area = 0.5 * (d0 + d1) * width;
    if (remaining > area && i + 1 < pts.size()) {
      remaining -= area;
      continue;
    }
    if (area <= 0.0) continue;
    remaining = std::min(remaining, area);
    // Solve d0 t + (d1 - d0) t^2 / (2 width) = remaining for t in [0, width];
    // the rationalized root stays accurate when d0 is zero or the slope is tiny.
    const double slope = (d1 - d0) / width;
    const double disc = std::max(0.0, d0 * d0 + 2.0 * slope * remaining);
    const double t = 2.0 * remaining / (d0 + std::sqrt(disc));
    return std::clamp(x0 + t, x0, pts[i].first);
  }
  return pts.back().first;
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double Probit(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  constexpr double kHigh = 1.0 - kLow;

  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > kHigh) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

Sampler RangeSampler(double lo, double hi) {
  if (lo == hi) return ConstantSampler{lo};
  return UniformSampler{lo, hi};
}

}  // namespace perceptforge
