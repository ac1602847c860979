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

#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <set>
#include <vector>

#include "perceptforge/error.hpp"
#include "perceptforge/sampling.hpp"
#include "support/oracles.hpp"

using namespace perceptforge;

namespace {

std::vector<double> Draws(const Sampler &s, std::size_t n, std::uint64_t seed = 1) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = Sample(s, SampleKey{seed, 3, 1, 2, 0, i});
  return out;
}

// Analytic CDF of the normalized piecewise-linear density, integrating each
// trapezoid directly.
double CurveCdf(const CurveSampler &c, double x) {
  double total = 0;
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    const auto [x0, d0] = c.points[i];
    const auto [x1, d1] = c.points[i + 1];
    total += 0.5 * (d0 + d1) * (x1 - x0);
  }
  double acc = 0;
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    const auto [x0, d0] = c.points[i];
    const auto [x1, d1] = c.points[i + 1];
    if (x <= x0) break;
    const double t = std::min(x, x1) - x0;
    const double slope = (d1 - d0) / (x1 - x0);
    acc += d0 * t + 0.5 * slope * t * t;
  }
  return std::clamp(acc / total, 0.0, 1.0);
}

}  // namespace

TEST_CASE("constant sampler") {
  for (std::uint64_t i = 0; i < 100; ++i) CHECK(Sample(ConstantSampler{5.0}, SampleKey{i, i, 0, 0, 0, i}) == 5.0);
}

TEST_CASE("unit uniform spans [0, 1)") {
  double lo = 1, hi = 0;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = UnitUniform(SampleKey{0, 0, 0, 0, 0, i});
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 1e-3);
  CHECK(hi > 1 - 1e-3);
}

TEST_CASE("every key field changes the draw") {
  const SampleKey base{1, 2, 3, 4, 5, 6};
  const double u = UnitUniform(base);
  std::set<double> seen{u};
  for (int f = 0; f < 6; ++f) {
    SampleKey k = base;
    switch (f) {
      case 0: k.scenarioSeed++; break;
      case 1: k.iterationIndex++; break;
      case 2: k.randomizerOrderIndex++; break;
      case 3: k.parameterIndex++; break;
      case 4: k.componentIndex++; break;
      default: k.drawIndex++; break;
    }
    seen.insert(UnitUniform(k));
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("uniform passes KS and stays in [lo, hi)") {
  const UniformSampler u{-2.0, 3.0};
  const auto xs = Draws(u, 100000);
  for (double x : xs) {
    REQUIRE(x >= -2.0);
    REQUIRE(x < 3.0);
  }
  const double d = oracle::KsStatistic(xs, [](double x) { return (x + 2.0) / 5.0; });
  CHECK(d < oracle::KsCritical01(xs.size()));
}

TEST_CASE("truncated normal passes KS") {
  const NormalSampler n{1.0, 2.0, -0.5, 4.0};
  const auto xs = Draws(n, 100000, 7);
  for (double x : xs) {
    REQUIRE(x >= -0.5);
    REQUIRE(x <= 4.0);
  }
  const double a = oracle::StdNormalCdf((-0.5 - 1.0) / 2.0);
  const double b = oracle::StdNormalCdf((4.0 - 1.0) / 2.0);
  const double d = oracle::KsStatistic(xs, [&](double x) { return (oracle::StdNormalCdf((x - 1.0) / 2.0) - a) / (b - a); });
  CHECK(d < oracle::KsCritical01(xs.size()));

  const auto ys = Draws(NormalSampler{0.0, 1.0}, 100000, 8);
  const double d2 = oracle::KsStatistic(ys, oracle::StdNormalCdf);
  CHECK(d2 < oracle::KsCritical01(ys.size()));
}

TEST_CASE("probit inverts the normal CDF") {
  for (double p = 1e-6; p < 1; p += 0.01) {
    const double x = Probit(p);
    CHECK(std::fabs(oracle::StdNormalCdf(x) - p) <= 1.2e-9 * std::max(1.0, 1 / p));
  }
}

TEST_CASE("flat curve behaves as uniform") {
  const CurveSampler flat{{{0, 1}, {1, 1}}};
  CHECK(std::fabs(CurveInverseCdf(flat, 0.5) - 0.5) <= 1e-12);
  const auto xs = Draws(flat, 100000, 9);
  const double d = oracle::KsStatistic(xs, [](double x) { return x; });
  CHECK(d < oracle::KsCritical01(xs.size()));
}

TEST_CASE("curve inverse CDF: endpoints, triangle, monotone") {
  const CurveSampler tri{{{0, 0}, {1, 2}}};
  CHECK(std::fabs(CurveInverseCdf(tri, 0.25) - 0.5) <= 1e-9);
  for (double u = 0; u <= 1; u += 0.01) CHECK(std::fabs(CurveInverseCdf(tri, u) - std::sqrt(u)) <= 1e-9);

  const CurveSampler bumpy{{{-1, 0.5}, {0, 2}, {0.5, 0}, {2, 1}, {3, 0}}};
  CHECK(CurveInverseCdf(bumpy, 0.0) == doctest::Approx(-1.0));
  CHECK(CurveInverseCdf(bumpy, 1.0) == doctest::Approx(3.0));
  double last = -1e9;
  for (double u = 0; u <= 1.0; u += 0.001) {
    const double x = CurveInverseCdf(bumpy, u);
    CHECK(x >= last);
    CHECK(x >= -1.0);
    CHECK(x <= 3.0);
    CHECK(std::fabs(CurveCdf(bumpy, x) - u) <= 1e-9);
    last = x;
  }
}

TEST_CASE("curve histogram within total variation 0.02") {
  const CurveSampler c{{{0, 0.2}, {1, 3}, {2, 0.5}, {4, 1.5}}};
  const auto xs = Draws(c, 100000, 10);
  const int bins = 40;
  std::vector<double> hist(bins, 0);
  for (double x : xs) hist[std::min(bins - 1, static_cast<int>(x / 4.0 * bins))] += 1.0 / xs.size();
  double tv = 0;
  for (int i = 0; i < bins; ++i) {
    const double p = CurveCdf(c, 4.0 * (i + 1) / bins) - CurveCdf(c, 4.0 * i / bins);
    tv += std::fabs(hist[i] - p);
  }
  CHECK(tv / 2 < 0.02);
}

TEST_CASE("sampler validation") {
  CHECK_THROWS_AS(ValidateSampler(UniformSampler{1, 1}), Error);
  CHECK_THROWS_AS(ValidateSampler(NormalSampler{0, 0}), Error);
  CHECK_THROWS_AS(ValidateSampler(NormalSampler{0, 1, 2, 1}), Error);
  CHECK_THROWS_AS(ValidateSampler(CurveSampler{{{0, 1}}}), Error);
  CHECK_THROWS_AS(ValidateSampler(CurveSampler{{{0, 1}, {0, 1}}}), Error);
  CHECK_THROWS_AS(ValidateSampler(CurveSampler{{{0, 1}, {1, -1}}}), Error);
  try {
    ValidateSampler(CurveSampler{{{0, 0}, {1, 0}}});
    FAIL("expected throw");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kDegenerateCurve);
  }
  CHECK(std::holds_alternative<ConstantSampler>(RangeSampler(2, 2)));
  CHECK(std::holds_alternative<UniformSampler>(RangeSampler(2, 3)));
}

TEST_CASE("draws are independent of call order and threads") {
  const UniformSampler u{0, 1};
  const std::size_t n = 20000;
  const auto forward = Draws(u, n);
  std::vector<double> parallel(n);
#pragma omp parallel for schedule(dynamic, 7)
  for (std::int64_t i = static_cast<std::int64_t>(n) - 1; i >= 0; --i) {
    parallel[i] = Sample(u, SampleKey{1, 3, 1, 2, 0, static_cast<std::uint64_t>(i)});
  }
  CHECK(forward == parallel);
}
