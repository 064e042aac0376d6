// Copyright 2026 The cvclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cvclone/cloners.hpp"
#include "cvclone/measurement.hpp"
#include "test_support.hpp"

namespace cvclone {
namespace {

constexpr std::size_t kCount = 100000;

// |estimate - expected| <= 3 standard errors.
#define EXPECT_WITHIN_3SE(estimate, expected, se) EXPECT_LE(std::abs((estimate) - (expected)), 3.0 * (se))

TEST(CounterRng, IsDeterministicAndStreamsDiffer) {
  CounterRng a(42), b(42), c(42, 1), d(43);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t va = a.nextU64();
    EXPECT_EQ(va, b.nextU64());
    EXPECT_NE(va, c.nextU64());
    EXPECT_NE(va, d.nextU64());
  }
}

TEST(CounterRng, UniformStaysInOpenInterval) {
  CounterRng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Homodyne, VacuumVarianceIsHalf) {
  const MomentEstimate m = estimateMeanVar(homodyneSample(GaussianState::vacuum(1), Quadrature::X, kCount, 1));
  EXPECT_WITHIN_3SE(m.variance, 0.5, m.varianceStdError);
  EXPECT_WITHIN_3SE(m.mean, 0.0, m.meanStdError);
}

TEST(Homodyne, CoherentMean) {
  const MomentEstimate m =
      estimateMeanVar(homodyneSample(GaussianState::coherent({2.0, 0.0}), Quadrature::X, kCount, 2));
  EXPECT_WITHIN_3SE(m.mean, 2.0, m.meanStdError);
}

TEST(Homodyne, CloneOfVacuumHasUnitVariance) {
  const GaussianState clone = reduceToModes(runCloner(buildCircuitCloner(), GaussianState::vacuum(1)).output, {1});
  const MomentEstimate m = estimateMeanVar(homodyneSample(clone, Quadrature::P, kCount, 3));
  EXPECT_WITHIN_3SE(m.variance, 1.0, m.varianceStdError);
}

TEST(Homodyne, RejectsInvalidStates) {
  EXPECT_THROW(homodyneSample(GaussianState(Vector::Zero(2), 0.1 * Matrix::Identity(2, 2)), Quadrature::X, 10, 0),
               InvalidState);
  EXPECT_THROW(homodyneSample(GaussianState::vacuum(2), Quadrature::X, 10, 0), DimensionError);
}

TEST(JointMeasurement, CoherentStateCostsTwiceVacuumNoise) {
  const auto [xs, ps] = jointMeasureSample(GaussianState::coherent({0.3, 0.3}), kCount, 4);
  const MomentEstimate mx = estimateMeanVar(xs);
  const MomentEstimate mp = estimateMeanVar(ps);
  EXPECT_WITHIN_3SE(mx.variance, 1.0, mx.varianceStdError);
  EXPECT_WITHIN_3SE(mp.variance, 1.0, mp.varianceStdError);
}

TEST(JointMeasurement, CloneOutputAddsHalf) {
  const GaussianState clone(Vector::Zero(2), Matrix::Identity(2, 2));
  const auto [xs, ps] = jointMeasureSample(clone, kCount, 5);
  const MomentEstimate mx = estimateMeanVar(xs);
  EXPECT_WITHIN_3SE(mx.variance, 1.5, mx.varianceStdError);
}

TEST(JointMeasurement, RecoversMeans) {
  const auto [xs, ps] = jointMeasureSample(GaussianState::coherent({1.5, -0.7}), kCount, 6);
  const MomentEstimate mx = estimateMeanVar(xs);
  const MomentEstimate mp = estimateMeanVar(ps);
  EXPECT_WITHIN_3SE(mx.mean, 1.5, mx.meanStdError);
  EXPECT_WITHIN_3SE(mp.mean, -0.7, mp.meanStdError);
}

TEST(JointMeasurement, ExcessIsHalfOnRandomStates) {
  // 100 per-state comparisons: each is gated at the Bonferroni-adjusted
  // 4.03 s.e. (family-wise rate of a single 3 s.e. test), and the pooled
  // excess over all states at 3 s.e.
  const double perStateGate = 4.03;
  testing::Generator gen(77);
  double sumExcess = 0.0, sumVar = 0.0;
  int count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const GaussianState s = gen.singleMode();
    const auto [xs, ps] = jointMeasureSample(s, 20000, 1000 + static_cast<std::uint64_t>(trial));
    const MomentEstimate mx = estimateMeanVar(xs);
    const MomentEstimate mp = estimateMeanVar(ps);
    const double ex = mx.variance - s.variance(0, Quadrature::X);
    const double ep = mp.variance - s.variance(0, Quadrature::P);
    EXPECT_LE(std::abs(ex - 0.5), perStateGate * mx.varianceStdError) << trial;
    EXPECT_LE(std::abs(ep - 0.5), perStateGate * mp.varianceStdError) << trial;
    sumExcess += ex + ep;
    sumVar += mx.varianceStdError * mx.varianceStdError + mp.varianceStdError * mp.varianceStdError;
    count += 2;
  }
  EXPECT_WITHIN_3SE(sumExcess / count, 0.5, std::sqrt(sumVar) / count);
}

TEST(JointMeasurement, AveragingNReplicasGivesOneOverN) {
  const std::size_t copies = 4;
  const std::size_t count = 40000;
  std::vector<double> averaged(count, 0.0);
  for (std::size_t c = 0; c < copies; ++c) {
    const auto [xs, ps] = jointMeasureSample(GaussianState::coherent({0.5, 0.5}), count, 900 + c);
    for (std::size_t k = 0; k < count; ++k) averaged[k] += xs.values[k] / static_cast<double>(copies);
  }
  const MomentEstimate m = estimateMeanVar(averaged);
  EXPECT_WITHIN_3SE(m.variance, 1.0 / copies, m.varianceStdError);
}

TEST(JointMeasurement, SameSeedIsBitIdentical) {
  const GaussianState s = GaussianState::squeezed(0.4, {1.0, 2.0});
  const auto a = jointMeasureSample(s, 1000, 123);
  const auto b = jointMeasureSample(s, 1000, 123);
  EXPECT_EQ(a.first.values, b.first.values);
  EXPECT_EQ(a.second.values, b.second.values);
  const auto c = jointMeasureSample(s, 1000, 124);
  EXPECT_NE(a.first.values, c.first.values);
}

TEST(EstimateMeanVar, ConstantBatchHasZeroVariance) {
  const MomentEstimate m = estimateMeanVar(std::vector<double>(50, 3.25));
  EXPECT_DOUBLE_EQ(m.mean, 3.25);
  EXPECT_DOUBLE_EQ(m.variance, 0.0);
}

TEST(EstimateMeanVar, StandardNormalSelfTest) {
  CounterRng rng(2718);
  std::vector<double> xs(kCount);
  for (double& x : xs) x = rng.normal();
  const MomentEstimate m = estimateMeanVar(xs);
  EXPECT_WITHIN_3SE(m.variance, 1.0, m.varianceStdError);
  EXPECT_NEAR(m.varianceStdError, std::sqrt(2.0 / kCount), 1e-3);
}

TEST(EstimateMeanVar, PooledBatchesAreConsistent) {
  const GaussianState s = GaussianState::coherent({0.0, 1.0});
  const SampleBatch a = homodyneSample(s, Quadrature::P, 50000, 10);
  const SampleBatch b = homodyneSample(s, Quadrature::P, 50000, 11);
  std::vector<double> pooled = a.values;
  pooled.insert(pooled.end(), b.values.begin(), b.values.end());
  const MomentEstimate ma = estimateMeanVar(a), mb = estimateMeanVar(b), mp = estimateMeanVar(pooled);
  EXPECT_WITHIN_3SE(mp.variance, 0.5, mp.varianceStdError);
  EXPECT_LE(std::abs(ma.variance - mb.variance), 3.0 * std::hypot(ma.varianceStdError, mb.varianceStdError));
}

TEST(EstimateMeanVar, NeedsTwoSamples) {
  EXPECT_THROW(estimateMeanVar(std::vector<double>{1.0}), TooFewSamples);
}

}  // namespace
}  // namespace cvclone
