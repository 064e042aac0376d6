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

// Homodyne and joint (heterodyne) measurement sampling from Gaussian states.

#ifndef CVCLONE_MEASUREMENT_HPP
#define CVCLONE_MEASUREMENT_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "cvclone/errors.hpp"
#include "cvclone/gaussian.hpp"
#include "cvclone/optics.hpp"
#include "cvclone/random.hpp"

namespace cvclone {

struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;

  std::size_t count() const { return values.size(); }
};

struct MomentEstimate {
  double mean = 0.0;
  double variance = 0.0;
  double meanStdError = 0.0;
  // Gaussian approximation: variance * sqrt(2 / count).
  double varianceStdError = 0.0;
};

namespace detail {

// Symmetric square root factor L with L L^T = cov; tolerates singular
// (PSD) covariances where a Cholesky factorisation would not.
inline Matrix covarianceFactor(const Matrix& cov) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  const Vector root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * root.asDiagonal();
}

inline std::vector<Vector> sampleGaussian(const Vector& mean, const Matrix& cov, std::size_t count,
                                          CounterRng& rng) {
  const Matrix factor = covarianceFactor(cov);
  std::vector<Vector> out;
  out.reserve(count);
  Vector z(mean.size());
  for (std::size_t k = 0; k < count; ++k) {
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    out.push_back(mean + factor * z);
  }
  return out;
}

}  // namespace detail

/// Homodyne detection of one quadrature of a single-mode state.
inline SampleBatch homodyneSample(const GaussianState& state, Quadrature q, std::size_t count,
                                  std::uint64_t seed) {
  if (state.nModes() != 1) throw DimensionError("homodyneSample expects a single-mode state");
  requirePhysical(state, "homodyneSample");
  const double mean = q == Quadrature::X ? state.mean()(0) : state.mean()(1);
  const double sd = std::sqrt(state.variance(0, q));
  CounterRng rng(seed);
  SampleBatch batch{std::vector<double>(count), seed};
  for (double& v : batch.values) v = rng.normal(mean, sd);
  return batch;
}

/// Joint x/p measurement: mix the signal with vacuum on a 50:50 splitter,
/// homodyne x on one output and p on the other, rescale both by sqrt(2).
/// The vacuum port contributes the unavoidable extra 1/2 per quadrature.
inline std::pair<SampleBatch, SampleBatch> jointMeasureSample(const GaussianState& state,
                                                              std::size_t count,
                                                              std::uint64_t seed) {
  if (state.nModes() != 1) throw DimensionError("jointMeasureSample expects a single-mode state");
  requirePhysical(state, "jointMeasureSample");
  const GaussianState mixed = applySymplectic(tensor(state, GaussianState::vacuum(1)),
                                              optics::makeBeamSplitter5050(0, 1, 2));
  // (x of arm 0, p of arm 1)
  const Eigen::Index ix = 0;
  const Eigen::Index ip = 3;
  Vector mean(2);
  mean << mixed.mean()(ix), mixed.mean()(ip);
  Matrix cov(2, 2);
  cov << mixed.cov()(ix, ix), mixed.cov()(ix, ip),
         mixed.cov()(ip, ix), mixed.cov()(ip, ip);

  CounterRng rng(seed);
  const std::vector<Vector> draws = detail::sampleGaussian(mean, cov, count, rng);
  SampleBatch xs{std::vector<double>(count), seed};
  SampleBatch ps{std::vector<double>(count), seed};
  for (std::size_t k = 0; k < count; ++k) {
    xs.values[k] = std::numbers::sqrt2 * draws[k](0);
    ps.values[k] = std::numbers::sqrt2 * draws[k](1);
  }
  return {std::move(xs), std::move(ps)};
}

inline MomentEstimate estimateMeanVar(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) throw TooFewSamples("need at least two samples to estimate a variance");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n - 1);
  const double dn = static_cast<double>(n);
  return {mean, var, std::sqrt(var / dn), var * std::sqrt(2.0 / dn)};
}

inline MomentEstimate estimateMeanVar(const SampleBatch& batch) {
  return estimateMeanVar(batch.values);
}

}  // namespace cvclone

#endif  // CVCLONE_MEASUREMENT_HPP
