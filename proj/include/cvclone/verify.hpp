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

// The invariant suite behind `cvclone verify`: each row recomputes one
// physical property from scratch and compares it to its closed form.

#ifndef CVCLONE_VERIFY_HPP
#define CVCLONE_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cvclone/cloners.hpp"
#include "cvclone/gaussian.hpp"
#include "cvclone/grid_oracle.hpp"
#include "cvclone/measurement.hpp"
#include "cvclone/optics.hpp"
#include "cvclone/qkd.hpp"
#include "cvclone/random.hpp"

namespace cvclone::verify {

struct Row {
  std::string name;
  bool pass = false;
  double value = 0.0;  // worst deviation (or the statistic) checked
  double limit = 0.0;
};

struct Options {
  std::uint64_t seed = 0;
  double amplifierGain = 2.0;  // anything but 2 is a deliberate fault
};

namespace detail {

inline PhasePoint randomPoint(CounterRng& rng, double scale = 2.0) {
  return {scale * (2.0 * rng.uniform() - 1.0), scale * (2.0 * rng.uniform() - 1.0)};
}

// Rotated, squeezed thermal state with a random mean.
inline GaussianState randomSingleMode(CounterRng& rng) {
  const double nu = 0.5 + 1.5 * rng.uniform();
  const double r = 2.0 * rng.uniform() - 1.0;
  const double th = std::numbers::pi * rng.uniform();
  Matrix s(2, 2);
  s << std::cos(th) * std::exp(-r), -std::sin(th) * std::exp(r), std::sin(th) * std::exp(-r),
      std::cos(th) * std::exp(r);
  const PhasePoint m = randomPoint(rng);
  Vector mean(2);
  mean << m.x, m.p;
  return {mean, nu * s * s.transpose()};
}

inline double maxAbs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Row upperBounded(std::string name, double value, double limit) {
  return {std::move(name), value <= limit, value, limit};
}

// The textbook quadrature map of the optimal 1 -> 2 cloner on
// (x0, p0, x1, p1, x2, p2).
inline Matrix canonicalClonerMatrix() {
  const double h = std::numbers::sqrt2 / 2.0, s = std::numbers::sqrt2;
  Matrix m(6, 6);
  m << 1, 0, h, 0, h, 0,   //
      0, 1, 0, h, 0, -h,   //
      1, 0, -h, 0, h, 0,   //
      0, 1, 0, -h, 0, -h,  //
      1, 0, 0, 0, s, 0,    //
      0, -1, 0, 0, 0, s;
  return m;
}

}  // namespace detail

inline Row checkSymplecticFactories(CounterRng& rng) {
  using namespace optics;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double a = 4.0 * rng.uniform() - 2.0;
    const std::vector<SymplecticTransform> ts = {
        makeBeamSplitter5050(0, 2, 4), makeBeamSplitter(a, 1, 3, 4), makeAmplifier(1.0 + a * a, 0, 3, 4),
        makeCvCnot(2, 1, k % 2 ? 1 : -1, 4), makeDftNetwork(1 + static_cast<std::size_t>(k) % 4, 0, 4),
        makeSqueezer(a, 3, 4), makePhaseRotation(a, 2, 4), makeDisplacement(a, -a, 1, 4)};
    for (const auto& t : ts) worst = std::max(worst, symplecticDefect(t.matrix()));
  }
  return detail::upperBounded("symplectic-factories", worst, kStructuralTol);
}

inline Row checkCloneFidelity(CounterRng& rng) {
  const ClonerBuild build = buildCircuitCloner();
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const CloneReport r = runCloner(build, GaussianState::coherent(detail::randomPoint(rng)));
    for (double f : r.fidelity) worst = std::max(worst, std::abs(f - 2.0 / 3.0));
  }
  return detail::upperBounded("clone-fidelity-1to2", worst, 1e-10);
}

inline Row checkExcessSaturation(CounterRng& rng, const Options& opt) {
  double worst = 0.0;
  for (const ClonerBuild& build : {buildCircuitCloner(), buildAmplifierCloner(opt.amplifierGain)}) {
    const CloneReport r = runCloner(build, detail::randomSingleMode(rng));
    for (std::size_t c = 0; c < r.excessNoiseX.size(); ++c) {
      worst = std::max({worst, std::abs(r.excessNoiseX[c] - 0.5), std::abs(r.excessNoiseP[c] - 0.5)});
    }
  }
  return detail::upperBounded("excess-saturation", worst, 1e-10);
}

inline Row checkAmplifierEquivalence(CounterRng& rng, const Options& opt) {
  const ClonerBuild circuit = buildCircuitCloner();
  const ClonerBuild amp = buildAmplifierCloner(opt.amplifierGain);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const GaussianState in = detail::randomSingleMode(rng);
    const GaussianState a = runCloner(circuit, in).output;
    const GaussianState b = runCloner(amp, in).output;
    worst = std::max({worst, detail::maxAbs(a.mean() - b.mean()), detail::maxAbs(a.cov() - b.cov())});
  }
  const double matrixDev = detail::maxAbs(amp.transform.matrix() - detail::canonicalClonerMatrix());
  Row row = detail::upperBounded("amplifier-equivalence", std::max(worst, matrixDev), 1e-10);
  row.pass = worst <= 1e-10 && matrixDev <= 1e-12;
  return row;
}

inline Row checkNtoMSaturation() {
  double worst = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = n; m <= 6; ++m) {
      const CloneReport r = runCloner(buildNtoM(n, m), replicate(GaussianState::coherent({0.3, -0.2}), n));
      const double bound = varianceBound(n, m);
      const double fb = static_cast<double>(m * n) / static_cast<double>(m * n + m - n);
      for (std::size_t c = 0; c < m; ++c) {
        worst = std::max({worst, std::abs(r.excessNoiseX[c] - bound), std::abs(r.excessNoiseP[c] - bound),
                          std::abs(r.fidelity[c] - fb)});
      }
    }
  }
  return detail::upperBounded("ntom-saturation", worst, 1e-10);
}

inline Row checkNoCloningProducts(CounterRng& rng, const Options& opt) {
  double lowest = 1e300;
  const std::vector<ClonerBuild> builds = {buildCircuitCloner(), buildAmplifierCloner(opt.amplifierGain),
                                           buildNtoM(1, 2), buildNtoM(1, 5), squeezedFamilyCloner(0.7)};
  for (const ClonerBuild& b : builds) {
    const CloneReport r = runCloner(b, detail::randomSingleMode(rng));
    for (std::size_t a = 0; a < r.excessNoiseX.size(); ++a) {
      for (std::size_t c = 0; c < r.excessNoiseX.size(); ++c) {
        if (a == c) continue;
        const auto [p1, p2] = noCloningProducts(r, a, c);
        lowest = std::min({lowest, p1, p2});
      }
    }
  }
  for (int k = 0; k < 50; ++k) {
    const double d = std::pow(10.0, -2.0 + 4.0 * k / 49.0);
    const AsymmetricChannels ch = asymmetricCloneChannels(d);
    lowest = std::min(lowest, std::sqrt(ch.noiseB) * std::sqrt(ch.noiseE));
  }
  return {"no-cloning-products", lowest >= 0.5 - 1e-9, lowest, 0.5 - 1e-9};
}

inline Row checkAnticlone(CounterRng& rng) {
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const PhasePoint a = detail::randomPoint(rng);
    const CloneReport r = runCloner(buildCircuitCloner(), GaussianState::coherent(a));
    worst = std::max({worst, std::abs(r.anticloneMean->x - a.x), std::abs(r.anticloneMean->p + a.p)});
  }
  return detail::upperBounded("anticlone-mean", worst, 1e-12);
}

inline Row checkSqueezedFamily() {
  double worst = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const CloneReport matched = runCloner(squeezedFamilyCloner(r), GaussianState::squeezed(r, {0.4, -1.1}));
    const CloneReport plain = runCloner(buildCircuitCloner(), GaussianState::squeezed(r, {0.4, -1.1}));
    const double expected = 1.0 / std::sqrt(1.25 + std::cosh(2.0 * r));
    for (std::size_t c = 0; c < 2; ++c) {
      worst = std::max({worst, std::abs(matched.fidelity[c] - 2.0 / 3.0), std::abs(plain.fidelity[c] - expected)});
    }
  }
  return detail::upperBounded("squeezed-family", worst, 1e-10);
}

inline Row checkInformationExclusion() {
  double worst = 0.0;
  double smallestSuboptimalGap = 1e300;
  for (int a = 0; a < 20; ++a) {
    const double v = 0.05 + 0.4 * a / 19.0;
    for (int b = 0; b < 20; ++b) {
      const double d = 0.05 + 4.95 * b / 19.0;
      worst = std::max(worst, std::abs(qkd::exclusionCheck(v, d).exclusionGap));
      smallestSuboptimalGap =
          std::min(smallestSuboptimalGap, qkd::exclusionCheck(v, d, 1.5 / (4.0 * d)).exclusionGap);
    }
  }
  const qkd::InfoReport spot = qkd::exclusionCheck(0.25, 0.5);
  const double spotDev = std::max({std::abs(spot.i - 1.0), std::abs(spot.iAB - 0.5), std::abs(spot.iAE - 0.5)});
  Row row = detail::upperBounded("information-exclusion", std::max(worst, spotDev), 1e-12);
  row.pass = row.pass && smallestSuboptimalGap > 0.0;
  return row;
}

inline Row checkArthursKelly(const Options& opt) {
  const std::size_t count = 100000;
  const auto [xs, ps] = jointMeasureSample(GaussianState::coherent({0.7, -0.3}), count, opt.seed);
  const MomentEstimate mx = estimateMeanVar(xs), mp = estimateMeanVar(ps);
  // Largest deviation in units of its standard error.
  const double z = std::max(std::abs(mx.variance - 1.0) / mx.varianceStdError,
                            std::abs(mp.variance - 1.0) / mp.varianceStdError);
  return detail::upperBounded("arthurs-kelly", z, 3.0);
}

inline Row checkGridOracle() {
  const grid::GridParams p{64, 8.0};
  const PhasePoint alpha{1.0, 0.5};
  const grid::WaveFunctionGrid g = grid::cloneWaveFunction(grid::coherentWaveFunction(alpha), p);
  const grid::DensityGrid clone = grid::reducedDensity(g, grid::OutputMode::CloneA);
  const GaussianState mc = grid::marginalMoments(clone);
  const GaussianState anc = grid::marginalMoments(grid::reducedDensity(g, grid::OutputMode::Ancilla));
  const double dev = std::max({std::abs(grid::gridCoherentFidelity(clone, alpha) - 2.0 / 3.0) / 0.01,
                               std::abs(mc.cov()(0, 0) - 1.0) / 0.02, std::abs(mc.cov()(1, 1) - 1.0) / 0.02,
                               std::abs(anc.mean()(0) - alpha.x) / (0.02 * std::abs(alpha.x)),
                               std::abs(anc.mean()(1) + alpha.p) / (0.02 * std::abs(alpha.p))});
  // Expressed as the fraction of the tolerance used.
  return detail::upperBounded("grid-oracle", dev, 1.0);
}

inline Row checkFourier() {
  return detail::upperBounded("fourier-self-dual", grid::checkFourierSelfDual(grid::PhaseGrid{256, 8.0}), 1e-6);
}

inline Row checkProtocol(const Options& opt) {
  qkd::ProtocolParams p;
  p.v = 0.25;
  p.nRounds = 200000;
  p.seed = opt.seed;
  const qkd::ProtocolRun run = qkd::simulateProtocol(p, 0.5);
  const qkd::InfoReport& r = run.report;
  const double z = std::max(std::abs(*r.empiricalIAB - r.iAB) / *r.stderrIAB,
                            std::abs(*r.siftedFraction - 0.5) / *r.stderrSiftedFraction);
  return detail::upperBounded("protocol-monte-carlo", z, 3.0);
}

/// Runs every row. Deterministic for a given seed.
inline std::vector<Row> runAll(const Options& opt) {
  CounterRng rng(opt.seed, 0x7665726966ULL);
  std::vector<Row> rows;
  rows.push_back(checkSymplecticFactories(rng));
  rows.push_back(checkCloneFidelity(rng));
  rows.push_back(checkExcessSaturation(rng, opt));
  rows.push_back(checkAmplifierEquivalence(rng, opt));
  rows.push_back(checkNtoMSaturation());
  rows.push_back(checkNoCloningProducts(rng, opt));
  rows.push_back(checkAnticlone(rng));
  rows.push_back(checkSqueezedFamily());
  rows.push_back(checkInformationExclusion());
  rows.push_back(checkArthursKelly(opt));
  rows.push_back(checkGridOracle());
  rows.push_back(checkFourier());
  rows.push_back(checkProtocol(opt));
  return rows;
}

}  // namespace cvclone::verify

#endif  // CVCLONE_VERIFY_HPP
