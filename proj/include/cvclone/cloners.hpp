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

// Gaussian cloning machines: the C-NOT circuit, the amplifier + beam
// splitter setup, the N -> M amplifier network, the squeezed-family cloner,
// and the analytic bounds these machines are measured against.

#ifndef CVCLONE_CLONERS_HPP
#define CVCLONE_CLONERS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvclone/errors.hpp"
#include "cvclone/gaussian.hpp"
#include "cvclone/optics.hpp"

namespace cvclone {

/// Sentinel for M = infinity in the bound calculators.
inline constexpr std::size_t kInfiniteCopies = std::numeric_limits<std::size_t>::max();

/// A cloning machine as a symplectic map over inputs plus auxiliary modes.
/// Mode labels in `inputModes` refer to the system before the transform,
/// `cloneModes` and `anticloneModes` to the system after it.
struct ClonerBuild {
  SymplecticTransform transform;
  ModeSelection inputModes;
  ModeSelection cloneModes;
  ModeSelection anticloneModes;

  ClonerBuild(SymplecticTransform t, ModeSelection inputs, ModeSelection clones,
              ModeSelection anticlones)
      : transform(std::move(t)),
        inputModes(std::move(inputs)),
        cloneModes(std::move(clones)),
        anticloneModes(std::move(anticlones)) {
    const std::size_t n = transform.nModes();
    inputModes.validate(n);
    cloneModes.validate(n);
    anticloneModes.validate(n);
    if (!cloneModes.disjointFrom(anticloneModes)) {
      throw IndexError("clone and anticlone selections overlap");
    }
  }

  std::size_t nModes() const { return transform.nModes(); }
};

struct CloneReport {
  std::vector<double> excessNoiseX;
  std::vector<double> excessNoiseP;
  std::vector<double> fidelity;
  std::optional<PhasePoint> anticloneMean;
  GaussianState output;
};

/// The three-mode C-NOT cloner (input, blank, ancilla). The blank and
/// ancilla start in vacuum; a preparation C-NOT (blank -> ancilla) turns them
/// into the required auxiliary state, followed by
///   exp(-i x0 p1) exp(-i x0 p2)   then   exp(-i x2 p0) exp(+i x1 p0).
/// The last gate's sign is the one that reproduces the amplifier cloner.
inline ClonerBuild buildCircuitCloner() {
  constexpr std::size_t n = 3;
  using optics::makeCvCnot;
  const SymplecticTransform t = makeCvCnot(1, 2, +1, n)
                                    .then(makeCvCnot(0, 1, +1, n))
                                    .then(makeCvCnot(0, 2, +1, n))
                                    .then(makeCvCnot(2, 0, +1, n))
                                    .then(makeCvCnot(1, 0, -1, n));
  return {t, {0}, {0, 1}, {2}};
}

/// Amplifier of gain `gain` on (input, ancilla) followed by a 50:50 splitter
/// mixing the amplified signal with the blank. gain = 2 gives the optimal
/// symmetric cloner; other values exist only for fault injection.
inline ClonerBuild buildAmplifierCloner(double gain = 2.0) {
  constexpr std::size_t n = 3;
  const SymplecticTransform t =
      optics::makeAmplifier(gain, 0, 2, n).then(optics::makeBeamSplitter5050(0, 1, n));
  return {t, {0}, {0, 1}, {2}};
}

/// N -> M cloner: DFT concentration over the N inputs, amplification of mode
/// 0 with gain M/N against an idler (mode M), DFT distribution over M modes.
inline ClonerBuild buildNtoM(std::size_t nInputs, std::size_t mClones) {
  if (nInputs < 1) throw InvalidShape("N -> M cloner needs N >= 1");
  if (nInputs > mClones) {
    throw InvalidShape("N -> M cloner needs N <= M (got N=" + std::to_string(nInputs) +
                       ", M=" + std::to_string(mClones) + ")");
  }
  const std::size_t n = mClones + 1;
  const std::size_t idler = mClones;
  const double gain = static_cast<double>(mClones) / static_cast<double>(nInputs);
  const SymplecticTransform t = optics::makeDftNetwork(nInputs, 0, n)
                                    .then(optics::makeAmplifier(gain, 0, idler, n))
                                    .then(optics::makeDftNetwork(mClones, 0, n));
  return {t, ModeSelection::range(0, nInputs), ModeSelection::range(0, mClones), {idler}};
}

/// Unsqueeze the input by r, clone with the C-NOT cloner, squeeze both clones
/// back. Copies every state of the family squeezed(r, any mean) with F = 2/3.
inline ClonerBuild squeezedFamilyCloner(double r) {
  constexpr std::size_t n = 3;
  const ClonerBuild base = buildCircuitCloner();
  const SymplecticTransform t = optics::makeSqueezer(-r, 0, n)
                                    .then(base.transform)
                                    .then(optics::makeSqueezer(r, 0, n))
                                    .then(optics::makeSqueezer(r, 1, n));
  return {t, base.inputModes, base.cloneModes, base.anticloneModes};
}

/// Places `input` on the build's input modes with every other mode in vacuum.
inline GaussianState prepareClonerInput(const ClonerBuild& build, const GaussianState& input) {
  if (input.nModes() != build.inputModes.size()) {
    throw DimensionError("cloner expects " + std::to_string(build.inputModes.size()) +
                         " input mode(s), got " + std::to_string(input.nModes()));
  }
  const std::size_t n = build.nModes();
  GaussianState vac = GaussianState::vacuum(n);
  Vector mean = vac.mean();
  Matrix cov = vac.cov();
  const auto& idx = build.inputModes.indices();
  for (std::size_t a = 0; a < 2 * idx.size(); ++a) {
    const auto ga = static_cast<Eigen::Index>(2 * idx[a / 2] + a % 2);
    mean(ga) = input.mean()(static_cast<Eigen::Index>(a));
    for (std::size_t b = 0; b < 2 * idx.size(); ++b) {
      const auto gb = static_cast<Eigen::Index>(2 * idx[b / 2] + b % 2);
      cov(ga, gb) = input.cov()(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return {mean, cov};
}

/// Runs a cloner. Excess noise and fidelity are measured against the
/// marginal of the first input mode; the fidelity is Tr(rho_in rho_clone),
/// which is <psi|rho_clone|psi> for pure inputs.
inline CloneReport runCloner(const ClonerBuild& build, const GaussianState& input) {
  const GaussianState out = applySymplectic(prepareClonerInput(build, input), build.transform);
  const GaussianState reference = reduceToModes(input, {0});

  CloneReport report{{}, {}, {}, std::nullopt, out};
  for (std::size_t mode : build.cloneModes.indices()) {
    const GaussianState clone = reduceToModes(out, {mode});
    report.excessNoiseX.push_back(clone.variance(0, Quadrature::X) -
                                  reference.variance(0, Quadrature::X));
    report.excessNoiseP.push_back(clone.variance(0, Quadrature::P) -
                                  reference.variance(0, Quadrature::P));
    report.fidelity.push_back(gaussianOverlap(reference, clone));
  }
  if (!build.anticloneModes.empty()) report.anticloneMean = out.modeMean(build.anticloneModes[0]);
  return report;
}

namespace detail {

inline void requireCopyShape(std::size_t n, std::size_t m) {
  if (n < 1) throw InvalidShape("need N >= 1");
  if (n > m) throw InvalidShape("need N <= M");
}

inline double inverseCount(std::size_t m) {
  return m == kInfiniteCopies ? 0.0 : 1.0 / static_cast<double>(m);
}

}  // namespace detail

/// Minimum cloning-induced noise 1/N - 1/M.
inline double varianceBound(std::size_t n, std::size_t m) {
  detail::requireCopyShape(n, m);
  return detail::inverseCount(n) - detail::inverseCount(m);
}

/// Maximum coherent-state cloning fidelity MN / (MN + M - N); N/(N+1) for
/// M = infinity.
inline double fidelityBound(std::size_t n, std::size_t m) {
  detail::requireCopyShape(n, m);
  // Equivalent to 1 / (1 + 1/N - 1/M), which stays finite for M = infinity.
  return 1.0 / (1.0 + varianceBound(n, m));
}

/// sigma^2_{N,M} + sigma^2_{M,L} - sigma^2_{N,L}; never negative.
inline double concatenationGap(std::size_t n, std::size_t m, std::size_t l) {
  detail::requireCopyShape(n, m);
  detail::requireCopyShape(m, l);
  return varianceBound(n, m) + varianceBound(m, l) - varianceBound(n, l);
}

/// Bob's and Eve's single-mode channels for the saturating asymmetric
/// cloner: isotropic noises d and 1/(4d).
struct AsymmetricChannels {
  GaussianChannel channelB;
  GaussianChannel channelE;
  double noiseB;
  double noiseE;
};

inline AsymmetricChannels asymmetricCloneChannels(double deltaNB2) {
  if (!(deltaNB2 > 0.0) || !std::isfinite(deltaNB2)) {
    throw InvalidNoise("Bob's excess noise must be finite and > 0");
  }
  const double deltaNE2 = 1.0 / (4.0 * deltaNB2);
  return {GaussianChannel::additiveNoise(1, deltaNB2), GaussianChannel::additiveNoise(1, deltaNE2),
          deltaNB2, deltaNE2};
}

/// The two no-cloning products (Dn_{x,a} Dn_{p,b}, Dn_{x,b} Dn_{p,a}) for
/// clones a and b of a report (standard deviations, not variances).
inline std::pair<double, double> noCloningProducts(const CloneReport& report, std::size_t a,
                                                   std::size_t b) {
  if (a >= report.excessNoiseX.size() || b >= report.excessNoiseX.size()) {
    throw IndexError("clone index out of range");
  }
  auto sd = [](double v) { return std::sqrt(std::max(v, 0.0)); };
  return {sd(report.excessNoiseX[a]) * sd(report.excessNoiseP[b]),
          sd(report.excessNoiseX[b]) * sd(report.excessNoiseP[a])};
}

}  // namespace cvclone

#endif  // CVCLONE_CLONERS_HPP
