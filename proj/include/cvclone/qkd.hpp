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

// Squeezed-state Gaussian key distribution under an asymmetric-cloner
// attack: Shannon information balance and a seeded protocol simulator.
//
// All informations are in bits per sifted symbol.

#ifndef CVCLONE_QKD_HPP
#define CVCLONE_QKD_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvclone/cloners.hpp"
#include "cvclone/errors.hpp"
#include "cvclone/gaussian.hpp"
#include "cvclone/measurement.hpp"
#include "cvclone/random.hpp"

namespace cvclone::qkd {

/// Shannon capacity of an additive Gaussian noise channel, 1/2 log2(1 + S/N).
inline double shannonInfo(double signalVar, double noiseVar) {
  if (!(signalVar >= 0.0) || !(noiseVar > 0.0)) {
    throw InvalidVariance("Shannon information needs signal >= 0 and noise > 0");
  }
  return 0.5 * std::log2(1.0 + signalVar / noiseVar);
}

inline void requireSqueezing(double v) {
  if (!(v > 0.0)) throw DomainError("squeezed variance v must be > 0");
  if (!(v < 0.5)) throw NoSqueezing("this protocol requires squeezing (v < 1/2)");
}

/// Displacement variance that hides Alice's basis choice: V + v = 1/(4v).
inline double displacementVariance(double v) {
  requireSqueezing(v);
  return 1.0 / (4.0 * v) - v;
}

/// I = log2((1/2) / v).
inline double maxKeyRate(double v) {
  requireSqueezing(v);
  return std::log2(0.5 / v);
}

/// Information through a channel adding `noise` to the encoded quadrature:
/// 1/2 log2[(1 + 4 v n) / (4 v (v + n))]. n = +inf gives 0.
inline double channelInfo(double v, double noise) {
  requireSqueezing(v);
  if (!(noise >= 0.0)) throw InvalidNoise("excess noise must be >= 0");
  if (std::isinf(noise)) return 0.0;
  return 0.5 * std::log2((1.0 + 4.0 * v * noise) / (4.0 * v * (v + noise)));
}

inline double infoAB(double v, double deltaNB2) { return channelInfo(v, deltaNB2); }
inline double infoAE(double v, double deltaNE2) { return channelInfo(v, deltaNE2); }

/// Quadrature variances (x, p) of the mixture Alice emits when she encodes
/// in `basis`.
inline std::pair<double, double> emittedVariances(double v, Quadrature basis) {
  const double big = displacementVariance(v) + v;
  const double conj = 1.0 / (4.0 * v);
  return basis == Quadrature::X ? std::pair{big, conj} : std::pair{conj, big};
}

struct InfoReport {
  double i = 0.0;
  double iAB = 0.0;
  double iAE = 0.0;
  double exclusionGap = 0.0;  // I - I_AB - I_AE

  // Monte Carlo counterparts; unset for purely analytic reports.
  std::optional<double> empiricalIAB;
  std::optional<double> empiricalIAE;
  std::optional<double> stderrIAB;
  std::optional<double> stderrIAE;
  std::optional<double> empiricalNoiseB;
  std::optional<double> stderrNoiseB;
  std::optional<double> siftedFraction;
  std::optional<double> stderrSiftedFraction;
};

/// Analytic balance for Bob's noise d and Eve's noise (1/(4d) by default,
/// i.e. the saturating cloner). d = 0 means no eavesdropper.
inline InfoReport exclusionCheck(double v, double deltaNB2,
                                 std::optional<double> deltaNE2 = std::nullopt) {
  requireSqueezing(v);
  if (!(deltaNB2 >= 0.0)) throw InvalidNoise("Bob's excess noise must be >= 0");
  const double eve = deltaNE2.value_or(deltaNB2 == 0.0 ? std::numeric_limits<double>::infinity()
                                                       : 1.0 / (4.0 * deltaNB2));
  if (!(eve >= 0.0)) throw InvalidNoise("Eve's excess noise must be >= 0");
  InfoReport r;
  r.i = maxKeyRate(v);
  r.iAB = infoAB(v, deltaNB2);
  r.iAE = infoAE(v, eve);
  r.exclusionGap = r.i - r.iAB - r.iAE;
  return r;
}

struct ProtocolParams {
  double v = 0.25;
  std::size_t nRounds = 200000;
  std::uint64_t seed = 0;
  double disclosedFraction = 0.1;

  double displacementVariance() const { return qkd::displacementVariance(v); }

  void validate() const {
    requireSqueezing(v);
    if (nRounds == 0) throw DomainError("protocol needs at least one round");
    if (!(disclosedFraction > 0.0 && disclosedFraction <= 1.0)) {
      throw DomainError("disclosed fraction must lie in (0, 1]");
    }
  }
};

struct RoundRecord {
  std::size_t round = 0;
  Quadrature aliceBasis = Quadrature::X;
  double r = 0.0;
  Quadrature bobBasis = Quadrature::X;
  double rPrime = 0.0;
  bool kept = false;
  // Eve's measurement of her clone in the revealed basis (attacked runs only).
  std::optional<double> eveOutcome;
};

struct NoiseEstimate {
  double deltaNB2Hat = 0.0;
  double stdError = 0.0;
  double iAEUpperBound = 0.0;
  std::size_t pairs = 0;
};

inline constexpr std::size_t kMinDisclosedPairs = 100;

/// Bob's excess noise from disclosed (r, r') pairs: Var(r' - r) - v, clamped
/// at zero, and Eve's information bounded by I - I_AB.
inline NoiseEstimate estimateExcessNoise(const std::vector<std::pair<double, double>>& disclosed,
                                         double v) {
  requireSqueezing(v);
  if (disclosed.size() < kMinDisclosedPairs) {
    throw TooFewSamples("noise estimation needs at least " + std::to_string(kMinDisclosedPairs) +
                        " disclosed pairs");
  }
  std::vector<double> diffs;
  diffs.reserve(disclosed.size());
  for (const auto& [r, rp] : disclosed) diffs.push_back(rp - r);
  const MomentEstimate m = estimateMeanVar(diffs);
  NoiseEstimate e;
  e.deltaNB2Hat = std::max(0.0, m.variance - v);
  e.stdError = m.varianceStdError;
  e.iAEUpperBound = std::max(0.0, maxKeyRate(v) - infoAB(v, e.deltaNB2Hat));
  e.pairs = disclosed.size();
  return e;
}

struct ProtocolRun {
  std::vector<RoundRecord> records;
  InfoReport report;
  std::optional<NoiseEstimate> estimate;
};

namespace detail {

// Stream ids keep the per-round draws, the disclosure choice and anything
// added later independent of each other.
inline constexpr std::uint64_t kRoundStream = 1;
inline constexpr std::uint64_t kDisclosureStream = 2;

inline GaussianState aliceState(double v, Quadrature basis, double r) {
  const double conj = 1.0 / (4.0 * v);
  Vector mean = Vector::Zero(2);
  Matrix cov = Matrix::Zero(2, 2);
  if (basis == Quadrature::X) {
    mean(0) = r;
    cov(0, 0) = v;
    cov(1, 1) = conj;
  } else {
    mean(1) = r;
    cov(0, 0) = conj;
    cov(1, 1) = v;
  }
  return {mean, cov};
}

inline double homodyneOnce(const GaussianState& s, Quadrature q, CounterRng& rng) {
  const auto i = static_cast<Eigen::Index>(quadratureIndex(0, q));
  return rng.normal(s.mean()(i), std::sqrt(s.cov()(i, i)));
}

// Delta-method standard error of 1/2 log2(1 + S/N) for an estimated N.
inline double infoStdError(double signal, double noise, double noiseStdError) {
  const double d = 0.5 / std::numbers::ln2 * signal / (noise * (noise + signal));
  return d * noiseStdError;
}

}  // namespace detail

/// Runs the protocol round by round. Each round draws from its own
/// counter-derived stream (seed, round), so rounds can be evaluated in any
/// order without changing the transcript.
inline RoundRecord simulateRound(const ProtocolParams& params,
                                 const std::optional<AsymmetricChannels>& attack,
                                 std::size_t round) {
  CounterRng rng(params.seed ^ splitmix64(detail::kRoundStream), round);
  RoundRecord rec;
  rec.round = round;
  rec.aliceBasis = rng.coin() ? Quadrature::P : Quadrature::X;
  rec.r = rng.normal(0.0, std::sqrt(params.displacementVariance()));
  const GaussianState sent = detail::aliceState(params.v, rec.aliceBasis, rec.r);
  const GaussianState atBob = attack ? applyChannel(sent, attack->channelB) : sent;
  rec.bobBasis = rng.coin() ? Quadrature::P : Quadrature::X;
  rec.rPrime = detail::homodyneOnce(atBob, rec.bobBasis, rng);
  rec.kept = rec.aliceBasis == rec.bobBasis;
  if (attack && rec.kept) {
    const GaussianState atEve = applyChannel(sent, attack->channelE);
    rec.eveOutcome = detail::homodyneOnce(atEve, rec.aliceBasis, rng);
  }
  return rec;
}

/// Simulates `params.nRounds` rounds, optionally under an asymmetric cloner
/// attack with Bob-side noise `deltaNB2`. Empirical informations come from
/// the sifted noise variances plugged into the Shannon formula with the
/// protocol's (public) displacement variance V.
inline ProtocolRun simulateProtocol(const ProtocolParams& params,
                                    std::optional<double> deltaNB2 = std::nullopt) {
  params.validate();
  std::optional<AsymmetricChannels> attack;
  if (deltaNB2) attack = asymmetricCloneChannels(*deltaNB2);

  ProtocolRun run;
  run.records.reserve(params.nRounds);
  for (std::size_t k = 0; k < params.nRounds; ++k) run.records.push_back(simulateRound(params, attack, k));

  run.report = exclusionCheck(params.v, attack ? attack->noiseB : 0.0);

  std::vector<double> bobDiffs, eveDiffs;
  std::vector<std::pair<double, double>> disclosed;
  CounterRng pick(params.seed ^ splitmix64(detail::kDisclosureStream));
  for (const RoundRecord& rec : run.records) {
    if (!rec.kept) continue;
    bobDiffs.push_back(rec.rPrime - rec.r);
    if (rec.eveOutcome) eveDiffs.push_back(*rec.eveOutcome - rec.r);
    if (pick.uniform() < params.disclosedFraction) disclosed.emplace_back(rec.r, rec.rPrime);
  }

  const double n = static_cast<double>(params.nRounds);
  const double kept = static_cast<double>(bobDiffs.size());
  run.report.siftedFraction = kept / n;
  run.report.stderrSiftedFraction = std::sqrt(0.25 / n);

  const double signal = params.displacementVariance();
  if (bobDiffs.size() >= 2) {
    const MomentEstimate bob = estimateMeanVar(bobDiffs);
    run.report.empiricalNoiseB = bob.variance - params.v;
    run.report.stderrNoiseB = bob.varianceStdError;
    run.report.empiricalIAB = shannonInfo(signal, bob.variance);
    run.report.stderrIAB = detail::infoStdError(signal, bob.variance, bob.varianceStdError);
  }
  if (eveDiffs.size() >= 2) {
    const MomentEstimate eve = estimateMeanVar(eveDiffs);
    run.report.empiricalIAE = shannonInfo(signal, eve.variance);
    run.report.stderrIAE = detail::infoStdError(signal, eve.variance, eve.varianceStdError);
  } else if (!attack) {
    run.report.empiricalIAE = 0.0;
    run.report.stderrIAE = 0.0;
  }
  if (disclosed.size() >= kMinDisclosedPairs) run.estimate = estimateExcessNoise(disclosed, params.v);
  return run;
}

}  // namespace cvclone::qkd

#endif  // CVCLONE_QKD_HPP
