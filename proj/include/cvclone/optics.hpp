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

// Factories for the elementary symplectic maps that optical circuits are
// assembled from. Every factory returns a transform on the full n-mode
// system (identity on modes it does not touch).

#ifndef CVCLONE_OPTICS_HPP
#define CVCLONE_OPTICS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <variant>

#include "cvclone/errors.hpp"
#include "cvclone/gaussian.hpp"

namespace cvclone::optics {

namespace detail {

inline void requireMode(std::size_t mode, std::size_t nModes) {
  if (mode >= nModes) {
    throw IndexError("mode " + std::to_string(mode) + " out of range for " +
                     std::to_string(nModes) + " modes");
  }
}

inline void requireDistinct(std::size_t a, std::size_t b, std::size_t nModes) {
  requireMode(a, nModes);
  requireMode(b, nModes);
  if (a == b) throw IndexError("component needs two distinct modes");
}

// Two-mode transform acting identically on the x pair and the p pair.
inline SymplecticTransform passiveTwoMode(double a, double b, double c, double d, std::size_t modeA,
                                          std::size_t modeB, std::size_t nModes) {
  Matrix local = Matrix::Zero(4, 4);
  for (int q = 0; q < 2; ++q) {
    local(q, q) = a;
    local(q, 2 + q) = b;
    local(2 + q, q) = c;
    local(2 + q, 2 + q) = d;
  }
  return embed(SymplecticTransform(local), {modeA, modeB}, nModes);
}

}  // namespace detail

/// Phase-free 50:50 beam splitter, (u, v) -> ((u + v)/sqrt2, (u - v)/sqrt2)
/// on both quadratures.
inline SymplecticTransform makeBeamSplitter5050(std::size_t modeA, std::size_t modeB,
                                                std::size_t nModes) {
  detail::requireDistinct(modeA, modeB, nModes);
  const double h = std::numbers::sqrt2 / 2.0;
  return detail::passiveTwoMode(h, h, h, -h, modeA, modeB, nModes);
}

/// (u, v) -> (cos t u + sin t v, sin t u - cos t v); theta = pi/4 is the
/// 50:50 splitter above.
inline SymplecticTransform makeBeamSplitter(double theta, std::size_t modeA, std::size_t modeB,
                                            std::size_t nModes) {
  detail::requireDistinct(modeA, modeB, nModes);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return detail::passiveTwoMode(c, s, s, -c, modeA, modeB, nModes);
}

/// Phase-insensitive amplifier a_s' = sqrt(G) a_s + sqrt(G-1) a_i^dagger,
/// a_i' = sqrt(G-1) a_s^dagger + sqrt(G) a_i. The phase conjugation lands on
/// the idler.
inline SymplecticTransform makeAmplifier(double gain, std::size_t signal, std::size_t idler,
                                         std::size_t nModes) {
  if (!(gain >= 1.0) || !std::isfinite(gain)) {
    throw InvalidGain("amplifier gain must be finite and >= 1, got " + std::to_string(gain));
  }
  detail::requireDistinct(signal, idler, nModes);
  const double g = std::sqrt(gain);
  const double h = std::sqrt(gain - 1.0);
  Matrix local(4, 4);
  // (x_s, p_s, x_i, p_i)
  local << g, 0, h, 0,
           0, g, 0, -h,
           h, 0, g, 0,
           0, -h, 0, g;
  return embed(SymplecticTransform(local), {signal, idler}, nModes);
}

/// Continuous C-NOT exp(-i s x_control p_target):
/// x_target -> x_target + s x_control, p_control -> p_control - s p_target.
inline SymplecticTransform makeCvCnot(std::size_t control, std::size_t target, int sign,
                                      std::size_t nModes) {
  if (sign != 1 && sign != -1) throw DomainError("C-NOT sign must be +1 or -1");
  detail::requireDistinct(control, target, nModes);
  Matrix m = Matrix::Identity(2 * nModes, 2 * nModes);
  const auto xt = static_cast<Eigen::Index>(quadratureIndex(target, Quadrature::X));
  const auto xc = static_cast<Eigen::Index>(quadratureIndex(control, Quadrature::X));
  const auto pc = static_cast<Eigen::Index>(quadratureIndex(control, Quadrature::P));
  const auto pt = static_cast<Eigen::Index>(quadratureIndex(target, Quadrature::P));
  m(xt, xc) = sign;
  m(pc, pt) = -sign;
  return SymplecticTransform(m);
}

/// Beam-splitter network realising a'_k = m^{-1/2} sum_l exp(2 pi i k l / m) a_l
/// on modes start..start+m-1.
inline SymplecticTransform makeDftNetwork(std::size_t m, std::size_t startMode, std::size_t nModes) {
  if (m < 1) throw InvalidShape("DFT network needs at least one mode");
  if (startMode + m > nModes) throw IndexError("DFT network exceeds the mode range");
  const auto size = static_cast<Eigen::Index>(m);
  Matrix local = Matrix::Zero(2 * size, 2 * size);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (Eigen::Index k = 0; k < size; ++k) {
    for (Eigen::Index l = 0; l < size; ++l) {
      // Reduce k*l mod m first so large networks keep an exact phase.
      const auto kl = static_cast<double>((k * l) % size);
      const double phase = 2.0 * std::numbers::pi * kl / static_cast<double>(m);
      const double re = norm * std::cos(phase);
      const double im = norm * std::sin(phase);
      // a = (x + i p)/sqrt2: x' = Re F x - Im F p, p' = Im F x + Re F p.
      local(2 * k, 2 * l) = re;
      local(2 * k, 2 * l + 1) = -im;
      local(2 * k + 1, 2 * l) = im;
      local(2 * k + 1, 2 * l + 1) = re;
    }
  }
  return embed(SymplecticTransform(local), ModeSelection::range(startMode, m), nModes);
}

/// x -> e^{-r} x, p -> e^{r} p.
inline SymplecticTransform makeSqueezer(double r, std::size_t mode, std::size_t nModes) {
  if (!std::isfinite(r)) throw DomainError("squeezing parameter must be finite");
  detail::requireMode(mode, nModes);
  Matrix m = Matrix::Identity(2 * nModes, 2 * nModes);
  m(static_cast<Eigen::Index>(2 * mode), static_cast<Eigen::Index>(2 * mode)) = std::exp(-r);
  m(static_cast<Eigen::Index>(2 * mode + 1), static_cast<Eigen::Index>(2 * mode + 1)) = std::exp(r);
  return SymplecticTransform(m);
}

/// a -> e^{i phi} a.
inline SymplecticTransform makePhaseRotation(double phi, std::size_t mode, std::size_t nModes) {
  detail::requireMode(mode, nModes);
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  Matrix local(2, 2);
  local << c, -s,
           s, c;
  return embed(SymplecticTransform(local), {mode}, nModes);
}

inline SymplecticTransform makeDisplacement(double dx, double dp, std::size_t mode,
                                            std::size_t nModes) {
  detail::requireMode(mode, nModes);
  Vector shift = Vector::Zero(2 * nModes);
  shift(static_cast<Eigen::Index>(2 * mode)) = dx;
  shift(static_cast<Eigen::Index>(2 * mode + 1)) = dp;
  return {Matrix::Identity(2 * nModes, 2 * nModes), shift};
}

struct BeamSplitter50 {
  std::size_t modeA = 0, modeB = 1;
};
struct BeamSplitter {
  double theta = 0.0;
  std::size_t modeA = 0, modeB = 1;
};
struct Amplifier {
  double gain = 1.0;
  std::size_t signalMode = 0, idlerMode = 1;
};
struct Squeezer {
  double r = 0.0;
  std::size_t mode = 0;
};
struct CvCnot {
  std::size_t control = 0, target = 1;
  int sign = 1;
};
struct DftNetwork {
  std::size_t m = 1;
  std::size_t startMode = 0;
};
struct PhaseRotation {
  double phi = 0.0;
  std::size_t mode = 0;
};
struct Displacement {
  double dx = 0.0, dp = 0.0;
  std::size_t mode = 0;
};

using ComponentSpec = std::variant<BeamSplitter50, BeamSplitter, Amplifier, Squeezer, CvCnot,
                                   DftNetwork, PhaseRotation, Displacement>;

inline SymplecticTransform makeComponent(const ComponentSpec& spec, std::size_t nModes) {
  struct Visitor {
    std::size_t n;
    SymplecticTransform operator()(const BeamSplitter50& c) const {
      return makeBeamSplitter5050(c.modeA, c.modeB, n);
    }
    SymplecticTransform operator()(const BeamSplitter& c) const {
      return makeBeamSplitter(c.theta, c.modeA, c.modeB, n);
    }
    SymplecticTransform operator()(const Amplifier& c) const {
      return makeAmplifier(c.gain, c.signalMode, c.idlerMode, n);
    }
    SymplecticTransform operator()(const Squeezer& c) const { return makeSqueezer(c.r, c.mode, n); }
    SymplecticTransform operator()(const CvCnot& c) const {
      return makeCvCnot(c.control, c.target, c.sign, n);
    }
    SymplecticTransform operator()(const DftNetwork& c) const {
      return makeDftNetwork(c.m, c.startMode, n);
    }
    SymplecticTransform operator()(const PhaseRotation& c) const {
      return makePhaseRotation(c.phi, c.mode, n);
    }
    SymplecticTransform operator()(const Displacement& c) const {
      return makeDisplacement(c.dx, c.dp, c.mode, n);
    }
  };
  return std::visit(Visitor{nModes}, spec);
}

}  // namespace cvclone::optics

#endif  // CVCLONE_OPTICS_HPP
