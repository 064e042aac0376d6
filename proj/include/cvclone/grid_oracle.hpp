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

// Brute-force position-space simulation of the 1 -> 2 Gaussian cloner.
//
// The cloner maps an input wavefunction psi to the three-mode state
//   Psi(u, v, w) = pi^{-1/2} psi(u + v - w) exp(-((w - v)^2 + (w - u)^2) / 2)
// over (clone a, clone b, ancilla). Everything here works on explicit grids
// and never touches the covariance formalism, so it serves as an
// independent check of it.
//
// Grid layout: u_i = -L + i * dx, i = 0..n-1, dx = 2L/n. Momentum grid from
// the FFT: k_m = m * dk for m < n/2 and (m - n) * dk otherwise, dk = pi/L.

#ifndef CVCLONE_GRID_ORACLE_HPP
#define CVCLONE_GRID_ORACLE_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <cstdio>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cvclone/errors.hpp"
#include "cvclone/gaussian.hpp"

namespace cvclone::grid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using WaveFunction = std::function<Complex(double)>;

inline constexpr double kNormTolerance = 1e-3;
inline constexpr double kMaxBoundaryMass = 1e-6;
// Width, in cells, of the outer shell counted as "boundary".
inline constexpr std::size_t kBoundaryCells = 2;

struct GridParams {
  std::size_t pointsPerAxis = 64;
  double halfExtent = 8.0;

  void validate() const {
    if (pointsPerAxis < 16) {
      throw GridTooSmall("grid needs at least 16 points per axis, got " +
                         std::to_string(pointsPerAxis));
    }
    if (!(halfExtent > 0.0) || !std::isfinite(halfExtent)) {
      throw DomainError("grid half extent must be finite and > 0");
    }
  }

  double spacing() const { return 2.0 * halfExtent / static_cast<double>(pointsPerAxis); }
  double coordinate(std::size_t i) const { return -halfExtent + static_cast<double>(i) * spacing(); }
  double momentumSpacing() const { return std::numbers::pi / halfExtent; }
  double momentum(std::size_t m) const {
    const auto n = static_cast<std::ptrdiff_t>(pointsPerAxis);
    auto mm = static_cast<std::ptrdiff_t>(m);
    if (mm >= n / 2) mm -= n;
    return static_cast<double>(mm) * momentumSpacing();
  }
};

enum class OutputMode { CloneA = 0, CloneB = 1, Ancilla = 2 };

inline const char* to_string(OutputMode m) {
  switch (m) {
    case OutputMode::CloneA: return "clone_a";
    case OutputMode::CloneB: return "clone_b";
    case OutputMode::Ancilla: return "ancilla";
  }
  return "?";
}

/// Three-mode wavefunction on an n^3 grid, index ((i * n) + j) * n + k.
class WaveFunctionGrid {
 public:
  WaveFunctionGrid(GridParams params, std::vector<Complex> values)
      : params_(params), values_(std::move(values)) {
    const std::size_t n = params_.pointsPerAxis;
    if (values_.size() != n * n * n) throw DimensionError("grid data must have n^3 entries");
  }

  const GridParams& params() const { return params_; }
  const std::vector<Complex>& values() const { return values_; }

  const Complex& at(std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t n = params_.pointsPerAxis;
    return values_[(i * n + j) * n + k];
  }

  /// Riemann sum of |Psi|^2.
  double squaredNorm() const {
    double s = 0.0;
    for (const Complex& c : values_) s += std::norm(c);
    const double dx = params_.spacing();
    return s * dx * dx * dx;
  }

  /// Probability carried by points within kBoundaryCells of any grid edge.
  double boundaryMass() const {
    const std::size_t n = params_.pointsPerAxis;
    auto edge = [n](std::size_t i) { return i < kBoundaryCells || i + kBoundaryCells >= n; };
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (edge(i) || edge(j) || edge(k)) s += std::norm(at(i, j, k));
    const double dx = params_.spacing();
    return s * dx * dx * dx;
  }

  friend WaveFunctionGrid operator+(const WaveFunctionGrid& a, const WaveFunctionGrid& b) {
    std::vector<Complex> v(a.values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
    return {a.params_, std::move(v)};
  }

  friend WaveFunctionGrid operator*(Complex s, const WaveFunctionGrid& a) {
    std::vector<Complex> v(a.values_);
    for (Complex& c : v) c *= s;
    return {a.params_, std::move(v)};
  }

 private:
  GridParams params_;
  std::vector<Complex> values_;
};

/// Single-mode density matrix rho(u, u') sampled on the grid.
struct DensityGrid {
  GridParams params;
  ComplexMatrix rho;

  double trace() const { return rho.diagonal().real().sum() * params.spacing(); }
  double hermiticityDefect() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
};

/// Minimum-uncertainty Gaussian wavefunction with x variance e^{-2r}/2.
/// r = 0 is the coherent state centred on `mean`.
inline WaveFunction gaussianWaveFunction(double r, PhasePoint mean) {
  const double width2 = std::exp(-2.0 * r);  // 2 * variance
  const double norm = std::pow(std::numbers::pi * width2, -0.25);
  return [=](double x) {
    const double d = x - mean.x;
    return norm * std::exp(Complex(-d * d / (2.0 * width2), mean.p * x));
  };
}

inline WaveFunction coherentWaveFunction(PhasePoint mean) { return gaussianWaveFunction(0.0, mean); }

inline ComplexVector sampleOnGrid(const WaveFunction& psi, const GridParams& params) {
  ComplexVector out(static_cast<Eigen::Index>(params.pointsPerAxis));
  for (std::size_t i = 0; i < params.pointsPerAxis; ++i) {
    out(static_cast<Eigen::Index>(i)) = psi(params.coordinate(i));
  }
  return out;
}

/// The cloning kernel with no normalisation or boundary checks; linear in psi.
inline WaveFunctionGrid applyCloningKernel(const WaveFunction& psi, const GridParams& params) {
  params.validate();
  const std::size_t n = params.pointsPerAxis;
  const double dx = params.spacing();
  // u + v - w lies on the same lattice, at index i + j - k in [-(n-1), 2n-2].
  const std::size_t offset = n - 1;
  std::vector<Complex> shifted(3 * n - 2);
  for (std::size_t s = 0; s < shifted.size(); ++s) {
    const double x = -params.halfExtent + (static_cast<double>(s) - static_cast<double>(offset)) * dx;
    shifted[s] = psi(x);
  }
  // exp(-(a - b)^2 / 2) depends only on the index difference.
  std::vector<double> gauss(2 * n - 1);
  for (std::size_t d = 0; d < gauss.size(); ++d) {
    const double t = (static_cast<double>(d) - static_cast<double>(n - 1)) * dx;
    gauss[d] = std::exp(-0.5 * t * t);
  }
  const double pref = 1.0 / std::sqrt(std::numbers::pi);
  std::vector<Complex> values(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Complex in = shifted[i + j + offset - k];
        const double g = gauss[k + n - 1 - j] * gauss[k + n - 1 - i];
        values[(i * n + j) * n + k] = pref * g * in;
      }
    }
  }
  return {params, std::move(values)};
}

/// Clones a normalised input wavefunction. Throws InvalidState if psi is not
/// normalised on the grid and GridTooSmall if the output leaks to the edges.
inline WaveFunctionGrid cloneWaveFunction(const WaveFunction& psi, const GridParams& params) {
  params.validate();
  const ComplexVector samples = sampleOnGrid(psi, params);
  const double norm = samples.squaredNorm() * params.spacing();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw InvalidState("input wavefunction is not normalised on the grid (norm " +
                       std::to_string(norm) + ")");
  }
  WaveFunctionGrid out = applyCloningKernel(psi, params);
  const double edge = out.boundaryMass();
  if (edge > kMaxBoundaryMass) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "output carries %.3g probability at the grid boundary (limit %.0e); widen the grid",
                  edge, kMaxBoundaryMass);
    throw GridTooSmall(msg);
  }
  return out;
}

/// Uncorrelated product psi_a (x) psi_b (x) psi_c; the output of a circuit
/// that does nothing.
inline WaveFunctionGrid productWaveFunction(const WaveFunction& a, const WaveFunction& b,
                                            const WaveFunction& c, const GridParams& params) {
  params.validate();
  const ComplexVector sa = sampleOnGrid(a, params);
  const ComplexVector sb = sampleOnGrid(b, params);
  const ComplexVector sc = sampleOnGrid(c, params);
  const std::size_t n = params.pointsPerAxis;
  std::vector<Complex> values(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        values[(i * n + j) * n + k] = sa(static_cast<Eigen::Index>(i)) *
                                      sb(static_cast<Eigen::Index>(j)) *
                                      sc(static_cast<Eigen::Index>(k));
  return {params, std::move(values)};
}

/// rho(u, u') = sum over the two traced axes of Psi Psi^*, grid weighted.
inline DensityGrid reducedDensity(const WaveFunctionGrid& grid, OutputMode mode) {
  const GridParams& params = grid.params();
  const std::size_t n = params.pointsPerAxis;
  const auto ni = static_cast<Eigen::Index>(n);
  ComplexMatrix a(ni, ni * ni);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Complex& c = grid.at(i, j, k);
        std::size_t row = i, col = j * n + k;
        if (mode == OutputMode::CloneB) {
          row = j;
          col = i * n + k;
        } else if (mode == OutputMode::Ancilla) {
          row = k;
          col = i * n + j;
        }
        a(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = c;
      }
    }
  }
  const double dx = params.spacing();
  ComplexMatrix rho = (a * a.adjoint()) * (dx * dx);
  return {params, std::move(rho)};
}

/// Density matrix of a pure single-mode wavefunction.
inline DensityGrid pureDensity(const WaveFunction& psi, const GridParams& params) {
  params.validate();
  const ComplexVector s = sampleOnGrid(psi, params);
  return {params, s * s.adjoint()};
}

namespace detail {

// Columnwise forward FFT (e^{-2 pi i m j / n}).
inline ComplexMatrix fftColumns(const ComplexMatrix& m) {
  Eigen::FFT<double> fft;
  ComplexMatrix out(m.rows(), m.cols());
  std::vector<Complex> in(static_cast<std::size_t>(m.rows()));
  std::vector<Complex> res;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) in[static_cast<std::size_t>(r)] = m(r, c);
    fft.fwd(res, in);
    for (Eigen::Index r = 0; r < m.rows(); ++r) out(r, c) = res[static_cast<std::size_t>(r)];
  }
  return out;
}

inline ComplexMatrix ifftColumns(const ComplexMatrix& m) {
  Eigen::FFT<double> fft;
  ComplexMatrix out(m.rows(), m.cols());
  std::vector<Complex> in(static_cast<std::size_t>(m.rows()));
  std::vector<Complex> res;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) in[static_cast<std::size_t>(r)] = m(r, c);
    fft.inv(res, in);
    for (Eigen::Index r = 0; r < m.rows(); ++r) out(r, c) = res[static_cast<std::size_t>(r)];
  }
  return out;
}

}  // namespace detail

/// Momentum distribution P(k_m) = dx^2 / (2 pi) [F rho F^dagger]_{mm}.
inline std::vector<double> momentumDistribution(const DensityGrid& density) {
  const ComplexMatrix frho = detail::fftColumns(density.rho);
  const ComplexMatrix full = detail::fftColumns(frho.adjoint()).adjoint();
  const double dx = density.params.spacing();
  std::vector<double> p(density.params.pointsPerAxis);
  for (std::size_t m = 0; m < p.size(); ++m) {
    p[m] = full(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)).real() * dx * dx /
           (2.0 * std::numbers::pi);
  }
  return p;
}

inline std::vector<double> positionDistribution(const DensityGrid& density) {
  std::vector<double> out(density.params.pointsPerAxis);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = density.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return out;
}

/// First and second quadrature moments of a grid density, packaged as the
/// Gaussian state with the same moments.
inline GaussianState marginalMoments(const DensityGrid& density) {
  const GridParams& params = density.params;
  const std::size_t n = params.pointsPerAxis;
  const double dx = params.spacing();
  const double dk = params.momentumSpacing();

  const std::vector<double> px = positionDistribution(density);
  double mx = 0.0, mxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = params.coordinate(i);
    mx += u * px[i] * dx;
    mxx += u * u * px[i] * dx;
  }
  const std::vector<double> pk = momentumDistribution(density);
  double mp = 0.0, mpp = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double k = params.momentum(m);
    mp += k * pk[m] * dk;
    mpp += k * k * pk[m] * dk;
  }
  // Re <x p> with p applied spectrally to the columns of rho.
  ComplexMatrix spectrum = detail::fftColumns(density.rho);
  for (Eigen::Index m = 0; m < spectrum.rows(); ++m) {
    spectrum.row(m) *= params.momentum(static_cast<std::size_t>(m));
  }
  const ComplexMatrix prho = detail::ifftColumns(spectrum);
  double mxp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    mxp += params.coordinate(i) * prho(ii, ii).real() * dx;
  }
  Vector mean(2);
  mean << mx, mp;
  Matrix cov(2, 2);
  const double cxp = mxp - mx * mp;
  cov << mxx - mx * mx, cxp,
         cxp, mpp - mp * mp;
  return {mean, cov};
}

/// sum psi_alpha^*(u) rho(u, u') psi_alpha(u') dx^2.
inline double gridCoherentFidelity(const DensityGrid& density, PhasePoint alphaMean) {
  const ComplexVector s = sampleOnGrid(coherentWaveFunction(alphaMean), density.params);
  const double dx = density.params.spacing();
  return (s.adjoint() * density.rho * s)(0, 0).real() * dx * dx;
}

/// Two-dimensional (x, p) grid for phase-space amplitude functions f(x, p).
struct PhaseGrid {
  std::size_t pointsPerAxis = 256;
  double halfExtent = 8.0;

  double spacing() const { return 2.0 * halfExtent / static_cast<double>(pointsPerAxis); }
  double coordinate(std::size_t i) const { return -halfExtent + static_cast<double>(i) * spacing(); }
};

using PhaseFunction = std::function<Complex(double, double)>;

/// f sampled with rows indexed by x and columns by p.
inline ComplexMatrix samplePhaseFunction(const PhaseFunction& f, const PhaseGrid& g) {
  const auto n = static_cast<Eigen::Index>(g.pointsPerAxis);
  ComplexMatrix out(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      out(a, b) = f(g.coordinate(static_cast<std::size_t>(a)), g.coordinate(static_cast<std::size_t>(b)));
  return out;
}

/// g(x, p) = (1/2pi) sum_{x', p'} exp(i (p x' - x p')) f(x', p') dx^2 by
/// direct quadrature: g = dx^2/(2pi) E2 f^T E1^T with E1[p][x'] = e^{i p x'}
/// and E2[x][p'] = e^{-i x p'}.
inline ComplexMatrix phaseSpaceFourier(const ComplexMatrix& f, const PhaseGrid& g) {
  const auto n = static_cast<Eigen::Index>(g.pointsPerAxis);
  if (f.rows() != n || f.cols() != n) throw DimensionError("phase function does not match grid");
  ComplexMatrix e1(n, n), e2(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      const double prod = g.coordinate(static_cast<std::size_t>(a)) * g.coordinate(static_cast<std::size_t>(b));
      e1(a, b) = std::exp(Complex(0.0, prod));
      e2(a, b) = std::exp(Complex(0.0, -prod));
    }
  }
  const double dx = g.spacing();
  return (e2 * f.transpose() * e1.transpose()) * (dx * dx / (2.0 * std::numbers::pi));
}

/// max |g - f| for the given amplitude function.
inline double fourierSelfDualDeviation(const PhaseFunction& f, const PhaseGrid& g) {
  const ComplexMatrix sampled = samplePhaseFunction(f, g);
  return (phaseSpaceFourier(sampled, g) - sampled).cwiseAbs().maxCoeff();
}

/// f(x, p) = exp(-(x^2 + p^2)/2) / sqrt(pi), the Gaussian cloner's amplitude.
inline PhaseFunction gaussianClonerAmplitude() {
  return [](double x, double p) { return Complex(std::exp(-0.5 * (x * x + p * p)) / std::sqrt(std::numbers::pi), 0.0); };
}

/// Deviation of the Gaussian cloner amplitude from its own Fourier transform.
inline double checkFourierSelfDual(const PhaseGrid& g = {}) {
  return fourierSelfDualDeviation(gaussianClonerAmplitude(), g);
}

}  // namespace cvclone::grid

#endif  // CVCLONE_GRID_ORACLE_HPP
