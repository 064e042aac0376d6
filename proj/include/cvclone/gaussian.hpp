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

// Gaussian states of n bosonic modes in the quadrature (phase-space)
// representation.
//
// Conventions used everywhere in cvclone:
//   * hbar = 1, [x, p] = i, vacuum quadrature variance 1/2.
//   * Quadratures are mode-interleaved: (x_0, p_0, x_1, p_1, ...).
//   * Omega is block diagonal with blocks [[0, 1], [-1, 0]].
//   * a = (x + i p) / sqrt(2).

#ifndef CVCLONE_GAUSSIAN_HPP
#define CVCLONE_GAUSSIAN_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cvclone/errors.hpp"

namespace cvclone {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Identities that hold exactly in exact arithmetic (symplectic condition,
// composition laws).
inline constexpr double kStructuralTol = 1e-10;
// Physical positivity (uncertainty principle, complete positivity).
inline constexpr double kPositivityTol = 1e-9;
// Relative symmetry tolerance for covariance matrices.
inline constexpr double kSymmetryTol = 1e-12;

inline constexpr double kVacuumVariance = 0.5;

enum class Quadrature { X, P };

inline const char* to_string(Quadrature q) { return q == Quadrature::X ? "x" : "p"; }

/// A point (x, p) in single-mode phase space.
struct PhasePoint {
  double x = 0.0;
  double p = 0.0;

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

inline std::size_t quadratureIndex(std::size_t mode, Quadrature q) {
  return 2 * mode + (q == Quadrature::X ? 0 : 1);
}

/// Standard symplectic form for n modes in interleaved ordering.
inline Matrix symplecticForm(std::size_t nModes) {
  Matrix omega = Matrix::Zero(2 * nModes, 2 * nModes);
  for (std::size_t k = 0; k < nModes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

/// max |S Omega S^T - Omega| over all entries.
inline double symplecticDefect(const Matrix& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) {
    throw DimensionError("symplectic matrix must be square with even dimension");
  }
  const Matrix omega = symplecticForm(static_cast<std::size_t>(s.rows() / 2));
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

inline bool isSymplectic(const Matrix& s, double tol = kStructuralTol) {
  return symplecticDefect(s) <= tol;
}

namespace detail {

inline double asymmetry(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

inline bool nearlySymmetric(const Matrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return asymmetry(m) <= kSymmetryTol * scale;
}

inline Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

// Smallest eigenvalue of the Hermitian matrix sym + (i/2) * antisym.
inline double minHermitianEigenvalue(const Matrix& sym, const Matrix& antisym) {
  using ComplexMatrix = Eigen::MatrixXcd;
  ComplexMatrix h = sym.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.5) * antisym.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

inline void requireSameModes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": mode count mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace detail

/// Ordered list of distinct mode indices.
class ModeSelection {
 public:
  ModeSelection() = default;
  ModeSelection(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
    std::vector<std::size_t> sorted = indices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw IndexError("mode selection contains duplicate indices");
    }
  }
  ModeSelection(std::initializer_list<std::size_t> indices)
      : ModeSelection(std::vector<std::size_t>(indices)) {}

  /// Indices first..first+count-1.
  static ModeSelection range(std::size_t first, std::size_t count) {
    std::vector<std::size_t> idx(count);
    for (std::size_t k = 0; k < count; ++k) idx[k] = first + k;
    return ModeSelection(std::move(idx));
  }

  void validate(std::size_t nModes) const {
    for (std::size_t i : indices_) {
      if (i >= nModes) {
        throw IndexError("mode index " + std::to_string(i) + " out of range for " +
                         std::to_string(nModes) + " modes");
      }
    }
  }

  bool contains(std::size_t mode) const {
    return std::find(indices_.begin(), indices_.end(), mode) != indices_.end();
  }

  bool disjointFrom(const ModeSelection& other) const {
    return std::none_of(indices_.begin(), indices_.end(),
                        [&](std::size_t i) { return other.contains(i); });
  }

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }

  friend bool operator==(const ModeSelection&, const ModeSelection&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// First and second moments of a Gaussian state.
///
/// Construction checks shape and symmetry only; whether the covariance is
/// physical is answered by validateUncertainty(), and operations that need a
/// physical state (fidelities, sampling) check it themselves.
class GaussianState {
 public:
  GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (mean_.size() == 0 || mean_.size() % 2 != 0) {
      throw DimensionError("mean vector must have positive even length");
    }
    if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
      throw DimensionError("covariance must be 2n x 2n for a mean of length 2n");
    }
    if (!detail::nearlySymmetric(cov_)) {
      throw InvalidState("covariance matrix is not symmetric");
    }
    cov_ = detail::symmetrized(cov_);
  }

  static GaussianState vacuum(std::size_t nModes) {
    if (nModes == 0) throw DimensionError("a state needs at least one mode");
    return {Vector::Zero(2 * nModes), kVacuumVariance * Matrix::Identity(2 * nModes, 2 * nModes)};
  }

  static GaussianState coherent(PhasePoint mean) {
    Vector m(2);
    m << mean.x, mean.p;
    return {m, kVacuumVariance * Matrix::Identity(2, 2)};
  }

  /// Minimum-uncertainty state with x variance e^{-2r}/2 and p variance
  /// e^{2r}/2, displaced to `mean`.
  static GaussianState squeezed(double r, PhasePoint mean = {}) {
    Vector m(2);
    m << mean.x, mean.p;
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = kVacuumVariance * std::exp(-2.0 * r);
    c(1, 1) = kVacuumVariance * std::exp(2.0 * r);
    return {m, c};
  }

  std::size_t nModes() const { return static_cast<std::size_t>(mean_.size() / 2); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

  PhasePoint modeMean(std::size_t mode) const {
    if (mode >= nModes()) throw IndexError("mode index out of range");
    return {mean_(2 * mode), mean_(2 * mode + 1)};
  }

  double variance(std::size_t mode, Quadrature q) const {
    if (mode >= nModes()) throw IndexError("mode index out of range");
    const auto i = static_cast<Eigen::Index>(quadratureIndex(mode, q));
    return cov_(i, i);
  }

 private:
  Vector mean_;
  Matrix cov_;
};

/// a (x) b, with the modes of `a` first.
inline GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const Eigen::Index na = a.mean().size();
  const Eigen::Index nb = b.mean().size();
  Vector mean(na + nb);
  mean << a.mean(), b.mean();
  Matrix cov = Matrix::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return {mean, cov};
}

/// `copies` independent replicas of a state.
inline GaussianState replicate(const GaussianState& s, std::size_t copies) {
  if (copies == 0) throw InvalidShape("replicate needs at least one copy");
  GaussianState out = s;
  for (std::size_t k = 1; k < copies; ++k) out = tensor(out, s);
  return out;
}

/// Affine phase-space map r -> matrix * r + shift with a symplectic matrix.
class SymplecticTransform {
 public:
  SymplecticTransform(Matrix matrix, Vector shift) : matrix_(std::move(matrix)), shift_(std::move(shift)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0 || matrix_.rows() % 2 != 0) {
      throw DimensionError("symplectic matrix must be square with positive even dimension");
    }
    if (shift_.size() != matrix_.rows()) {
      throw DimensionError("shift length must match matrix dimension");
    }
    const double defect = symplecticDefect(matrix_);
    if (!(defect <= kStructuralTol)) {
      throw InvalidTransform("matrix is not symplectic (defect " + std::to_string(defect) + ")");
    }
  }

  explicit SymplecticTransform(Matrix matrix)
      : SymplecticTransform(matrix, Vector::Zero(matrix.rows())) {}

  static SymplecticTransform identity(std::size_t nModes) {
    return SymplecticTransform(Matrix::Identity(2 * nModes, 2 * nModes));
  }

  std::size_t nModes() const { return static_cast<std::size_t>(matrix_.rows() / 2); }
  const Matrix& matrix() const { return matrix_; }
  const Vector& shift() const { return shift_; }

  /// (*this) after `first`: r -> this(first(r)).
  SymplecticTransform after(const SymplecticTransform& first) const {
    detail::requireSameModes(nModes(), first.nModes(), "compose");
    return {matrix_ * first.matrix_, matrix_ * first.shift_ + shift_};
  }

  /// `next` after (*this).
  SymplecticTransform then(const SymplecticTransform& next) const { return next.after(*this); }

  /// Inverse map; S^{-1} = -Omega S^T Omega for symplectic S.
  SymplecticTransform inverse() const {
    const Matrix omega = symplecticForm(nModes());
    Matrix inv = -omega * matrix_.transpose() * omega;
    return {inv, -inv * shift_};
  }

 private:
  Matrix matrix_;
  Vector shift_;
};

/// Places a k-mode transform on the listed modes of an n-mode system and acts
/// as the identity elsewhere.
inline SymplecticTransform embed(const SymplecticTransform& local, const ModeSelection& modes,
                                 std::size_t nModes) {
  if (local.nModes() != modes.size()) {
    throw DimensionError("embed: selection size must match the local transform");
  }
  modes.validate(nModes);
  Matrix m = Matrix::Identity(2 * nModes, 2 * nModes);
  Vector shift = Vector::Zero(2 * nModes);
  const Eigen::Index k = static_cast<Eigen::Index>(modes.size());
  for (Eigen::Index a = 0; a < 2 * k; ++a) {
    const auto ga = static_cast<Eigen::Index>(2 * modes[static_cast<std::size_t>(a / 2)] + a % 2);
    shift(ga) = local.shift()(a);
    for (Eigen::Index b = 0; b < 2 * k; ++b) {
      const auto gb = static_cast<Eigen::Index>(2 * modes[static_cast<std::size_t>(b / 2)] + b % 2);
      m(ga, gb) = local.matrix()(a, b);
    }
  }
  return {m, shift};
}

/// Affine noisy map: mean -> X mean, cov -> X cov X^T + Y.
class GaussianChannel {
 public:
  GaussianChannel(Matrix gain, Matrix noise) : gain_(std::move(gain)), noise_(std::move(noise)) {
    if (gain_.rows() != gain_.cols() || gain_.rows() == 0 || gain_.rows() % 2 != 0) {
      throw DimensionError("channel gain must be square with positive even dimension");
    }
    if (noise_.rows() != gain_.rows() || noise_.cols() != gain_.cols()) {
      throw DimensionError("channel noise must match gain dimension");
    }
    if (!detail::nearlySymmetric(noise_)) {
      throw InvalidChannel("channel noise matrix is not symmetric");
    }
    noise_ = detail::symmetrized(noise_);
    const Matrix omega = symplecticForm(nModes());
    const double minEig =
        detail::minHermitianEigenvalue(noise_, omega - gain_ * omega * gain_.transpose());
    if (minEig < -kPositivityTol) {
      throw InvalidChannel("channel violates complete positivity (min eigenvalue " +
                           std::to_string(minEig) + ")");
    }
  }

  /// Identity gain plus independent noise on every quadrature.
  static GaussianChannel additiveNoise(std::size_t nModes, double noiseX, double noiseP) {
    Matrix y = Matrix::Zero(2 * nModes, 2 * nModes);
    for (std::size_t k = 0; k < nModes; ++k) {
      y(2 * k, 2 * k) = noiseX;
      y(2 * k + 1, 2 * k + 1) = noiseP;
    }
    return {Matrix::Identity(2 * nModes, 2 * nModes), y};
  }

  static GaussianChannel additiveNoise(std::size_t nModes, double noise) {
    return additiveNoise(nModes, noise, noise);
  }

  std::size_t nModes() const { return static_cast<std::size_t>(gain_.rows() / 2); }
  const Matrix& gain() const { return gain_; }
  const Matrix& noise() const { return noise_; }

 private:
  Matrix gain_;
  Matrix noise_;
};

inline GaussianState applySymplectic(const GaussianState& state, const SymplecticTransform& t) {
  detail::requireSameModes(state.nModes(), t.nModes(), "applySymplectic");
  return {t.matrix() * state.mean() + t.shift(), t.matrix() * state.cov() * t.matrix().transpose()};
}

inline GaussianState applyChannel(const GaussianState& state, const GaussianChannel& ch) {
  detail::requireSameModes(state.nModes(), ch.nModes(), "applyChannel");
  return {ch.gain() * state.mean(), ch.gain() * state.cov() * ch.gain().transpose() + ch.noise()};
}

/// Marginal state of the selected modes, in selection order.
inline GaussianState reduceToModes(const GaussianState& state, const ModeSelection& sel) {
  if (sel.empty()) throw IndexError("cannot reduce to an empty mode selection");
  sel.validate(state.nModes());
  const auto n = static_cast<Eigen::Index>(2 * sel.size());
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(n));
  for (std::size_t m : sel.indices()) {
    idx.push_back(static_cast<Eigen::Index>(2 * m));
    idx.push_back(static_cast<Eigen::Index>(2 * m + 1));
  }
  Vector mean(n);
  Matrix cov(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    mean(a) = state.mean()(idx[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < n; ++b) {
      cov(a, b) = state.cov()(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
  }
  return {mean, cov};
}

/// Smallest eigenvalue of cov + (i/2) Omega.
inline double uncertaintyMargin(const GaussianState& state) {
  return detail::minHermitianEigenvalue(state.cov(), symplecticForm(state.nModes()));
}

/// True iff cov + (i/2) Omega >= -1e-9.
inline bool validateUncertainty(const GaussianState& state) {
  return uncertaintyMargin(state) >= -kPositivityTol;
}

inline void requirePhysical(const GaussianState& state, const char* what) {
  if (!validateUncertainty(state)) {
    throw InvalidState(std::string(what) + ": covariance violates the uncertainty principle");
  }
}

/// Tr(rho_a rho_b) = exp(-d^T (Va + Vb)^{-1} d / 2) / sqrt(det(Va + Vb)).
/// With vacuum variance 1/2 this is the fidelity whenever one side is pure.
inline double gaussianOverlap(const GaussianState& a, const GaussianState& b) {
  detail::requireSameModes(a.nModes(), b.nModes(), "gaussianOverlap");
  requirePhysical(a, "gaussianOverlap");
  requirePhysical(b, "gaussianOverlap");
  const Matrix sum = a.cov() + b.cov();
  const Vector d = a.mean() - b.mean();
  Eigen::LDLT<Matrix> ldlt(sum);
  const double quad = d.dot(ldlt.solve(d));
  return std::exp(-0.5 * quad) / std::sqrt(sum.determinant());
}

/// Tr(rho^2).
inline double purity(const GaussianState& state) {
  requirePhysical(state, "purity");
  return 1.0 / std::sqrt((2.0 * state.cov()).determinant());
}

/// <alpha| rho |alpha> for the coherent state centred on `alphaMean`.
inline double coherentFidelity(PhasePoint alphaMean, const GaussianState& state) {
  if (state.nModes() != 1) throw DimensionError("coherentFidelity expects a single-mode state");
  return gaussianOverlap(GaussianState::coherent(alphaMean), state);
}

}  // namespace cvclone

#endif  // CVCLONE_GAUSSIAN_HPP
