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

// Acceptance checks. One PASS/FAIL line per criterion; the exit status is
// non-zero if any criterion fails. Reference values are recomputed here from
// closed forms rather than taken from the library.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvclone/cvclone.hpp"

namespace {

using namespace cvclone;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  PhasePoint point(double s = 2.0) { return {uniform(-s, s), uniform(-s, s)}; }
  GaussianState singleMode() {
    const double nu = uniform(0.5, 2.0), r = uniform(-1.0, 1.0), th = uniform(0.0, std::numbers::pi);
    Matrix s(2, 2);
    s << std::cos(th) * std::exp(-r), -std::sin(th) * std::exp(r), std::sin(th) * std::exp(-r),
        std::cos(th) * std::exp(r);
    const PhasePoint m = point();
    Vector mean(2);
    mean << m.x, m.p;
    return {mean, nu * s * s.transpose()};
  }

 private:
  std::mt19937_64 engine_;
};

// Overlap Tr(rho_a rho_b) of two single-mode Gaussians, written out for 2x2.
double overlap2(const GaussianState& a, const GaussianState& b) {
  const double s00 = a.cov()(0, 0) + b.cov()(0, 0), s01 = a.cov()(0, 1) + b.cov()(0, 1),
               s11 = a.cov()(1, 1) + b.cov()(1, 1);
  const double det = s00 * s11 - s01 * s01;
  const double dx = a.mean()(0) - b.mean()(0), dp = a.mean()(1) - b.mean()(1);
  const double q = (s11 * dx * dx - 2 * s01 * dx * dp + s00 * dp * dp) / det;
  return std::exp(-0.5 * q) / std::sqrt(det);
}

GaussianState mode(const GaussianState& s, std::size_t k) { return reduceToModes(s, {k}); }

// Clone output state of a 1-input build.
GaussianState cloneOut(const ClonerBuild& b, const GaussianState& in) { return runCloner(b, in).output; }

Outcome c1() {
  Rng rng(1);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const GaussianState in = GaussianState::coherent(rng.point());
    for (const ClonerBuild& b : {buildCircuitCloner(), buildAmplifierCloner()}) {
      const GaussianState out = cloneOut(b, in);
      for (std::size_t k : {0u, 1u}) worst = std::max(worst, std::abs(overlap2(in, mode(out, k)) - 2.0 / 3.0));
    }
  }
  return {worst <= 1e-10, fmt("max |F - 2/3| = %.3g", worst)};
}

Outcome c2() {
  Rng rng(2);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const GaussianState in = rng.singleMode();
    for (const ClonerBuild& b : {buildCircuitCloner(), buildAmplifierCloner()}) {
      const GaussianState out = cloneOut(b, in);
      for (std::size_t k : {0u, 1u}) {
        for (Eigen::Index q : {0, 1}) {
          worst = std::max(worst, std::abs(out.cov()(2 * k + q, 2 * k + q) - in.cov()(q, q) - 0.5));
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("max |dn^2 - 1/2| = %.3g", worst)};
}

Outcome c3() {
  Rng rng(3);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const GaussianState in = rng.singleMode();
    const GaussianState a = cloneOut(buildCircuitCloner(), in), b = cloneOut(buildAmplifierCloner(), in);
    worst = std::max({worst, (a.mean() - b.mean()).cwiseAbs().maxCoeff(), (a.cov() - b.cov()).cwiseAbs().maxCoeff()});
  }
  const double h = 1.0 / std::sqrt(2.0), s = std::sqrt(2.0);
  Matrix expected(6, 6);
  expected << 1, 0, h, 0, h, 0, 0, 1, 0, h, 0, -h, 1, 0, -h, 0, h, 0, 0, 1, 0, -h, 0, -h, 1, 0, 0, 0, s, 0, 0, -1, 0,
      0, 0, s;
  const double matrixDev = (buildAmplifierCloner().transform.matrix() - expected).cwiseAbs().maxCoeff();
  return {worst <= 1e-10 && matrixDev <= 1e-12,
          fmt("moment diff %.3g over 100 inputs, matrix diff %.3g", worst, matrixDev)};
}

Outcome c4() {
  double worstNoise = 0.0, worstF = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = n; m <= 6; ++m) {
      const GaussianState single = GaussianState::coherent({0.9, -0.4});
      const GaussianState out = runCloner(buildNtoM(n, m), replicate(single, n)).output;
      const double bound = 1.0 / static_cast<double>(n) - 1.0 / static_cast<double>(m);
      const double fb = static_cast<double>(m * n) / static_cast<double>(m * n + m - n);
      for (std::size_t k = 0; k < m; ++k) {
        const GaussianState c = mode(out, k);
        worstNoise = std::max({worstNoise, std::abs(c.cov()(0, 0) - 0.5 - bound), std::abs(c.cov()(1, 1) - 0.5 - bound)});
        worstF = std::max(worstF, std::abs(overlap2(single, c) - fb));
      }
    }
  }
  return {worstNoise <= 1e-10 && worstF <= 1e-10, fmt("noise dev %.3g, fidelity dev %.3g", worstNoise, worstF)};
}

Outcome c5() {
  Rng rng(5);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const PhasePoint a = rng.point();
    const PhasePoint m = cloneOut(buildCircuitCloner(), GaussianState::coherent(a)).modeMean(2);
    worst = std::max({worst, std::abs(m.x - a.x), std::abs(m.p + a.p)});
  }
  const PhasePoint a{1.0, 0.5};
  const grid::WaveFunctionGrid g = grid::cloneWaveFunction(grid::coherentWaveFunction(a), grid::GridParams{64, 8.0});
  const GaussianState anc = grid::marginalMoments(grid::reducedDensity(g, grid::OutputMode::Ancilla));
  const double rx = std::abs(anc.mean()(0) - a.x) / std::abs(a.x), rp = std::abs(anc.mean()(1) + a.p) / std::abs(a.p);
  return {worst <= 1e-12 && rx <= 0.02 && rp <= 0.02,
          fmt("analytic dev %.3g; grid relative dev (%.3g, %.3g)", worst, rx, rp)};
}

Outcome c6() {
  const grid::GridParams p{64, 8.0};
  const PhasePoint a{0.6, -0.8};
  const grid::WaveFunctionGrid g = grid::cloneWaveFunction(grid::coherentWaveFunction(a), p);
  double fdev = 0.0, vdev = 0.0;
  for (grid::OutputMode m : {grid::OutputMode::CloneA, grid::OutputMode::CloneB}) {
    const grid::DensityGrid rho = grid::reducedDensity(g, m);
    fdev = std::max(fdev, std::abs(grid::gridCoherentFidelity(rho, a) - 2.0 / 3.0));
    const GaussianState mm = grid::marginalMoments(rho);
    vdev = std::max({vdev, std::abs(mm.cov()(0, 0) - 1.0), std::abs(mm.cov()(1, 1) - 1.0)});
  }
  // Self-duality of exp(-(x^2+p^2)/2)/sqrt(pi) under the symplectic Fourier
  // transform, evaluated by direct quadrature.
  const grid::PhaseGrid pg{256, 8.0};
  const double fourier = grid::checkFourierSelfDual(pg);
  return {fdev <= 0.01 && vdev <= 0.02 && fourier < 1e-6,
          fmt("|F - 2/3| = %.3g, |var - 1| = %.3g, Fourier dev = %.3g", fdev, vdev, fourier)};
}

Outcome c7() {
  double worstZ = 0.0;
  std::uint64_t seed = 700;
  for (const PhasePoint a : {PhasePoint{0, 0}, PhasePoint{1.5, -0.5}, PhasePoint{-2, 3}}) {
    const auto [xs, ps] = jointMeasureSample(GaussianState::coherent(a), 100000, seed++);
    for (const auto* b : {&xs, &ps}) {
      const std::size_t n = b->values.size();
      double mean = 0.0;
      for (double v : b->values) mean += v;
      mean /= static_cast<double>(n);
      double var = 0.0;
      for (double v : b->values) var += (v - mean) * (v - mean);
      var /= static_cast<double>(n - 1);
      worstZ = std::max(worstZ, std::abs(var - 1.0) / (var * std::sqrt(2.0 / static_cast<double>(n))));
    }
  }
  return {worstZ <= 3.0, fmt("max |Var - 1| = %.3g s.e.", worstZ)};
}

Outcome c8() {
  Rng rng(8);
  double lowest = 1e300;
  const std::vector<ClonerBuild> builds = {buildCircuitCloner(), buildAmplifierCloner(), buildNtoM(1, 2),
                                           buildNtoM(1, 3), buildNtoM(1, 6), squeezedFamilyCloner(0.5),
                                           squeezedFamilyCloner(1.0)};
  for (const ClonerBuild& b : builds) {
    for (int t = 0; t < 5; ++t) {
      const GaussianState in = rng.singleMode();
      const GaussianState out = cloneOut(b, in);
      const auto& cm = b.cloneModes.indices();
      for (std::size_t i : cm) {
        for (std::size_t j : cm) {
          if (i == j) continue;
          const auto ii = static_cast<Eigen::Index>(2 * i), jj = static_cast<Eigen::Index>(2 * j);
          const double nxa = out.cov()(ii, ii) - in.cov()(0, 0), npb = out.cov()(jj + 1, jj + 1) - in.cov()(1, 1);
          lowest = std::min(lowest, std::sqrt(std::max(nxa, 0.0) * std::max(npb, 0.0)));
        }
      }
    }
  }
  // Asymmetric pairs: measure the added noise by pushing vacuum through each channel.
  for (int k = 0; k < 50; ++k) {
    const double d = std::pow(10.0, -2.0 + 4.0 * k / 49.0);
    const AsymmetricChannels ch = asymmetricCloneChannels(d);
    const GaussianState b = applyChannel(GaussianState::vacuum(1), ch.channelB);
    const GaussianState e = applyChannel(GaussianState::vacuum(1), ch.channelE);
    const double p1 = std::sqrt((b.cov()(0, 0) - 0.5) * (e.cov()(1, 1) - 0.5));
    const double p2 = std::sqrt((e.cov()(0, 0) - 0.5) * (b.cov()(1, 1) - 0.5));
    lowest = std::min({lowest, p1, p2});
  }
  return {lowest >= 0.5 - 1e-9, fmt("min product = %.12g", lowest)};
}

double info(double v, double n) { return 0.5 * std::log2((1 + 4 * v * n) / (4 * v * (v + n))); }

Outcome c9() {
  double worst = 0.0, minSub = 1e300;
  for (int a = 0; a < 20; ++a) {
    for (int b = 0; b < 20; ++b) {
      const double v = 0.05 + 0.4 * a / 19.0, d = 0.05 + 4.95 * b / 19.0;
      const qkd::InfoReport r = qkd::exclusionCheck(v, d);
      const double iRef = std::log2(0.5 / v);
      worst = std::max({worst, std::abs(r.exclusionGap), std::abs(r.i - iRef), std::abs(r.iAB - info(v, d)),
                        std::abs(r.iAE - info(v, 1 / (4 * d)))});
      for (double factor : {1.01, 2.0, 10.0}) {
        minSub = std::min(minSub, qkd::exclusionCheck(v, d, factor / (4 * d)).exclusionGap);
      }
    }
  }
  const qkd::InfoReport s = qkd::exclusionCheck(0.25, 0.5);
  const bool spot = std::abs(s.i - 1) <= 1e-12 && std::abs(s.iAB - 0.5) <= 1e-12 && std::abs(s.iAE - 0.5) <= 1e-12;
  return {worst <= 1e-12 && minSub > 0 && spot,
          fmt("max saturated |gap| = %.3g, min suboptimal gap = %.3g, spot (%.12g, ...)", worst, minSub, s.i)};
}

Outcome c10() {
  struct Case {
    double v;
    std::optional<double> d;
  };
  double worstZ = 0.0, worstSift = 0.0;
  std::uint64_t seed = 1000;
  for (const Case& c : {Case{0.25, std::nullopt}, Case{0.25, 0.5}, Case{0.125, 0.25}}) {
    qkd::ProtocolParams p;
    p.v = c.v;
    p.nRounds = 200000;
    p.seed = seed++;
    const qkd::InfoReport r = qkd::simulateProtocol(p, c.d).report;
    worstZ = std::max(worstZ, std::abs(*r.empiricalIAB - info(c.v, c.d.value_or(0.0))) / *r.stderrIAB);
    worstSift = std::max(worstSift, std::abs(*r.siftedFraction - 0.5) / *r.stderrSiftedFraction);
  }
  return {worstZ <= 3 && worstSift <= 3, fmt("max I_AB dev %.3g s.e., max sifting dev %.3g s.e.", worstZ, worstSift)};
}

Outcome c11() {
  double matched = 0.0, mismatched = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const GaussianState in = GaussianState::squeezed(r, {0.3, 0.7});
    const GaussianState a = cloneOut(squeezedFamilyCloner(r), in);
    const GaussianState b = cloneOut(buildCircuitCloner(), in);
    for (std::size_t k : {0u, 1u}) {
      matched = std::max(matched, std::abs(overlap2(in, mode(a, k)) - 2.0 / 3.0));
      mismatched = std::max(mismatched, std::abs(overlap2(in, mode(b, k)) - 1 / std::sqrt(1.25 + std::cosh(2 * r))));
    }
  }
  return {matched <= 1e-10 && mismatched <= 1e-10, fmt("matched dev %.3g, mismatched dev %.3g", matched, mismatched)};
}

std::string runCapture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

Outcome c12() {
  const std::string cmd = std::string("\"") + CVCLONE_CLI_PATH + "\" verify --seed 42";
  int s1 = 0, s2 = 0;
  const std::string a = runCapture(cmd, s1), b = runCapture(cmd, s2);
  const bool ok = s1 == 0 && s2 == 0 && !a.empty() && a == b;
  return {ok, fmt("two runs: %.0f bytes, identical=%.0f, exit status %.0f", static_cast<double>(a.size()), a == b ? 1.0 : 0.0,
                  static_cast<double>(s1))};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budgetSeconds;
  };
  const std::vector<Criterion> criteria = {
      {"1->2 clone fidelity 2/3", c1, 1.0},
      {"excess-noise saturation", c2, 0.0},
      {"circuit/amplifier equivalence", c3, 0.0},
      {"N->M bound saturation", c4, 5.0},
      {"anticlone centred on (x,-p)", c5, 0.0},
      {"grid oracle agreement", c6, 60.0},
      {"joint measurement variance 1", c7, 0.0},
      {"no-cloning products", c8, 0.0},
      {"information exclusion", c9, 0.0},
      {"protocol Monte Carlo", c10, 30.0},
      {"squeezed-family cloner", c11, 0.0},
      {"verify determinism", c12, 0.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = fmt("%.3fs", secs);
    if (criteria[i].budgetSeconds > 0) {
      timing += fmt(" (budget %.0fs)", criteria[i].budgetSeconds);
      if (secs > criteria[i].budgetSeconds) {
        o.pass = false;
        timing += " over budget";
      }
    }
    if (!o.pass) ++failures;
    std::printf("%s  %2zu  %-32s %s  [%s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                timing.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
