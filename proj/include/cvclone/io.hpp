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

// JSON and CSV serialisation. Numbers are written with 12 significant
// digits; CSV uses comma separators, one header row and LF line endings.

#ifndef CVCLONE_IO_HPP
#define CVCLONE_IO_HPP

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <ostream>
#include <string>
#include <vector>

#include "cvclone/cloners.hpp"
#include "cvclone/gaussian.hpp"
#include "cvclone/grid_oracle.hpp"
#include "cvclone/measurement.hpp"
#include "cvclone/qkd.hpp"

namespace cvclone::io {

using Json = nlohmann::json;

inline std::string formatNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, so JSON output has at most 12.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(formatNumber(x));
}

inline Json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

namespace detail {

inline void dumpTo(std::string& out, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        dumpTo(out, v, indent, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dumpTo(out, j[i], indent, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += formatNumber(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Pretty-printed JSON whose floating-point values carry at most 12
/// significant digits.
inline std::string dump(const Json& j, int indent = 2) {
  std::string out;
  detail::dumpTo(out, j, indent, 0);
  return out + "\n";
}

inline Json numbers(const std::vector<double>& xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(number(x));
  return arr;
}

inline Json optionalNumber(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

/// Single-mode input parsed from `coherent:x,p`, `squeezed:r,x,p` or `vacuum`.
struct InputSpec {
  double r = 0.0;
  PhasePoint mean{};
  std::string text = "vacuum";

  GaussianState state() const { return GaussianState::squeezed(r, mean); }
  grid::WaveFunction waveFunction() const { return grid::gaussianWaveFunction(r, mean); }
  bool isCoherent() const { return r == 0.0; }
};

inline InputSpec parseInputSpec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    if (text.back() == ',') throw InvalidSpec("trailing comma in input spec '" + text + "'");
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size() || !std::isfinite(value)) {
        throw InvalidSpec("bad number '" + item + "' in input spec '" + text + "'");
      }
      args.push_back(value);
    }
  }
  InputSpec spec;
  spec.text = text;
  if (kind == "vacuum" && colon == std::string::npos) return spec;
  if (kind == "coherent" && args.size() == 2) {
    spec.mean = {args[0], args[1]};
    return spec;
  }
  if (kind == "squeezed" && args.size() == 3) {
    spec.r = args[0];
    spec.mean = {args[1], args[2]};
    return spec;
  }
  throw InvalidSpec("input spec '" + text + "' must be coherent:x,p | squeezed:r,x,p | vacuum");
}

inline Json toJson(PhasePoint p) { return Json::array({number(p.x), number(p.p)}); }

inline Json toJson(const GaussianState& s) {
  Json cov = Json::array();
  for (Eigen::Index r = 0; r < s.cov().rows(); ++r)
    for (Eigen::Index c = 0; c < s.cov().cols(); ++c) cov.push_back(number(s.cov()(r, c)));
  Json mean = Json::array();
  for (Eigen::Index r = 0; r < s.mean().size(); ++r) mean.push_back(number(s.mean()(r)));
  return {{"n_modes", s.nModes()}, {"mean", mean}, {"cov", cov}};
}

inline GaussianState stateFromJson(const Json& j) {
  const std::size_t n = j.at("n_modes").get<std::size_t>();
  const auto mean = j.at("mean").get<std::vector<double>>();
  const auto cov = j.at("cov").get<std::vector<double>>();
  if (mean.size() != 2 * n || cov.size() != 4 * n * n) {
    throw DimensionError("state JSON has inconsistent sizes");
  }
  const auto dim = static_cast<Eigen::Index>(2 * n);
  Vector m(dim);
  Matrix c(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    m(r) = mean[static_cast<std::size_t>(r)];
    for (Eigen::Index k = 0; k < dim; ++k) c(r, k) = cov[static_cast<std::size_t>(r * dim + k)];
  }
  return {m, c};
}

inline Json toJson(const CloneReport& r) {
  return {{"clone_excess_x", numbers(r.excessNoiseX)},
          {"clone_excess_p", numbers(r.excessNoiseP)},
          {"fidelity", numbers(r.fidelity)},
          {"anticlone_mean", r.anticloneMean ? toJson(*r.anticloneMean) : Json(nullptr)}};
}

inline Json toJson(const qkd::InfoReport& r) {
  return {{"i", number(r.i)},
          {"i_ab", number(r.iAB)},
          {"i_ae", number(r.iAE)},
          {"gap", number(r.exclusionGap)},
          {"empirical_i_ab", optionalNumber(r.empiricalIAB)},
          {"empirical_i_ae", optionalNumber(r.empiricalIAE)},
          {"empirical_noise_b", optionalNumber(r.empiricalNoiseB)},
          {"empirical_sifted_fraction", optionalNumber(r.siftedFraction)},
          {"stderr_i_ab", optionalNumber(r.stderrIAB)},
          {"stderr_i_ae", optionalNumber(r.stderrIAE)},
          {"stderr_noise_b", optionalNumber(r.stderrNoiseB)},
          {"stderr_sifted_fraction", optionalNumber(r.stderrSiftedFraction)}};
}

inline Json toJson(const qkd::NoiseEstimate& e) {
  return {{"delta_nb2_hat", number(e.deltaNB2Hat)},
          {"stderr", number(e.stdError)},
          {"i_ae_upper_bound", number(e.iAEUpperBound)},
          {"pairs", e.pairs}};
}

inline void writeSampleCsv(std::ostream& os, const SampleBatch& batch, const std::string& column) {
  os << column << '\n';
  for (double v : batch.values) os << formatNumber(v) << '\n';
}

inline void writeTranscriptCsv(std::ostream& os, const std::vector<qkd::RoundRecord>& records) {
  os << "round,alice_basis,r,bob_basis,r_prime,kept\n";
  for (const auto& rec : records) {
    os << rec.round << ',' << to_string(rec.aliceBasis) << ',' << formatNumber(rec.r) << ','
       << to_string(rec.bobBasis) << ',' << formatNumber(rec.rPrime) << ','
       << (rec.kept ? 1 : 0) << '\n';
  }
}

inline void writeDensityCsv(std::ostream& os, const grid::DensityGrid& d) {
  os << "u,u_prime,re_rho,im_rho\n";
  for (Eigen::Index i = 0; i < d.rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.rho.cols(); ++j) {
      os << formatNumber(d.params.coordinate(static_cast<std::size_t>(i))) << ','
         << formatNumber(d.params.coordinate(static_cast<std::size_t>(j))) << ','
         << formatNumber(d.rho(i, j).real()) << ',' << formatNumber(d.rho(i, j).imag()) << '\n';
    }
  }
}

inline void writeProfileCsv(std::ostream& os, const std::string& xName, const std::string& yName,
                            const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw DimensionError("profile columns differ in length");
  os << xName << ',' << yName << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << formatNumber(xs[i]) << ',' << formatNumber(ys[i]) << '\n';
  }
}

}  // namespace cvclone::io

#endif  // CVCLONE_IO_HPP
