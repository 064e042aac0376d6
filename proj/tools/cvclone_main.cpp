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

// cvclone: command-line runner for the cloning, oracle, key-distribution and
// verification experiments.
//
// Exit codes: 0 success, 2 a physics check failed, 64 usage error,
// 70 unexpected internal error.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cvclone/cvclone.hpp"

namespace {

using cvclone::io::Json;
using cvclone::io::formatNumber;
using cvclone::io::number;

constexpr int kExitOk = 0;
constexpr int kExitPhysics = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  std::string config;
};

void addCommon(CLI::App* sub, Common& c, std::vector<std::string> formats) {
  c.format = formats.front();
  sub->add_option("--seed", c.seed, "64-bit seed (default: $CVCLONE_SEED or 0)")->envname("CVCLONE_SEED");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
  sub->add_option("--out", c.out, "output path (default: stdout)");
  sub->add_option("--config", c.config, "config file, flat key=value or a JSON object; flags win");
}

// ---- config files ---------------------------------------------------------

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> readConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::map<std::string, std::string> out;
  auto key = [](std::string k) {
    k = trim(k);
    while (!k.empty() && k.front() == '-') k.erase(0, 1);
    return k;
  };
  if (trim(text).starts_with("{")) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || v.is_array() || v.is_null()) {
        throw UsageError("config key '" + k + "' must be a scalar");
      }
      out[key(k)] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(lines, line)) {
    ++lineNo;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineNo) + ": expected key=value");
    }
    out[key(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

bool userPassed(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.starts_with(flag + "="); });
}

std::optional<std::string> findConfigPath(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  return std::nullopt;
}

// Config entries become flags inserted right after the subcommand name,
// skipped whenever the user passed the same flag explicitly.
std::vector<std::string> mergeConfig(const CLI::App& app, std::vector<std::string> args) {
  const auto path = findConfigPath(args);
  if (!path || args.empty()) return args;
  const CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args.front());
  } catch (const CLI::OptionNotFound&) {
    return args;  // the parser will report the unknown subcommand
  }
  std::vector<std::string> injected;
  for (const auto& [k, v] : readConfig(*path)) {
    if (k == "config") continue;
    const std::string flag = "--" + k;
    if (sub->get_option_no_throw(flag) == nullptr) {
      throw UsageError("config key '" + k + "' is not an option of '" + args.front() + "'");
    }
    if (userPassed(args, flag)) continue;
    injected.push_back(flag);
    injected.push_back(v);
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

// ---- output ---------------------------------------------------------------

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

std::string dumpJson(const Json& j) { return cvclone::io::dump(j); }

// Scalar JSON value as CSV cell text.
std::string trimJson(const Json& v) {
  std::string s = cvclone::io::dump(v);
  s.pop_back();
  return s;
}

Json rngJson(std::uint64_t seed) {
  return {{"name", cvclone::kRngName}, {"version", cvclone::kRngVersion}, {"seed", seed}};
}

std::string csvRow(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

// ---- clone ----------------------------------------------------------------

struct CloneArgs {
  Common common;
  std::size_t n = 1;
  std::string m = "2";
  std::string impl = "circuit";
  std::string input = "vacuum";
  std::size_t samples = 0;
};

std::size_t parseCopies(const std::string& s) {
  if (s == "inf") return cvclone::kInfiniteCopies;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v == 0 || s.front() == '-') {
    throw UsageError("--m must be a positive integer or 'inf', got '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

Json copiesJson(std::size_t m) { return m == cvclone::kInfiniteCopies ? Json("inf") : Json(m); }

int runClone(const CloneArgs& a) {
  using namespace cvclone;
  const std::size_t m = parseCopies(a.m);
  if (a.n < 1) throw UsageError("--n must be >= 1");
  if (a.n > m) throw UsageError("need --n <= --m");

  if (a.impl == "bounds") {
    const double vb = varianceBound(a.n, m), fb = fidelityBound(a.n, m);
    if (a.common.format == "csv") {
      emit(a.common.out, "n,m,variance_bound,fidelity_bound\n" +
                             csvRow({std::to_string(a.n), m == kInfiniteCopies ? "inf" : std::to_string(m),
                                     formatNumber(vb), formatNumber(fb)}));
    } else {
      emit(a.common.out, dumpJson({{"command", "clone"},
                                   {"impl", "bounds"},
                                   {"n", a.n},
                                   {"m", copiesJson(m)},
                                   {"variance_bound", number(vb)},
                                   {"fidelity_bound", number(fb)}}));
    }
    return kExitOk;
  }

  if (m == kInfiniteCopies) throw UsageError("--m inf is only meaningful with --impl bounds");
  const io::InputSpec spec = io::parseInputSpec(a.input);
  ClonerBuild build = buildCircuitCloner();
  if (a.impl == "circuit" || a.impl == "amplifier") {
    if (a.n != 1 || m != 2) throw UsageError("--impl " + a.impl + " supports only --n 1 --m 2");
    if (a.impl == "amplifier") build = buildAmplifierCloner();
  } else {
    build = buildNtoM(a.n, m);
  }

  const CloneReport report = runCloner(build, replicate(spec.state(), a.n));
  const double vb = varianceBound(a.n, m), fb = fidelityBound(a.n, m);
  const double tol = 1e-10;

  bool excessOk = true;
  for (std::size_t c = 0; c < report.excessNoiseX.size(); ++c) {
    excessOk = excessOk && std::abs(report.excessNoiseX[c] - vb) <= tol &&
               std::abs(report.excessNoiseP[c] - vb) <= tol;
  }
  // Fidelity saturation is a statement about coherent inputs only.
  std::optional<bool> fidelityOk;
  if (spec.isCoherent()) {
    fidelityOk = std::all_of(report.fidelity.begin(), report.fidelity.end(),
                             [&](double f) { return std::abs(f - fb) <= tol; });
  }
  std::optional<bool> anticloneOk;
  if (a.impl != "ntom" && report.anticloneMean) {
    anticloneOk = std::abs(report.anticloneMean->x - spec.mean.x) <= tol &&
                  std::abs(report.anticloneMean->p + spec.mean.p) <= tol;
  }
  const bool pass = excessOk && fidelityOk.value_or(true) && anticloneOk.value_or(true);

  // Optional joint-measurement sampling of every clone.
  std::vector<MomentEstimate> sx, sp;
  for (std::size_t c = 0; c < report.excessNoiseX.size() && a.samples > 0; ++c) {
    const GaussianState clone = reduceToModes(report.output, {build.cloneModes[c]});
    const auto [xs, ps] = jointMeasureSample(clone, a.samples, splitmix64(a.common.seed ^ splitmix64(c + 1)));
    sx.push_back(estimateMeanVar(xs));
    sp.push_back(estimateMeanVar(ps));
  }

  if (a.common.format == "csv") {
    std::string out = "clone,excess_x,excess_p,fidelity,variance_bound,fidelity_bound";
    if (!sx.empty()) out += ",sampled_mean_x,sampled_var_x,stderr_var_x,sampled_mean_p,sampled_var_p,stderr_var_p";
    out += "\n";
    for (std::size_t c = 0; c < report.excessNoiseX.size(); ++c) {
      std::vector<std::string> row = {std::to_string(c), formatNumber(report.excessNoiseX[c]),
                                      formatNumber(report.excessNoiseP[c]), formatNumber(report.fidelity[c]),
                                      formatNumber(vb), formatNumber(fb)};
      if (!sx.empty()) {
        for (const MomentEstimate* e : {&sx[c], &sp[c]}) {
          row.push_back(formatNumber(e->mean));
          row.push_back(formatNumber(e->variance));
          row.push_back(formatNumber(e->varianceStdError));
        }
      }
      out += csvRow(row);
    }
    emit(a.common.out, out);
  } else {
    auto optBool = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
    Json j = {{"command", "clone"},
              {"impl", a.impl},
              {"n", a.n},
              {"m", m},
              {"input", spec.text},
              {"report", io::toJson(report)},
              {"output_state", io::toJson(report.output)},
              {"bounds", {{"variance", number(vb)}, {"fidelity", number(fb)}}},
              {"checks",
               {{"excess_saturates_bound", excessOk},
                {"fidelity_saturates_bound", optBool(fidelityOk)},
                {"anticlone_is_conjugate", optBool(anticloneOk)}}},
              {"pass", pass}};
    if (!sx.empty()) {
      Json samples = Json::array();
      for (std::size_t c = 0; c < sx.size(); ++c) {
        samples.push_back({{"clone", c},
                           {"mean_x", number(sx[c].mean)},
                           {"var_x", number(sx[c].variance)},
                           {"stderr_var_x", number(sx[c].varianceStdError)},
                           {"mean_p", number(sp[c].mean)},
                           {"var_p", number(sp[c].variance)},
                           {"stderr_var_p", number(sp[c].varianceStdError)}});
      }
      j["joint_measurement"] = {{"samples", a.samples}, {"rng", rngJson(a.common.seed)}, {"clones", samples}};
    }
    emit(a.common.out, dumpJson(j));
  }
  return pass ? kExitOk : kExitPhysics;
}

// ---- qkd ------------------------------------------------------------------

struct QkdArgs {
  Common common;
  double v = 0.25;
  std::optional<double> noiseB;
  std::size_t rounds = 200000;
  double disclosed = 0.1;
  std::string transcript;
};

int runQkd(const QkdArgs& a) {
  using namespace cvclone;
  qkd::ProtocolParams p;
  p.v = a.v;
  p.nRounds = a.rounds;
  p.seed = a.common.seed;
  p.disclosedFraction = a.disclosed;
  p.validate();
  if (a.noiseB && !(*a.noiseB >= 0.0 && std::isfinite(*a.noiseB))) {
    throw UsageError("--noise-b must be finite and >= 0");
  }
  const std::optional<double> attack = a.noiseB && *a.noiseB > 0.0 ? a.noiseB : std::nullopt;
  const qkd::ProtocolRun run = qkd::simulateProtocol(p, attack);
  const qkd::InfoReport& r = run.report;

  if (!a.transcript.empty()) {
    std::ostringstream os;
    io::writeTranscriptCsv(os, run.records);
    emit(a.transcript, os.str());
  }

  const bool analyticOk = r.exclusionGap >= -1e-12;
  bool empiricalOk = true;
  if (r.empiricalIAB && r.empiricalIAE && r.stderrIAB && r.stderrIAE) {
    const double se = std::hypot(*r.stderrIAB, *r.stderrIAE);
    empiricalOk = r.i - *r.empiricalIAB - *r.empiricalIAE >= -3.0 * se;
  }
  const bool pass = analyticOk && empiricalOk;

  const double iab = r.empiricalIAB.value_or(r.iAB);
  const double eveBound = run.estimate ? run.estimate->iAEUpperBound : std::max(0.0, r.i - iab);
  const std::string summary = "I=" + formatNumber(r.i) + " I_AB=" + formatNumber(iab) +
                              " I_AE≤" + formatNumber(eveBound) + "\n";

  std::string report;
  if (a.common.format == "csv") {
    report = "key,value\n";
    const Json info = io::toJson(r);
    for (const auto& [k, v] : info.items()) report += k + "," + (v.is_null() ? "" : trimJson(v)) + "\n";
    if (run.estimate) {
      for (const auto& [k, v] : io::toJson(*run.estimate).items()) report += "estimate_" + k + "," + trimJson(v) + "\n";
    }
  } else {
    report = dumpJson({{"command", "qkd"},
                       {"params",
                        {{"v", number(p.v)},
                         {"displacement_variance", number(p.displacementVariance())},
                         {"rounds", p.nRounds},
                         {"disclosed_fraction", number(p.disclosedFraction)},
                         {"noise_b", attack ? number(*attack) : Json(nullptr)},
                         {"rng", rngJson(p.seed)}}},
                       {"info", io::toJson(r)},
                       {"estimate", run.estimate ? io::toJson(*run.estimate) : Json(nullptr)},
                       {"checks", {{"analytic_exclusion", analyticOk}, {"empirical_exclusion", empiricalOk}}},
                       {"pass", pass}});
  }
  // The summary line goes to stdout; with no --out the report takes stdout
  // and the summary moves to stderr so stdout stays machine-readable.
  if (a.common.out.empty() || a.common.out == "-") {
    std::cerr << summary;
    std::cout << report;
  } else {
    emit(a.common.out, report);
    std::cout << summary;
  }
  return pass ? kExitOk : kExitPhysics;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  Common common;
  std::size_t grid = 64;
  double extent = 8.0;
  std::string input = "vacuum";
  std::string density;
  std::string profile;
};

int runOracle(const OracleArgs& a) {
  using namespace cvclone;
  const grid::GridParams params{a.grid, a.extent};
  params.validate();
  const io::InputSpec spec = io::parseInputSpec(a.input);
  const grid::WaveFunctionGrid g = grid::cloneWaveFunction(spec.waveFunction(), params);

  const grid::OutputMode modes[] = {grid::OutputMode::CloneA, grid::OutputMode::CloneB, grid::OutputMode::Ancilla};
  const CloneReport analytic = runCloner(buildCircuitCloner(), spec.state());
  const grid::ComplexVector psi = grid::sampleOnGrid(spec.waveFunction(), params);
  const double dx = params.spacing();

  struct Entry {
    std::string quantity;
    double grid, analytic;
  };
  std::vector<Entry> table;
  std::vector<grid::DensityGrid> densities;
  Json marginals = Json::object();
  for (std::size_t k = 0; k < 3; ++k) {
    densities.push_back(grid::reducedDensity(g, modes[k]));
    const GaussianState gm = grid::marginalMoments(densities.back());
    const GaussianState am = reduceToModes(analytic.output, {k});
    const std::string name = grid::to_string(modes[k]);
    marginals[name] = io::toJson(gm);
    if (k < 2) {
      const double f = (psi.adjoint() * densities.back().rho * psi)(0, 0).real() * dx * dx;
      table.push_back({"fidelity_" + name, f, analytic.fidelity[k]});
    }
    table.push_back({"mean_x_" + name, gm.mean()(0), am.mean()(0)});
    table.push_back({"mean_p_" + name, gm.mean()(1), am.mean()(1)});
    table.push_back({"var_x_" + name, gm.cov()(0, 0), am.cov()(0, 0)});
    table.push_back({"var_p_" + name, gm.cov()(1, 1), am.cov()(1, 1)});
    table.push_back({"cov_xp_" + name, gm.cov()(0, 1), am.cov()(0, 1)});
  }

  constexpr double kGate = 0.05;
  bool pass = true;
  Json rows = Json::array();
  std::string csv = "quantity,grid,analytic,deviation,tolerance,pass\n";
  for (const Entry& e : table) {
    const double dev = std::abs(e.grid - e.analytic);
    const double tolerance = kGate * std::max(1.0, std::abs(e.analytic));
    const bool ok = dev <= tolerance;
    pass = pass && ok;
    rows.push_back({{"quantity", e.quantity},
                    {"grid", number(e.grid)},
                    {"analytic", number(e.analytic)},
                    {"deviation", number(dev)},
                    {"tolerance", number(tolerance)},
                    {"pass", ok}});
    csv += csvRow({e.quantity, formatNumber(e.grid), formatNumber(e.analytic), formatNumber(dev),
                   formatNumber(tolerance), ok ? "1" : "0"});
  }

  if (!a.density.empty()) {
    std::ostringstream os;
    io::writeDensityCsv(os, densities[0]);
    emit(a.density, os.str());
  }
  if (!a.profile.empty()) {
    std::vector<double> us, ys;
    const std::vector<double> pos = grid::positionDistribution(densities[0]);
    for (std::size_t i = 0; i < params.pointsPerAxis; ++i) {
      us.push_back(params.coordinate(i));
      ys.push_back(pos[i]);
    }
    std::ostringstream os;
    io::writeProfileCsv(os, "u", "density_clone_a", us, ys);
    emit(a.profile, os.str());
  }

  if (a.common.format == "csv") {
    emit(a.common.out, csv);
  } else {
    emit(a.common.out, dumpJson({{"command", "oracle"},
                                 {"grid",
                                  {{"points_per_axis", params.pointsPerAxis},
                                   {"half_extent", number(params.halfExtent)},
                                   {"norm", number(g.squaredNorm())},
                                   {"boundary_mass", number(g.boundaryMass())}}},
                                 {"input", spec.text},
                                 {"marginals", marginals},
                                 {"table", rows},
                                 {"gate", number(kGate)},
                                 {"pass", pass}}));
  }
  return pass ? kExitOk : kExitPhysics;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  Common common;
  double breakGain = 2.0;
};

int runVerify(const VerifyArgs& a) {
  using namespace cvclone;
  if (!(a.breakGain >= 1.0) || !std::isfinite(a.breakGain)) throw UsageError("--break-gain must be >= 1");
  const std::vector<verify::Row> rows = verify::runAll({a.common.seed, a.breakGain});
  const auto passed = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const verify::Row& r) { return r.pass; }));
  const bool pass = passed == rows.size();

  std::string out;
  if (a.common.format == "json") {
    Json j = Json::array();
    for (const auto& r : rows) {
      j.push_back({{"row", r.name}, {"pass", r.pass}, {"value", number(r.value)}, {"limit", number(r.limit)}});
    }
    out = dumpJson({{"command", "verify"},
                    {"rng", rngJson(a.common.seed)},
                    {"amplifier_gain", number(a.breakGain)},
                    {"rows", j},
                    {"pass", pass}});
  } else if (a.common.format == "csv") {
    out = "row,status,value,limit\n";
    for (const auto& r : rows) {
      out += csvRow({r.name, r.pass ? "PASS" : "FAIL", formatNumber(r.value), formatNumber(r.limit)});
    }
  } else {
    char line[160];
    out = "cvclone verify  seed=" + std::to_string(a.common.seed) + "  rng=" + kRngName + " v" +
          std::to_string(kRngVersion) + "  amplifier-gain=" + formatNumber(a.breakGain) + "\n";
    std::snprintf(line, sizeof line, "%-24s %-6s %-20s %s\n", "row", "status", "value", "limit");
    out += line;
    for (const auto& r : rows) {
      std::snprintf(line, sizeof line, "%-24s %-6s %-20s %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    formatNumber(r.value).c_str(), formatNumber(r.limit).c_str());
      out += line;
    }
    out += std::to_string(passed) + "/" + std::to_string(rows.size()) + " rows passed\n";
  }
  emit(a.common.out, out);
  return pass ? kExitOk : kExitPhysics;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian cloning, grid oracle and squeezed-state key distribution experiments", "cvclone"};
  app.require_subcommand(1);

  CloneArgs clone;
  CLI::App* cloneCmd = app.add_subcommand("clone", "run a cloner or evaluate the cloning bounds");
  addCommon(cloneCmd, clone.common, {"json", "csv"});
  cloneCmd->add_option("--n", clone.n, "number of input copies N")->capture_default_str();
  cloneCmd->add_option("--m", clone.m, "number of clones M (integer, or 'inf' with --impl bounds)")
      ->capture_default_str();
  cloneCmd->add_option("--impl", clone.impl, "cloner implementation")
      ->check(CLI::IsMember({"circuit", "amplifier", "ntom", "bounds"}))
      ->capture_default_str();
  cloneCmd->add_option("--input", clone.input, "coherent:x,p | squeezed:r,x,p | vacuum")->capture_default_str();
  cloneCmd->add_option("--samples", clone.samples, "joint-measurement samples per clone (0 = none)")
      ->capture_default_str();

  QkdArgs qkdArgs;
  CLI::App* qkdCmd = app.add_subcommand("qkd", "simulate the squeezed-state key distribution protocol");
  addCommon(qkdCmd, qkdArgs.common, {"json", "csv"});
  qkdCmd->add_option("--v", qkdArgs.v, "squeezed-quadrature variance, 0 < v < 1/2")->capture_default_str();
  qkdCmd->add_option("--noise-b", qkdArgs.noiseB, "Bob's excess noise under a cloning attack (0 or absent: none)");
  qkdCmd->add_option("--rounds", qkdArgs.rounds, "protocol rounds")->capture_default_str();
  qkdCmd->add_option("--disclosed", qkdArgs.disclosed, "fraction of sifted rounds disclosed for estimation")
      ->capture_default_str();
  qkdCmd->add_option("--transcript", qkdArgs.transcript, "write the round transcript CSV here");

  OracleArgs oracle;
  CLI::App* oracleCmd = app.add_subcommand("oracle", "cross-check the cloner on a position-space grid");
  addCommon(oracleCmd, oracle.common, {"json", "csv"});
  oracleCmd->add_option("--grid", oracle.grid, "points per axis")->capture_default_str();
  oracleCmd->add_option("--extent", oracle.extent, "half extent L of [-L, L)")->capture_default_str();
  oracleCmd->add_option("--input", oracle.input, "coherent:x,p | squeezed:r,x,p | vacuum")->capture_default_str();
  oracleCmd->add_option("--density", oracle.density, "write clone A's density matrix CSV here");
  oracleCmd->add_option("--profile", oracle.profile, "write clone A's position profile CSV here");

  VerifyArgs verifyArgs;
  CLI::App* verifyCmd = app.add_subcommand("verify", "run the invariant suite and print a pass/fail table");
  addCommon(verifyCmd, verifyArgs.common, {"table", "json", "csv"});
  verifyCmd->add_option("--break-gain", verifyArgs.breakGain, "test hook: amplifier gain (2 is correct)")
      ->capture_default_str();

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = mergeConfig(app, std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return kExitOk;
    }
    std::cerr << "cvclone: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "cvclone: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cloneCmd->parsed()) return runClone(clone);
    if (qkdCmd->parsed()) return runQkd(qkdArgs);
    if (oracleCmd->parsed()) return runOracle(oracle);
    return runVerify(verifyArgs);
  } catch (const UsageError& e) {
    std::cerr << "cvclone: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cvclone::Error& e) {
    std::cerr << "cvclone: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cvclone: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
