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

#include <gtest/gtest.h>

#include <sstream>

#include "cvclone/io.hpp"

namespace cvclone::io {
namespace {

TEST(Io, NumbersUseTwelveSignificantDigits) {
  EXPECT_EQ(formatNumber(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(formatNumber(1.0), "1");
  EXPECT_EQ(number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_TRUE(number(std::nan("")).is_null());
  EXPECT_EQ(number(1.0 / 3.0).dump(), "0.333333333333");
}

TEST(Io, DumpKeepsTwelveDigitsAndStructure) {
  const Json j = {{"a", 0.0011180339887500001}, {"b", Json::array({1, 2.5})}, {"c", "x:1,2"}, {"d", Json::object()}};
  EXPECT_EQ(dump(j), "{\n  \"a\": 0.00111803398875,\n  \"b\": [\n    1,\n    2.5\n  ],\n  \"c\": \"x:1,2\",\n  \"d\": {}\n}\n");
  EXPECT_EQ(Json::parse(dump(j))["a"].get<double>(), 0.00111803398875);
}

TEST(Io, StateRoundTrip) {
  const GaussianState s = GaussianState::squeezed(0.3, {1.25, -0.5});
  const GaussianState back = stateFromJson(Json::parse(toJson(s).dump()));
  EXPECT_LE((back.cov() - s.cov()).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LE((back.mean() - s.mean()).cwiseAbs().maxCoeff(), 1e-11);
  Json bad = toJson(s);
  bad["n_modes"] = 2;
  EXPECT_THROW(stateFromJson(bad), DimensionError);
}

TEST(Io, InfoReportKeys) {
  const Json j = toJson(qkd::exclusionCheck(0.25, 0.5));
  for (const char* key : {"i", "i_ab", "i_ae", "gap", "empirical_i_ab", "stderr_i_ab"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["i"].get<double>(), 1.0);
  EXPECT_TRUE(j["empirical_i_ab"].is_null());
}

TEST(Io, TranscriptCsvDialect) {
  qkd::ProtocolParams p;
  p.nRounds = 3;
  const auto run = qkd::simulateProtocol(p);
  std::ostringstream os;
  writeTranscriptCsv(os, run.records);
  const std::string out = os.str();
  EXPECT_EQ(out.rfind("round,alice_basis,r,bob_basis,r_prime,kept\n", 0), 0u);
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 4);
  EXPECT_EQ(out.find('\r'), std::string::npos);
}

TEST(Io, ProfileCsvRejectsRaggedColumns) {
  std::ostringstream os;
  EXPECT_THROW(writeProfileCsv(os, "x", "y", {1.0}, {}), DimensionError);
}

TEST(Io, InputSpecGrammar) {
  EXPECT_TRUE(parseInputSpec("vacuum").isCoherent());
  const InputSpec c = parseInputSpec("coherent:1,0.5");
  EXPECT_EQ(c.mean, (PhasePoint{1.0, 0.5}));
  const InputSpec s = parseInputSpec("squeezed:0.3,-1,2e-1");
  EXPECT_DOUBLE_EQ(s.r, 0.3);
  EXPECT_EQ(s.mean, (PhasePoint{-1.0, 0.2}));
  EXPECT_NEAR(s.state().variance(0, Quadrature::X), 0.5 * std::exp(-0.6), 1e-15);
  for (const char* bad : {"coherent:1", "coherent:1,x", "squeezed:1,2", "vacuum:1", "thermal:1", "",
                          "coherent:1,2,", "coherent:nan,0"}) {
    EXPECT_THROW(parseInputSpec(bad), InvalidSpec) << bad;
  }
}

}  // namespace
}  // namespace cvclone::io
