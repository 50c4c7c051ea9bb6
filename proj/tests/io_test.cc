// Copyright 2026 The SSC Authors
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

#include "ssc/io.h"

#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "reference_models.h"
#include "ssc/errors.h"

namespace ssc {
namespace {

using nlohmann::json;

UserSubset S(std::vector<int> members) {
  return UserSubset::FromMembers(members);
}

// Message of the validation error thrown by fn.
template <typename Fn>
std::string ValidationMessage(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error thrown";
  return "";
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(PrecisionTest, Formatting) {
  EXPECT_EQ(ParsePrecision("6"), Precision::kSix);
  EXPECT_EQ(ParsePrecision("full"), Precision::kFull);
  EXPECT_THROW(ParsePrecision("7"), Error);
  EXPECT_EQ(FormatNumber(0.2617988688138706, Precision::kSix), "0.261799");
  EXPECT_EQ(std::strtod(FormatNumber(0.1, Precision::kFull).c_str(), nullptr),
            0.1);
  EXPECT_EQ(FormatNumber(1.0 / 3.0, Precision::kFull), "0.33333333333333331");
  EXPECT_EQ(FormatNumber(std::numeric_limits<double>::infinity(),
                         Precision::kSix),
            "inf");
}

TEST(ParseSourceModelTest, ValidAndInvalid) {
  const SourceModel m =
      ParseSourceModel(R"({"sigma_x2": 2.0, "noise_vars": [1.0, 0.8]})");
  EXPECT_DOUBLE_EQ(m.sigma_x2, 2.0);
  EXPECT_EQ(m.noise_vars, (std::vector<double>{1.0, 0.8}));

  const std::string syntax = ValidationMessage(
      [] { ParseSourceModel("{\n  \"sigma_x2\": 2.0,\n  oops\n}", "m.json"); });
  EXPECT_NE(syntax.find("m.json:3:"), std::string::npos) << syntax;

  const std::string missing = ValidationMessage(
      [] { ParseSourceModel(R"({"sigma_x2": 2.0})", "m.json"); });
  EXPECT_NE(missing.find("'noise_vars'"), std::string::npos) << missing;

  const std::string negative = ValidationMessage([] {
    ParseSourceModel(R"({"sigma_x2": 2.0, "noise_vars": [1.0, -1]})", "m.json");
  });
  EXPECT_NE(negative.find("m.json"), std::string::npos) << negative;

  ValidationMessage(
      [] { ParseSourceModel(R"({"sigma_x2": "2", "noise_vars": [1]})"); });
  ValidationMessage([] { ParseSourceModel(R"([1, 2])"); });
}

TEST(ParseAccessStructureTest, BothForms) {
  const AccessStructure g = ParseAccessStructure(
      R"({"num_users": 3, "minimal_sets": [[1, 2], [3]]})");
  EXPECT_EQ(g.num_users(), 3);
  EXPECT_TRUE(g.IsAuthorized(S({2})));
  EXPECT_TRUE(g.IsAuthorized(S({0, 1})));
  EXPECT_FALSE(g.IsAuthorized(S({0})));

  const AccessStructure t =
      ParseAccessStructure(R"({"threshold": {"L": 5, "t": 3}})");
  EXPECT_EQ(t.threshold(), 3);

  const std::string zero = ValidationMessage([] {
    ParseAccessStructure(R"({"num_users": 3, "minimal_sets": [[0]]})", "s");
  });
  EXPECT_NE(zero.find("minimal_sets"), std::string::npos) << zero;
  ValidationMessage([] {
    ParseAccessStructure(R"({"num_users": 3, "minimal_sets": [[1], [1, 2]]})");
  });
  ValidationMessage(
      [] { ParseAccessStructure(R"({"threshold": {"L": 3, "t": 4}})"); });
}

TEST(ParseDiscreteSpecTest, ShippedFileMatchesTheReferenceModel) {
  const ParsedDiscreteSpec p = ParseDiscreteSpec(
      ReadTextFile(std::string(SSC_DATA_DIR) + "/binary_threshold_3_2.json"));
  const DiscreteSourceSpec ref = testing_models::BinarySymmetricSpec(3, 0.2, 0.2);
  ASSERT_EQ(p.spec.p_xy.size(), ref.p_xy.size());
  for (std::size_t i = 0; i < ref.p_xy.size(); ++i) {
    EXPECT_NEAR(p.spec.p_xy[i], ref.p_xy[i], 1e-15);
  }
  EXPECT_EQ(p.spec.p_v_given_x, ref.p_v_given_x);
  EXPECT_EQ(p.spec.u_card, 1);
  ASSERT_TRUE(p.structure.has_value());
  EXPECT_EQ(p.structure->threshold(), 2);
  ASSERT_TRUE(p.epsilons.has_value());
  EXPECT_DOUBLE_EQ(p.epsilons->eps2, 0.9);
  EXPECT_FALSE(p.distortion_target.has_value());
}

TEST(ParseDiscreteSpecTest, DefaultsAndReconstruction) {
  const ParsedDiscreteSpec p = ParseDiscreteSpec(R"({
    "x_card": 2, "y_cards": [2], "v_card": 2,
    "p_xy": [0.4, 0.1, 0.1, 0.4],
    "p_v_given_x": [0.9, 0.1, 0.1, 0.9],
    "distortion": [0, 1, 1, 0],
    "reconstruction": [{"set": [1], "table": [0, 0, 1, 1]}],
    "distortion_target": 0.2
  })");
  EXPECT_EQ(p.spec.xhat_card, 2);
  EXPECT_EQ(p.spec.p_u_given_v, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(p.spec.reconstruction.at(S({0}).mask()),
            (std::vector<int>{0, 0, 1, 1}));
  EXPECT_DOUBLE_EQ(*p.distortion_target, 0.2);

  const std::string bad = ValidationMessage([] {
    ParseDiscreteSpec(R"({
      "x_card": 2, "y_cards": [2], "v_card": 2,
      "p_xy": [0.4, 0.1, 0.1, 0.3],
      "p_v_given_x": [0.9, 0.1, 0.1, 0.9],
      "distortion": [0, 1, 1, 0]})",
                      "d.json");
  });
  EXPECT_NE(bad.find("d.json"), std::string::npos) << bad;
  EXPECT_NE(bad.find("p_xy"), std::string::npos) << bad;
  ValidationMessage([] {
    ParseDiscreteSpec(R"({
      "x_card": 2, "y_cards": [2], "v_card": 2, "u_card": 2,
      "p_xy": [0.4, 0.1, 0.1, 0.4],
      "p_v_given_x": [0.9, 0.1, 0.1, 0.9],
      "distortion": [0, 1, 1, 0]})");
  });
}

TEST(DigestTest, InvariantUnderMemberOrder) {
  const std::uint64_t a = CanonicalJsonDigest(R"({"a": 1, "b": [1, 2]})");
  const std::uint64_t b =
      CanonicalJsonDigest("{ \"b\" : [1,2],\n \"a\":1 }");
  const std::uint64_t c = CanonicalJsonDigest(R"({"a": 1, "b": [2, 1]})");
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(DigestHex(0x1234).size(), 16u);
  EXPECT_EQ(DigestHex(0xabcdef0123456789ULL), "abcdef0123456789");
}

TEST(EmitterTest, RegionJson) {
  const RegionResult r = ComputeRegion(testing_models::FiveUserModel(),
                                       AccessStructure::Threshold(5, 2), 0.1);
  const json j = json::parse(RegionToJson(r, Precision::kFull));
  EXPECT_DOUBLE_EQ(j["r_min"].get<double>(), r.r_min);
  EXPECT_EQ(j["case_tag"], "G1");
  EXPECT_EQ(j["a_star"], json::array({1, 3}));
  EXPECT_EQ(j["b_star"], json::array({5}));
  const json six = json::parse(RegionToJson(r, Precision::kSix));
  EXPECT_NEAR(six["r_min"].get<double>(), r.r_min, 1e-6);
}

TEST(EmitterTest, ChecksJsonSummary) {
  const std::vector<CheckReport> checks = {
      MakeCheck("a", 1.0, 1.0, 1e-12), MakeCheck("b", 1.0, 2.0, 1e-12),
      NotApplicable("c", "why")};
  const json j = json::parse(ChecksToJson(checks, Precision::kSix));
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_EQ(j["summary"]["total"], 3);
  EXPECT_EQ(j["summary"]["applicable"], 2);
  EXPECT_EQ(j["summary"]["passed"], 1);
  EXPECT_EQ(j["summary"]["all_passed"], false);
}

TEST(EmitterTest, ThresholdAndVerdictCsv) {
  const ThresholdReport rep =
      BuildThresholdReport(testing_models::FiveUserModel(), 0.1, 2, 5);
  const std::vector<std::string> rows = Lines(ThresholdCsv(rep, Precision::kSix));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0],
            "t,a_star,b_star,tr_a,tr_b,r_min,delta_min,case,hypothesis,"
            "verdicts");
  EXPECT_EQ(rows[1].rfind("2,1 3,5,2.11111,1.66667,0.968632,2.02637,G1,", 0),
            0u)
      << rows[1];
  EXPECT_NE(rows[1].find("holds"), std::string::npos);
  EXPECT_NE(rows[1].find("consistent"), std::string::npos);
  const std::vector<std::string> v = Lines(VerdictCsv(rep));
  EXPECT_EQ(v[0], "t,i,predicate,applicable,predicted,observed,consistent");
  EXPECT_EQ(v.size(), rep.verdicts.size() + 1);
}

TEST(EmitterTest, SweepCsv) {
  const std::vector<SweepPoint> s =
      SweepTradeoff(2.0, 0.1, 3.5, LinearGrid(0.0, 9.5, 3));
  const std::vector<std::string> rows = Lines(SweepCsv(s, Precision::kSix));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "tr_a,r_min,delta_min,case_tag");
  EXPECT_EQ(rows[1], "0,2.16096,2.37744,G2");
  EXPECT_EQ(rows[3], "9.5,0,1.5,DEGENERATE");
}

TEST(EmitterTest, SimResultSlackChecks) {
  SimResult r;
  r.trials = 100;
  r.n = 12;
  r.seed = 7;
  AuthorizedStats a;
  a.set = S({0, 1});
  a.failures = 2;
  a.mean_distortion = 0.12;
  r.authorized.push_back(a);
  LeakageEstimate e;
  e.set = S({0});
  e.bits_per_symbol = 0.5;
  r.unauthorized.push_back(e);
  r.feasible_rates.delta_bound = 0.4;
  const json j =
      json::parse(SimResultToJson(r, RateSplit{}, 0.1, Precision::kSix));
  ASSERT_TRUE(j.contains("slack_checks"));
  const std::string dump = j["slack_checks"].dump();
  EXPECT_NE(dump.find("true"), std::string::npos) << dump;
  const json no_target =
      json::parse(SimResultToJson(r, RateSplit{}, std::nullopt,
                                  Precision::kSix));
  EXPECT_FALSE(no_target.contains("slack_checks"));
}

TEST(EmitterTest, ManifestWrapper) {
  const RunManifest m{"ssc region", "00ff", 7, "0.1.0", "2026-01-01T00:00:00Z"};
  const json j = json::parse(WithManifest(m, R"({"x": 1})"));
  EXPECT_EQ(j["manifest"]["seed"], 7);
  EXPECT_EQ(j["manifest"]["config_digest"], "00ff");
  EXPECT_EQ(j["result"]["x"], 1);
  EXPECT_THROW(WithManifest(m, "{"), Error);
}

TEST(FileTest, RoundTripAndMissing) {
  const std::string path = ::testing::TempDir() + "/ssc_io_test.txt";
  WriteTextFile(path, "hello\n");
  EXPECT_EQ(ReadTextFile(path), "hello\n");
  EXPECT_THROW(ReadTextFile(path + ".missing"), Error);
}

}  // namespace
}  // namespace ssc
