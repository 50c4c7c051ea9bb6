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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssc/errors.h"

namespace ssc {
namespace {

using nlohmann::json;

[[noreturn]] void FieldError(std::string_view origin, const std::string& field,
                             const std::string& what) {
  Fail(ErrorKind::kValidation,
       std::string(origin) + ": field '" + field + "': " + what);
}

json ParseJson(std::string_view text, std::string_view origin) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    Fail(ErrorKind::kValidation, std::string(origin) + ":" +
                                     std::to_string(line) + ":" +
                                     std::to_string(col) +
                                     ": malformed JSON: " + e.what());
  }
}

const json& Member(const json& obj, const char* key, std::string_view origin,
                   const std::string& path) {
  if (!obj.is_object()) FieldError(origin, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    FieldError(origin, path.empty() ? key : path + "." + key, "missing");
  }
  return *it;
}

std::string Join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

double Number(const json& v, std::string_view origin, const std::string& f) {
  if (!v.is_number()) FieldError(origin, f, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) FieldError(origin, f, "must be finite");
  return d;
}

int Integer(const json& v, std::string_view origin, const std::string& f) {
  if (!v.is_number_integer()) FieldError(origin, f, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < -(1LL << 30) || i > (1LL << 30)) {
    FieldError(origin, f, "integer out of range");
  }
  return static_cast<int>(i);
}

std::vector<double> NumberArray(const json& v, std::string_view origin,
                                const std::string& f) {
  if (!v.is_array()) FieldError(origin, f, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(Number(v[i], origin, f + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> IntArray(const json& v, std::string_view origin,
                          const std::string& f) {
  if (!v.is_array()) FieldError(origin, f, "expected an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(Integer(v[i], origin, f + "[" + std::to_string(i) + "]"));
  }
  return out;
}

UserSubset SubsetFromJson(const json& v, int num_users,
                          std::string_view origin, const std::string& f) {
  const std::vector<int> members = IntArray(v, origin, f);
  std::vector<int> zero_based;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] < 1 || members[i] > num_users) {
      FieldError(origin, f + "[" + std::to_string(i) + "]",
                 "user index must lie in [1, " + std::to_string(num_users) +
                     "]");
    }
    zero_based.push_back(members[i] - 1);
  }
  try {
    return UserSubset::FromMembers(zero_based);
  } catch (const Error& e) {
    FieldError(origin, f, e.what());
  }
}

// Re-raises module validation errors with the origin attached.
template <typename Fn>
auto WithOrigin(std::string_view origin, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (std::string_view(e.what()).find(std::string(origin) + ":") !=
        std::string_view::npos) {
      throw;
    }
    Fail(e.kind() == ErrorKind::kInvalidParameter ? ErrorKind::kValidation
                                                  : e.kind(),
         std::string(origin) + ": " + e.what());
  }
}

AccessStructure StructureFromJson(const json& j, std::string_view origin,
                                  const std::string& path) {
  if (!j.is_object()) FieldError(origin, path, "expected an object");
  if (j.contains("threshold")) {
    const std::string p = Join(path, "threshold");
    const json& th = j["threshold"];
    const int l = Integer(Member(th, "L", origin, p), origin, p + ".L");
    const int t = Integer(Member(th, "t", origin, p), origin, p + ".t");
    if (l < 1 || l > kMaxUsers) {
      FieldError(origin, p + ".L", "must lie in [1, 64]");
    }
    if (t < 1 || t > l) FieldError(origin, p + ".t", "must lie in [1, L]");
    return WithOrigin(origin, [&] { return AccessStructure::Threshold(l, t); });
  }
  const int l = Integer(Member(j, "num_users", origin, path), origin,
                        Join(path, "num_users"));
  if (l < 1 || l > kMaxUsers) {
    FieldError(origin, Join(path, "num_users"), "must lie in [1, 64]");
  }
  const std::string p = Join(path, "minimal_sets");
  const json& sets = Member(j, "minimal_sets", origin, path);
  if (!sets.is_array() || sets.empty()) {
    FieldError(origin, p, "expected a nonempty array of user lists");
  }
  std::vector<UserSubset> minimal;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    minimal.push_back(
        SubsetFromJson(sets[i], l, origin, p + "[" + std::to_string(i) + "]"));
  }
  return WithOrigin(origin,
                    [&] { return AccessStructure::FromMinimalSets(l, minimal); });
}

double Rounded(double v, Precision p) {
  if (!std::isfinite(v)) return v;
  return std::strtod(FormatNumber(v, p).c_str(), nullptr);
}

json Num(double v, Precision p) {
  if (!std::isfinite(v)) return nullptr;
  return Rounded(v, p);
}

json SetJson(UserSubset s) {
  json a = json::array();
  for (int m : s.members()) a.push_back(m + 1);
  return a;
}

std::string SetCsv(UserSubset s) {
  std::string out;
  for (int m : s.members()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(m + 1);
  }
  return out;
}

json RegionJson(const RegionResult& r, Precision p) {
  return json{
      {"r_min", Num(r.r_min, p)},
      {"delta_min", Num(r.delta_min, p)},
      {"case_tag", std::string(CaseTagName(r.case_tag))},
      {"a_star", SetJson(r.a_star)},
      {"b_star", SetJson(r.b_star)},
      {"tr_a", Num(r.tr_a, p)},
      {"tr_b", Num(r.tr_b, p)},
      {"corner_c1",
       json{{"r", Num(r.corner_c1.r, p)}, {"delta", Num(r.corner_c1.delta, p)}}},
      {"corner_c2",
       json{{"r", Num(r.corner_c2.r, p)}, {"delta", Num(r.corner_c2.delta, p)}}},
  };
}

}  // namespace

Precision ParsePrecision(std::string_view text) {
  if (text == "6") return Precision::kSix;
  if (text == "full") return Precision::kFull;
  Fail(ErrorKind::kValidation,
       "--precision must be '6' or 'full', got '" + std::string(text) + "'");
}

std::string FormatNumber(double value, Precision precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf),
                precision == Precision::kSix ? "%.6g" : "%.17g", value);
  return buf;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(static_cast<bool>(in), ErrorKind::kValidation,
          path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  Require(static_cast<bool>(out), ErrorKind::kResource,
          path + ": cannot open for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  Require(static_cast<bool>(out), ErrorKind::kResource,
          path + ": write failed");
}

SourceModel ParseSourceModel(std::string_view json_text,
                             std::string_view origin) {
  const json j = ParseJson(json_text, origin);
  SourceModel m;
  m.sigma_x2 =
      Number(Member(j, "sigma_x2", origin, ""), origin, "sigma_x2");
  m.noise_vars =
      NumberArray(Member(j, "noise_vars", origin, ""), origin, "noise_vars");
  if (!(m.sigma_x2 > 0.0)) FieldError(origin, "sigma_x2", "must be positive");
  if (m.noise_vars.empty() ||
      m.noise_vars.size() > static_cast<std::size_t>(kMaxUsers)) {
    FieldError(origin, "noise_vars", "need between 1 and 64 entries");
  }
  for (std::size_t i = 0; i < m.noise_vars.size(); ++i) {
    if (!(m.noise_vars[i] > 0.0)) {
      FieldError(origin, "noise_vars[" + std::to_string(i) + "]",
                 "must be positive");
    }
  }
  m.Validate();
  return m;
}

AccessStructure ParseAccessStructure(std::string_view json_text,
                                     std::string_view origin) {
  return StructureFromJson(ParseJson(json_text, origin), origin, "");
}

ParsedDiscreteSpec ParseDiscreteSpec(std::string_view json_text,
                                     std::string_view origin) {
  const json j = ParseJson(json_text, origin);
  ParsedDiscreteSpec out;
  DiscreteSourceSpec& s = out.spec;
  s.x_card = Integer(Member(j, "x_card", origin, ""), origin, "x_card");
  s.y_cards = IntArray(Member(j, "y_cards", origin, ""), origin, "y_cards");
  s.v_card = Integer(Member(j, "v_card", origin, ""), origin, "v_card");
  s.u_card = j.contains("u_card")
                 ? Integer(j["u_card"], origin, "u_card")
                 : 1;
  s.xhat_card = j.contains("xhat_card")
                    ? Integer(j["xhat_card"], origin, "xhat_card")
                    : s.x_card;
  s.p_xy = NumberArray(Member(j, "p_xy", origin, ""), origin, "p_xy");
  s.p_v_given_x = NumberArray(Member(j, "p_v_given_x", origin, ""), origin,
                              "p_v_given_x");
  if (j.contains("p_u_given_v")) {
    s.p_u_given_v = NumberArray(j["p_u_given_v"], origin, "p_u_given_v");
  } else if (s.u_card == 1) {
    s.p_u_given_v.assign(static_cast<std::size_t>(std::max(s.v_card, 0)), 1.0);
  } else {
    FieldError(origin, "p_u_given_v", "missing (required when u_card > 1)");
  }
  s.distortion =
      NumberArray(Member(j, "distortion", origin, ""), origin, "distortion");
  if (j.contains("reconstruction")) {
    const json& rec = j["reconstruction"];
    if (!rec.is_array()) {
      FieldError(origin, "reconstruction", "expected an array");
    }
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const std::string p = "reconstruction[" + std::to_string(i) + "]";
      const UserSubset a = SubsetFromJson(Member(rec[i], "set", origin, p),
                                          s.num_users(), origin, p + ".set");
      s.reconstruction[a.mask()] =
          IntArray(Member(rec[i], "table", origin, p), origin, p + ".table");
    }
  }
  WithOrigin(origin, [&] {
    s.Validate();
    return 0;
  });
  if (j.contains("structure")) {
    out.structure = StructureFromJson(j["structure"], origin, "structure");
    if (out.structure->num_users() != s.num_users()) {
      FieldError(origin, "structure", "user count differs from y_cards");
    }
  }
  if (j.contains("distortion_target")) {
    out.distortion_target =
        Number(j["distortion_target"], origin, "distortion_target");
  }
  if (j.contains("epsilons")) {
    const std::vector<double> e =
        NumberArray(j["epsilons"], origin, "epsilons");
    if (e.size() != 3) FieldError(origin, "epsilons", "expected 3 numbers");
    out.epsilons = Epsilons{e[0], e[1], e[2]};
    WithOrigin(origin, [&] {
      out.epsilons->Validate();
      return 0;
    });
  }
  return out;
}

std::uint64_t CanonicalJsonDigest(std::string_view json_text) {
  const std::string canonical = ParseJson(json_text, "config").dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string DigestHex(std::uint64_t digest) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(digest));
  return buf;
}

std::string RegionToJson(const RegionResult& region, Precision precision) {
  return RegionJson(region, precision).dump(2);
}

std::string ChecksToJson(const std::vector<CheckReport>& checks,
                         Precision precision) {
  json arr = json::array();
  std::size_t passed = 0;
  std::size_t applicable = 0;
  for (const CheckReport& c : checks) {
    if (c.applicable) {
      ++applicable;
      if (c.passed) ++passed;
    }
    arr.push_back(json{
        {"check_id", c.check_id},
        {"analytic_value", Num(c.analytic_value, precision)},
        {"oracle_value", Num(c.oracle_value, precision)},
        {"abs_err", Num(c.abs_err, Precision::kSix)},
        {"tolerance", Num(c.tolerance, Precision::kSix)},
        {"passed", c.passed},
        {"applicable", c.applicable},
        {"seed", c.seed},
    });
  }
  const json doc{{"checks", arr},
                 {"summary",
                  json{{"total", checks.size()},
                       {"applicable", applicable},
                       {"passed", passed},
                       {"all_passed", passed == applicable}}}};
  return doc.dump(2);
}

std::string SimResultToJson(const SimResult& r, const RateSplit& rates,
                            std::optional<double> distortion_target,
                            Precision p) {
  const DiscreteRateRegion& f = r.feasible_rates;
  json auth = json::array();
  double worst_failure = 0.0;
  double worst_distortion = 0.0;
  for (const AuthorizedStats& a : r.authorized) {
    const double rate = static_cast<double>(a.failures) / r.trials;
    worst_failure = std::max(worst_failure, rate);
    worst_distortion = std::max(worst_distortion, a.mean_distortion);
    auth.push_back(json{{"set", SetJson(a.set)},
                        {"decode_errors", a.decode_errors},
                        {"failures", a.failures},
                        {"failure_rate", Num(rate, p)},
                        {"mean_distortion", Num(a.mean_distortion, p)},
                        {"success_distortion", Num(a.success_distortion, p)},
                        {"expected_distortion", Num(a.expected_distortion, p)}});
  }
  json unauth = json::array();
  double worst_leakage = 0.0;
  for (const LeakageEstimate& l : r.unauthorized) {
    worst_leakage = std::max(worst_leakage, l.bits_per_symbol);
    unauth.push_back(json{
        {"set", SetJson(l.set)},
        {"leakage_bits_per_symbol", Num(l.bits_per_symbol, p)},
        {"std_error", Num(l.std_error, p)},
        {"posterior_normalization_error",
         Num(l.posterior_normalization_error, Precision::kSix)},
        {"samples", l.samples}});
  }
  json doc{
      {"trials", r.trials},
      {"n", r.n},
      {"seed", r.seed},
      {"rates",
       json{{"r_p", Num(rates.r_p, p)},
            {"r_p_prime", Num(rates.r_p_prime, p)},
            {"r_s", Num(rates.r_s, p)},
            {"r_s_prime", Num(rates.r_s_prime, p)}}},
      {"encode_failures", r.encode_failures},
      {"authorized", auth},
      {"unauthorized", unauth},
      {"leakage_skipped", r.leakage_skipped},
      {"feasible_rates",
       json{{"r_bound", Num(f.r_bound, p)},
            {"delta_bound", Num(f.delta_bound, p)},
            {"enc_u", Num(f.enc_u, p)},
            {"enc_v", Num(f.enc_v, p)},
            {"bin_total", Num(f.bin_total, p)},
            {"bin_s", Num(f.bin_s, p)},
            {"leakage_split", Num(f.leakage_split, p)},
            {"reduced_r", Num(f.reduced_r, p)},
            {"reduced_delta", Num(f.reduced_delta, p)}}},
  };
  if (distortion_target) {
    constexpr double kFailureLimit = 0.05;
    constexpr double kDistortionSlack = 0.05;
    constexpr double kLeakageSlack = 0.2;
    json checks{
        {"failure_rate", Num(worst_failure, p)},
        {"failure_limit", kFailureLimit},
        {"failure_ok", worst_failure <= kFailureLimit},
        {"mean_distortion", Num(worst_distortion, p)},
        {"distortion_limit", Num(*distortion_target + kDistortionSlack, p)},
        {"distortion_ok",
         worst_distortion <= *distortion_target + kDistortionSlack},
    };
    if (!r.leakage_skipped) {
      checks["leakage"] = Num(worst_leakage, p);
      checks["leakage_limit"] = Num(f.delta_bound + kLeakageSlack, p);
      checks["leakage_ok"] = worst_leakage <= f.delta_bound + kLeakageSlack;
    }
    doc["slack_checks"] = checks;
  }
  return doc.dump(2);
}

std::string ThresholdCsv(const ThresholdReport& report, Precision p) {
  std::string out =
      "t,a_star,b_star,tr_a,tr_b,r_min,delta_min,case,hypothesis,verdicts\n";
  for (const ThresholdRow& row : report.rows) {
    bool consistent = true;
    for (const Verdict& v : report.verdicts) {
      if (v.t == row.t && !v.consistent()) consistent = false;
    }
    out += std::to_string(row.t) + "," + SetCsv(row.a_star) + "," +
           SetCsv(row.b_star) + "," + FormatNumber(row.tr_a, p) + "," +
           FormatNumber(row.tr_b, p) + "," + FormatNumber(row.r_min, p) +
           "," + FormatNumber(row.delta_min, p) + "," +
           std::string(CaseTagName(row.case_tag)) + "," +
           (row.hypothesis_holds ? "holds" : "fails") + "," +
           (consistent ? "consistent" : "inconsistent") + "\n";
  }
  return out;
}

std::string VerdictCsv(const ThresholdReport& report) {
  std::string out = "t,i,predicate,applicable,predicted,observed,consistent\n";
  auto b = [](bool v) { return v ? "true" : "false"; };
  for (const Verdict& v : report.verdicts) {
    out += std::to_string(v.t) + "," + std::to_string(v.i) + "," +
           v.predicate_id + "," + b(v.applicable) + "," + b(v.predicted) +
           "," + b(v.observed) + "," + b(v.consistent()) + "\n";
  }
  return out;
}

std::string SweepCsv(const std::vector<SweepPoint>& sweep, Precision p) {
  std::string out = "tr_a,r_min,delta_min,case_tag\n";
  for (const SweepPoint& s : sweep) {
    out += FormatNumber(s.tr_a, p) + "," + FormatNumber(s.r_min, p) + "," +
           FormatNumber(s.delta_min, p) + "," +
           std::string(CaseTagName(s.case_tag)) + "\n";
  }
  return out;
}

std::string WithManifest(const RunManifest& m, std::string_view result_json) {
  json doc{{"manifest",
            json{{"command_line", m.command_line},
                 {"config_digest", m.config_digest},
                 {"seed", m.seed},
                 {"tool_version", m.tool_version},
                 {"timestamp", m.timestamp}}},
           {"result", ParseJson(result_json, "result")}};
  return doc.dump(2) + "\n";
}

}  // namespace ssc
