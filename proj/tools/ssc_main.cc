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

// ssc: rate-leakage regions, threshold scans, verification and coding
// simulation from the command line.
//
// Exit codes: 0 success, 2 validation error, 3 numeric or resource error,
// 4 verification failure.

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssc/access_structure.h"
#include "ssc/coding_sim.h"
#include "ssc/errors.h"
#include "ssc/gaussian_model.h"
#include "ssc/io.h"
#include "ssc/oracle.h"
#include "ssc/region.h"
#include "ssc/threshold.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerification = 4;

int ExitCodeFor(ssc::ErrorKind kind) {
  switch (kind) {
    case ssc::ErrorKind::kNumeric:
    case ssc::ErrorKind::kResource:
      return kExitNumeric;
    default:
      return kExitValidation;
  }
}

std::string Timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double ParseDouble(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  ssc::Fail(ssc::ErrorKind::kValidation,
            flag + ": '" + text + "' is not a number");
}

int ParseInt(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  ssc::Fail(ssc::ErrorKind::kValidation,
            flag + ": '" + text + "' is not an integer");
}

json JsonFile(const std::string& path) {
  return json::parse(ssc::ReadTextFile(path), nullptr, false);
}

// Everything that determines a run's output, digested canonically.
class RunContext {
 public:
  RunContext(std::string command, std::string command_line)
      : command_line_(std::move(command_line)) {
    config_["command"] = std::move(command);
  }
  void Set(const std::string& key, json value) {
    config_[key] = std::move(value);
  }
  ssc::RunManifest Manifest(std::uint64_t seed) const {
    ssc::RunManifest m;
    m.command_line = command_line_;
    m.config_digest = ssc::DigestHex(ssc::CanonicalJsonDigest(config_.dump()));
    m.seed = seed;
    m.tool_version = SSC_VERSION_STRING;
    m.timestamp = Timestamp();
    return m;
  }

 private:
  std::string command_line_;
  json config_;
};

void Emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    ssc::WriteTextFile(path, text);
  }
}

// CSV outputs keep their header first; the manifest goes beside the file.
void EmitManifest(const std::string& csv_path, const ssc::RunManifest& m) {
  const std::string doc = ssc::WithManifest(m, "{}");
  if (csv_path.empty() || csv_path == "-") {
    std::cerr << doc;
  } else {
    ssc::WriteTextFile(csv_path + ".manifest.json", doc);
  }
}

struct GlobalFlags {
  std::string precision = "6";
  std::string command_line;
};

struct RegionFlags {
  std::string model;
  std::string structure;
  double distortion = 0.0;
  std::string sweep;
  std::string sweep_out = "sweep.csv";
  std::string out;
};

int RunRegion(const GlobalFlags& g, const RegionFlags& f) {
  const ssc::Precision p = ssc::ParsePrecision(g.precision);
  const ssc::SourceModel model =
      ssc::ParseSourceModel(ssc::ReadTextFile(f.model), f.model);
  const ssc::AccessStructure structure =
      ssc::ParseAccessStructure(ssc::ReadTextFile(f.structure), f.structure);
  RunContext ctx("region", g.command_line);
  ctx.Set("model", JsonFile(f.model));
  ctx.Set("structure", JsonFile(f.structure));
  ctx.Set("distortion", f.distortion);
  ctx.Set("sweep", f.sweep);
  const ssc::RegionResult region =
      ssc::ComputeRegion(model, structure, f.distortion);
  Emit(f.out, ssc::WithManifest(ctx.Manifest(0), ssc::RegionToJson(region, p)));

  if (!f.sweep.empty()) {
    const std::vector<std::string> parts = Split(f.sweep, ':');
    ssc::Require(parts.size() == 4 && parts[0] == "tr_a",
                 ssc::ErrorKind::kValidation,
                 "--sweep expects tr_a:min:max:steps, got '" + f.sweep + "'");
    const std::vector<double> grid = ssc::LinearGrid(
        ParseDouble(parts[1], "--sweep min"),
        ParseDouble(parts[2], "--sweep max"),
        ParseInt(parts[3], "--sweep steps"));
    const std::vector<ssc::SweepPoint> sweep =
        ssc::SweepTradeoff(model.sigma_x2, f.distortion, region.tr_b, grid);
    Emit(f.sweep_out, ssc::SweepCsv(sweep, p));
    EmitManifest(f.sweep_out, ctx.Manifest(0));
  }
  return kExitOk;
}

struct ThresholdFlags {
  std::string model;
  double distortion = 0.0;
  std::string t_range;
  std::string out;
  std::string verdicts_out;
};

int RunThreshold(const GlobalFlags& g, const ThresholdFlags& f) {
  const ssc::Precision p = ssc::ParsePrecision(g.precision);
  const ssc::SourceModel model =
      ssc::ParseSourceModel(ssc::ReadTextFile(f.model), f.model);
  int lo = 1;
  int hi = model.num_users();
  if (!f.t_range.empty()) {
    const std::vector<std::string> parts = Split(f.t_range, ':');
    ssc::Require(parts.size() == 2, ssc::ErrorKind::kValidation,
                 "--t-range expects lo:hi, got '" + f.t_range + "'");
    lo = ParseInt(parts[0], "--t-range lo");
    hi = ParseInt(parts[1], "--t-range hi");
  }
  ssc::Require(1 <= lo && lo <= hi && hi <= model.num_users(),
               ssc::ErrorKind::kValidation,
               "--t-range must satisfy 1 <= lo <= hi <= " +
                   std::to_string(model.num_users()));
  RunContext ctx("threshold", g.command_line);
  ctx.Set("model", JsonFile(f.model));
  ctx.Set("distortion", f.distortion);
  ctx.Set("t_range", json::array({lo, hi}));
  const ssc::ThresholdReport report =
      ssc::BuildThresholdReport(model, f.distortion, lo, hi);
  Emit(f.out, ssc::ThresholdCsv(report, p));
  EmitManifest(f.out, ctx.Manifest(0));
  if (!f.verdicts_out.empty()) {
    Emit(f.verdicts_out, ssc::VerdictCsv(report));
    if (f.verdicts_out != "-") EmitManifest(f.verdicts_out, ctx.Manifest(0));
  }
  return report.AllConsistent() ? kExitOk : kExitVerification;
}

struct VerifyFlags {
  std::uint64_t seed = 1;
  std::int64_t trials = ssc::kMinMonteCarloTrials;
  std::string out;
};

int RunVerify(const GlobalFlags& g, const VerifyFlags& f) {
  const ssc::Precision p = ssc::ParsePrecision(g.precision);
  RunContext ctx("verify", g.command_line);
  ctx.Set("seed", f.seed);
  ctx.Set("trials", f.trials);
  const std::vector<ssc::CheckReport> checks =
      ssc::RunVerificationSuite(f.seed, f.trials);
  Emit(f.out, ssc::WithManifest(ctx.Manifest(f.seed),
                                ssc::ChecksToJson(checks, p)));
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) {
    return !c.applicable || c.passed;
  });
  return ok ? kExitOk : kExitVerification;
}

struct SimulateFlags {
  std::string spec;
  std::string structure;
  int n = 12;
  std::int64_t trials = 500;
  std::uint64_t seed = 7;
  std::string rates = "auto";
  std::string eps;
  double margin = 1.1;
  std::int64_t leakage_samples = 0;
  std::string out;
};

int RunSimulate(const GlobalFlags& g, const SimulateFlags& f) {
  const ssc::Precision p = ssc::ParsePrecision(g.precision);
  ssc::ParsedDiscreteSpec parsed =
      ssc::ParseDiscreteSpec(ssc::ReadTextFile(f.spec), f.spec);
  RunContext ctx("simulate", g.command_line);
  ctx.Set("spec", JsonFile(f.spec));
  std::optional<ssc::AccessStructure> structure = parsed.structure;
  if (!f.structure.empty()) {
    structure = ssc::ParseAccessStructure(ssc::ReadTextFile(f.structure),
                                          f.structure);
    ctx.Set("structure", JsonFile(f.structure));
  }
  ssc::Require(structure.has_value(), ssc::ErrorKind::kValidation,
               f.spec + ": no access structure; pass --structure");

  ssc::Epsilons eps = parsed.epsilons.value_or(ssc::Epsilons{});
  if (!f.eps.empty()) {
    const std::vector<std::string> parts = Split(f.eps, ',');
    ssc::Require(parts.size() == 3, ssc::ErrorKind::kValidation,
                 "--eps expects eps,eps1,eps2");
    eps = {ParseDouble(parts[0], "--eps"), ParseDouble(parts[1], "--eps"),
           ParseDouble(parts[2], "--eps")};
  }
  eps.Validate();

  ssc::RateSplit rates;
  if (f.rates == "auto") {
    const ssc::DiscreteRateRegion region =
        ssc::RateRegionDiscrete(parsed.spec, *structure, eps);
    rates = ssc::RatesWithMargin(region, f.n, f.margin);
  } else {
    const std::vector<std::string> parts = Split(f.rates, ',');
    ssc::Require(parts.size() == 4, ssc::ErrorKind::kValidation,
                 "--rates expects auto or r_p,r_p_prime,r_s,r_s_prime");
    rates = {ParseDouble(parts[0], "--rates"), ParseDouble(parts[1], "--rates"),
             ParseDouble(parts[2], "--rates"),
             ParseDouble(parts[3], "--rates")};
  }
  ctx.Set("n", f.n);
  ctx.Set("trials", f.trials);
  ctx.Set("seed", f.seed);
  ctx.Set("rates", json::array({rates.r_p, rates.r_p_prime, rates.r_s,
                                rates.r_s_prime}));
  ctx.Set("eps", json::array({eps.eps, eps.eps1, eps.eps2}));
  ctx.Set("leakage_samples", f.leakage_samples);

  const ssc::BinningScheme scheme(
      parsed.spec,
      ssc::BuildCodebooks(parsed.spec, f.n, rates, eps, f.seed));
  ssc::SimOptions options;
  options.leakage_samples = f.leakage_samples;
  const ssc::SimResult result =
      ssc::Simulate(scheme, *structure, f.trials, f.seed, options);

  std::optional<double> target = parsed.distortion_target;
  if (!target) {
    double d = 0.0;
    for (ssc::UserSubset a : structure->minimal_sets()) {
      d = std::max(d, ssc::ExpectedDistortion(parsed.spec, scheme.joint(), a));
    }
    target = d;
  }
  Emit(f.out, ssc::WithManifest(ctx.Manifest(f.seed),
                                ssc::SimResultToJson(result, rates, target, p)));
  return kExitOk;
}

struct ExampleFlags {
  std::string out_dir = ".";
};

int RunExample(const GlobalFlags& g, const ExampleFlags& f) {
  const ssc::Precision p = ssc::ParsePrecision(g.precision);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(f.out_dir, ec);
  ssc::Require(!ec, ssc::ErrorKind::kResource,
               f.out_dir + ": cannot create directory");

  // Five users, sigma_x2 = 2, D = 0.1; threshold scan over t = 2..5.
  const ssc::SourceModel five{2.0, {1.0, 0.8, 0.9, 0.7, 0.6}};
  constexpr double kDistortion = 0.1;
  const ssc::ThresholdReport report =
      ssc::BuildThresholdReport(five, kDistortion, 2, 5);
  const std::string table_path = (fs::path(f.out_dir) / "example_fig3.csv").string();
  ssc::WriteTextFile(table_path, ssc::ThresholdCsv(report, p));

  // Trade-off curve for sigma_x2 = 2, D = 0.1, tr_b = 3.5 with tr_a running
  // from 0 to 1/D - 1/sigma_x2.
  constexpr double kTrB = 3.5;
  const double tr_a_max = 1.0 / kDistortion - 1.0 / five.sigma_x2;
  const std::vector<ssc::SweepPoint> sweep = ssc::SweepTradeoff(
      five.sigma_x2, kDistortion, kTrB, ssc::LinearGrid(0.0, tr_a_max, 96));
  const std::string curve_path = (fs::path(f.out_dir) / "example_fig2.csv").string();
  ssc::WriteTextFile(curve_path, ssc::SweepCsv(sweep, p));

  RunContext ctx("example", g.command_line);
  ctx.Set("precision", g.precision);
  const std::string manifest =
      (fs::path(f.out_dir) / "example_manifest.json").string();
  ssc::WriteTextFile(manifest, ssc::WithManifest(ctx.Manifest(0), "{}"));
  std::cout << table_path << "\n" << curve_path << "\n" << manifest << "\n";
  return report.AllConsistent() ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-leakage regions for Gaussian sources with access "
               "structures"};
  app.set_version_flag("--version", std::string(SSC_VERSION_STRING));
  app.require_subcommand(1);

  GlobalFlags global;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) global.command_line += ' ';
    global.command_line += argv[i];
  }
  app.add_option("--precision", global.precision,
                 "Number format: 6 significant digits or full")
      ->check(CLI::IsMember({"6", "full"}));

  RegionFlags region;
  CLI::App* cmd_region =
      app.add_subcommand("region", "Minimal rate and leakage of a structure");
  cmd_region->add_option("--model", region.model, "Source model JSON")
      ->required();
  cmd_region->add_option("--structure", region.structure,
                         "Access structure JSON")
      ->required();
  cmd_region->add_option("--distortion", region.distortion, "Distortion D")
      ->required();
  cmd_region->add_option("--sweep", region.sweep,
                         "Trade-off sweep tr_a:min:max:steps");
  cmd_region->add_option("--sweep-out", region.sweep_out,
                         "Sweep CSV destination")
      ->capture_default_str();
  cmd_region->add_option("--out", region.out, "JSON destination (default "
                                              "stdout)");

  ThresholdFlags threshold;
  CLI::App* cmd_threshold = app.add_subcommand(
      "threshold", "Scan threshold structures and check verdicts");
  cmd_threshold->add_option("--model", threshold.model, "Source model JSON")
      ->required();
  cmd_threshold->add_option("--distortion", threshold.distortion,
                            "Distortion D")
      ->required();
  cmd_threshold->add_option("--t-range", threshold.t_range,
                            "Thresholds lo:hi (default 1:L)");
  cmd_threshold->add_option("--out", threshold.out,
                            "CSV destination (default stdout)");
  cmd_threshold->add_option("--verdicts-out", threshold.verdicts_out,
                            "Per-verdict CSV destination");

  VerifyFlags verify;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "Run the numerical verification suite");
  cmd_verify->add_option("--seed", verify.seed, "Master seed")
      ->capture_default_str();
  cmd_verify->add_option("--trials", verify.trials,
                         "Monte-Carlo trials per check")
      ->capture_default_str();
  cmd_verify->add_option("--out", verify.out, "JSON destination");

  SimulateFlags simulate;
  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate", "Simulate superposition coding with binning");
  cmd_simulate->add_option("--spec", simulate.spec, "Discrete source JSON")
      ->required();
  cmd_simulate->add_option("--structure", simulate.structure,
                           "Access structure JSON (overrides the spec's)");
  cmd_simulate->add_option("--n", simulate.n, "Block length")
      ->capture_default_str();
  cmd_simulate->add_option("--trials", simulate.trials, "Trials")
      ->capture_default_str();
  cmd_simulate->add_option("--seed", simulate.seed, "Master seed")
      ->capture_default_str();
  cmd_simulate->add_option("--rates", simulate.rates,
                           "auto or r_p,r_p_prime,r_s,r_s_prime")
      ->capture_default_str();
  cmd_simulate->add_option("--eps", simulate.eps, "eps,eps1,eps2");
  cmd_simulate->add_option("--margin", simulate.margin,
                           "Rate margin used by --rates auto")
      ->capture_default_str();
  cmd_simulate->add_option("--leakage-samples", simulate.leakage_samples,
                           "Leakage samples per set (0: one per trial)");
  cmd_simulate->add_option("--out", simulate.out, "JSON destination");

  ExampleFlags example;
  CLI::App* cmd_example = app.add_subcommand(
      "example", "Write the five-user table and the trade-off curve");
  cmd_example->add_option("--out", example.out_dir, "Output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*cmd_region) return RunRegion(global, region);
    if (*cmd_threshold) return RunThreshold(global, threshold);
    if (*cmd_verify) return RunVerify(global, verify);
    if (*cmd_simulate) return RunSimulate(global, simulate);
    if (*cmd_example) return RunExample(global, example);
  } catch (const ssc::Error& e) {
    std::cerr << "ssc: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "ssc: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitValidation;
}
