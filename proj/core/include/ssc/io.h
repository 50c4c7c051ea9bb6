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

// JSON ingestion and JSON/CSV emitters. User indices are 1-based in every
// file format. Parse and validation failures throw kValidation with the
// origin, the offending field and, for syntax errors, the line and column.

#ifndef SSC_IO_H_
#define SSC_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssc/access_structure.h"
#include "ssc/coding_sim.h"
#include "ssc/discrete.h"
#include "ssc/gaussian_model.h"
#include "ssc/oracle.h"
#include "ssc/region.h"
#include "ssc/threshold.h"

namespace ssc {

enum class Precision { kSix, kFull };

// "6" or "full".
Precision ParsePrecision(std::string_view text);

// Six significant digits or round-trip precision (17 digits).
std::string FormatNumber(double value, Precision precision);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

// {"sigma_x2": 2.0, "noise_vars": [1.0, 0.8]}
SourceModel ParseSourceModel(std::string_view json_text,
                             std::string_view origin = "model");

// {"num_users": 3, "minimal_sets": [[1, 2], [3]]} or
// {"threshold": {"L": 5, "t": 3}}.
AccessStructure ParseAccessStructure(std::string_view json_text,
                                     std::string_view origin = "structure");

// Alphabet sizes, row-major flattened pmf arrays and the distortion matrix;
// see README for the field list. An optional "structure" member holds an
// access structure in the format above.
struct ParsedDiscreteSpec {
  DiscreteSourceSpec spec;
  std::optional<AccessStructure> structure;
  std::optional<double> distortion_target;
  // "epsilons": [eps, eps1, eps2]
  std::optional<Epsilons> epsilons;
};
ParsedDiscreteSpec ParseDiscreteSpec(std::string_view json_text,
                                     std::string_view origin = "spec");

// FNV-1a 64 over the canonical (key-sorted, compact) form of a JSON text.
// Reordering object members leaves the digest unchanged.
std::uint64_t CanonicalJsonDigest(std::string_view json_text);
std::string DigestHex(std::uint64_t digest);

std::string RegionToJson(const RegionResult& region, Precision precision);
std::string ChecksToJson(const std::vector<CheckReport>& checks,
                         Precision precision);

// Adds slack comparisons (failure rate, distortion and leakage margins)
// when a distortion target is provided.
std::string SimResultToJson(const SimResult& result, const RateSplit& rates,
                            std::optional<double> distortion_target,
                            Precision precision);

// Columns: t,a_star,b_star,tr_a,tr_b,r_min,delta_min,case,hypothesis,
// verdicts. Sets print as 1-based member lists separated by spaces.
std::string ThresholdCsv(const ThresholdReport& report, Precision precision);
// Columns: t,i,predicate,applicable,predicted,observed,consistent.
std::string VerdictCsv(const ThresholdReport& report);
// Columns: tr_a,r_min,delta_min,case_tag.
std::string SweepCsv(const std::vector<SweepPoint>& sweep,
                     Precision precision);

// Wraps a document with {"manifest": ..., "result": ...}.
struct RunManifest {
  std::string command_line;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;
};
std::string WithManifest(const RunManifest& manifest,
                         std::string_view result_json);

}  // namespace ssc

#endif  // SSC_IO_H_
